import pytest
from fractions import Fraction

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.sequences import EVEN
from algebra.symbolic_set import SymbolicSet
from games.score_order import ScoreOrder, strictly_below_all

HALF = Fraction(1, 2)


@pytest.fixture
def unit():
    return SymbolicSet.interval(0, 1)


@pytest.fixture
def labelled(unit):
    """[0, 1] plus a label Left that scores like 1."""
    space = unit | SymbolicSet.of("Left")
    return space, ScoreOrder(space, space, (("Left", Fraction(1)),))


def test_identity_order_on_closed_interval(unit):
    """Everything below 1 is dominated; 1 dominates everything else."""
    order = ScoreOrder.identity(unit)
    assert order.dominated_elements(unit, unit) == SymbolicSet.interval(0, 1, True, False)
    assert order.dominating_set(HALF, unit) == SymbolicSet.interval(HALF, 1, False, True)
    assert order.lower_contour_set(HALF, unit) == SymbolicSet.interval(0, HALF, True, False)
    assert order.relates(0, 1) and not order.relates(1, 1)


def test_open_scope_has_unattained_supremum(unit):
    """With dominators in (0, 1), 1 itself is not dominated but everything below is."""
    order = ScoreOrder.identity(unit)
    scope = SymbolicSet.interval(0, 1, False, False)
    assert order.dominated_elements(unit, scope) == SymbolicSet.interval(0, 1, True, False)
    assert order.dominated_elements(SymbolicSet.of(1), scope).is_empty


def test_tail_scope(unit):
    """Dominators drawn from the even tail dominate all of [0, 1)."""
    order = ScoreOrder.identity(unit)
    assert order.dominated_elements(unit, SymbolicSet.tail(EVEN, 3)) == SymbolicSet.interval(0, 1, True, False)


def test_trivial_order(unit):
    """The trivial order relates nothing."""
    order = ScoreOrder.trivial()
    assert order.dominated_elements(unit, unit).is_empty
    assert order.dominating_set(HALF, unit).is_empty
    assert not order.relates(0, 1)


def test_overrides_score_labels(labelled):
    """A label with an override is compared by its score."""
    space, order = labelled
    assert order.score("Left") == 1
    assert order.relates(HALF, "Left")
    assert not order.relates("Left", 1)
    assert order.dominating_set(HALF, space) == SymbolicSet.interval(HALF, 1, False, True) | SymbolicSet.of("Left")
    assert order.dominated_elements(space, SymbolicSet.of("Left")) == SymbolicSet.interval(0, 1, True, False)


def test_overridden_number(unit):
    """A number whose score is overridden leaves the identity part of the order."""
    order = ScoreOrder(unit, unit, ((Fraction(1), Fraction(0)),))
    assert order.score(1) == 0
    assert order.relates(1, HALF)
    assert order.dominated_elements(unit, unit) == unit
    assert order.image(unit) == SymbolicSet.interval(0, 1, True, False)


def test_unscored_label_is_never_related(unit):
    """Labels without an override have no score."""
    order = ScoreOrder.identity(unit | SymbolicSet.of("Right"))
    assert order.score("Right") is None
    assert not order.relates("Right", 1)
    assert order.dominating_set("Right", unit).is_empty


def test_strictly_below_all(unit):
    """Numbers below every number of Y; attained infima are excluded."""
    assert strictly_below_all(unit, SymbolicSet.of(HALF, 1)) == SymbolicSet.interval(0, HALF, True, False)
    assert strictly_below_all(unit, SymbolicSet.interval(HALF, 1, False, True)) == SymbolicSet.interval(0, HALF)
    assert strictly_below_all(unit, SymbolicSet.of("Left")) == unit
    assert strictly_below_all(unit, SymbolicSet.interval(None, 0)).is_empty
