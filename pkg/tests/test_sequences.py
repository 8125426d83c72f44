import pytest
from fractions import Fraction

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.sequences import (
    DECREASING,
    DEFAULT_REGISTRY,
    EVEN,
    INCREASING,
    ODD,
    STEPS,
    RationalSequence,
    SequenceRegistry,
    shared_indices,
)
from utils.errors import MalformedSetError, UnsupportedCombinationError


@pytest.fixture
def reciprocal():
    """k -> 1/(k+1), decreasing to 0."""
    return RationalSequence("reciprocal", 0, 1, 1, 1)


def test_default_sequences_values():
    """The registered families start where the game catalog expects them to."""
    assert [EVEN.value(k) for k in range(3)] == [Fraction(0), Fraction(2, 3), Fraction(4, 5)]
    assert [ODD.value(k) for k in range(3)] == [Fraction(1, 2), Fraction(3, 4), Fraction(5, 6)]
    assert [STEPS.value(k) for k in range(3)] == [Fraction(0), Fraction(1, 2), Fraction(2, 3)]
    assert EVEN(3) == EVEN.value(3)


def test_monotonicity_and_limit(reciprocal):
    """Monotonicity is derived from the formula; limits are a/c."""
    assert EVEN.monotonicity == INCREASING and EVEN.increasing
    assert reciprocal.monotonicity == DECREASING
    assert EVEN.limit == ODD.limit == STEPS.limit == 1
    assert reciprocal.limit == 0
    linear = RationalSequence("linear", 1, 0, 0, 1)
    assert linear.limit is None
    assert linear.diverges_to == 1


def test_index_of():
    """index_of inverts value on the domain and rejects everything else."""
    assert EVEN.index_of(Fraction(4, 5)) == 2
    assert EVEN.index_of(Fraction(1, 2)) is None
    assert STEPS.index_of(Fraction(1, 2)) == 1
    assert ODD.index_of(Fraction(1)) is None
    shifted = RationalSequence("shifted", 1, 0, 1, 1, domain_start=2)
    assert shifted.index_of(Fraction(1, 2)) is None
    assert shifted.index_of(Fraction(2, 3)) == 2


def test_value_before_domain_start_raises():
    """Indices below the domain start are malformed."""
    shifted = RationalSequence("shifted", 1, 0, 1, 1, domain_start=2)
    with pytest.raises(MalformedSetError):
        shifted.value(1)


@pytest.mark.parametrize("args", [
    ("constant", 0, 1, 0, 1),
    ("sign-change", 1, 0, 1, -2),
    ("", 1, 0, 1, 1),
])
def test_invalid_sequences(args):
    """Constant sequences, vanishing denominators and empty ids are rejected."""
    with pytest.raises(MalformedSetError):
        RationalSequence(*args)


def test_declared_monotonicity_must_match():
    """A declaration contradicting the formula is rejected."""
    with pytest.raises(MalformedSetError):
        RationalSequence("even2", 2, 0, 2, 1, monotonicity=DECREASING)


def test_first_index():
    """Least index whose value crosses a threshold."""
    assert EVEN.first_index(lambda v: v > Fraction(9, 10), 0) == 5
    assert STEPS.first_index(lambda v: v >= 0, 0) == 0


def test_registry_lookup_and_conflicts():
    """Registry iteration is in id order; conflicting ids are refused."""
    assert [s.id for s in DEFAULT_REGISTRY] == ["even", "odd", "steps"]
    assert "odd" in DEFAULT_REGISTRY
    registry = SequenceRegistry([EVEN])
    registry.register(EVEN)
    with pytest.raises(MalformedSetError):
        registry.register(RationalSequence("even", 1, 0, 1, 1))
    with pytest.raises(MalformedSetError):
        registry.get("missing")


def test_registry_document_checks_declared_limit():
    """A declared limit that the formula does not reach is rejected on load."""
    doc = {"sequences": [EVEN.to_dict()]}
    assert SequenceRegistry.from_dict(doc).get("even") == EVEN
    doc["sequences"][0]["limit"] = {"num": "1", "den": "2"}
    with pytest.raises(MalformedSetError):
        SequenceRegistry.from_dict(doc)


def test_shared_indices_finite(reciprocal):
    """steps(k) = 1/(j+1) only at k = j = 1."""
    assert shared_indices(STEPS, 0, reciprocal, 0) == [(1, 1)]
    assert shared_indices(STEPS, 2, reciprocal, 0) == []


def test_shared_indices_disjoint_and_infinite():
    """even and odd never meet; steps and even meet infinitely often."""
    assert shared_indices(EVEN, 0, ODD, 0) == []
    with pytest.raises(UnsupportedCombinationError):
        shared_indices(STEPS, 0, EVEN, 0)
