import pytest
from fractions import Fraction

from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.sequences import EVEN, ODD, STEPS
from algebra.symbolic_set import (
    Bound,
    CombineMode,
    Relation,
    SequenceRef,
    SymbolicSet,
    set_combine,
    set_compare,
    set_contains,
)
from utils.errors import MalformedSetError, UnsupportedCombinationError


small_rationals = st.fractions(min_value=-2, max_value=2, max_denominator=4)
probe_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=8)


@st.composite
def interval_sets(draw):
    """Unions of up to three bounded intervals and a few points, with a sprinkling of atoms."""
    prims = SymbolicSet.empty()
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        lo, hi = sorted([draw(small_rationals), draw(small_rationals)])
        prims = prims | SymbolicSet.interval(lo, hi, draw(st.booleans()), draw(st.booleans()))
    points = draw(st.lists(small_rationals, max_size=3))
    atoms = draw(st.lists(st.sampled_from(["Left", "Right"]), max_size=2))
    return prims | SymbolicSet.of(*points, *atoms)


@pytest.fixture(scope="module")
def unit():
    return SymbolicSet.interval(0, 1)


@given(S=interval_sets(), T=interval_sets(), x=probe_rationals)
@hypothesis_settings(max_examples=3000, deadline=None)
def test_boolean_operations_agree_with_membership(S, T, x):
    """Union, intersection and difference agree pointwise with or/and/and-not."""
    assert (S | T).contains(x) == (S.contains(x) or T.contains(x))
    assert (S & T).contains(x) == (S.contains(x) and T.contains(x))
    assert (S - T).contains(x) == (S.contains(x) and not T.contains(x))


@given(S=interval_sets(), T=interval_sets())
@hypothesis_settings(max_examples=2000, deadline=None)
def test_canonical_form_is_unique(S, T):
    """Sets built two different ways compare and hash equal."""
    rebuilt = (S - T) | (S & T)
    assert rebuilt == S
    assert hash(rebuilt) == hash(S) or not S.is_finite
    assert (S | S) == S
    assert (S - S).is_empty


@given(S=interval_sets(), T=interval_sets())
@hypothesis_settings(max_examples=2000, deadline=None)
def test_compare_matches_subset_tests(S, T):
    """The reported relation is consistent with issubset in both directions."""
    rel = S.compare(T).relation
    assert (rel in (Relation.EQUAL, Relation.SUBSET)) == S.issubset(T)
    assert (rel in (Relation.EQUAL, Relation.SUPERSET)) == T.issubset(S)
    assert S.issubset(T) == (S - T).is_empty
    assert (S & T).issubset(S) and (S & T).issubset(T)
    assert (S - T).issubset(S)
    assert ((S - T) & T).is_empty


@given(S=interval_sets(), x=probe_rationals)
@hypothesis_settings(max_examples=1500, deadline=None)
def test_normalization_is_idempotent(S, x):
    """Rebuilding a canonical set from its own primitives changes nothing."""
    rebuilt = SymbolicSet(S.primitives)
    assert rebuilt == S
    assert rebuilt.primitives == S.primitives
    assert rebuilt.contains(x) == S.contains(x)


def test_point_on_open_endpoint_closes_interval():
    """Adding 1/2 to [0, 1/2) gives [0, 1/2]."""
    S = SymbolicSet.interval(0, Fraction(1, 2), True, False) | SymbolicSet.of(Fraction(1, 2))
    assert S == SymbolicSet.interval(0, Fraction(1, 2))
    assert S.points == ()
    assert len(S.intervals) == 1 and S.intervals[0].hi_closed


def test_touching_intervals_merge(unit):
    """[0, 1/2] and (1/2, 1] merge into [0, 1]."""
    S = SymbolicSet.interval(0, Fraction(1, 2)) | SymbolicSet.interval(Fraction(1, 2), 1, False, True)
    assert S == unit
    assert len(S.intervals) == 1


def test_degenerate_interval_is_a_point():
    """[x, x] is stored as the point x and the set stays finite."""
    S = SymbolicSet.interval(Fraction(1, 3), Fraction(1, 3))
    assert S.is_finite
    assert S.elements() == [Fraction(1, 3)]


def test_tail_absorbs_its_members():
    """A point on a tail is absorbed, and seq(start-1) extends the tail backwards."""
    tail = SymbolicSet.tail(EVEN, 3)
    assert (tail | SymbolicSet.of(EVEN.value(5))) == tail
    extended = tail | SymbolicSet.of(EVEN.value(2))
    assert extended.points == ()
    assert extended.tails[0].start == 2


def test_tail_minus_its_first_member():
    """Removing even(0) from the even tail leaves the tail from index 1."""
    S = SymbolicSet.tail(EVEN) - SymbolicSet.of(0)
    assert S == SymbolicSet.tail(EVEN, 1)
    assert not S.contains(0)
    assert S.contains(Fraction(2, 3))


def test_tail_inside_interval_is_carved_away():
    """A tail inside an interval disappears from the canonical form."""
    S = SymbolicSet.interval(0, 1, True, False) | SymbolicSet.tail(EVEN)
    assert S.tails == ()
    assert S == SymbolicSet.interval(0, 1, True, False)


def test_tail_member_on_open_endpoint_closes_it():
    """even(0) = 0 sits on the open end of (0, 1), so the union is [0, 1)."""
    S = SymbolicSet.interval(0, 1, False, False) | SymbolicSet.tail(EVEN)
    assert S == SymbolicSet.interval(0, 1, True, False)


def test_disjoint_tails():
    """even and odd share no member."""
    assert (SymbolicSet.tail(EVEN) & SymbolicSet.tail(ODD)).is_empty
    union = SymbolicSet.tail(EVEN, 1) | SymbolicSet.tail(ODD, 2)
    assert union.contains(Fraction(2, 3))
    assert union.contains(Fraction(5, 6))
    assert not union.contains(Fraction(1, 2))


def test_tail_within_interval():
    """The members of the even tail inside [1/2, 9/10] are 2/3, 4/5, 6/7 and 8/9."""
    S = SymbolicSet.tail(EVEN) & SymbolicSet.interval(Fraction(1, 2), Fraction(9, 10))
    assert S.is_finite
    assert S.elements() == [Fraction(2, 3), Fraction(4, 5), Fraction(6, 7), Fraction(8, 9)]


def test_infinitely_many_punctures_are_refused(unit):
    """An interval minus a converging tail is not representable."""
    with pytest.raises(UnsupportedCombinationError):
        unit - SymbolicSet.tail(EVEN)


def test_infinite_tail_overlap_is_refused():
    """steps(2k) = even(k), so the two tails share infinitely many values."""
    with pytest.raises(UnsupportedCombinationError):
        SymbolicSet.tail(STEPS) & SymbolicSet.tail(EVEN)


def test_bounds(unit):
    """Suprema and infima report whether they are attained."""
    assert SymbolicSet.tail(EVEN).supremum() == Bound(Fraction(1), False)
    assert SymbolicSet.tail(EVEN, 2).infimum() == Bound(Fraction(4, 5), True)
    assert SymbolicSet.interval(0, 1, False, False).supremum() == Bound(Fraction(1), False)
    assert SymbolicSet.interval(None, 0).infimum() == Bound(None, False)
    assert unit.least() == 0
    assert SymbolicSet.interval(0, 1, False, True).least() is None
    assert SymbolicSet.of("Left").supremum() is None


def test_below_and_above(unit):
    """below/above cut the numeric part and drop the labels."""
    S = unit | SymbolicSet.of("Left")
    assert S.below(Fraction(1, 2)) == SymbolicSet.interval(0, Fraction(1, 2), True, False)
    assert S.below(Fraction(1, 2), inclusive=True) == SymbolicSet.interval(0, Fraction(1, 2))
    assert S.above(Fraction(1, 2)) == SymbolicSet.interval(Fraction(1, 2), 1, False, True)
    assert not S.below(None).contains("Left")


def test_representative_prefers_atoms_then_least():
    """Witness strategies are deterministic."""
    assert (SymbolicSet.of("b", "a") | SymbolicSet.interval(0, 1)).representative() == "a"
    assert SymbolicSet.interval(Fraction(1, 4), 1).representative() == Fraction(1, 4)
    assert SymbolicSet.interval(0, 1, False, False).representative() == Fraction(1, 2)
    with pytest.raises(MalformedSetError):
        SymbolicSet.empty().representative()


def test_elements_of_infinite_set_raise(unit):
    """Only finite sets list their elements."""
    assert unit.cardinality() is None
    with pytest.raises(UnsupportedCombinationError):
        unit.elements()


def test_finite_elements_order():
    """Labels come first, then rationals in increasing order."""
    S = SymbolicSet.of(Fraction(1, 2), "Right", 0, "Left")
    assert S.elements() == ["Left", "Right", Fraction(0), Fraction(1, 2)]
    assert S.cardinality() == 4


def test_membership_of_sequence_reference():
    """A SequenceRef is resolved through the registry."""
    S = SymbolicSet.tail(ODD, 1)
    assert set_contains(S, SequenceRef("odd", 4))
    assert not set_contains(S, SequenceRef("odd", 0))
    with pytest.raises(MalformedSetError):
        S.contains(True)


def test_combine_and_compare_helpers(unit):
    """The functional helpers dispatch on the mode name."""
    half = SymbolicSet.interval(0, Fraction(1, 2))
    assert set_combine("union", half, unit) == unit
    assert set_combine(CombineMode.INTERSECT, half, unit) == half
    assert set_combine("difference", unit, half) == SymbolicSet.interval(Fraction(1, 2), 1, False, True)
    comparison = set_compare(half, unit)
    assert comparison.relation is Relation.SUBSET
    assert not comparison.left_empty
    assert set_compare(SymbolicSet.empty(), unit).left_empty
    with pytest.raises(ValueError):
        set_combine("xor", half, unit)


def test_sets_are_immutable(unit):
    """Assigning to a set raises."""
    with pytest.raises(AttributeError):
        unit.atoms = frozenset({"x"})
