import pytest
from fractions import Fraction

from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from algebra.patterns import (
    Certificate,
    ChainPattern,
    Endpoint,
    MovingInterval,
    MovingTail,
    PlayerTemplate,
    chain_limit,
    detect_affine_pattern,
)
from algebra.sequences import EVEN, ODD, STEPS, RationalSequence
from algebra.symbolic_set import SymbolicSet


def _gkz_history(length):
    """(steps(k), 1) x {idle} for k = 0 .. length-1."""
    return [
        {"1": SymbolicSet.interval(STEPS.value(k), 1, False, False), "2": SymbolicSet.of("idle")}
        for k in range(length)
    ]


def _tail_history(length):
    """even[k:] ∪ {1} x odd[k:] ∪ {1}."""
    one = SymbolicSet.of(1)
    return [{"1": SymbolicSet.tail(EVEN, k) | one, "2": SymbolicSet.tail(ODD, k) | one} for k in range(length)]


def test_moving_interval_endpoint():
    """The lower endpoint walks along steps; the sample starts at the end of the history."""
    pattern = detect_affine_pattern(_gkz_history(6), window=3)
    assert pattern is not None
    assert pattern.period == 1
    assert pattern.base_stage == 3
    lo = pattern.template("1").intervals[0].lo
    assert lo.seq.id == STEPS.id and lo.m == 3 and lo.c == 1
    assert not pattern.is_constant
    assert pattern.instance(1)["1"] == SymbolicSet.interval(STEPS.value(4), 1, False, False)


def test_interval_limit_is_empty():
    """The intersection of (steps(k), 1) over k is empty; window-only patterns are heuristic."""
    limit = chain_limit(detect_affine_pattern(_gkz_history(6), window=3))
    assert limit.heuristic
    assert limit.components["1"].is_empty
    assert limit.components["2"] == SymbolicSet.of("idle")


def test_inductive_certificate_is_not_heuristic():
    """Upgrading the certificate clears the heuristic flag."""
    pattern = detect_affine_pattern(_gkz_history(5), window=4).with_certificate(Certificate.INDUCTIVE)
    assert not chain_limit(pattern).heuristic


def test_tail_limit_keeps_fixed_part():
    """Moving tails vanish in the limit; the fixed point 1 stays."""
    pattern = detect_affine_pattern(_tail_history(5), window=3, base_index=10)
    assert pattern.base_stage == 12
    limit = chain_limit(pattern)
    assert limit.components == {"1": SymbolicSet.of(1), "2": SymbolicSet.of(1)}


def test_period_two_pattern():
    """A chain that only moves every other stage is found with period 2."""
    history = []
    for k in range(4):
        S = {"1": SymbolicSet.tail(EVEN, k), "2": SymbolicSet.of("idle")}
        history.extend([S, S])
    pattern = detect_affine_pattern(history[1:], window=3)
    assert pattern is not None
    assert pattern.period == 2


def test_no_pattern_for_changing_points():
    """Finite parts must be the same at every sampled stage."""
    history = [{"1": SymbolicSet.of(Fraction(v)), "2": SymbolicSet.of("idle")} for v in (0, 1, 5, 7)]
    assert detect_affine_pattern(history, window=3, max_period=1) is None


def test_short_history_and_small_window():
    """Too little history gives no pattern; a window below 3 is an error."""
    assert detect_affine_pattern(_gkz_history(2), window=3) is None
    with pytest.raises(ValueError):
        detect_affine_pattern(_gkz_history(6), window=2)


def test_pattern_document():
    """The pattern serializes its templates per player."""
    doc = detect_affine_pattern(_tail_history(4), window=3).to_dict()
    assert doc["certificate"] == Certificate.WINDOW_ONLY.value
    assert doc["templates"]["1"]["tails"] == [{"seq": "even", "m": 1, "c": 1}]
    assert doc["templates"]["2"]["points"] == [{"num": "1", "den": "1"}]


# (k + 2) / (k + 1) falls to 1, so an upper endpoint can walk down along it
FALLING = RationalSequence("falling", 1, 2, 1, 1)
RISING = (EVEN, ODD, STEPS)
GRID = sorted({Fraction(n, d) for d in range(1, 5) for n in range(-2 * d, 2 * d + 1)})
# every grid value outside a limit has left the instances by then
HORIZON = 12


@st.composite
def shrinking_templates(draw):
    """
    A template whose primitives each shrink with t: lower endpoints rise along a registered
    sequence, upper endpoints fall along FALLING, tails advance by c >= 0.
    """
    atoms = frozenset(draw(st.lists(st.sampled_from(["Left", "Right"]), max_size=2)))
    points = tuple(sorted(set(draw(st.lists(st.fractions(min_value=-2, max_value=-1, max_denominator=4), max_size=2)))))
    intervals = []
    for _ in range(draw(st.integers(min_value=0, max_value=2))):
        if draw(st.booleans()):
            lo = Endpoint(seq=draw(st.sampled_from(RISING)), m=draw(st.integers(0, 3)), c=draw(st.integers(1, 3)))
        else:
            lo = Endpoint(value=draw(st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 2)])))
        if draw(st.booleans()):
            hi = Endpoint(seq=FALLING, m=draw(st.integers(0, 3)), c=draw(st.integers(1, 3)))
        else:
            hi = Endpoint(value=draw(st.sampled_from([Fraction(1), Fraction(3, 2), Fraction(2)])))
        intervals.append(MovingInterval(lo, hi, draw(st.booleans()), draw(st.booleans())))
    tails = tuple(
        MovingTail(seq, draw(st.integers(0, 4)), draw(st.integers(0, 2)))
        for seq in draw(st.lists(st.sampled_from(RISING), max_size=2, unique=True))
    )
    return PlayerTemplate(atoms, points, tuple(intervals), tails)


@given(first=shrinking_templates(), second=shrinking_templates(), label=st.sampled_from(["Left", "Right", "Center"]))
@hypothesis_settings(max_examples=2000, deadline=None)
def test_chain_limit_is_the_intersection(first, second, label):
    """On a rational grid, the limit holds exactly the values every instance holds."""
    pattern = ChainPattern(0, 1, 3, (("1", first), ("2", second)))
    limit = chain_limit(pattern)
    for player, tpl in pattern.templates:
        instances = [tpl.instance(t) for t in range(HORIZON)]
        component = limit.components[player]
        for x in GRID + [label]:
            assert component.contains(x) == all(S.contains(x) for S in instances), (player, x)
