"""
Exact strategy sets: finite unions of labeled atoms, rational points, rational intervals
and tail families {seq(k) : k >= start} of affine-rational sequences.

Every SymbolicSet is kept in canonical form:
  - primitives are pairwise disjoint
  - intervals are maximal; a point on an open endpoint closes that endpoint
  - no tail member lies inside an interval or on an open endpoint of one
  - a point equal to seq(k) with k >= start is absorbed; seq(start - 1) extends the tail
Finite sets therefore have a unique representation, which is what hashing relies on.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Set, Tuple, Union

from algebra.sequences import DEFAULT_REGISTRY, RationalSequence, SequenceRegistry, shared_indices
from utils.errors import MalformedSetError, UnsupportedCombinationError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

_MAX_PASSES = 64


@dataclass(frozen=True)
class Atom:
    label: str


@dataclass(frozen=True)
class Point:
    value: Fraction


@dataclass(frozen=True)
class Interval:
    """lo/hi of None mean an unbounded side, which is always open."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        if self.lo is None and self.lo_closed:
            object.__setattr__(self, "lo_closed", False)
        if self.hi is None and self.hi_closed:
            object.__setattr__(self, "hi_closed", False)
        if self.lo is not None:
            object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))

    @property
    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    @property
    def is_degenerate(self) -> bool:
        return self.lo is not None and self.lo == self.hi and self.lo_closed and self.hi_closed

    def contains(self, q: Fraction) -> bool:
        lo_ok = self.lo is None or q > self.lo or (q == self.lo and self.lo_closed)
        hi_ok = self.hi is None or q < self.hi or (q == self.hi and self.hi_closed)
        return lo_ok and hi_ok


@dataclass(frozen=True)
class TailFamily:
    seq: RationalSequence
    start: int

    def __post_init__(self) -> None:
        if self.start < self.seq.domain_start:
            raise MalformedSetError(
                f"tail start {self.start} precedes domain start {self.seq.domain_start} of '{self.seq.id}'"
            )

    def contains(self, q: Fraction) -> bool:
        k = self.seq.index_of(q)
        return k is not None and k >= self.start

    def head(self, stop: int) -> List[Fraction]:
        """Members seq(start), ..., seq(stop - 1)."""
        return [self.seq.value(k) for k in range(self.start, stop)]


SetPrimitive = Union[Atom, Point, Interval, TailFamily]
Strategy = Union[str, Fraction]


@dataclass(frozen=True)
class SequenceRef:
    """A strategy named by its position in a registered sequence."""

    seq_id: str
    index: int


@dataclass(frozen=True)
class Bound:
    """Supremum/infimum of a numeric set; value None means unbounded in that direction."""

    value: Optional[Fraction]
    attained: bool


class Relation(str, Enum):
    EQUAL = "equal"
    SUBSET = "subset"
    SUPERSET = "superset"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class SetComparison:
    relation: Relation
    left_empty: bool
    right_empty: bool


# ---------------------------------------------------------------- interval helpers

def _lo_key(iv: Interval):
    if iv.lo is None:
        return (0, Fraction(0), 0)
    return (1, iv.lo, 0 if iv.lo_closed else 1)


def _intersect_intervals(x: Interval, y: Interval) -> Interval:
    if x.lo is None:
        lo, lo_c = y.lo, y.lo_closed
    elif y.lo is None or x.lo > y.lo:
        lo, lo_c = x.lo, x.lo_closed
    elif y.lo > x.lo:
        lo, lo_c = y.lo, y.lo_closed
    else:
        lo, lo_c = x.lo, x.lo_closed and y.lo_closed
    if x.hi is None:
        hi, hi_c = y.hi, y.hi_closed
    elif y.hi is None or x.hi < y.hi:
        hi, hi_c = x.hi, x.hi_closed
    elif y.hi < x.hi:
        hi, hi_c = y.hi, y.hi_closed
    else:
        hi, hi_c = x.hi, x.hi_closed and y.hi_closed
    return Interval(lo, hi, lo_c, hi_c)


def _merge_intervals(intervals: Iterable[Interval]) -> Tuple[List[Interval], Set[Fraction]]:
    """Drop empties, turn [x, x] into points, merge overlapping or touching intervals."""
    points: Set[Fraction] = set()
    live = []
    for iv in intervals:
        if iv.is_empty:
            continue
        if iv.is_degenerate:
            points.add(iv.lo)
            continue
        live.append(iv)
    live.sort(key=_lo_key)
    merged: List[Interval] = []
    for iv in live:
        if not merged:
            merged.append(iv)
            continue
        cur = merged[-1]
        touches = (
            cur.hi is None
            or iv.lo is None
            or iv.lo < cur.hi
            or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed))
        )
        if not touches:
            merged.append(iv)
            continue
        lo_c = cur.lo_closed or (cur.lo == iv.lo and iv.lo_closed)
        if cur.hi is None or iv.hi is None:
            hi, hi_c = None, False
        elif iv.hi > cur.hi:
            hi, hi_c = iv.hi, iv.hi_closed
        elif iv.hi < cur.hi:
            hi, hi_c = cur.hi, cur.hi_closed
        else:
            hi, hi_c = cur.hi, cur.hi_closed or iv.hi_closed
        merged[-1] = Interval(cur.lo, hi, lo_c, hi_c)
    return merged, points


def _absorb_points(intervals: List[Interval], points: Set[Fraction]) -> Tuple[List[Interval], Set[Fraction]]:
    ivs = list(intervals)
    remaining: Set[Fraction] = set()
    for p in sorted(points):
        if any(iv.contains(p) for iv in ivs):
            continue
        for idx, iv in enumerate(ivs):
            if iv.lo == p and not iv.lo_closed:
                ivs[idx] = replace(iv, lo_closed=True)
                break
            if iv.hi == p and not iv.hi_closed:
                ivs[idx] = replace(iv, hi_closed=True)
                break
        else:
            remaining.add(p)
    ivs, extra = _merge_intervals(ivs)
    return ivs, remaining | extra


# ---------------------------------------------------------------- tail helpers

def index_window(tail: TailFamily, iv: Interval) -> Optional[Tuple[int, Optional[int]]]:
    """
    Indices k >= tail.start with seq(k) in iv, as a half-open range [k1, k2).

    k2 is None when the range is unbounded. Returns None for an empty range.
    """
    seq = tail.seq
    limit, div = seq.limit, seq.diverges_to

    def above_lo(v: Fraction) -> bool:
        return iv.lo is None or v > iv.lo or (v == iv.lo and iv.lo_closed)

    def below_hi(v: Fraction) -> bool:
        return iv.hi is None or v < iv.hi or (v == iv.hi and iv.hi_closed)

    if seq.increasing:
        enters = iv.lo is None or div > 0 or (limit is not None and limit > iv.lo)
        leaves = iv.hi is not None and (div > 0 or (limit is not None and limit > iv.hi))
        if not enters:
            return None
        k1 = seq.first_index(above_lo, tail.start)
        k2 = seq.first_index(lambda v: not below_hi(v), tail.start) if leaves else None
    else:
        enters = iv.hi is None or div < 0 or (limit is not None and limit < iv.hi)
        leaves = iv.lo is not None and (div < 0 or (limit is not None and limit < iv.lo))
        if not enters:
            return None
        k1 = seq.first_index(below_hi, tail.start)
        k2 = seq.first_index(lambda v: not above_lo(v), tail.start) if leaves else None
    if k2 is not None and k2 <= k1:
        return None
    return k1, k2


def _tail_minus_interval(tail: TailFamily, iv: Interval) -> Tuple[List[Fraction], Optional[TailFamily]]:
    window = index_window(tail, iv)
    if window is None:
        return [], tail
    k1, k2 = window
    loose = tail.head(k1)
    if k2 is None:
        return loose, None
    return loose, TailFamily(tail.seq, k2)


def _tail_minus_indices(tail: TailFamily, indices: Iterable[int]) -> Tuple[List[Fraction], Optional[TailFamily]]:
    drop = {k for k in indices if k >= tail.start}
    if not drop:
        return [], tail
    last = max(drop)
    loose = [tail.seq.value(k) for k in range(tail.start, last + 1) if k not in drop]
    return loose, TailFamily(tail.seq, last + 1)


def _merge_tails(tails: Iterable[TailFamily]) -> List[TailFamily]:
    by_id = {}
    for t in tails:
        cur = by_id.get(t.seq.id)
        if cur is not None and cur.seq != t.seq:
            raise MalformedSetError(f"two different sequences share the id '{t.seq.id}'")
        if cur is None or t.start < cur.start:
            by_id[t.seq.id] = t
    return [by_id[k] for k in sorted(by_id)]


def _separate_tails(tails: List[TailFamily]) -> Tuple[List[TailFamily], List[Fraction]]:
    """Later families (by id) give up the members they share with earlier ones."""
    result: List[TailFamily] = []
    loose: List[Fraction] = []
    for tail in tails:
        current: Optional[TailFamily] = tail
        for earlier in result:
            if current is None:
                break
            shared = shared_indices(earlier.seq, earlier.start, current.seq, current.start)
            if shared:
                extra, current = _tail_minus_indices(current, [j for _, j in shared])
                loose.extend(extra)
        if current is not None:
            result.append(current)
    return result, loose


def _first_open_endpoint_member(tail: TailFamily, intervals: List[Interval]) -> Optional[int]:
    cut = None
    for iv in intervals:
        for endpoint, closed in ((iv.lo, iv.lo_closed), (iv.hi, iv.hi_closed)):
            if endpoint is None or closed:
                continue
            k = tail.seq.index_of(endpoint)
            if k is not None and k >= tail.start:
                cut = k if cut is None else max(cut, k)
    return cut


def _canonical(atoms, points, intervals, tails):
    ivs, pts = _merge_intervals(intervals)
    pts |= {Fraction(p) for p in points}
    tails = _merge_tails(tails)
    for _ in range(_MAX_PASSES):
        carved: List[TailFamily] = []
        for tail in tails:
            pieces = [tail]
            for iv in ivs:
                nxt = []
                for piece in pieces:
                    loose, rest = _tail_minus_interval(piece, iv)
                    pts.update(loose)
                    if rest is not None:
                        nxt.append(rest)
                pieces = nxt
            carved.extend(pieces)
        tails, loose = _separate_tails(_merge_tails(carved))
        pts.update(loose)
        ivs, pts = _absorb_points(ivs, pts)
        split = False
        rebuilt = []
        for tail in tails:
            cut = _first_open_endpoint_member(tail, ivs)
            if cut is None:
                rebuilt.append(tail)
                continue
            pts.update(tail.head(cut + 1))
            rebuilt.append(TailFamily(tail.seq, cut + 1))
            split = True
        tails = rebuilt
        if not split:
            break
    pts = {p for p in pts if not any(t.contains(p) for t in tails)}
    extended = []
    for tail in tails:
        start = tail.start
        while start - 1 >= tail.seq.domain_start and tail.seq.value(start - 1) in pts:
            pts.discard(tail.seq.value(start - 1))
            start -= 1
        extended.append(TailFamily(tail.seq, start))
    return frozenset(atoms), tuple(sorted(pts)), tuple(ivs), tuple(extended)


# ---------------------------------------------------------------- primitive algebra

def _prim_contains(prim: SetPrimitive, q: Fraction) -> bool:
    if isinstance(prim, Point):
        return prim.value == q
    return prim.contains(q)


def _tail_within(tail: TailFamily, iv: Interval) -> List[SetPrimitive]:
    window = index_window(tail, iv)
    if window is None:
        return []
    k1, k2 = window
    if k2 is None:
        return [TailFamily(tail.seq, k1)]
    return [Point(tail.seq.value(k)) for k in range(k1, k2)]


def _intersect_prims(p: SetPrimitive, q: SetPrimitive) -> List[SetPrimitive]:
    if isinstance(p, Point):
        return [p] if _prim_contains(q, p.value) else []
    if isinstance(q, Point):
        return [q] if _prim_contains(p, q.value) else []
    if isinstance(p, Interval) and isinstance(q, Interval):
        return [_intersect_intervals(p, q)]
    if isinstance(p, Interval):
        return _tail_within(q, p)
    if isinstance(q, Interval):
        return _tail_within(p, q)
    if p.seq == q.seq:
        return [TailFamily(p.seq, max(p.start, q.start))]
    return [Point(p.seq.value(k)) for k, _ in shared_indices(p.seq, p.start, q.seq, q.start)]


def _puncture(iv: Interval, q: Fraction) -> List[Interval]:
    if not iv.contains(q):
        return [iv]
    return [Interval(iv.lo, q, iv.lo_closed, False), Interval(q, iv.hi, False, iv.hi_closed)]


def _subtract_prim(p: SetPrimitive, q: SetPrimitive) -> List[SetPrimitive]:
    if isinstance(p, Point):
        return [] if _prim_contains(q, p.value) else [p]
    if isinstance(p, Interval):
        if isinstance(q, Point):
            return _puncture(p, q.value)
        if isinstance(q, Interval):
            pieces = []
            if q.lo is not None:
                pieces.append(_intersect_intervals(p, Interval(None, q.lo, False, not q.lo_closed)))
            if q.hi is not None:
                pieces.append(_intersect_intervals(p, Interval(q.hi, None, not q.hi_closed, False)))
            return [iv for iv in pieces if not iv.is_empty]
        window = index_window(q, p)
        if window is None:
            return [p]
        k1, k2 = window
        if k2 is None:
            raise UnsupportedCombinationError(
                f"removing tail '{q.seq.id}[{q.start}:]' from an interval leaves infinitely many punctures"
            )
        pieces = [p]
        for k in range(k1, k2):
            pieces = [piece for iv in pieces for piece in _puncture(iv, q.seq.value(k)) if not piece.is_empty]
        return pieces
    # p is a TailFamily
    if isinstance(q, Point):
        k = p.seq.index_of(q.value)
        if k is None or k < p.start:
            return [p]
        return [Point(v) for v in p.head(k)] + [TailFamily(p.seq, k + 1)]
    if isinstance(q, Interval):
        loose, rest = _tail_minus_interval(p, q)
        return [Point(v) for v in loose] + ([rest] if rest is not None else [])
    if p.seq == q.seq:
        if q.start <= p.start:
            return []
        return [Point(v) for v in p.head(q.start)]
    shared = shared_indices(p.seq, p.start, q.seq, q.start)
    loose, rest = _tail_minus_indices(p, [k for k, _ in shared])
    return [Point(v) for v in loose] + ([rest] if rest is not None else [])


# ---------------------------------------------------------------- the set type

class SymbolicSet:
    __slots__ = ("atoms", "points", "intervals", "tails")

    def __init__(self, primitives: Iterable[SetPrimitive] = ()) -> None:
        atoms, points, intervals, tails = set(), [], [], []
        for prim in primitives:
            if isinstance(prim, Atom):
                atoms.add(prim.label)
            elif isinstance(prim, Point):
                points.append(Fraction(prim.value))
            elif isinstance(prim, Interval):
                intervals.append(prim)
            elif isinstance(prim, TailFamily):
                tails.append(prim)
            else:
                raise MalformedSetError(f"not a set primitive: {prim!r}")
        self._assign(*_canonical(atoms, points, intervals, tails))

    def _assign(self, atoms, points, intervals, tails) -> None:
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "intervals", intervals)
        object.__setattr__(self, "tails", tails)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicSet is immutable")

    @classmethod
    def _from_parts(cls, atoms, points, intervals, tails) -> "SymbolicSet":
        obj = cls.__new__(cls)
        if not intervals and not tails:
            # finite sets need no carving
            obj._assign(frozenset(atoms), tuple(sorted(set(points))), (), ())
        else:
            obj._assign(*_canonical(atoms, points, intervals, tails))
        return obj

    # constructors
    @classmethod
    def empty(cls) -> "SymbolicSet":
        return cls._from_parts((), (), (), ())

    @classmethod
    def of(cls, *values: Strategy) -> "SymbolicSet":
        atoms = [v for v in values if isinstance(v, str)]
        points = [Fraction(v) for v in values if not isinstance(v, str)]
        return cls._from_parts(atoms, points, (), ())

    @classmethod
    def interval(cls, lo, hi, lo_closed: bool = True, hi_closed: bool = True) -> "SymbolicSet":
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        return cls([Interval(lo, hi, lo_closed, hi_closed)])

    @classmethod
    def tail(cls, seq: RationalSequence, start: Optional[int] = None) -> "SymbolicSet":
        return cls([TailFamily(seq, seq.domain_start if start is None else start)])

    # views
    @property
    def primitives(self) -> Tuple[SetPrimitive, ...]:
        return (
            tuple(Atom(a) for a in sorted(self.atoms))
            + tuple(Point(p) for p in self.points)
            + self.intervals
            + self.tails
        )

    def _numeric_prims(self) -> List[SetPrimitive]:
        return [Point(p) for p in self.points] + list(self.intervals) + list(self.tails)

    @property
    def is_empty(self) -> bool:
        return not (self.atoms or self.points or self.intervals or self.tails)

    def __bool__(self) -> bool:
        return not self.is_empty

    @property
    def is_finite(self) -> bool:
        return not self.intervals and not self.tails

    def cardinality(self) -> Optional[int]:
        return len(self.atoms) + len(self.points) if self.is_finite else None

    def elements(self) -> List[Strategy]:
        if not self.is_finite:
            raise UnsupportedCombinationError(f"cannot list the elements of the infinite set {self}")
        return sorted(self.atoms) + list(self.points)

    def sequences(self) -> List[RationalSequence]:
        return [t.seq for t in self.tails]

    def numeric_part(self) -> "SymbolicSet":
        return SymbolicSet._from_parts((), self.points, self.intervals, self.tails)

    def atom_part(self) -> "SymbolicSet":
        return SymbolicSet._from_parts(self.atoms, (), (), ())

    # membership
    def contains(self, x: Union[Strategy, int, SequenceRef], registry: Optional[SequenceRegistry] = None) -> bool:
        if isinstance(x, SequenceRef):
            x = (registry or DEFAULT_REGISTRY).get(x.seq_id).value(x.index)
        if isinstance(x, str):
            return x in self.atoms
        if isinstance(x, bool):
            raise MalformedSetError(f"not a strategy value: {x!r}")
        q = Fraction(x)
        return any(_prim_contains(p, q) for p in self._numeric_prims())

    def __contains__(self, x) -> bool:
        return self.contains(x)

    # algebra
    def union(self, other: "SymbolicSet") -> "SymbolicSet":
        return SymbolicSet._from_parts(
            self.atoms | other.atoms,
            self.points + other.points,
            self.intervals + other.intervals,
            self.tails + other.tails,
        )

    def intersect(self, other: "SymbolicSet") -> "SymbolicSet":
        atoms = self.atoms & other.atoms
        if self.is_finite and other.is_finite:
            return SymbolicSet._from_parts(atoms, set(self.points) & set(other.points), (), ())
        prims: List[SetPrimitive] = []
        for p in self._numeric_prims():
            for q in other._numeric_prims():
                prims.extend(_intersect_prims(p, q))
        return SymbolicSet([Atom(a) for a in atoms] + prims)

    def difference(self, other: "SymbolicSet") -> "SymbolicSet":
        atoms = self.atoms - other.atoms
        if self.is_finite and other.is_finite:
            return SymbolicSet._from_parts(atoms, set(self.points) - set(other.points), (), ())
        result: List[SetPrimitive] = []
        subtrahend = other._numeric_prims()
        for p in self._numeric_prims():
            pieces = [p]
            for q in subtrahend:
                pieces = [piece for x in pieces for piece in _subtract_prim(x, q)]
                if not pieces:
                    break
            result.extend(pieces)
        return SymbolicSet([Atom(a) for a in atoms] + result)

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def issubset(self, other: "SymbolicSet") -> bool:
        return (self - other).is_empty

    def compare(self, other: "SymbolicSet") -> SetComparison:
        left_in = (self - other).is_empty
        right_in = (other - self).is_empty
        if left_in and right_in:
            rel = Relation.EQUAL
        elif left_in:
            rel = Relation.SUBSET
        elif right_in:
            rel = Relation.SUPERSET
        else:
            rel = Relation.INCOMPARABLE
        return SetComparison(rel, self.is_empty, other.is_empty)

    # order structure of the numeric part
    def supremum(self) -> Optional[Bound]:
        cands = [Bound(p, True) for p in self.points]
        for iv in self.intervals:
            if iv.hi is None:
                return Bound(None, False)
            cands.append(Bound(iv.hi, iv.hi_closed))
        for t in self.tails:
            if t.seq.increasing:
                if t.seq.limit is None:
                    return Bound(None, False)
                cands.append(Bound(t.seq.limit, False))
            else:
                cands.append(Bound(t.seq.value(t.start), True))
        if not cands:
            return None
        best = max(c.value for c in cands)
        return Bound(best, any(c.attained for c in cands if c.value == best))

    def infimum(self) -> Optional[Bound]:
        cands = [Bound(p, True) for p in self.points]
        for iv in self.intervals:
            if iv.lo is None:
                return Bound(None, False)
            cands.append(Bound(iv.lo, iv.lo_closed))
        for t in self.tails:
            if not t.seq.increasing:
                if t.seq.limit is None:
                    return Bound(None, False)
                cands.append(Bound(t.seq.limit, False))
            else:
                cands.append(Bound(t.seq.value(t.start), True))
        if not cands:
            return None
        best = min(c.value for c in cands)
        return Bound(best, any(c.attained for c in cands if c.value == best))

    def below(self, bound: Optional[Fraction], inclusive: bool = False) -> "SymbolicSet":
        """Numeric members < bound (<= when inclusive); bound None is +infinity."""
        if bound is None:
            return self.numeric_part()
        return self & SymbolicSet([Interval(None, Fraction(bound), False, inclusive)])

    def above(self, bound: Optional[Fraction], inclusive: bool = False) -> "SymbolicSet":
        if bound is None:
            return self.numeric_part()
        return self & SymbolicSet([Interval(Fraction(bound), None, inclusive, False)])

    def least(self) -> Optional[Fraction]:
        inf = self.infimum()
        if inf is None or not inf.attained:
            return None
        return inf.value

    def representative(self) -> Strategy:
        """A deterministic member, used for witnesses."""
        if self.atoms:
            return sorted(self.atoms)[0]
        least = self.least()
        if least is not None:
            return least
        if self.points:
            return self.points[0]
        if self.intervals:
            iv = self.intervals[0]
            if iv.lo is not None and iv.hi is not None:
                return (iv.lo + iv.hi) / 2
            if iv.lo is not None:
                return iv.lo + 1
            if iv.hi is not None:
                return iv.hi - 1
            return Fraction(0)
        if self.tails:
            t = self.tails[0]
            return t.seq.value(t.start)
        raise MalformedSetError("the empty set has no representative")

    # identity
    def _key(self):
        return self.atoms, self.points, self.intervals, self.tails

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicSet):
            return NotImplemented
        if self._key() == other._key():
            return True
        if (self.is_finite and other.is_finite) or self.atoms != other.atoms:
            return False
        return (self - other).is_empty and (other - self).is_empty

    def __hash__(self) -> int:
        if self.is_finite:
            return hash((self.atoms, self.points))
        return hash((self.atoms, "infinite"))

    def __str__(self) -> str:
        from algebra.notation import render_set

        return render_set(self)

    def __repr__(self) -> str:
        return f"SymbolicSet({self})"


def set_contains(S: SymbolicSet, x, registry: Optional[SequenceRegistry] = None) -> bool:
    return S.contains(x, registry)


class CombineMode(str, Enum):
    UNION = "union"
    INTERSECT = "intersect"
    DIFFERENCE = "difference"


def set_combine(mode: Union[CombineMode, str], S: SymbolicSet, T: SymbolicSet) -> SymbolicSet:
    mode = CombineMode(mode)
    if mode is CombineMode.UNION:
        return S | T
    if mode is CombineMode.INTERSECT:
        return S & T
    return S - T


def set_compare(S: SymbolicSet, T: SymbolicSet) -> SetComparison:
    return S.compare(T)
