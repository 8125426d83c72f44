"""Affine-rational sequences k -> (a*k + b) / (c*k + d) and the registry that names them."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from utils.errors import MalformedSetError, UnsupportedCombinationError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

INCREASING = "increasing"
DECREASING = "decreasing"

# largest |N| whose divisors the overlap solver will enumerate
_DIVISOR_SEARCH_LIMIT = 10 ** 12


@dataclass(frozen=True)
class RationalSequence:
    id: str
    a: int
    b: int
    c: int
    d: int
    domain_start: int = 0
    monotonicity: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.id:
            raise MalformedSetError("sequence id must be non-empty")
        c, d, m = self.c, self.d, self.domain_start
        if c == 0:
            if d == 0:
                raise MalformedSetError(f"sequence '{self.id}': denominator is identically zero")
        elif (c > 0 and c * m + d <= 0) or (c < 0 and c * m + d >= 0):
            # denominator must keep one sign on [domain_start, inf)
            raise MalformedSetError(f"sequence '{self.id}': denominator c*k+d changes sign or vanishes for k >= {m}")
        det = self.a * self.d - self.b * self.c
        if det == 0:
            raise MalformedSetError(f"sequence '{self.id}' is constant")
        # consecutive denominators share a sign, so the step sign is sign(ad - bc)
        derived = INCREASING if det > 0 else DECREASING
        if self.monotonicity and self.monotonicity != derived:
            raise MalformedSetError(f"sequence '{self.id}' declared {self.monotonicity} but is {derived}")
        object.__setattr__(self, "monotonicity", derived)

    @property
    def increasing(self) -> bool:
        return self.monotonicity == INCREASING

    @property
    def limit(self) -> Optional[Fraction]:
        """Finite limit, or None when the sequence diverges (see `diverges_to`)."""
        if self.c == 0:
            return None
        return Fraction(self.a, self.c)

    @property
    def diverges_to(self) -> int:
        if self.c != 0:
            return 0
        return 1 if self.increasing else -1

    def value(self, k: int) -> Fraction:
        if k < self.domain_start:
            raise MalformedSetError(f"index {k} precedes domain start {self.domain_start} of '{self.id}'")
        return Fraction(self.a * k + self.b, self.c * k + self.d)

    __call__ = value

    def index_of(self, q: Fraction) -> Optional[int]:
        """Solve seq(k) = q over integers k >= domain_start."""
        q = Fraction(q)
        p, r = q.numerator, q.denominator
        # k (p c - r a) = r b - p d
        coef = p * self.c - r * self.a
        rhs = r * self.b - p * self.d
        if coef == 0:
            return None
        if rhs % coef != 0:
            return None
        k = rhs // coef
        return k if k >= self.domain_start else None

    def first_index(self, predicate: Callable[[Fraction], bool], start: int) -> int:
        """Least k >= start with predicate(seq(k)); predicate must be monotone false->true and eventually true."""
        if predicate(self.value(start)):
            return start
        lo, step = start, 1
        while not predicate(self.value(start + step)):
            lo = start + step
            step *= 2
        hi = start + step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if predicate(self.value(mid)):
                hi = mid
            else:
                lo = mid
        return hi

    def to_dict(self) -> dict:
        from utils.json_helper import encode_rational

        limit = self.limit
        return {
            "id": self.id, "a": self.a, "b": self.b, "c": self.c, "d": self.d,
            "domain_start": self.domain_start,
            "monotonicity": self.monotonicity,
            "limit": encode_rational(limit) if limit is not None else ("+inf" if self.diverges_to > 0 else "-inf"),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RationalSequence":
        from utils.json_helper import decode_rational

        try:
            seq = cls(
                id=obj["id"], a=int(obj["a"]), b=int(obj["b"]), c=int(obj["c"]), d=int(obj["d"]),
                domain_start=int(obj.get("domain_start", 0)), monotonicity=obj.get("monotonicity", ""),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedSetError(f"bad sequence declaration {obj!r}: {e}")
        declared = obj.get("limit")
        if declared is not None:
            actual = seq.to_dict()["limit"]
            if isinstance(declared, str) and declared in ("+inf", "-inf"):
                ok = declared == actual
            else:
                ok = seq.limit is not None and decode_rational(declared) == seq.limit
            if not ok:
                raise MalformedSetError(f"sequence '{seq.id}' declares limit {declared!r} but has {actual!r}")
        return seq


class SequenceRegistry:
    """Name -> RationalSequence lookup; iteration is in id order so searches are deterministic."""

    def __init__(self, sequences: Optional[List[RationalSequence]] = None) -> None:
        self._by_id: Dict[str, RationalSequence] = {}
        for seq in sequences or []:
            self.register(seq)

    def register(self, seq: RationalSequence) -> RationalSequence:
        existing = self._by_id.get(seq.id)
        if existing is not None and existing != seq:
            raise MalformedSetError(f"sequence id '{seq.id}' already registered with a different formula")
        self._by_id[seq.id] = seq
        return seq

    def get(self, seq_id: str) -> RationalSequence:
        try:
            return self._by_id[seq_id]
        except KeyError:
            raise MalformedSetError(f"unknown sequence id '{seq_id}'")

    def __contains__(self, seq_id: str) -> bool:
        return seq_id in self._by_id

    def __iter__(self) -> Iterator[RationalSequence]:
        return iter(sorted(self._by_id.values(), key=lambda s: s.id))

    def to_dict(self) -> dict:
        return {"sequences": [s.to_dict() for s in self]}

    @classmethod
    def from_dict(cls, obj: dict) -> "SequenceRegistry":
        return cls([RationalSequence.from_dict(s) for s in obj.get("sequences", [])])


# 2k/(2k+1): 0, 2/3, 4/5, ...
EVEN = RationalSequence("even", 2, 0, 2, 1)
# (2k+1)/(2k+2): 1/2, 3/4, 5/6, ...
ODD = RationalSequence("odd", 2, 1, 2, 2)
# k/(k+1): 0, 1/2, 2/3, ...
STEPS = RationalSequence("steps", 1, 0, 1, 1)

DEFAULT_REGISTRY = SequenceRegistry([EVEN, ODD, STEPS])


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _ext_gcd(x: int, y: int) -> Tuple[int, int, int]:
    if y == 0:
        return (x, 1, 0) if x >= 0 else (-x, -1, 0)
    g, s, t = _ext_gcd(y, x % y)
    return g, t, s - (x // y) * t


def _ceil_div(x: int, y: int) -> int:
    return -((-x) // y)


def shared_indices(s1: RationalSequence, m1: int, s2: RationalSequence, m2: int) -> List[Tuple[int, int]]:
    """
    All (k, j) with k >= m1, j >= m2 and s1(k) = s2(j), sorted by k.

    Cross-multiplying gives A*k*j + B*k + C*j + D = 0. With A != 0 this factors as
    (A k + C)(A j + B) = BC - AD and the divisors are enumerated; with A = 0 it is a
    linear Diophantine equation whose solution line is finite in the quadrant only when
    B and C share a sign.

    Raises:
        UnsupportedCombinationError: when the overlap is infinite or too large to enumerate.
    """
    A = s1.a * s2.c - s2.a * s1.c
    B = s1.a * s2.d - s2.b * s1.c
    C = s1.b * s2.c - s2.a * s1.d
    D = s1.b * s2.d - s2.b * s1.d
    found = set()

    def accept(k: int, j: int) -> None:
        if k >= m1 and j >= m2 and s1.value(k) == s2.value(j):
            found.add((k, j))

    if A != 0:
        N = B * C - A * D
        if N == 0:
            if (-C) % A == 0:
                k = -C // A
                if k >= m1:
                    j = s2.index_of(s1.value(k))
                    if j is not None:
                        accept(k, j)
            if (-B) % A == 0:
                j = -B // A
                if j >= m2:
                    k = s1.index_of(s2.value(j))
                    if k is not None:
                        accept(k, j)
        else:
            if abs(N) > _DIVISOR_SEARCH_LIMIT:
                raise UnsupportedCombinationError(f"overlap of '{s1.id}' and '{s2.id}' needs factoring {N}")
            for p in _divisors(N):
                for u in (p, -p):
                    v = N // u
                    if (u - C) % A == 0 and (v - B) % A == 0:
                        accept((u - C) // A, (v - B) // A)
    elif B == 0 and C == 0:
        if D == 0:
            raise UnsupportedCombinationError(f"sequences '{s1.id}' and '{s2.id}' are not comparable")
    elif B == 0:
        if D % C == 0:
            j = -D // C
            if j >= m2:
                k = s1.index_of(s2.value(j))
                if k is not None:
                    accept(k, j)
    elif C == 0:
        if D % B == 0:
            k = -D // B
            if k >= m1:
                j = s2.index_of(s1.value(k))
                if j is not None:
                    accept(k, j)
    else:
        g, x, y = _ext_gcd(B, C)
        if D % g == 0:
            if (B > 0) != (C > 0):
                raise UnsupportedCombinationError(
                    f"sequences '{s1.id}' and '{s2.id}' share infinitely many values"
                )
            # B k + C j = -D; k = k0 + (C/g) t, j = j0 - (B/g) t
            k0, j0 = x * (-D // g), y * (-D // g)
            ck, cj = C // g, -(B // g)
            lo_t, hi_t = None, None
            for base, step, bound in ((k0, ck, m1), (j0, cj, m2)):
                # base + step * t >= bound
                if step > 0:
                    t = _ceil_div(bound - base, step)
                    lo_t = t if lo_t is None else max(lo_t, t)
                else:
                    t = (base - bound) // (-step)
                    hi_t = t if hi_t is None else min(hi_t, t)
            if lo_t is not None and hi_t is not None:
                for t in range(lo_t, hi_t + 1):
                    accept(k0 + ck * t, j0 + cj * t)
    return sorted(found)
