"""
Affine chain patterns over a window of stages, and the intersection they converge to.

A pattern describes stage base_stage + period*t of a chain: tail starts move as m + c*t and
interval endpoints either stay put or walk along a registered sequence as seq(m + c*t).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from algebra.sequences import DEFAULT_REGISTRY, RationalSequence, SequenceRegistry
from algebra.symbolic_set import Interval, Point, SymbolicSet, TailFamily, Atom
from utils.json_helper import encode_rational

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class Certificate(str, Enum):
    WINDOW_ONLY = "window-only"
    INDUCTIVE = "inductive"


@dataclass(frozen=True)
class Endpoint:
    value: Optional[Fraction] = None
    seq: Optional[RationalSequence] = None
    m: int = 0
    c: int = 0

    @property
    def moving(self) -> bool:
        return self.seq is not None and self.c > 0

    def at(self, t: int) -> Optional[Fraction]:
        if self.seq is None:
            return self.value
        return self.seq.value(self.m + self.c * t)

    def to_dict(self) -> dict:
        if self.seq is None:
            return {"value": None if self.value is None else encode_rational(self.value)}
        return {"seq": self.seq.id, "m": self.m, "c": self.c}


@dataclass(frozen=True)
class MovingTail:
    seq: RationalSequence
    m: int
    c: int

    def at(self, t: int) -> TailFamily:
        return TailFamily(self.seq, self.m + self.c * t)


@dataclass(frozen=True)
class MovingInterval:
    lo: Endpoint
    hi: Endpoint
    lo_closed: bool
    hi_closed: bool

    def at(self, t: int) -> Interval:
        return Interval(self.lo.at(t), self.hi.at(t), self.lo_closed, self.hi_closed)


@dataclass(frozen=True)
class PlayerTemplate:
    atoms: frozenset
    points: Tuple[Fraction, ...]
    intervals: Tuple[MovingInterval, ...]
    tails: Tuple[MovingTail, ...]

    @property
    def moving(self) -> bool:
        return any(t.c > 0 for t in self.tails) or any(iv.lo.moving or iv.hi.moving for iv in self.intervals)

    def instance(self, t: int) -> SymbolicSet:
        prims = [Atom(a) for a in self.atoms] + [Point(p) for p in self.points]
        prims += [iv.at(t) for iv in self.intervals] + [tail.at(t) for tail in self.tails]
        return SymbolicSet(prims)

    def limit(self) -> SymbolicSet:
        prims = [Atom(a) for a in self.atoms] + [Point(p) for p in self.points]
        prims += [TailFamily(tail.seq, tail.m) for tail in self.tails if tail.c == 0]
        for iv in self.intervals:
            prims.extend(_interval_limit(iv))
        return SymbolicSet(prims)

    def to_dict(self) -> dict:
        return {
            "atoms": sorted(self.atoms),
            "points": [encode_rational(p) for p in self.points],
            "intervals": [
                {"lo": iv.lo.to_dict(), "hi": iv.hi.to_dict(), "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}
                for iv in self.intervals
            ],
            "tails": [{"seq": t.seq.id, "m": t.m, "c": t.c} for t in self.tails],
        }


def _interval_limit(iv: MovingInterval) -> List[Interval]:
    # intersection over t: lower end is the sup of lo(t), upper end the inf of hi(t);
    # a strictly monotone endpoint never reaches its limit, so the limit side is closed
    lo, lo_closed = iv.lo.at(0), iv.lo_closed
    if iv.lo.moving and iv.lo.seq.increasing:
        if iv.lo.seq.limit is None:
            return []
        lo, lo_closed = iv.lo.seq.limit, True
    hi, hi_closed = iv.hi.at(0), iv.hi_closed
    if iv.hi.moving and not iv.hi.seq.increasing:
        if iv.hi.seq.limit is None:
            return []
        hi, hi_closed = iv.hi.seq.limit, True
    return [Interval(lo, hi, lo_closed, hi_closed)]


@dataclass(frozen=True)
class ChainPattern:
    base_stage: int
    period: int
    verified_window: int
    templates: Tuple[Tuple[str, PlayerTemplate], ...]
    certificate: Certificate = Certificate.WINDOW_ONLY

    @property
    def players(self) -> List[str]:
        return [p for p, _ in self.templates]

    def template(self, player: str) -> PlayerTemplate:
        return dict(self.templates)[player]

    @property
    def is_constant(self) -> bool:
        return not any(tpl.moving for _, tpl in self.templates)

    def instance(self, t: int) -> Dict[str, SymbolicSet]:
        return {p: tpl.instance(t) for p, tpl in self.templates}

    def stage_of(self, t: int) -> int:
        return self.base_stage + self.period * t

    def with_certificate(self, certificate: Certificate) -> "ChainPattern":
        return ChainPattern(self.base_stage, self.period, self.verified_window, self.templates, certificate)

    def to_dict(self) -> dict:
        return {
            "base_stage": self.base_stage,
            "period": self.period,
            "verified_window": self.verified_window,
            "certificate": self.certificate.value,
            "templates": {p: tpl.to_dict() for p, tpl in self.templates},
        }


@dataclass(frozen=True)
class ChainLimit:
    components: Dict[str, SymbolicSet]
    heuristic: bool


def _fit_endpoint(values: List[Optional[Fraction]], registry: SequenceRegistry) -> Optional[Endpoint]:
    if all(v == values[0] for v in values):
        return Endpoint(value=values[0])
    if any(v is None for v in values):
        return None
    for seq in registry:
        k0, k1 = seq.index_of(values[0]), seq.index_of(values[1])
        if k0 is None or k1 is None or k1 <= k0:
            continue
        c = k1 - k0
        if all(seq.index_of(v) == k0 + c * t for t, v in enumerate(values)):
            return Endpoint(seq=seq, m=k0, c=c)
    return None


def _fit_player(sets: List[SymbolicSet], registry: SequenceRegistry) -> Optional[PlayerTemplate]:
    first = sets[0]
    for S in sets[1:]:
        if S.atoms != first.atoms or S.points != first.points or len(S.intervals) != len(first.intervals):
            return None
        if [t.seq.id for t in S.tails] != [t.seq.id for t in first.tails]:
            return None

    tails = []
    for idx, tail in enumerate(first.tails):
        starts = [S.tails[idx].start for S in sets]
        c = starts[1] - starts[0]
        if c < 0 or any(s != starts[0] + c * t for t, s in enumerate(starts)):
            return None
        tails.append(MovingTail(tail.seq, starts[0], c))

    intervals = []
    for idx, iv in enumerate(first.intervals):
        column = [S.intervals[idx] for S in sets]
        if any(x.lo_closed != iv.lo_closed or x.hi_closed != iv.hi_closed for x in column):
            return None
        lo = _fit_endpoint([x.lo for x in column], registry)
        hi = _fit_endpoint([x.hi for x in column], registry)
        if lo is None or hi is None:
            return None
        intervals.append(MovingInterval(lo, hi, iv.lo_closed, iv.hi_closed))

    template = PlayerTemplate(first.atoms, first.points, tuple(intervals), tuple(tails))
    if any(template.instance(t) != S for t, S in enumerate(sets)):
        return None
    return template


def detect_affine_pattern(
    history: Sequence[Mapping[str, SymbolicSet]],
    window: int,
    registry: Optional[SequenceRegistry] = None,
    max_period: int = 4,
    base_index: int = 0,
) -> Optional[ChainPattern]:
    """
    Find the smallest period p such that the last `window` stages taken every p steps
    follow one affine template.

    Args:
        history: consecutive stages of a chain, each a player -> set mapping
        window: number of sampled stages the template must reproduce (>= 3)
        base_index: stage index of history[0], so base_stage refers to the full trace

    Returns:
        ChainPattern with a window-only certificate, or None.
    """
    if window < 3:
        raise ValueError("window must be at least 3")
    registry = registry or DEFAULT_REGISTRY
    if len(history) < window:
        return None
    players = list(history[0].keys())
    for period in range(1, max_period + 1):
        needed = period * (window - 1) + 1
        if needed > len(history):
            break
        offset = len(history) - needed
        samples = list(history[offset::period])
        templates = []
        for player in players:
            tpl = _fit_player([stage[player] for stage in samples], registry)
            if tpl is None:
                break
            templates.append((player, tpl))
        else:
            pattern = ChainPattern(base_index + offset, period, window, tuple(templates))
            logger.info(f"Detected affine pattern with period {period} from stage {pattern.base_stage}")
            return pattern
    logger.info(f"No affine pattern over the last {len(history)} stages (window {window})")
    return None


def chain_limit(p: ChainPattern) -> ChainLimit:
    """Intersection over t of instance(p, t); window-only certificates mark the result heuristic."""
    heuristic = p.certificate is not Certificate.INDUCTIVE
    if heuristic:
        logger.warning(f"Limit from pattern at stage {p.base_stage} rests on a window-only certificate")
    return ChainLimit({player: tpl.limit() for player, tpl in p.templates}, heuristic)
