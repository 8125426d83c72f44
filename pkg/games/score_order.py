"""
Analytic dominance for the catalogued infinite games.

Every catalogued game has, for a fixed R_{-i}, a dominance relation of one shape:
a is dominated by b iff a is in a dominable set, b is in a dominating set, and
score(a) < score(b). The score is the identity on rationals, except for a few
overridden strategies (labels in particular), so every query reduces to set algebra
on preimages of half-lines.
"""

import logging
from abc import abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from algebra.symbolic_set import Strategy, SymbolicSet
from games.game import DominanceOracle, Reduction

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


@dataclass(frozen=True)
class ScoreOrder:
    dominable: SymbolicSet
    dominating: SymbolicSet
    overrides: Tuple[Tuple[Strategy, Fraction], ...] = field(default_factory=tuple)

    @classmethod
    def trivial(cls) -> "ScoreOrder":
        """Nothing dominates anything."""
        return cls(SymbolicSet.empty(), SymbolicSet.empty())

    @classmethod
    def identity(cls, space: SymbolicSet) -> "ScoreOrder":
        return cls(space, space)

    @property
    def _override_map(self) -> Dict[Strategy, Fraction]:
        return dict(self.overrides)

    @property
    def _keys(self) -> SymbolicSet:
        return SymbolicSet.of(*[k for k, _ in self.overrides])

    def score(self, x: Strategy) -> Optional[Fraction]:
        table = self._override_map
        if x in table:
            return table[x]
        if isinstance(x, str):
            return None
        return Fraction(x)

    def image(self, S: SymbolicSet) -> SymbolicSet:
        plain = (S - self._keys).numeric_part()
        return plain | SymbolicSet.of(*[v for k, v in self.overrides if S.contains(k)])

    def preimage(self, S: SymbolicSet, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> SymbolicSet:
        """Members of S with lo < score < hi; None leaves that side open."""
        plain = (S - self._keys).numeric_part()
        if hi is not None:
            plain = plain.below(hi)
        if lo is not None:
            plain = plain.above(lo)
        extra = [
            k for k, v in self.overrides
            if S.contains(k) and (hi is None or v < hi) and (lo is None or v > lo)
        ]
        return plain | SymbolicSet.of(*extra)

    def relates(self, a: Strategy, b: Strategy) -> bool:
        if not (self.dominable.contains(a) and self.dominating.contains(b)):
            return False
        sa, sb = self.score(a), self.score(b)
        return sa is not None and sb is not None and sa < sb

    def dominated_elements(self, target: SymbolicSet, scope: SymbolicSet) -> SymbolicSet:
        above = scope & self.dominating
        if above.is_empty:
            return SymbolicSet.empty()
        sup = self.image(above).supremum()
        if sup is None:
            return SymbolicSet.empty()
        return self.preimage(target & self.dominable, hi=sup.value)

    def dominating_set(self, a: Strategy, space: SymbolicSet) -> SymbolicSet:
        sa = self.score(a)
        if sa is None or not self.dominable.contains(a):
            return SymbolicSet.empty()
        return self.preimage(space & self.dominating, lo=sa)

    def lower_contour_set(self, a: Strategy, space: SymbolicSet) -> SymbolicSet:
        sa = self.score(a)
        if sa is None or not self.dominating.contains(a):
            return SymbolicSet.empty()
        return self.preimage(space & self.dominable, hi=sa)


def strictly_below_all(S: SymbolicSet, Y: SymbolicSet) -> SymbolicSet:
    """Numeric members x of S with x < y for every numeric y in Y; all of S's numbers if Y has none."""
    inf = Y.numeric_part().infimum()
    if inf is None:
        return S.numeric_part()
    if inf.value is None:
        return SymbolicSet.empty()
    return S.below(inf.value, inclusive=not inf.attained)


class ScoreOrderOracle(DominanceOracle):
    """Oracle for a game whose relation at each R_{-i} is a ScoreOrder."""

    def __init__(self, spaces: Mapping[str, SymbolicSet], entry: Optional[str] = None) -> None:
        self.spaces = dict(spaces)
        self.entry = entry

    @abstractmethod
    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        ...

    def dominates(self, player: str, a: Strategy, b: Strategy, R: Reduction) -> bool:
        return self.order_at(player, R).relates(a, b)

    def dominated_elements(self, player: str, target: SymbolicSet, scope: SymbolicSet, R: Reduction) -> SymbolicSet:
        return self.order_at(player, R).dominated_elements(target, scope)

    def dominating_set(self, player: str, a: Strategy, R: Reduction) -> SymbolicSet:
        return self.order_at(player, R).dominating_set(a, self.spaces[player])

    def lower_contour_set(self, player: str, a: Strategy, R: Reduction) -> SymbolicSet:
        return self.order_at(player, R).lower_contour_set(a, self.spaces[player])
