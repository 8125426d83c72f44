"""
Cross-validation of the analytic catalog oracles against brute force on finite truncations.

The dominance relation at R only depends on R_{-i}, so for every opponent set Y drawn from the
probe grid the analytic answer must equal the payoff comparison on the truncated game.
"""

import itertools
import logging
from typing import List, Optional

from pydantic import BaseModel

from algebra.notation import render_value
from algebra.symbolic_set import SymbolicSet
from catalog.base import CatalogEntry, TruncatedGame
from catalog.registry import CATALOG, instantiate, resolve
from config import settings
from games import dominance
from games.game import Reduction

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

# opponents with at most this many probe values get every non-empty subset
_ALL_SUBSETS_UP_TO = 3


class ProbeMismatch(BaseModel):
    player: str
    query: str
    opponents: str
    analytic: str
    brute_force: str


class ProbeReport(BaseModel):
    entry: str
    depth: int
    queries: int
    mismatches: List[ProbeMismatch]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        out = self.model_dump()
        out["passed"] = self.passed
        return out


def _opponent_sets(values: list) -> List[list]:
    if len(values) <= _ALL_SUBSETS_UP_TO:
        return [list(c) for size in range(1, len(values) + 1) for c in itertools.combinations(values, size)]
    singletons = [[v] for v in values]
    suffixes = [values[k:] for k in range(len(values) - 1)]
    return suffixes + singletons


class OracleProbe:
    def __init__(self, entry: CatalogEntry, depth: int) -> None:
        self.entry = entry
        self.depth = depth
        self.game = entry.game()
        self.truncated: TruncatedGame = entry.truncate(depth)
        self.mismatches: List[ProbeMismatch] = []
        self.queries = 0

    def _record(self, player: str, query: str, Y: list, analytic, brute) -> None:
        self.queries += 1
        if analytic != brute:
            mismatch = ProbeMismatch(
                player=player,
                query=query,
                opponents="{" + ", ".join(render_value(v) for v in Y) + "}",
                analytic=str(analytic),
                brute_force=str(brute),
            )
            logger.warning(f"[{self.__class__.__name__}] {self.entry.id}: {mismatch.model_dump()}")
            self.mismatches.append(mismatch)

    def _pair(self, player: str, own: list, other: str, Y: list):
        analytic = self.game.reduction({player: SymbolicSet.of(*own), other: SymbolicSet.of(*Y)})
        return analytic, self.truncated.reduction(analytic)

    def probe_player(self, player: str) -> None:
        other = next(p for p in self.game.players if p != player)
        own = self.entry.probe_values(player, self.depth)
        label = self.truncated.to_label
        tg = self.truncated.game
        for Y in _opponent_sets(self.entry.probe_values(other, self.depth)):
            R, R_t = self._pair(player, own, other, Y)
            for a, b in itertools.product(own, own):
                self._record(
                    player,
                    f"dominates({render_value(a)}, {render_value(b)})",
                    Y,
                    dominance.dominates(self.game, player, a, b, R),
                    dominance.dominates(tg, player, label[(player, a)], label[(player, b)], R_t),
                )
            grid = SymbolicSet.of(*own)
            analytic = dominance.dominated_elements(self.game, player, grid, grid, R)
            brute = dominance.dominated_elements(tg, player, R_t[player], R_t[player], R_t)
            self._record(
                player,
                "dominated_elements(grid, grid)",
                Y,
                sorted(label[(player, v)] for v in analytic.elements()),
                sorted(brute.elements()),
            )

    def run(self) -> ProbeReport:
        for player in self.game.players:
            self.probe_player(player)
        logger.info(
            f"[{self.__class__.__name__}] {self.entry.id} at depth {self.depth}: "
            f"{len(self.mismatches)} mismatches in {self.queries} queries"
        )
        return ProbeReport(entry=self.entry.id, depth=self.depth, queries=self.queries, mismatches=self.mismatches)


def cross_validate_oracle(name: str, depth: Optional[int] = None) -> ProbeReport:
    return OracleProbe(instantiate(name), depth or settings.PROBE_DEPTH).run()


def cross_validate_catalog(name: str = "all", depth: Optional[int] = None) -> List[ProbeReport]:
    names = list(CATALOG) if name == "all" else [resolve(name)]
    return [cross_validate_oracle(n, depth) for n in names]
