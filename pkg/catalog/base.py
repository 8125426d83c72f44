import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from algebra.notation import render_value
from algebra.patterns import ChainPattern
from algebra.sequences import DEFAULT_REGISTRY, RationalSequence
from algebra.symbolic_set import Strategy, SymbolicSet
from engine.elimination import run
from engine.modes import Budget, Mode
from engine.policies import Policy, RandomSubset
from engine.trace import EliminationTrace
from enumeration.enumerator import MaximalSet
from games.finite import build_finite_game
from games.game import Game, Reduction
from games.score_order import ScoreOrderOracle
from utils.errors import BudgetExhaustedError, DomLabError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

PLAYERS = ("1", "2")
IDLE = "idle"
RANDOM_SEEDS = range(100)


class FixtureResult(BaseModel):
    entry: str
    name: str
    claim: str
    passed: bool
    detail: str = ""
    # None: not a truncation claim; False: holds only in the infinite game
    truncation_stable: Optional[bool] = None


class CatalogReport(BaseModel):
    entry: str
    fixtures: List[FixtureResult]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.fixtures)

    def to_dict(self) -> dict:
        out = self.model_dump()
        out["passed"] = self.passed
        return out


@dataclass
class TruncatedGame:
    game: Game
    depth: int
    to_value: Dict[Tuple[str, str], Strategy]
    to_label: Dict[Tuple[str, Strategy], str]

    def reduction(self, R: Reduction) -> Reduction:
        """A finite reduction of the analytic game, relabelled for the truncation."""
        return Reduction(
            self.game.players,
            [SymbolicSet.of(*[self.to_label[(p, v)] for v in R[p].elements()]) for p in self.game.players],
        )


def certified_by_family(pattern: ChainPattern, families: Mapping[str, Sequence[RationalSequence]]) -> bool:
    """
    Pattern shape that a family game's elimination follows provably: no intervals, each moving
    primitive is a tail of the player's own family advancing by at least one index per period.
    """
    for player, tpl in pattern.templates:
        own = {seq.id for seq in families.get(player, ())}
        if tpl.intervals:
            return False
        if any(t.seq.id not in own or t.c < 1 for t in tpl.tails):
            return False
    return not pattern.is_constant


def stage_pairs(trace: EliminationTrace) -> List[Tuple[Reduction, Reduction]]:
    """(R, S) for every pair of stages with R at or before S."""
    rows = trace.reductions()
    return [(rows[i], rows[j]) for i in range(len(rows)) for j in range(i, len(rows))]


def random_nested_outcomes(g: Game, target: Reduction, seeds: Sequence[int] = RANDOM_SEEDS) -> Tuple[bool, str]:
    """
    Run nested elimination under RandomSubset for every seed. A run that exhausts its budget
    counts as non-terminal; any run that ends elsewhere than `target` fails the check.
    """
    terminal, non_terminal = 0, 0
    for seed in seeds:
        try:
            t = run(g, Mode.NESTED, RandomSubset(seed), Budget.from_settings())
        except BudgetExhaustedError:
            non_terminal += 1
            continue
        if t.final != target:
            return False, f"seed {seed} ended at {t.final} at stage {t.final_stage}"
        terminal += 1
    return True, f"{terminal} of {len(seeds)} seeds reached {target}, {non_terminal} non-terminal"


class CatalogEntry(ABC):
    id: str = ""
    title: str = ""
    aliases: Tuple[str, ...] = ()

    def __init__(self) -> None:
        self._game: Optional[Game] = None

    @abstractmethod
    def spaces(self) -> Dict[str, SymbolicSet]:
        ...

    @abstractmethod
    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        ...

    @abstractmethod
    def make_oracle(self) -> ScoreOrderOracle:
        ...

    @abstractmethod
    def maximal_set(self, mode: Mode) -> MaximalSet:
        ...

    @abstractmethod
    def probe_values(self, player: str, depth: int) -> List[Strategy]:
        """Finite grid of strategies used for truncation and probing."""

    @abstractmethod
    def fixtures(self) -> List[FixtureResult]:
        ...

    def game(self) -> Game:
        if self._game is None:
            self._game = Game(self.id, PLAYERS, self.spaces(), self.make_oracle(), registry=DEFAULT_REGISTRY)
        return self._game

    def reduction(self, text: str) -> Reduction:
        return self.game().parse_reduction(text)

    def run(self, mode: Mode, policy: Policy, budget: Optional[Budget] = None) -> EliminationTrace:
        return run(self.game(), mode, policy, budget or Budget.from_settings())

    def truncate(self, depth: int) -> TruncatedGame:
        to_value: Dict[Tuple[str, str], Strategy] = {}
        to_label: Dict[Tuple[str, Strategy], str] = {}
        labels: Dict[str, List[str]] = {}
        for p in PLAYERS:
            labels[p] = []
            for v in self.probe_values(p, depth):
                label = render_value(v)
                to_value[(p, label)] = v
                to_label[(p, v)] = label
                labels[p].append(label)

        def payoff(player: str, profile: Dict[str, str]) -> Fraction:
            return self.payoff(player, {q: to_value[(q, label)] for q, label in profile.items()})

        game = build_finite_game(f"{self.id}@{depth}", PLAYERS, labels, payoff)
        return TruncatedGame(game, depth, to_value, to_label)

    def check(self, name: str, claim: str, fixture: Callable[[], Tuple[bool, str]], truncation_stable: Optional[bool] = None) -> FixtureResult:
        try:
            passed, detail = fixture()
        except DomLabError as e:
            logger.error(f"[{self.__class__.__name__}] fixture '{name}' raised {e.__class__.__name__}: {e.message}")
            passed, detail = False, f"{e.__class__.__name__}: {e.message}"
        if not passed:
            logger.warning(f"[{self.__class__.__name__}] {self.id}: fixture '{name}' failed ({detail})")
        return FixtureResult(
            entry=self.id, name=name, claim=claim, passed=passed, detail=detail, truncation_stable=truncation_stable
        )

    def verify(self) -> CatalogReport:
        logger.info(f"[{self.__class__.__name__}] Verifying catalog entry '{self.id}'")
        return CatalogReport(entry=self.id, fixtures=self.fixtures())

    def describe(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "aliases": list(self.aliases),
            "spaces": {p: str(s) for p, s in self.spaces().items()},
        }
