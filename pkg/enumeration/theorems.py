"""
Instance-by-instance checks of the equivalence theorems on a finite game.

Every claim here is a proven statement about all games; a failing assertion means a bug
in the engine, the oracle or the enumerator, never a counterexample.
"""

import itertools
import logging
import time
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel

from algebra.symbolic_set import SymbolicSet
from analyzers.boundedness import (
    closed_under_dominance_star,
    is_completely_bounded,
    is_forgetfulness_proof,
    is_locally_bounded,
    maximal_has_no_undominated_dominators,
    property_c_at,
)
from config import EnumerationCaps, settings
from engine.elimination import is_maximal, validate_step
from engine.gkz import gkz_interpolate
from engine.modes import Mode
from enumeration.enumerator import SequenceClass, enumerate_sequences
from games.game import Game, Reduction
from utils.errors import DomLabError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class Assertion(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class TheoremReport(BaseModel):
    game: str
    assertions: List[Assertion]
    counts: Dict[str, int]
    timing_seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def failures(self) -> List[Assertion]:
        return [a for a in self.assertions if not a.passed]

    def to_dict(self) -> dict:
        out = self.model_dump(exclude_none=True)
        out["passed"] = self.passed
        return out


def product_subsets(g: Game) -> List[Reduction]:
    """Every non-empty product subset of A."""
    per_player = []
    for p in g.players:
        items = g.ordered(p, g.space(p))
        per_player.append(
            [SymbolicSet.of(*c) for size in range(1, len(items) + 1) for c in itertools.combinations(items, size)]
        )
    return [Reduction(g.players, combo) for combo in itertools.product(*per_player)]


def _all(pred: Callable[[Reduction], bool], reductions) -> bool:
    return all(pred(R) for R in reductions)


def _edges(cls: SequenceClass):
    return [(R, S) for R, kids in cls.edges.items() for S in kids]


def _is_prefix_of_some(seq, others) -> bool:
    return any(o[: len(seq)] == seq for o in others)


class TheoremChecker:
    def __init__(self, g: Game, caps: Optional[EnumerationCaps] = None) -> None:
        self.g = g
        self.caps = caps or settings.CAPS
        self.assertions: List[Assertion] = []

    def _assert(self, name: str, passed: bool, detail: str = "") -> None:
        if not passed:
            logger.error(f"[{self.__class__.__name__}] '{name}' failed on '{self.g.name}': {detail}")
        self.assertions.append(Assertion(name=name, passed=bool(passed), detail=detail))

    def _guarded(self, name: str, check: Callable[[], None]) -> None:
        try:
            check()
        except DomLabError as e:
            self._assert(name, False, f"{e.__class__.__name__}: {e.message}")

    def run(self) -> TheoremReport:
        started = time.perf_counter()
        g = self.g
        En = enumerate_sequences(g, Mode.NESTED, self.caps)
        Eu = enumerate_sequences(g, Mode.UNIVERSAL, self.caps)
        Eg = enumerate_sequences(g, Mode.GKZ, self.caps)
        seq_n, seq_u, seq_g = set(En.sequences), set(Eu.sequences), set(Eg.sequences)
        subsets = product_subsets(g)

        cb = lambda R: is_completely_bounded(g, R).holds
        lb = lambda R: is_locally_bounded(g, R).holds

        self._assert("universal class has one maximal reduction", len(Eu.maximal_set) == 1, f"{sorted(map(str, Eu.maximal_set))}")
        (Ru,) = tuple(Eu.maximal_set)[:1] or (None,)
        self._assert(
            "universal maximal reduction inside every nested one",
            Ru is not None and all(Ru.issubset(Rn) for Rn in En.maximal_set),
            f"universal {Ru}",
        )

        t1 = [En.maximal_set == Eu.maximal_set, _all(cb, En.maximal_set), seq_n <= seq_u]
        self._assert("theorem-1 equivalences", len(set(t1)) == 1, f"outcomes equal / maximal bounded / E^n ⊆ E^u = {t1}")

        t2 = [_all(cb, En.range), _all(cb, Eu.range), seq_n == seq_u]
        self._assert("theorem-2 equivalences", len(set(t2)) == 1, f"E^n bounded / E^u bounded / E^n = E^u = {t2}")

        self._assert("gkz sequences are nested sequences", seq_g <= seq_n, f"{len(seq_g - seq_n)} outside")
        self._assert("gkz and nested maximal sets agree", Eg.maximal_set == En.maximal_set)
        t3 = [_all(lb, Eg.range), _all(lb, En.range), seq_g == seq_n]
        self._assert("theorem-3 equivalences", len(set(t3)) == 1, f"E^g local / E^n local / E^g = E^n = {t3}")

        all_bounded = _all(cb, subsets)
        self._assert("all reductions of a finite game are completely bounded", all_bounded)
        self._assert("corollary-1", (not all_bounded) or seq_n == seq_u)
        self._assert("finite classes coincide", seq_g == seq_n == seq_u)

        self._assert(
            "maximal nested reductions have no undominated dominators",
            _all(lambda R: maximal_has_no_undominated_dominators(g, R).holds, En.maximal_set),
        )
        self._assert(
            "nested and gkz maximality agree",
            all(is_maximal(g, R, Mode.NESTED) == is_maximal(g, R, Mode.GKZ) for R in set(subsets) | En.range),
        )
        self._assert(
            "gkz steps are nested steps",
            all(validate_step(g, R, S, Mode.NESTED).holds for R, S in _edges(Eg)),
        )
        self._assert(
            "nested steps are universal steps",
            all(validate_step(g, R, S, Mode.UNIVERSAL).holds for R, S in _edges(En)),
        )
        self._assert(
            "gkz sequences extend to nested ones",
            all(_is_prefix_of_some(s, En.sequences) for s in Eg.sequences),
        )
        self._assert(
            "nested sequences extend to universal ones",
            all(_is_prefix_of_some(s, Eu.sequences) for s in En.sequences),
        )
        self._assert(
            "complete boundedness implies local boundedness on ranges",
            all(lb(R) for R in En.range | Eu.range if cb(R)),
        )

        def lemma_2() -> None:
            for R, S in _edges(En):
                chain = gkz_interpolate(g, R, S)
                removed = sum(len((R[p] - S[p]).elements()) for p in g.players)
                if chain[0] != R or chain[-1] != S or len(chain) > 1 + removed:
                    self._assert("gkz interpolation of nested steps", False, f"{R} -> {S}")
                    return
            self._assert("gkz interpolation of nested steps", True, f"{len(_edges(En))} steps")

        self._guarded("gkz interpolation of nested steps", lemma_2)

        local = all(lb(R) for R in En.range)
        forget = is_forgetfulness_proof(g, self.caps, reductions=En.range).holds
        self._assert("forgetfulness-proof iff locally bounded", forget == local)
        star = closed_under_dominance_star(g, self.caps, pairs=En.reachable_pairs()).holds
        self._assert("dominance-star implies local boundedness", (not star) or local)
        self._assert("property C holds on finite games", all(property_c_at(g, R).holds for R in En.range))

        elapsed = time.perf_counter() - started
        report = TheoremReport(
            game=g.name,
            assertions=self.assertions,
            counts={
                "nested_sequences": len(seq_n),
                "universal_sequences": len(seq_u),
                "gkz_sequences": len(seq_g),
                "nested_range": len(En.range),
                "universal_range": len(Eu.range),
                "nested_maximal": len(En.maximal_set),
            },
            timing_seconds=round(elapsed, 3) if settings.REPORT_TIMING else None,
        )
        logger.info(f"[{self.__class__.__name__}] '{g.name}': {len(report.failures)} of {len(self.assertions)} assertions failed")
        return report


def check_theorems(g: Game, caps: Optional[EnumerationCaps] = None) -> TheoremReport:
    return TheoremChecker(g, caps).run()
