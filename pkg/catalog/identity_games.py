"""
One active player choosing a rational in an interval with payoff equal to the choice.

The second player is a dummy with the single strategy "idle" and a constant payoff, so the
games fit the two-player model without changing any dominance relation.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

from algebra.patterns import ChainPattern
from algebra.sequences import STEPS
from algebra.symbolic_set import Interval, Strategy, SymbolicSet
from analyzers.boundedness import is_completely_bounded, is_locally_bounded
from catalog.base import IDLE, PLAYERS, CatalogEntry, FixtureResult
from engine.elimination import is_maximal, run, validate_sequence, validate_step
from engine.modes import Budget, Mode, Stage
from engine.policies import RemoveAll, Scripted
from enumeration.enumerator import MaximalSet
from games.game import Reduction
from games.score_order import ScoreOrder, ScoreOrderOracle

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

HALF = Fraction(1, 2)


class IdentityOracle(ScoreOrderOracle):
    def __init__(self, spaces, entry: str, steps_rule: bool = False) -> None:
        super().__init__(spaces, entry)
        self.steps_rule = steps_rule

    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        if player == PLAYERS[0]:
            return ScoreOrder.identity(self.spaces[player])
        return ScoreOrder.trivial()

    def _steps_interval(self, S: SymbolicSet) -> Optional[int]:
        """k when S is exactly (steps(k), 1)."""
        if S.atoms or S.points or S.tails or len(S.intervals) != 1:
            return None
        iv = S.intervals[0]
        if iv.lo_closed or iv.hi_closed or iv.hi != 1 or iv.lo is None:
            return None
        return STEPS.index_of(iv.lo)

    def gkz_removal(self, player: str, removable: SymbolicSet, R: Reduction) -> Optional[SymbolicSet]:
        # (steps(k), 1) -> (steps(k+1), 1): the removed slice is dominated by everything left
        if not self.steps_rule or player != PLAYERS[0]:
            return None
        k = self._steps_interval(R[player])
        if k is None:
            return None
        lo, nxt = STEPS.value(k), STEPS.value(k + 1)
        chunk = SymbolicSet([Interval(lo, nxt, False, True)])
        return chunk if chunk.issubset(removable) else None

    def certify_pattern(self, pattern: ChainPattern) -> bool:
        for player, tpl in pattern.templates:
            if player != PLAYERS[0]:
                if tpl.moving:
                    return False
                continue
            if tpl.atoms or tpl.points or tpl.tails or len(tpl.intervals) != 1:
                return False
            iv = tpl.intervals[0]
            if not (self.steps_rule and iv.lo.moving and iv.lo.seq.id == STEPS.id):
                return False
            if iv.hi.moving or iv.hi.value != 1 or iv.lo_closed or iv.hi_closed:
                return False
        return True


class _IdentityEntry(CatalogEntry):
    space: SymbolicSet = SymbolicSet.empty()
    steps_rule = False

    def spaces(self) -> Dict[str, SymbolicSet]:
        return {PLAYERS[0]: self.space, PLAYERS[1]: SymbolicSet.of(IDLE)}

    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        return Fraction(profile[PLAYERS[0]]) if player == PLAYERS[0] else Fraction(0)

    def make_oracle(self) -> IdentityOracle:
        return IdentityOracle(self.spaces(), self.id, self.steps_rule)

    def probe_values(self, player: str, depth: int) -> List[Strategy]:
        if player != PLAYERS[0]:
            return [IDLE]
        grid = [Fraction(k, depth + 1) for k in range(depth + 2)]
        return [v for v in grid if self.space.contains(v)]

    def single(self, value) -> Reduction:
        return self.game().reduction({PLAYERS[0]: SymbolicSet.of(value), PLAYERS[1]: SymbolicSet.of(IDLE)})

    def _singleton_predicate(self, R: Reduction) -> bool:
        first = R[PLAYERS[0]]
        return first.is_finite and first.cardinality() == 1 and self.space.contains(first.elements()[0])


class OpenIntervalEntry(_IdentityEntry):
    id = "intro_open_interval"
    title = "Identity payoff on (0, 1)"
    aliases = ("intro",)
    space = SymbolicSet.interval(0, 1, False, False)
    steps_rule = True

    def maximal_set(self, mode: Mode) -> MaximalSet:
        empty = Reduction(PLAYERS, [SymbolicSet.empty(), SymbolicSet.of(IDLE)])
        if mode is Mode.UNIVERSAL:
            return MaximalSet((empty,), "only the empty reduction")
        return MaximalSet((empty,), "the empty reduction and every singleton {a}, a in (0,1)", self._singleton_predicate)

    def scripted_singleton(self, a: Fraction) -> Scripted:
        upper = SymbolicSet.interval(a, 1, False, False)
        lower = SymbolicSet.interval(0, a, False, False)
        return Scripted([{PLAYERS[0]: upper}, {PLAYERS[0]: lower}])

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        out = []

        def universal_empty():
            t = run(g, Mode.UNIVERSAL, RemoveAll(), Budget.from_settings())
            return t.final.is_empty and t.final_stage == Stage(0, 1), f"{t.final} at {t.final_stage}"

        out.append(self.check("universal-empty", "universal elimination removes everything in one step", universal_empty))

        def nested_half():
            t = run(g, Mode.NESTED, self.scripted_singleton(HALF), Budget(max_successor_steps=2, max_limits=0))
            return t.final == self.single(HALF) and t.terminal_maximal, f"{t.final}"

        out.append(self.check("nested-half", "removing (1/2,1) then (0,1/2) leaves the maximal {1/2}", nested_half))

        def singleton_family():
            for k in range(1, 21):
                a = Fraction(k, 21)
                t = run(g, Mode.NESTED, self.scripted_singleton(a), Budget(max_successor_steps=2, max_limits=0))
                if t.final != self.single(a) or not validate_sequence(g, t).holds:
                    return False, f"chain to {a} ended at {t.final}"
                if not self.maximal_set(Mode.NESTED).contains(t.final):
                    return False, f"{t.final} outside the maximal family"
            return True, "20 singletons reached and maximal"

        out.append(self.check("nested-singletons", "every singleton {a} is a maximal nested reduction", singleton_family))

        def singletons_unbounded():
            verdict = is_completely_bounded(g, self.single(HALF))
            return not verdict.holds, verdict.scope_note

        out.append(self.check("singleton-unbounded", "no non-empty maximal nested reduction is completely bounded", singletons_unbounded))
        return out


class GkzOmegaEntry(OpenIntervalEntry):
    id = "gkz_omega_plus_one"
    title = "GKZ elimination on (0, 1) needs omega + 1 stages"
    aliases = ("gkz",)

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        out = []

        def nested_one_step():
            t = run(g, Mode.NESTED, RemoveAll(), Budget.from_settings())
            return t.final.is_empty and t.final_stage == Stage(0, 1), f"{t.final} at {t.final_stage}"

        out.append(self.check("nested-one-step", "nested elimination reaches the empty set at stage 1", nested_one_step))

        def gkz_omega():
            t = run(g, Mode.GKZ, RemoveAll(), Budget.from_settings(strict=True))
            ok = t.final.is_empty and t.final_stage == Stage(1, 0) and t.terminal_maximal and not t.heuristic
            return ok and validate_sequence(g, t).holds, f"{t.final} at {t.final_stage}, length {t.length}"

        out.append(self.check("gkz-omega-plus-one", "GKZ elimination reaches the empty set only at stage omega", gkz_omega))

        def gkz_links_nested():
            t = run(g, Mode.GKZ, RemoveAll(), Budget.from_settings(strict=True))
            pairs = [(t.stages[i - 1][1], t.stages[i][1]) for i in t.justifications]
            bad = [i for i, (R, S) in zip(t.justifications, pairs) if not validate_step(g, R, S, Mode.NESTED).holds]
            return not bad, f"{len(pairs)} GKZ steps checked"

        out.append(self.check("gkz-steps-nested", "every GKZ step is a nested step", gkz_links_nested))
        return out


class ClosedUnitEntry(_IdentityEntry):
    id = "closed_unit_identity"
    title = "Identity payoff on [0, 1]"
    aliases = ("closed_unit",)
    space = SymbolicSet.interval(0, 1)

    def maximal_set(self, mode: Mode) -> MaximalSet:
        return MaximalSet((self.single(1),), "the top strategy 1")

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        half_open = g.reduction({PLAYERS[0]: SymbolicSet.interval(0, 1, True, False), PLAYERS[1]: SymbolicSet.of(IDLE)})
        out = []

        def one_step():
            t = run(g, Mode.NESTED, RemoveAll(), Budget.from_settings())
            return t.final == self.single(1) and t.final_stage == Stage(0, 1), f"{t.final} at {t.final_stage}"

        out.append(self.check("nested-one-step", "nested elimination reaches {1} in one step", one_step))
        out.append(self.check(
            "half-open-complete",
            "[0,1) is completely bounded",
            lambda: (is_completely_bounded(g, half_open).holds, str(half_open)),
        ))
        out.append(self.check(
            "half-open-not-local",
            "[0,1) is not locally bounded",
            lambda: (not is_locally_bounded(g, half_open).holds, str(half_open)),
        ))
        out.append(self.check(
            "all-modes-maximal",
            "{1} is maximal in every mode",
            lambda: (all(is_maximal(g, self.single(1), m) for m in Mode), "nested, universal, gkz"),
        ))
        return out
