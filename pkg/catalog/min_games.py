"""
Two-player games on the sequences even = {2k/(2k+1)} and odd = {(2k+1)/(2k+2)}, with payoffs built
from min(a_1, a_2). Elimination climbs both sequences one strategy at a time, so every run
needs a limit stage at omega.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping

from algebra.patterns import ChainPattern
from algebra.sequences import EVEN, ODD
from algebra.symbolic_set import Strategy, SymbolicSet
from analyzers.boundedness import (
    class_boundedness,
    closed_under_dominance_star,
    dominance_star_at,
    is_completely_bounded,
    is_locally_bounded,
    property_c_at,
    satisfies_property_c,
)
from catalog.base import PLAYERS, CatalogEntry, FixtureResult, certified_by_family, random_nested_outcomes, stage_pairs
from config import EnumerationCaps
from engine.elimination import is_maximal, run, validate_sequence
from engine.modes import Budget, Mode, Stage
from engine.policies import RemoveAll, Scripted
from enumeration.enumerator import MaximalSet, enumerate_sequences
from games.game import Reduction
from games.score_order import ScoreOrder, ScoreOrderOracle, strictly_below_all

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

LEFT, RIGHT = "Left", "Right"
ONE = Fraction(1)
FAMILIES = {PLAYERS[0]: (EVEN,), PLAYERS[1]: (ODD,)}
TRUNCATION_DEPTHS = (3, 5, 7)
TRUNCATION_CAPS = EnumerationCaps(max_strategies_total=20)


def _other(player: str) -> str:
    return PLAYERS[1] if player == PLAYERS[0] else PLAYERS[0]


def _family(player: str) -> SymbolicSet:
    return SymbolicSet.tail(FAMILIES[player][0])


def _all_positive(Y: SymbolicSet) -> bool:
    inf = Y.numeric_part().infimum()
    return inf is not None and inf.value is not None and (inf.value > 0 or (inf.value == 0 and not inf.attained))


class FamilyOracle(ScoreOrderOracle):
    """Limit chains of these games only ever shrink the players' own sequence tails."""

    def certify_pattern(self, pattern: ChainPattern) -> bool:
        return certified_by_family(pattern, FAMILIES)


class OrderIndependentOracle(FamilyOracle):
    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        A = self.spaces[player]
        Y = R[_other(player)]
        top = SymbolicSet.of(ONE)
        if Y == top:
            # only the top column is left: 1 scores 0 there and drops to the bottom
            return ScoreOrder(A, A - top, ((ONE, Fraction(0)),))
        dominating = A - top if Y.contains(ONE) else A
        return ScoreOrder(strictly_below_all(A, Y - top), dominating)


class PropertyCOracle(FamilyOracle):
    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        A = self.spaces[player]
        numerics = A.numeric_part()
        Y = R[_other(player)]
        Y_labels = Y.atom_part()
        if not Y.numeric_part().is_empty:
            dominable = strictly_below_all(A, Y)
            if _all_positive(Y):
                dominable = dominable | (A.atom_part() - Y_labels)
            return ScoreOrder(dominable, numerics, ((LEFT, Fraction(0)), (RIGHT, Fraction(0))))
        if Y_labels.cardinality() == 1:
            (match,) = Y_labels.elements()
            miss = RIGHT if match == LEFT else LEFT
            return ScoreOrder(A, A, ((match, Fraction(1)), (miss, Fraction(0))))
        return ScoreOrder(numerics, numerics)


class ClosureStarOracle(FamilyOracle):
    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        A = self.spaces[player]
        if player == PLAYERS[0]:
            # -1 sits below every other strategy whatever player 2 keeps
            return ScoreOrder(strictly_below_all(A, R[PLAYERS[1]]), A)
        return ScoreOrder(strictly_below_all(A, R[PLAYERS[0]] - SymbolicSet.of(Fraction(-1))), A)


class _FamilyEntry(CatalogEntry):
    def make_oracle(self) -> FamilyOracle:
        return self.oracle_class(self.spaces(), self.id)

    def extra_values(self, player: str) -> List[Strategy]:
        return []

    def probe_values(self, player: str, depth: int) -> List[Strategy]:
        seq = FAMILIES[player][0]
        return self.extra_values(player) + [seq.value(k) for k in range(depth + 1)]

    def remove_all(self, mode: Mode):
        return run(self.game(), mode, RemoveAll(), Budget.from_settings(strict=True))

    def truncation_final(self, depth: int, mode: Mode) -> Reduction:
        tg = self.truncate(depth)
        return run(tg.game, mode, RemoveAll(), Budget.from_settings()).final

    def empty(self) -> Reduction:
        return Reduction(PLAYERS, [SymbolicSet.empty(), SymbolicSet.empty()])


class OrderIndependentEntry(_FamilyEntry):
    id = "ex2_order_indep_not_equal"
    title = "Order-independent nested elimination that misses the universal outcome"
    aliases = ("ex2",)
    oracle_class = OrderIndependentOracle

    def spaces(self) -> Dict[str, SymbolicSet]:
        return {p: _family(p) | SymbolicSet.of(ONE) for p in PLAYERS}

    def extra_values(self, player: str) -> List[Strategy]:
        return [ONE]

    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        a, y = Fraction(profile[player]), Fraction(profile[_other(player)])
        if a == 1 and y == 1:
            return Fraction(0)
        return min(a, y)

    def top(self) -> Reduction:
        return self.reduction("{1} × {1}")

    def maximal_set(self, mode: Mode) -> MaximalSet:
        if mode is Mode.UNIVERSAL:
            return MaximalSet((self.empty(),), "only the empty reduction")
        return MaximalSet((self.top(),), "unique: the nested class is order independent")

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        out = []

        def nested_top():
            t = self.remove_all(Mode.NESTED)
            ok = t.final == self.top() and t.final_stage == Stage(1, 0) and not t.heuristic
            return ok and validate_sequence(g, t).holds, f"{t.final} at {t.final_stage}"

        out.append(self.check("nested-omega", "nested elimination reaches {1} x {1} at omega", nested_top))

        def universal_empty():
            t = self.remove_all(Mode.UNIVERSAL)
            return t.final.is_empty and t.final_stage == Stage(1, 1), f"{t.final} at {t.final_stage}"

        out.append(self.check("universal-empty", "universal elimination goes one step past omega to the empty set", universal_empty))

        out.append(self.check(
            "random-nested",
            "every randomized nested run that terminates ends at {1} x {1}",
            lambda: random_nested_outcomes(g, self.top()),
        ))

        def top_bounds():
            local = is_locally_bounded(g, self.top()).holds
            complete = is_completely_bounded(g, self.top())
            return local and not complete.holds, complete.witness.rendered if complete.witness else ""

        out.append(self.check("top-local-not-complete", "{1} x {1} is locally but not completely bounded", top_bounds))

        def stages_bounded():
            t = self.remove_all(Mode.NESTED)
            earlier = [R for stage, R in t.stages if not stage.is_limit]
            verdict = class_boundedness(g, Mode.NESTED, "complete", reductions=earlier)
            return verdict.holds, f"{verdict.checked} stages"

        out.append(self.check("stages-bounded", "every non-maximal nested stage is completely bounded", stages_bounded))

        def dominance_star():
            verdict = closed_under_dominance_star(g, pairs=stage_pairs(self.remove_all(Mode.NESTED)))
            return verdict.holds, f"{verdict.checked} pairs"

        out.append(self.check("dominance-star", "the nested stages are closed under dominance*", dominance_star))

        def truncation():
            for depth in TRUNCATION_DEPTHS:
                tg = self.truncate(depth)
                expected = tg.reduction(self.reduction(f"{{{EVEN.value(depth)}, 1}} × {{{ODD.value(depth)}, 1}}"))
                finals = {m: self.truncation_final(depth, m) for m in (Mode.NESTED, Mode.UNIVERSAL)}
                if any(R != expected for R in finals.values()):
                    return False, f"depth {depth}: {finals[Mode.NESTED]} / {finals[Mode.UNIVERSAL]}"
            return True, f"depths {TRUNCATION_DEPTHS}"

        out.append(self.check(
            "truncation-outcome",
            "a truncation keeps its two top strategies per player in both modes",
            truncation,
            truncation_stable=False,
        ))
        return out


class PropertyCEntry(_FamilyEntry):
    id = "ex4_apt_property_C"
    title = "Equivalent procedures without property C"
    aliases = ("ex4",)
    oracle_class = PropertyCOracle

    def spaces(self) -> Dict[str, SymbolicSet]:
        return {p: SymbolicSet.of(LEFT, RIGHT) | _family(p) for p in PLAYERS}

    def extra_values(self, player: str) -> List[Strategy]:
        return [LEFT, RIGHT]

    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        a, y = profile[player], profile[_other(player)]
        a_label, y_label = isinstance(a, str), isinstance(y, str)
        if not a_label and not y_label:
            return min(Fraction(a), Fraction(y))
        if not a_label:
            return Fraction(a)
        return Fraction(1) if a == y else Fraction(0)

    def labels(self) -> Reduction:
        return self.reduction("{Left, Right} × {Left, Right}")

    def maximal_set(self, mode: Mode) -> MaximalSet:
        return MaximalSet((self.labels(),), "unique in every mode")

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        out = []

        def both_modes():
            finals = []
            for mode in (Mode.NESTED, Mode.UNIVERSAL):
                t = self.remove_all(mode)
                if t.final != self.labels() or t.final_stage != Stage(1, 0):
                    return False, f"{mode.value}: {t.final} at {t.final_stage}"
                finals.append(str(t.final))
            return True, " / ".join(finals)

        out.append(self.check("labels-at-omega", "both modes reach {Left, Right}^2 at omega", both_modes))

        def property_c():
            verdict = property_c_at(g, self.labels())
            witness = verdict.witness
            if witness is None:
                return False, "no witness"
            return not verdict.holds and witness.rendered not in (LEFT, RIGHT), witness.rendered

        out.append(self.check("property-c-fails", "property C fails at the maximal reduction for a rational strategy", property_c))

        def class_bounded():
            t = self.remove_all(Mode.NESTED)
            verdict = class_boundedness(g, Mode.NESTED, "complete", reductions=t.reductions())
            return verdict.holds, f"{verdict.checked} stages"

        out.append(self.check("nested-class-bounded", "every nested stage is completely bounded", class_bounded))

        def whole_class_c():
            verdict = satisfies_property_c(g, reductions=self.remove_all(Mode.NESTED).reductions())
            return not verdict.holds, verdict.scope_note

        out.append(self.check("property-c-over-range", "property C fails over the nested range", whole_class_c))

        def truncation_classes():
            for depth in TRUNCATION_DEPTHS:
                tg = self.truncate(depth)
                nested = enumerate_sequences(tg.game, Mode.NESTED, TRUNCATION_CAPS)
                universal = enumerate_sequences(tg.game, Mode.UNIVERSAL, TRUNCATION_CAPS)
                if set(nested.sequences) != set(universal.sequences):
                    return False, f"depth {depth}: classes differ"
            return True, f"depths {TRUNCATION_DEPTHS}"

        out.append(self.check(
            "truncation-classes-equal",
            "nested and universal sequence classes coincide on truncations",
            truncation_classes,
            truncation_stable=True,
        ))

        def truncation_property_c():
            tg = self.truncate(TRUNCATION_DEPTHS[0])
            verdict = satisfies_property_c(tg.game, TRUNCATION_CAPS)
            return verdict.holds, verdict.scope_note

        out.append(self.check(
            "truncation-property-c",
            "property C holds on a truncation, so its failure needs the infinite game",
            truncation_property_c,
            truncation_stable=False,
        ))
        return out


class ClosureStarEntry(_FamilyEntry):
    id = "ex5_closure_star"
    title = "Locally bounded but not closed under dominance*"
    aliases = ("ex5",)
    oracle_class = ClosureStarOracle

    MINUS_ONE = Fraction(-1)

    def spaces(self) -> Dict[str, SymbolicSet]:
        return {
            PLAYERS[0]: SymbolicSet.of(self.MINUS_ONE) | _family(PLAYERS[0]),
            PLAYERS[1]: _family(PLAYERS[1]) | SymbolicSet.of(ONE),
        }

    def extra_values(self, player: str) -> List[Strategy]:
        return [self.MINUS_ONE] if player == PLAYERS[0] else [ONE]

    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        a1, a2 = Fraction(profile[PLAYERS[0]]), Fraction(profile[PLAYERS[1]])
        if a1 == self.MINUS_ONE:
            return self.MINUS_ONE if player == PLAYERS[0] else a2
        return min(a1, a2)

    def corner(self) -> Reduction:
        return self.reduction("{-1} × {1}")

    def maximal_set(self, mode: Mode) -> MaximalSet:
        if mode is Mode.UNIVERSAL:
            return MaximalSet((self.empty(),), "only the empty reduction")
        return MaximalSet((self.empty(), self.corner()), "order dependent: the empty set and {-1} x {1}")

    def alternating_script(self, steps: int) -> Scripted:
        """Remove even(t) for player 1, then odd(t) for player 2, keeping -1 alive."""
        stages = []
        for t in range(steps):
            seq, player = (EVEN, PLAYERS[0]) if t % 2 == 0 else (ODD, PLAYERS[1])
            stages.append({player: SymbolicSet.of(seq.value(t // 2))})
        return Scripted(stages)

    def alternating(self):
        budget = Budget.from_settings(strict=True)
        return run(self.game(), Mode.NESTED, self.alternating_script(budget.max_successor_steps), budget)

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        out = []

        def corner_chain():
            t = self.alternating()
            ok = t.final == self.corner() and t.final_stage == Stage(1, 0) and validate_sequence(g, t).holds
            return ok, f"{t.final} at {t.final_stage}"

        out.append(self.check("alternating-corner", "sparing -1 leads to {-1} x {1} at omega", corner_chain))

        def remove_all_empty():
            t = self.remove_all(Mode.NESTED)
            return t.final.is_empty and validate_sequence(g, t).holds, f"{t.final} at {t.final_stage}"

        out.append(self.check("remove-all-empty", "removing everything dominated empties the game", remove_all_empty))

        def both_maximal():
            return all(is_maximal(g, R, Mode.NESTED) for R in (self.empty(), self.corner())), "two maximal reductions"

        out.append(self.check("order-dependent", "both outcomes are maximal nested reductions", both_maximal))

        def star_fails():
            verdict = dominance_star_at(g, g.full_reduction(), self.corner())
            w = verdict.witness
            return not verdict.holds and w is not None and w.rendered == "-1", w.rendered if w else "no witness"

        out.append(self.check("dominance-star-fails", "dominance* fails at (A, {-1} x {1}) for -1", star_fails))

        def local_everywhere():
            stages = self.alternating().reductions() + self.remove_all(Mode.NESTED).reductions()
            verdict = class_boundedness(g, Mode.NESTED, "local", reductions=stages)
            return verdict.holds, f"{verdict.checked} stages"

        out.append(self.check("locally-bounded", "every stage of both runs is locally bounded", local_everywhere))

        def truncation_local():
            for depth in TRUNCATION_DEPTHS:
                tg = self.truncate(depth)
                if not class_boundedness(tg.game, Mode.NESTED, "local", TRUNCATION_CAPS).holds:
                    return False, f"depth {depth}"
            return True, f"depths {TRUNCATION_DEPTHS}"

        out.append(self.check(
            "truncation-local",
            "truncated nested classes are locally bounded",
            truncation_local,
            truncation_stable=True,
        ))
        return out
