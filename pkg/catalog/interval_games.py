"""
Player 1 picks from [0, 1], player 2 picks a label.

unbounded_at_limit: both procedures end at {1} x {Left}, yet a universal chain passes through
reductions a nested chain cannot reach.
not_all_bounded: nothing is ever dominated, although [0,1] x {Left} is not completely bounded.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping

from algebra.symbolic_set import Strategy, SymbolicSet
from analyzers.boundedness import is_completely_bounded
from catalog.base import PLAYERS, CatalogEntry, FixtureResult, random_nested_outcomes
from engine.elimination import is_maximal, run, validate_sequence
from engine.modes import Budget, Mode, Stage
from engine.policies import RemoveAll, Scripted
from enumeration.enumerator import MaximalSet
from games.game import Reduction
from games.score_order import ScoreOrder, ScoreOrderOracle

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

LEFT, CENTER, RIGHT = "Left", "Center", "Right"
ONE = Fraction(1)
UNIT = SymbolicSet.interval(0, 1)


class UnboundedAtLimitOracle(ScoreOrderOracle):
    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        A = self.spaces[player]
        if player == PLAYERS[1]:
            return ScoreOrder(A, A, ((LEFT, Fraction(1)), (CENTER, Fraction(0)), (RIGHT, Fraction(-1))))
        columns = R[PLAYERS[1]].atoms
        if CENTER in columns:
            return ScoreOrder.trivial()
        if columns == {LEFT}:
            return ScoreOrder.identity(A)
        if columns == {RIGHT}:
            return ScoreOrder(A, A, ((ONE, Fraction(0)),))
        below_one = A - SymbolicSet.of(ONE)
        return ScoreOrder(below_one, below_one)


class NotAllBoundedOracle(ScoreOrderOracle):
    def order_at(self, player: str, R: Reduction) -> ScoreOrder:
        if player == PLAYERS[1] or RIGHT in R[PLAYERS[1]].atoms:
            return ScoreOrder.trivial()
        A = self.spaces[player]
        return ScoreOrder(A, A, ((ONE, Fraction(0)),))


class UnboundedAtLimitEntry(CatalogEntry):
    id = "ex1_unbounded_at_limit"
    title = "Same maximal reduction, different sequence classes"
    aliases = ("ex1",)

    def spaces(self) -> Dict[str, SymbolicSet]:
        return {PLAYERS[0]: UNIT, PLAYERS[1]: SymbolicSet.of(LEFT, CENTER, RIGHT)}

    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        a, col = Fraction(profile[PLAYERS[0]]), profile[PLAYERS[1]]
        if player == PLAYERS[1]:
            return {LEFT: Fraction(1), CENTER: Fraction(0), RIGHT: Fraction(-1)}[col]
        if col == LEFT or (col == RIGHT and a < 1):
            return a
        return Fraction(0)

    def make_oracle(self) -> UnboundedAtLimitOracle:
        return UnboundedAtLimitOracle(self.spaces(), self.id)

    def probe_values(self, player: str, depth: int) -> List[Strategy]:
        if player == PLAYERS[1]:
            return [LEFT, CENTER, RIGHT]
        return [Fraction(k, depth) for k in range(depth + 1)]

    def target(self) -> Reduction:
        return self.reduction("{1} × {Left}")

    def maximal_set(self, mode: Mode) -> MaximalSet:
        return MaximalSet((self.target(),), "unique in every mode")

    def universal_chain(self) -> Scripted:
        """Remove Center; then (1/2, 1); then [0, 1/2] together with Right."""
        return Scripted([
            {PLAYERS[1]: SymbolicSet.of(CENTER)},
            {PLAYERS[0]: SymbolicSet.interval(Fraction(1, 2), 1, False, False)},
            {PLAYERS[0]: SymbolicSet.interval(0, Fraction(1, 2)), PLAYERS[1]: SymbolicSet.of(RIGHT)},
        ])

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        out = []

        def every_mode():
            finals = {m.value: run(g, m, RemoveAll(), Budget.from_settings()).final for m in Mode}
            return all(R == self.target() for R in finals.values()), str({k: str(v) for k, v in finals.items()})

        out.append(self.check("remove-all-every-mode", "every mode ends at {1} x {Left}", every_mode))

        def universal_chain():
            t = run(g, Mode.UNIVERSAL, self.universal_chain(), Budget(max_successor_steps=3, max_limits=0))
            as_universal = validate_sequence(g, t, Mode.UNIVERSAL)
            as_nested = validate_sequence(g, t, Mode.NESTED)
            ok = t.final == self.target() and as_universal.holds and not as_nested.holds and as_nested.stage == str(Stage(0, 3))
            return ok, f"nested replay: {as_nested.clause} at {as_nested.stage}"

        out.append(self.check("universal-not-nested", "the three-step universal chain is not a nested sequence", universal_chain))

        out.append(self.check(
            "random-nested",
            "nested elimination is order independent here",
            lambda: random_nested_outcomes(g, self.target()),
        ))

        def unbounded_stage():
            R = self.reduction("[0, 1/2] ∪ {1} × {Left, Right}")
            return not is_completely_bounded(g, R).holds, str(R)

        out.append(self.check("unbounded-stage", "the universal chain passes an unbounded reduction", unbounded_stage))

        def target_bounded():
            return is_completely_bounded(g, self.target()).holds, str(self.target())

        out.append(self.check("maximal-bounded", "the maximal reduction is completely bounded", target_bounded))
        return out


class NotAllBoundedEntry(CatalogEntry):
    id = "ex3_not_all_bounded"
    title = "No dominance, yet some reductions unbounded"
    aliases = ("ex3",)

    def spaces(self) -> Dict[str, SymbolicSet]:
        return {PLAYERS[0]: UNIT, PLAYERS[1]: SymbolicSet.of(LEFT, RIGHT)}

    def payoff(self, player: str, profile: Mapping[str, Strategy]) -> Fraction:
        a = Fraction(profile[PLAYERS[0]])
        if player == PLAYERS[0] and a < 1 and profile[PLAYERS[1]] == LEFT:
            return a
        return Fraction(0)

    def make_oracle(self) -> NotAllBoundedOracle:
        return NotAllBoundedOracle(self.spaces(), self.id)

    def probe_values(self, player: str, depth: int) -> List[Strategy]:
        if player == PLAYERS[1]:
            return [LEFT, RIGHT]
        return [Fraction(k, depth) for k in range(depth + 1)]

    def maximal_set(self, mode: Mode) -> MaximalSet:
        return MaximalSet((self.game().full_reduction(),), "the whole game")

    def fixtures(self) -> List[FixtureResult]:
        g = self.game()
        A = g.full_reduction()
        left_only = self.reduction("[0, 1] × {Left}")
        return [
            self.check("full-maximal", "A is maximal in every mode", lambda: (all(is_maximal(g, A, m) for m in Mode), str(A))),
            self.check(
                "left-unbounded",
                "[0,1] x {Left} is not completely bounded",
                lambda: (not is_completely_bounded(g, left_only).holds, str(left_only)),
            ),
            self.check("full-bounded", "A itself is completely bounded", lambda: (is_completely_bounded(g, A).holds, str(A))),
        ]
