"""Interpolating a nested step by a chain of GKZ steps in a finite game."""

import logging
from typing import List

from engine.elimination import validate_step
from engine.modes import Mode
from games import dominance
from games.game import Game, Reduction
from utils.errors import DomLabError, NotANestedStepError, UnsupportedQueryError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


def gkz_interpolate(g: Game, R: Reduction, S: Reduction) -> List[Reduction]:
    """
    Chain R -> S of GKZ steps for a nested step R -> S in a finite game.

    In a finite game every strategy dominated in R is dominated by one that is undominated
    in R, and a nested step keeps those, so S dominates everything removed and the chain
    is the single link [R, S]. The link is re-checked as a GKZ step before it is returned.

    Raises:
        NotANestedStepError: R -> S is not a nested step.
        UnsupportedQueryError: the game is not finite.
        DomLabError: some removed strategy has no dominator left in S.
    """
    if not g.is_finite:
        raise UnsupportedQueryError("GKZ interpolation is only defined for finite games", entry=g.oracle.entry)
    verdict = validate_step(g, R, S, Mode.NESTED)
    if not verdict.holds:
        raise NotANestedStepError(f"{R} -> {S} is not a nested step: {verdict.detail or verdict.clause}")
    if R == S:
        return [R]
    if S.is_empty:
        # nothing survives to dominate, so there is no GKZ route
        raise NotANestedStepError(f"{R} -> ∅ has no GKZ interpolation")

    for p in g.players:
        removed = R[p] - S[p]
        if removed.is_empty:
            continue
        stranded = removed - dominance.dominated_elements(g, p, removed, S[p], R)
        if not stranded.is_empty:
            logger.error(f"Player {p}: {stranded} has no dominator in {S[p]}")
            raise DomLabError(f"removed strategies {stranded} of player {p} have no dominator in {S}", player=p)

    chain = [R, S]
    link = validate_step(g, R, S, Mode.GKZ)
    if not link.holds:
        logger.error(f"GKZ interpolation produced an illegal link {R} -> {S}: {link.detail}")
        raise DomLabError(f"interpolated link {R} -> {S} is not a GKZ step: {link.detail}")
    logger.info(f"Interpolated {R} -> {S} by {len(chain) - 1} GKZ step")
    return chain
