"""
Structural conditions on reductions and on classes of elimination sequences.

Every condition here has the same shape: strategies X that something dominates must be
dominated by an undominated member U of a reference set. The variants differ in where
X comes from, which scope U lives in, and which reduction the relation is taken at.
"""

import itertools
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from algebra.codec import encode_set, encode_strategy
from algebra.symbolic_set import Strategy, SymbolicSet
from config import EnumerationCaps
from engine.modes import Mode
from enumeration.enumerator import enumerate_sequences
from games import dominance
from games.game import Game, Reduction
from utils.errors import DomLabError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class BoundednessWitness(BaseModel):
    player: str
    strategy: object
    rendered: str
    dominating_set: Optional[str] = None
    reduction: Optional[str] = None


class BoundednessVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    check: str
    holds: bool
    scope_note: str
    witness: Optional[BoundednessWitness] = None
    checked: int = 1

    def to_dict(self) -> dict:
        return self.model_dump(exclude_none=True)


def _witness(g: Game, player: str, a: Strategy, R: Reduction, reduction: Optional[Reduction] = None) -> BoundednessWitness:
    try:
        D = dominance.dominating_set(g, player, a, R)
        rendered_d = str(D)
    except DomLabError as e:
        logger.warning(f"No dominating set for witness {a} of player {player}: {e}")
        rendered_d = None
    return BoundednessWitness(
        player=player,
        strategy=encode_strategy(a),
        rendered=str(a),
        dominating_set=rendered_d,
        reduction=None if reduction is None else str(reduction),
    )


def _uncovered(g: Game, p: str, X: SymbolicSet, U: SymbolicSet, R: Reduction) -> SymbolicSet:
    """Members of X not dominated by any member of U relative to R_{-p}."""
    if X.is_empty:
        return X
    covered = dominance.dominated_elements(g, p, X, U, R) if not U.is_empty else SymbolicSet.empty()
    return X - covered


def _bounded(g: Game, R: Reduction, check: str, note: str, local: bool, target_is_space: bool = False) -> BoundednessVerdict:
    if R.is_empty:
        return BoundednessVerdict(check=check, holds=True, scope_note=f"{note}; vacuous for the empty reduction")
    for p in g.players:
        A = g.space(p)
        reference = R[p] if local else A
        target = A if target_is_space else R[p]
        X = dominance.dominated_elements(g, p, target, reference, R)
        if X.is_empty:
            continue
        U = dominance.undominated_elements(g, p, reference, reference, R)
        bad = _uncovered(g, p, X, U, R)
        if not bad.is_empty:
            a = bad.representative()
            logger.info(f"{check} fails at {R}: {a} of player {p} has no undominated dominator")
            return BoundednessVerdict(check=check, holds=False, scope_note=note, witness=_witness(g, p, a, R, R))
    return BoundednessVerdict(check=check, holds=True, scope_note=note)


def is_completely_bounded(g: Game, R: Reduction) -> BoundednessVerdict:
    """Every a in R_i dominated by something in A_i is dominated by an A_i-undominated c."""
    return _bounded(g, R, "complete-boundedness", "dominators and their undominated representatives range over A_i", local=False)


def is_locally_bounded(g: Game, R: Reduction) -> BoundednessVerdict:
    """Every a in R_i dominated by something in R_i is dominated by an R_i-undominated c."""
    return _bounded(g, R, "local-boundedness", "dominators and their undominated representatives range over R_i", local=True)


def property_c_at(g: Game, R: Reduction) -> BoundednessVerdict:
    """Complete boundedness with every strategy of A_i as target, relative to R_{-i}."""
    return _bounded(g, R, "property-c", "every dominated strategy of A_i needs an A_i-undominated dominator", local=False, target_is_space=True)


def maximal_has_no_undominated_dominators(g: Game, R: Reduction) -> BoundednessVerdict:
    """At a maximal nested reduction, no dominated a in R_i has a dominator that is itself undominated in A_i."""
    check = "lemma-1"
    note = "dominated members of R_i against A_i-undominated strategies"
    if R.is_empty:
        return BoundednessVerdict(check=check, holds=True, scope_note=f"{note}; vacuous for the empty reduction")
    for p in g.players:
        A = g.space(p)
        X = dominance.dominated_elements(g, p, R[p], A, R)
        if X.is_empty:
            continue
        U = dominance.undominated_elements(g, p, A, A, R)
        hit = dominance.dominated_elements(g, p, X, U, R) if not U.is_empty else SymbolicSet.empty()
        if not hit.is_empty:
            a = hit.representative()
            return BoundednessVerdict(check=check, holds=False, scope_note=note, witness=_witness(g, p, a, R, R))
    return BoundednessVerdict(check=check, holds=True, scope_note=note)


def dominance_star_at(g: Game, R: Reduction, S: Reduction) -> BoundednessVerdict:
    """
    For a in S_i dominated relative to R_{-i} by some b in R_i, some c* in S_i dominates a
    relative to S_{-i} and is undominated in S_i relative to S_{-i}.
    """
    check = "dominance-star"
    note = "pair of reductions on one nested sequence"
    if R.is_empty or S.is_empty:
        return BoundednessVerdict(check=check, holds=True, scope_note=f"{note}; vacuous with an empty reduction")
    for p in g.players:
        X = dominance.dominated_elements(g, p, S[p], R[p], R)
        if X.is_empty:
            continue
        U = dominance.undominated_elements(g, p, S[p], S[p], S)
        bad = _uncovered(g, p, X, U, S)
        if not bad.is_empty:
            a = bad.representative()
            logger.info(f"dominance* fails for ({R}, {S}) at {a} of player {p}")
            return BoundednessVerdict(
                check=check, holds=False, scope_note=f"{note}: ({R}, {S})", witness=_witness(g, p, a, R, S)
            )
    return BoundednessVerdict(check=check, holds=True, scope_note=note)


def _all_hold(check: str, note: str, verdicts: Iterable[BoundednessVerdict]) -> BoundednessVerdict:
    count = 0
    for v in verdicts:
        count += 1
        if not v.holds:
            return v.model_copy(update={"check": check, "scope_note": f"{note}; {v.scope_note}", "checked": count})
    return BoundednessVerdict(check=check, holds=True, scope_note=note, checked=count)


def _sorted_range(reductions: Iterable[Reduction]) -> List[Reduction]:
    return sorted(reductions, key=str)


def class_boundedness(
    g: Game,
    mode: Mode,
    kind: str,
    caps: Optional[EnumerationCaps] = None,
    reductions: Optional[Iterable[Reduction]] = None,
) -> BoundednessVerdict:
    """
    Complete or local boundedness of every reduction in the range of the mode's class.
    Finite games are enumerated; catalog games pass the stages of their traces as `reductions`.
    """
    check = {"complete": is_completely_bounded, "local": is_locally_bounded}[kind]
    if reductions is None:
        reductions = enumerate_sequences(g, mode, caps).range
        note = f"{kind} boundedness over the enumerated {mode.value} range"
    else:
        note = f"{kind} boundedness over the supplied {mode.value} reductions"
    return _all_hold(f"{mode.value}-{kind}-boundedness", note, (check(g, R) for R in _sorted_range(reductions)))


def satisfies_property_c(
    g: Game, caps: Optional[EnumerationCaps] = None, reductions: Optional[Iterable[Reduction]] = None
) -> BoundednessVerdict:
    if reductions is None:
        reductions = enumerate_sequences(g, Mode.NESTED, caps).range
    return _all_hold("property-c", "property C over the nested range", (property_c_at(g, R) for R in _sorted_range(reductions)))


def _forgetful_at(g: Game, R: Reduction) -> BoundednessVerdict:
    check = "forgetfulness-proof"
    if R.is_empty:
        return BoundednessVerdict(check=check, holds=True, scope_note="vacuous for the empty reduction")
    for p in g.players:
        X = dominance.dominated_elements(g, p, R[p], R[p], R)
        for size in range(1, len(X.elements()) + 1):
            for K in itertools.combinations(g.ordered(p, X), size):
                S_p = R[p] - SymbolicSet.of(*K)
                T = dominance.dominated_elements(g, p, S_p, R[p], R)
                bad = T - dominance.dominated_elements(g, p, T, S_p, R)
                if not bad.is_empty:
                    a = bad.representative()
                    return BoundednessVerdict(
                        check=check,
                        holds=False,
                        scope_note=f"player {p} forgets a dominator after removing {SymbolicSet.of(*K)}",
                        witness=_witness(g, p, a, R, R),
                    )
    return BoundednessVerdict(check=check, holds=True, scope_note="one-player nested steps")


def is_forgetfulness_proof(
    g: Game, caps: Optional[EnumerationCaps] = None, reductions: Optional[Iterable[Reduction]] = None
) -> BoundednessVerdict:
    """After any one-player nested step R_i -> S_i, a member of S_i dominated by R_i stays dominated by S_i."""
    if reductions is None:
        reductions = enumerate_sequences(g, Mode.NESTED, caps).range
    return _all_hold(
        "forgetfulness-proof", "one-player nested steps over the nested range", (_forgetful_at(g, R) for R in _sorted_range(reductions))
    )


def closed_under_dominance_star(
    g: Game,
    caps: Optional[EnumerationCaps] = None,
    pairs: Optional[Sequence[Tuple[Reduction, Reduction]]] = None,
) -> BoundednessVerdict:
    """Dominance* over every (R, S) with R before S on a nested sequence; catalog games pass their stage pairs."""
    if pairs is None:
        pairs = enumerate_sequences(g, Mode.NESTED, caps).reachable_pairs()
        note = "pairs on enumerated nested sequences"
    else:
        note = "supplied pairs of nested stages"
    ordered = sorted(pairs, key=lambda rs: (str(rs[0]), str(rs[1])))
    return _all_hold("dominance-star", note, (dominance_star_at(g, R, S) for R, S in ordered))
