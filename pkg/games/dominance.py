"""
Strict dominance relative to a reduction, as seen by the engine and the analyzers.

a is dominated by b for player i relative to R_{-i} when u_i(a, y) < u_i(b, y) for every
y in R_{-i}. The relation is only defined while R_{-i} is non-empty.
"""

import logging

from algebra.codec import encode_strategy
from algebra.symbolic_set import Strategy, SymbolicSet
from games.game import Game, Reduction
from utils.errors import MalformedSetError, UndefinedRelationError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


def _check_relation(g: Game, i: str, R: Reduction) -> None:
    if i not in g.players:
        raise MalformedSetError(f"unknown player '{i}' in game '{g.name}'")
    empty = [p for p, s in R.others(i) if s.is_empty]
    if empty:
        raise UndefinedRelationError(
            f"dominance for player '{i}' is undefined: opponents {empty} have no strategies left"
        )


def _check_strategy(g: Game, i: str, a: Strategy) -> None:
    if not g.space(i).contains(a):
        raise MalformedSetError(f"{encode_strategy(a)!r} is not a strategy of player '{i}'")


def dominates(g: Game, i: str, a: Strategy, b: Strategy, R: Reduction) -> bool:
    """True when b strictly dominates a for player i relative to R_{-i}."""
    _check_relation(g, i, R)
    _check_strategy(g, i, a)
    _check_strategy(g, i, b)
    return g.oracle.dominates(i, a, b, R)


def dominated_elements(g: Game, i: str, target: SymbolicSet, scope: SymbolicSet, R: Reduction) -> SymbolicSet:
    """Members of target that some member of scope dominates relative to R_{-i}."""
    _check_relation(g, i, R)
    if target.is_empty or scope.is_empty:
        return SymbolicSet.empty()
    return g.oracle.dominated_elements(i, target & g.space(i), scope & g.space(i), R)


def undominated_elements(g: Game, i: str, X: SymbolicSet, scope: SymbolicSet, R: Reduction) -> SymbolicSet:
    if X.is_empty:
        return X
    return X - dominated_elements(g, i, X, scope, R)


def dominating_set(g: Game, i: str, a: Strategy, R: Reduction) -> SymbolicSet:
    """D_{R_{-i}}(a): every strategy of player i that dominates a."""
    _check_relation(g, i, R)
    _check_strategy(g, i, a)
    return g.oracle.dominating_set(i, a, R)


def lower_contour_set(g: Game, i: str, a: Strategy, R: Reduction) -> SymbolicSet:
    """L_{R_{-i}}(a): every strategy of player i that a dominates."""
    _check_relation(g, i, R)
    _check_strategy(g, i, a)
    return g.oracle.lower_contour_set(i, a, R)
