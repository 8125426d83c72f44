"""
Exhaustive enumeration of elimination sequences of a finite game.

Reductions reachable from A form a DAG whose edges are the legal non-trivial steps of a mode;
sequences are the root-to-sink paths. Paths are counted on the memoized DAG before any is built,
so a blow-up is refused before it costs anything.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

from algebra.symbolic_set import SymbolicSet
from config import EnumerationCaps, settings
from engine.elimination import is_maximal, removable_sets, validate_step
from engine.modes import Mode
from games.game import Game, Reduction
from utils.errors import EnumerationTooLargeError, UnsupportedQueryError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


@dataclass
class SequenceClass:
    mode: Mode
    sequences: List[Tuple[Reduction, ...]]
    range: FrozenSet[Reduction]
    maximal_set: FrozenSet[Reduction]
    edges: Dict[Reduction, Tuple[Reduction, ...]] = field(default_factory=dict)

    @property
    def order_independent(self) -> bool:
        return len(self.maximal_set) == 1

    def reachable_pairs(self) -> List[Tuple[Reduction, Reduction]]:
        """(R, S) with S on some sequence through R, R before or equal to S."""
        pairs = []
        for R in self.range:
            seen = {R}
            stack = [R]
            while stack:
                node = stack.pop()
                for child in self.edges.get(node, ()):
                    if child not in seen:
                        seen.add(child)
                        stack.append(child)
            pairs.extend((R, S) for S in seen)
        return pairs

    def summary(self) -> dict:
        return {
            "mode": self.mode.value,
            "sequences": len(self.sequences),
            "range": len(self.range),
            "maximal": sorted(str(R) for R in self.maximal_set),
        }


@dataclass(frozen=True)
class MaximalSet:
    """Maximal reductions of a class: listed members, plus a predicate when the set is infinite."""

    members: Tuple[Reduction, ...]
    description: str = ""
    predicate: Optional[Callable[[Reduction], bool]] = None

    def contains(self, R: Reduction) -> bool:
        if R in self.members:
            return True
        return self.predicate is not None and self.predicate(R)

    def to_dict(self) -> dict:
        return {"members": [str(R) for R in self.members], "description": self.description}


def _subsets(items: List) -> Iterator[Tuple]:
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


class SequenceEnumerator:
    def __init__(self, g: Game, mode: Mode, caps: Optional[EnumerationCaps] = None) -> None:
        if not g.is_finite:
            raise UnsupportedQueryError("enumeration needs a finite game", entry=g.oracle.entry)
        self.g = g
        self.mode = mode
        self.caps = caps or settings.CAPS
        total = g.total_strategies()
        if total > self.caps.max_strategies_total:
            raise EnumerationTooLargeError(
                f"game '{g.name}' has {total} strategies, cap is {self.caps.max_strategies_total}", count=total
            )
        self._children: Dict[Reduction, Tuple[Reduction, ...]] = {}
        logger.info(f"[{self.__class__.__name__}] {mode.value} enumeration of '{g.name}' ({total} strategies)")

    def children(self, R: Reduction) -> Tuple[Reduction, ...]:
        cached = self._children.get(R)
        if cached is not None:
            return cached
        out: List[Reduction] = []
        if not is_maximal(self.g, R, self.mode):
            removable = removable_sets(self.g, R, self.mode)
            choices = [list(_subsets(self.g.ordered(p, removable[p]))) for p in self.g.players]
            for combo in itertools.product(*choices):
                if not any(combo):
                    continue
                S = R.minus({p: SymbolicSet.of(*picked) for p, picked in zip(self.g.players, combo)})
                if self.mode is Mode.GKZ and not validate_step(self.g, R, S, Mode.GKZ).holds:
                    continue
                out.append(S)
        self._children[R] = tuple(out)
        return self._children[R]

    def count(self) -> int:
        @lru_cache(maxsize=None)
        def paths(R: Reduction) -> int:
            kids = self.children(R)
            return 1 if not kids else sum(paths(c) for c in kids)

        return paths(self.g.full_reduction())

    def enumerate(self) -> SequenceClass:
        root = self.g.full_reduction()
        total = self.count()
        if total > self.caps.max_sequences:
            raise EnumerationTooLargeError(
                f"{total} {self.mode.value} sequences exceed the cap of {self.caps.max_sequences}", count=total
            )

        sequences: List[Tuple[Reduction, ...]] = []
        stack: List[Tuple[Reduction, ...]] = [(root,)]
        while stack:
            path = stack.pop()
            kids = self._children[path[-1]]
            if not kids:
                sequences.append(path)
                continue
            stack.extend(path + (c,) for c in reversed(kids))

        nodes = frozenset(self._children)
        sinks = frozenset(R for R, kids in self._children.items() if not kids)
        logger.info(
            f"[{self.__class__.__name__}] {len(sequences)} {self.mode.value} sequences, "
            f"{len(nodes)} reductions, {len(sinks)} maximal"
        )
        return SequenceClass(self.mode, sequences, nodes, sinks, dict(self._children))


def enumerate_sequences(g: Game, mode: Mode, caps: Optional[EnumerationCaps] = None) -> SequenceClass:
    return SequenceEnumerator(g, mode, caps).enumerate()


def maximal_reduction_set(g: Game, mode: Mode, via: str = "enumeration", caps: Optional[EnumerationCaps] = None) -> MaximalSet:
    """
    R-hat for a mode, by enumeration (finite games) or from the catalog entry the game was built from.

    Raises:
        UnsupportedQueryError: catalog route for a game with no catalog entry.
    """
    if via == "catalog":
        from catalog.registry import instantiate

        if not g.oracle.entry:
            raise UnsupportedQueryError(f"game '{g.name}' is not a catalog game")
        return instantiate(g.oracle.entry).maximal_set(mode)
    cls = enumerate_sequences(g, mode, caps)
    members = tuple(sorted(cls.maximal_set, key=str))
    return MaximalSet(members, description=f"{len(members)} by enumeration")
