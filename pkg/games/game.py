import logging
from abc import ABC, abstractmethod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.codec import decode_set, encode_set, sort_key
from algebra.notation import PRODUCT, parse_sets, render_set
from algebra.sequences import DEFAULT_REGISTRY, SequenceRegistry
from algebra.symbolic_set import Strategy, SymbolicSet
from utils.errors import GameFormatError, MalformedSetError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class Reduction:
    """
    A product set R = R_1 x ... x R_n, one component per player in game order.

    Components are stored as given; a product with any empty component is the empty
    reduction, and all empty reductions compare equal.
    """

    __slots__ = ("players", "sets")

    def __init__(self, players: Sequence[str], sets: Sequence[SymbolicSet]) -> None:
        if len(players) != len(sets):
            raise MalformedSetError(f"{len(players)} players but {len(sets)} components")
        object.__setattr__(self, "players", tuple(players))
        object.__setattr__(self, "sets", tuple(sets))

    def __setattr__(self, name, value):
        raise AttributeError("Reduction is immutable")

    @classmethod
    def from_mapping(cls, players: Sequence[str], components: Mapping[str, SymbolicSet]) -> "Reduction":
        return cls(players, [components[p] for p in players])

    @property
    def components(self) -> Dict[str, SymbolicSet]:
        return dict(zip(self.players, self.sets))

    def __getitem__(self, player: str) -> SymbolicSet:
        return self.sets[self.players.index(player)]

    def others(self, player: str) -> List[Tuple[str, SymbolicSet]]:
        return [(p, s) for p, s in zip(self.players, self.sets) if p != player]

    @property
    def is_empty(self) -> bool:
        return any(s.is_empty for s in self.sets)

    def replace(self, **changes: SymbolicSet) -> "Reduction":
        return self.with_sets(changes)

    def with_sets(self, changes: Mapping[str, SymbolicSet]) -> "Reduction":
        return Reduction(self.players, [changes.get(p, s) for p, s in zip(self.players, self.sets)])

    def minus(self, removed: Mapping[str, SymbolicSet]) -> "Reduction":
        return Reduction(self.players, [s - removed[p] if p in removed else s for p, s in zip(self.players, self.sets)])

    def issubset(self, other: "Reduction") -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return all(a.issubset(b) for a, b in zip(self.sets, other.sets))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Reduction):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.players == other.players and self.sets == other.sets

    def __hash__(self) -> int:
        if self.is_empty:
            return hash("empty-reduction")
        return hash(self.sets)

    def __str__(self) -> str:
        if self.is_empty:
            return render_set(SymbolicSet.empty())
        return PRODUCT.join(render_set(s) for s in self.sets)

    def __repr__(self) -> str:
        return f"Reduction({self})"

    def to_dict(self) -> dict:
        return {p: encode_set(s) for p, s in zip(self.players, self.sets)}

    @classmethod
    def from_dict(cls, players: Sequence[str], obj: Mapping, registry: Optional[SequenceRegistry] = None) -> "Reduction":
        missing = [p for p in players if p not in obj]
        if missing:
            raise MalformedSetError(f"reduction is missing players {missing}")
        return cls(players, [decode_set(obj[p], registry) for p in players])


class DominanceOracle(ABC):
    """Answers dominance queries for one game. Implementations are pure and hold no per-query state."""

    entry: Optional[str] = None

    @abstractmethod
    def dominates(self, player: str, a: Strategy, b: Strategy, R: Reduction) -> bool:
        ...

    @abstractmethod
    def dominated_elements(self, player: str, target: SymbolicSet, scope: SymbolicSet, R: Reduction) -> SymbolicSet:
        ...

    @abstractmethod
    def dominating_set(self, player: str, a: Strategy, R: Reduction) -> SymbolicSet:
        ...

    @abstractmethod
    def lower_contour_set(self, player: str, a: Strategy, R: Reduction) -> SymbolicSet:
        ...

    def gkz_removal(self, player: str, removable: SymbolicSet, R: Reduction) -> Optional[SymbolicSet]:
        """A catalogued GKZ removal for this stage shape, if the game provides one."""
        return None

    def certify_pattern(self, pattern) -> bool:
        """True when the game has an inductive argument for this chain pattern."""
        return False


class Game:
    def __init__(
        self,
        name: str,
        players: Sequence[str],
        spaces: Mapping[str, SymbolicSet],
        oracle: DominanceOracle,
        strategy_order: Optional[Mapping[str, Sequence[Strategy]]] = None,
        registry: Optional[SequenceRegistry] = None,
    ) -> None:
        if len(players) < 2:
            raise GameFormatError("a game needs at least two players", "$.players")
        if len(set(players)) != len(players):
            raise GameFormatError("duplicate player names", "$.players")
        for p in players:
            if p not in spaces:
                raise GameFormatError(f"no strategy space for player '{p}'", f"$.strategies.{p}")
            if spaces[p].is_empty:
                raise GameFormatError(f"strategy set of player '{p}' is empty", f"$.strategies.{p}")
        self.name = name
        self.players: Tuple[str, ...] = tuple(players)
        self.spaces: Dict[str, SymbolicSet] = {p: spaces[p] for p in players}
        self.oracle = oracle
        self.registry = registry or DEFAULT_REGISTRY
        self._order: Dict[str, Dict[Strategy, int]] = {
            p: {s: idx for idx, s in enumerate(order)} for p, order in (strategy_order or {}).items()
        }
        logger.info(f"[{self.__class__.__name__}] Game '{name}' with players {list(self.players)}")

    def space(self, player: str) -> SymbolicSet:
        try:
            return self.spaces[player]
        except KeyError:
            raise MalformedSetError(f"unknown player '{player}' in game '{self.name}'")

    @property
    def is_finite(self) -> bool:
        return all(s.is_finite for s in self.spaces.values())

    def full_reduction(self) -> Reduction:
        return Reduction(self.players, [self.spaces[p] for p in self.players])

    def strategy_key(self, player: str, value: Strategy):
        order = self._order.get(player)
        if order is not None and value in order:
            return (0, order[value], sort_key(value))
        return (1, 0, sort_key(value))

    def ordered(self, player: str, S: SymbolicSet) -> List[Strategy]:
        """Elements of a finite set in the player's declared strategy order."""
        return sorted(S.elements(), key=lambda v: self.strategy_key(player, v))

    def reduction(self, components: Mapping[str, SymbolicSet]) -> Reduction:
        return Reduction.from_mapping(self.players, components)

    def parse_reduction(self, text: str) -> Reduction:
        sets = parse_sets(text, self.registry)
        if len(sets) == 1 and sets[0].is_empty:
            return Reduction(self.players, [SymbolicSet.empty() for _ in self.players])
        if len(sets) != len(self.players):
            raise MalformedSetError(f"'{text}' has {len(sets)} components, game '{self.name}' has {len(self.players)} players")
        return Reduction(self.players, sets)

    def total_strategies(self) -> Optional[int]:
        counts = [s.cardinality() for s in self.spaces.values()]
        return None if any(c is None for c in counts) else sum(counts)

    def __repr__(self) -> str:
        return f"Game({self.name!r}, players={list(self.players)})"
