"""
Finite games given by payoff tensors, and the JSON game-file loader.

Tensors are numpy object arrays of Fraction, indexed by strategy position in player order.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from algebra.symbolic_set import Strategy, SymbolicSet
from games.game import DominanceOracle, Game, Reduction
from utils.errors import GameFormatError, MalformedSetError
from utils.json_helper import decode_rational, encode_rational, loads, read_json

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class GameDocument(BaseModel):
    """Top-level shape of a game file; tensor contents are checked separately."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: Optional[str] = None
    players: List[str]
    strategies: Dict[str, List[str]]
    payoffs: Dict[str, Any]


class FiniteTableOracle(DominanceOracle):
    def __init__(self, players: Sequence[str], labels: Mapping[str, Sequence[str]], payoffs: Mapping[str, np.ndarray]) -> None:
        self.players = tuple(players)
        self.labels = {p: list(labels[p]) for p in self.players}
        self.index = {p: {label: idx for idx, label in enumerate(self.labels[p])} for p in self.players}
        self.payoffs = dict(payoffs)
        self._matrices: Dict[Tuple, np.ndarray] = {}

    def _positions(self, player: str, S: SymbolicSet) -> List[int]:
        try:
            return sorted(self.index[player][label] for label in S.atoms)
        except KeyError as e:
            raise MalformedSetError(f"{e.args[0]!r} is not a strategy of player '{player}'")

    def dominance_matrix(self, player: str, R: Reduction) -> np.ndarray:
        """M[a, b] is True when b strictly dominates a for player relative to R_{-player}."""
        key = (player,) + tuple(s.atoms for _, s in R.others(player))
        cached = self._matrices.get(key)
        if cached is not None:
            return cached

        pos = self.players.index(player)
        U = np.moveaxis(self.payoffs[player], pos, 0)
        n = U.shape[0]
        others = [self._positions(p, s) for p, s in R.others(player)]
        sub = U[np.ix_(list(range(n)), *others)].reshape(n, -1)
        M = np.all(sub[:, None, :] < sub[None, :, :], axis=2).astype(bool)
        self._matrices[key] = M
        return M

    def _label(self, player: str, a: Strategy) -> int:
        if not isinstance(a, str) or a not in self.index[player]:
            raise MalformedSetError(f"{a!r} is not a strategy of player '{player}'")
        return self.index[player][a]

    def _as_set(self, player: str, mask: np.ndarray) -> SymbolicSet:
        return SymbolicSet.of(*[self.labels[player][idx] for idx in np.flatnonzero(mask)])

    def dominates(self, player: str, a: Strategy, b: Strategy, R: Reduction) -> bool:
        return bool(self.dominance_matrix(player, R)[self._label(player, a), self._label(player, b)])

    def dominated_elements(self, player: str, target: SymbolicSet, scope: SymbolicSet, R: Reduction) -> SymbolicSet:
        t_idx, s_idx = self._positions(player, target), self._positions(player, scope)
        if not t_idx or not s_idx:
            return SymbolicSet.empty()
        hit = self.dominance_matrix(player, R)[np.ix_(t_idx, s_idx)].any(axis=1)
        return SymbolicSet.of(*[self.labels[player][t_idx[k]] for k in np.flatnonzero(hit)])

    def dominating_set(self, player: str, a: Strategy, R: Reduction) -> SymbolicSet:
        return self._as_set(player, self.dominance_matrix(player, R)[self._label(player, a), :])

    def lower_contour_set(self, player: str, a: Strategy, R: Reduction) -> SymbolicSet:
        return self._as_set(player, self.dominance_matrix(player, R)[:, self._label(player, a)])

    def payoff(self, player: str, profile: Mapping[str, str]) -> Fraction:
        idx = tuple(self._label(p, profile[p]) for p in self.players)
        return self.payoffs[player][idx]


def build_finite_game(
    name: str,
    players: Sequence[str],
    strategies: Mapping[str, Sequence[str]],
    payoff: Callable[[str, Dict[str, str]], Fraction],
) -> Game:
    """Tabulate payoff(player, profile) over every pure profile."""
    shape = tuple(len(strategies[p]) for p in players)
    tensors = {p: np.empty(shape, dtype=object) for p in players}
    for idx in np.ndindex(*shape):
        profile = {p: strategies[p][k] for p, k in zip(players, idx)}
        for p in players:
            tensors[p][idx] = Fraction(payoff(p, profile))
    return _assemble(name, players, strategies, tensors)


def _assemble(name, players, strategies, tensors) -> Game:
    oracle = FiniteTableOracle(players, strategies, tensors)
    spaces = {p: SymbolicSet.of(*strategies[p]) for p in players}
    return Game(name, players, spaces, oracle, strategy_order=strategies)


def _read_tensor(obj: Any, dims: Sequence[int], path: str) -> Any:
    if not dims:
        if isinstance(obj, list):
            raise GameFormatError("payoff tensor is deeper than the strategy profile", path)
        try:
            return decode_rational(obj)
        except ValueError as e:
            raise GameFormatError(f"payoff is not an exact rational: {e}", path)
    if not isinstance(obj, list) or len(obj) != dims[0]:
        found = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise GameFormatError(f"ragged payoff tensor: expected {dims[0]} entries, found {found}", path)
    return [_read_tensor(item, dims[1:], f"{path}[{k}]") for k, item in enumerate(obj)]


def _tensor(nested: list, shape: Tuple[int, ...]) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        cell = nested
        for k in idx:
            cell = cell[k]
        out[idx] = cell
    return out


def load_finite_game(source: Union[str, bytes, Mapping]) -> Game:
    """
    Build a finite game from a game document (dict or JSON text).

    Raises:
        GameFormatError: with a JSON path locating the first offending field.
    """
    if isinstance(source, (str, bytes)):
        try:
            source = loads(source)
        except ValueError as e:
            raise GameFormatError(f"not valid JSON: {e}")
    if not isinstance(source, Mapping):
        raise GameFormatError("a game document is a JSON object")
    try:
        doc = GameDocument.model_validate(source)
    except ValidationError as e:
        first = e.errors()[0]
        path = "$" + "".join(f"[{loc}]" if isinstance(loc, int) else f".{loc}" for loc in first["loc"])
        raise GameFormatError(first["msg"], path)

    if len(doc.players) < 2:
        raise GameFormatError("a game needs at least two players", "$.players")
    if len(set(doc.players)) != len(doc.players):
        raise GameFormatError("duplicate player names", "$.players")
    for p in doc.players:
        labels = doc.strategies.get(p)
        if labels is None:
            raise GameFormatError(f"no strategies for player '{p}'", f"$.strategies.{p}")
        if not labels:
            raise GameFormatError(f"player '{p}' has no strategies", f"$.strategies.{p}")
        seen = set()
        for k, label in enumerate(labels):
            if label in seen:
                raise GameFormatError(f"duplicate strategy label '{label}'", f"$.strategies.{p}[{k}]")
            seen.add(label)
    extra = set(doc.strategies) - set(doc.players)
    if extra:
        raise GameFormatError(f"strategies for unknown players {sorted(extra)}", "$.strategies")

    shape = tuple(len(doc.strategies[p]) for p in doc.players)
    tensors = {}
    for p in doc.players:
        if p not in doc.payoffs:
            raise GameFormatError(f"no payoff tensor for player '{p}'", f"$.payoffs.{p}")
        tensors[p] = _tensor(_read_tensor(doc.payoffs[p], shape, f"$.payoffs.{p}"), shape)

    name = doc.name or "game"
    logger.info(f"Loaded finite game '{name}' with shape {shape}")
    return _assemble(name, doc.players, doc.strategies, tensors)


def load_game_file(path: Union[str, Path]) -> Game:
    try:
        raw = read_json(path)
    except FileNotFoundError:
        raise GameFormatError(f"game file not found: {path}")
    except ValueError as e:
        raise GameFormatError(f"not valid JSON: {e}")
    return load_finite_game(raw)


def game_to_document(g: Game) -> dict:
    """Inverse of load_finite_game for games backed by a FiniteTableOracle."""
    oracle = g.oracle
    if not isinstance(oracle, FiniteTableOracle):
        raise GameFormatError(f"game '{g.name}' is not a finite table game")

    def nested(arr: np.ndarray):
        if arr.ndim == 0:
            return encode_rational(arr.item())
        return [nested(arr[k]) for k in range(arr.shape[0])]

    return {
        "name": g.name,
        "players": list(g.players),
        "strategies": {p: list(oracle.labels[p]) for p in g.players},
        "payoffs": {p: nested(oracle.payoffs[p]) for p in g.players},
    }
