"""
Removal policies: given the removable set of every player, choose what to remove at one successor step.

Policies only choose; the engine checks legality. A scripted stage the engine rejects raises
IllegalStepError, while GKZ removals chosen by the other policies are repaired first.
"""

import logging
import random
from abc import ABC, abstractmethod
from typing import Dict, List, Mapping, Optional, Sequence

from algebra.notation import parse_set
from algebra.codec import decode_set
from algebra.symbolic_set import SymbolicSet
from engine.modes import Mode
from games.game import Game, Reduction
from utils.errors import ConfigError
from utils.json_helper import read_json

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

Removal = Dict[str, SymbolicSet]


class Policy(ABC):
    name: str = "policy"
    scripted: bool = False

    @abstractmethod
    def select(self, g: Game, R: Reduction, mode: Mode, removable: Mapping[str, SymbolicSet], step: int) -> Removal:
        ...

    def describe(self) -> dict:
        return {"policy": self.name}


class RemoveAll(Policy):
    name = "remove-all"

    def select(self, g, R, mode, removable, step):
        return dict(removable)


class RemoveOne(Policy):
    """One strategy: the first player in game order with something removable, its first strategy."""

    name = "remove-one"

    def select(self, g, R, mode, removable, step):
        for player in g.players:
            X = removable.get(player, SymbolicSet.empty())
            if X.is_empty:
                continue
            if X.is_finite:
                return {player: SymbolicSet.of(g.ordered(player, X)[0])}
            if X.atoms:
                return {player: SymbolicSet.of(min(X.atoms))}
            least = X.least()
            if least is not None:
                return {player: SymbolicSet.of(least)}
            return {player: SymbolicSet([X.primitives[0]])}
        return {}


class Scripted(Policy):
    """Fixed removals per step; once the script runs out, `then` takes over (or nothing is removed)."""

    name = "scripted"
    scripted = True

    def __init__(self, stages: Sequence[Removal], then: Optional[Policy] = None) -> None:
        self.stages = [dict(s) for s in stages]
        self.then = then

    def select(self, g, R, mode, removable, step):
        if step < len(self.stages):
            return self.stages[step]
        if self.then is not None:
            return self.then.select(g, R, mode, removable, step)
        return {}

    def is_scripted_step(self, step: int) -> bool:
        return step < len(self.stages)

    def describe(self) -> dict:
        out = {"policy": self.name, "stages": len(self.stages)}
        if self.then is not None:
            out["then"] = self.then.describe()
        return out


class RandomSubset(Policy):
    """Each removable primitive is kept in the removal with probability 1/2; reproducible per (seed, step)."""

    name = "random-subset"

    def __init__(self, seed: int) -> None:
        self.seed = seed

    def select(self, g, R, mode, removable, step):
        rng = random.Random(f"{self.seed}:{step}")
        candidates = [(p, prim) for p in g.players for prim in removable.get(p, SymbolicSet.empty()).primitives]
        if not candidates:
            return {}
        chosen = [c for c in candidates if rng.random() < 0.5]
        if not chosen:
            chosen = [rng.choice(candidates)]
        removal: Removal = {}
        for player, prim in chosen:
            removal[player] = removal.get(player, SymbolicSet.empty()) | SymbolicSet([prim])
        return removal

    def describe(self) -> dict:
        return {"policy": self.name, "seed": self.seed}


def load_script(path: str, g: Game) -> List[Removal]:
    """
    Read a script file: {"stages": [{player: set, ...}, ...]} where each set is
    either notation text ("[0, 1/2)") or an encoded primitive list.
    """
    doc = read_json(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("stages"), list):
        raise ConfigError(f"script '{path}' needs a 'stages' list")
    stages: List[Removal] = []
    for idx, stage in enumerate(doc["stages"]):
        if not isinstance(stage, dict):
            raise ConfigError(f"script stage {idx} is not an object")
        removal: Removal = {}
        for player, raw in stage.items():
            if player not in g.players:
                raise ConfigError(f"script stage {idx} names unknown player '{player}'")
            removal[player] = parse_set(raw, g.registry) if isinstance(raw, str) else decode_set(raw, g.registry)
        stages.append(removal)
    return stages


def make_policy(name: str, seed: Optional[int] = None, script: Optional[List[Removal]] = None, then: Optional[str] = None) -> Policy:
    if name == RemoveAll.name:
        return RemoveAll()
    if name == RemoveOne.name:
        return RemoveOne()
    if name == RandomSubset.name:
        return RandomSubset(0 if seed is None else seed)
    if name == Scripted.name:
        if script is None:
            raise ConfigError("the scripted policy needs a script")
        return Scripted(script, make_policy(then, seed) if then else None)
    raise ConfigError(f"unknown policy '{name}'")
