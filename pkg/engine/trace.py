"""Elimination traces, step justifications and verdicts, with their JSON-lines form."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from algebra.codec import decode_strategy, encode_set, encode_strategy, decode_set
from algebra.patterns import (
    Certificate,
    ChainPattern,
    Endpoint,
    MovingInterval,
    MovingTail,
    PlayerTemplate,
)
from algebra.symbolic_set import Strategy, SymbolicSet
from engine.modes import Mode, Stage
from games.game import Game, Reduction
from utils.errors import MalformedSetError
from utils.json_helper import decode_rational

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


class Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    holds: bool
    clause: Optional[str] = None
    detail: Optional[str] = None
    stage: Optional[str] = None
    player: Optional[str] = None
    strategy: Optional[Any] = None

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(holds=True)


@dataclass(frozen=True)
class Witness:
    player: str
    removed: Strategy
    dominator: Optional[Strategy]

    def to_dict(self) -> dict:
        return {
            "player": self.player,
            "removed": encode_strategy(self.removed),
            "dominator": None if self.dominator is None else encode_strategy(self.dominator),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Witness":
        dom = obj.get("dominator")
        return cls(obj["player"], decode_strategy(obj["removed"]), None if dom is None else decode_strategy(dom))


@dataclass(frozen=True)
class StepJustification:
    removed: Dict[str, SymbolicSet]
    witnesses: Tuple[Witness, ...] = ()

    @classmethod
    def empty(cls) -> "StepJustification":
        return cls({})


@dataclass
class EliminationTrace:
    game: str
    mode: Mode
    stages: List[Tuple[Stage, Reduction]] = field(default_factory=list)
    justifications: Dict[int, StepJustification] = field(default_factory=dict)
    certificates: Dict[int, ChainPattern] = field(default_factory=dict)
    terminal_maximal: bool = False

    @property
    def final(self) -> Reduction:
        return self.stages[-1][1]

    @property
    def final_stage(self) -> Stage:
        return self.stages[-1][0]

    @property
    def length(self) -> Stage:
        """Order type of the chain: the stage after the last one."""
        return self.final_stage.successor()

    @property
    def heuristic(self) -> bool:
        return any(p.certificate is not Certificate.INDUCTIVE for p in self.certificates.values())

    def reductions(self) -> List[Reduction]:
        return [R for _, R in self.stages]

    def summary(self) -> dict:
        return {
            "game": self.game,
            "mode": self.mode.value,
            "stages": len(self.stages),
            "final_stage": str(self.final_stage),
            "final": str(self.final),
            "terminal_maximal": self.terminal_maximal,
            "heuristic": self.heuristic,
        }

    def to_json_lines(self) -> List[dict]:
        rows: List[dict] = [{"trace": {"game": self.game, "mode": self.mode.value, "terminal_maximal": self.terminal_maximal}}]
        for idx, (stage, R) in enumerate(self.stages):
            row: Dict[str, Any] = {"stage": stage.to_dict(), "label": str(stage), "reduction": R.to_dict()}
            just = self.justifications.get(idx)
            if just is not None:
                row["removed"] = {p: encode_set(s) for p, s in just.removed.items()}
                row["witnesses"] = [w.to_dict() for w in just.witnesses]
            if idx in self.certificates:
                row["certificate"] = self.certificates[idx].to_dict()
            rows.append(row)
        return rows

    @classmethod
    def from_json_lines(cls, rows: Iterable[dict], g: Game) -> "EliminationTrace":
        rows = list(rows)
        if not rows or "trace" not in rows[0]:
            raise MalformedSetError("trace file must start with a header line")
        header = rows[0]["trace"]
        trace = cls(game=header.get("game", g.name), mode=Mode(header["mode"]), terminal_maximal=bool(header.get("terminal_maximal")))
        for idx, row in enumerate(rows[1:]):
            trace.stages.append((Stage.from_dict(row["stage"]), Reduction.from_dict(g.players, row["reduction"], g.registry)))
            if "removed" in row:
                removed = {p: decode_set(s, g.registry) for p, s in row["removed"].items()}
                witnesses = tuple(Witness.from_dict(w) for w in row.get("witnesses", []))
                trace.justifications[idx] = StepJustification(removed, witnesses)
            if "certificate" in row:
                trace.certificates[idx] = pattern_from_dict(row["certificate"], g)
        return trace


def _endpoint_from_dict(obj: dict, g: Game) -> Endpoint:
    if "seq" in obj:
        return Endpoint(seq=g.registry.get(obj["seq"]), m=int(obj["m"]), c=int(obj["c"]))
    return Endpoint(value=None if obj.get("value") is None else decode_rational(obj["value"]))


def pattern_from_dict(obj: dict, g: Game) -> ChainPattern:
    templates = []
    for player, tpl in obj["templates"].items():
        intervals = tuple(
            MovingInterval(_endpoint_from_dict(iv["lo"], g), _endpoint_from_dict(iv["hi"], g), iv["lo_closed"], iv["hi_closed"])
            for iv in tpl["intervals"]
        )
        tails = tuple(MovingTail(g.registry.get(t["seq"]), int(t["m"]), int(t["c"])) for t in tpl["tails"])
        points = tuple(decode_rational(p) for p in tpl["points"])
        templates.append((player, PlayerTemplate(frozenset(tpl["atoms"]), points, intervals, tails)))
    return ChainPattern(
        base_stage=int(obj["base_stage"]),
        period=int(obj["period"]),
        verified_window=int(obj["verified_window"]),
        templates=tuple(templates),
        certificate=Certificate(obj["certificate"]),
    )
