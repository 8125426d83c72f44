import logging
from fractions import Fraction
from typing import Any, Optional

from algebra.sequences import DEFAULT_REGISTRY, SequenceRegistry
from algebra.symbolic_set import Atom, Interval, Point, SetPrimitive, Strategy, SymbolicSet, TailFamily
from utils.errors import MalformedSetError
from utils.json_helper import decode_rational, encode_rational

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


def encode_strategy(value: Strategy) -> Any:
    if isinstance(value, str):
        return {"atom": value}
    return encode_rational(value)


def decode_strategy(obj: Any) -> Strategy:
    if isinstance(obj, dict) and set(obj) == {"atom"}:
        return str(obj["atom"])
    try:
        return decode_rational(obj)
    except ValueError as e:
        raise MalformedSetError(f"not a strategy value: {obj!r} ({e})")


def encode_primitive(prim: SetPrimitive) -> dict:
    if isinstance(prim, Atom):
        return {"type": "atom", "label": prim.label}
    if isinstance(prim, Point):
        return {"type": "point", "value": encode_rational(prim.value)}
    if isinstance(prim, Interval):
        return {
            "type": "interval",
            "lo": None if prim.lo is None else encode_rational(prim.lo),
            "hi": None if prim.hi is None else encode_rational(prim.hi),
            "lo_closed": prim.lo_closed,
            "hi_closed": prim.hi_closed,
        }
    return {"type": "tail", "seq": prim.seq.id, "start": prim.start}


def decode_primitive(obj: dict, registry: SequenceRegistry) -> SetPrimitive:
    try:
        kind = obj["type"]
        if kind == "atom":
            return Atom(str(obj["label"]))
        if kind == "point":
            return Point(decode_rational(obj["value"]))
        if kind == "interval":
            lo = None if obj.get("lo") is None else decode_rational(obj["lo"])
            hi = None if obj.get("hi") is None else decode_rational(obj["hi"])
            iv = Interval(lo, hi, bool(obj["lo_closed"]), bool(obj["hi_closed"]))
            if lo is not None and hi is not None and lo > hi:
                raise MalformedSetError(f"interval with lo > hi: {obj!r}")
            return iv
        if kind == "tail":
            return TailFamily(registry.get(obj["seq"]), int(obj["start"]))
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedSetError(f"malformed primitive {obj!r}: {e}")
    raise MalformedSetError(f"unknown primitive type {obj.get('type')!r}")


def encode_set(S: SymbolicSet) -> list:
    return [encode_primitive(p) for p in S.primitives]


def decode_set(obj: Any, registry: Optional[SequenceRegistry] = None) -> SymbolicSet:
    if not isinstance(obj, list):
        raise MalformedSetError(f"a set is a list of primitives, got {type(obj).__name__}")
    registry = registry or DEFAULT_REGISTRY
    return SymbolicSet(decode_primitive(p, registry) for p in obj)


def encode_set_document(S: SymbolicSet) -> dict:
    """Self-contained document: the registry of sequences used plus the primitives."""
    return {"registry": SequenceRegistry(S.sequences()).to_dict(), "set": encode_set(S)}


def decode_set_document(doc: dict) -> SymbolicSet:
    registry = SequenceRegistry.from_dict(doc.get("registry", {}))
    return decode_set(doc["set"], registry)


def sort_key(value: Strategy):
    """Atoms before rationals; used wherever an order over mixed values is needed."""
    if isinstance(value, str):
        return (0, value, Fraction(0))
    return (1, "", Fraction(value))
