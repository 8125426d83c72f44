"""Human notation for sets and reductions, e.g. "[0,1/2] ∪ {1} × {Left, Right}" or "even[3:] ∪ {1} × ∅"."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Union

import pyparsing as pp

from algebra.sequences import DEFAULT_REGISTRY, SequenceRegistry
from algebra.symbolic_set import Interval, SymbolicSet, TailFamily
from utils.errors import MalformedSetError

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

EMPTY = "∅"
PRODUCT = " × "


def render_value(value: Union[str, Fraction]) -> str:
    return value if isinstance(value, str) else str(value)


def render_set(S: SymbolicSet) -> str:
    if S.is_empty:
        return EMPTY
    parts = []
    finite = sorted(S.atoms) + [str(p) for p in S.points]
    if finite:
        parts.append("{" + ", ".join(finite) + "}")
    for iv in S.intervals:
        lo = "-inf" if iv.lo is None else str(iv.lo)
        hi = "inf" if iv.hi is None else str(iv.hi)
        parts.append(f"{'[' if iv.lo_closed else '('}{lo}, {hi}{']' if iv.hi_closed else ')'}")
    for t in S.tails:
        parts.append(f"{t.seq.id}[{t.start}:]")
    return " ∪ ".join(parts)


@dataclass(frozen=True)
class _Term:
    kind: str
    payload: Any = None


def _build_grammar() -> pp.ParserElement:
    integer = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0]))
    rational = pp.Regex(r"-?\d+(/\d+)?").set_parse_action(lambda t: Fraction(t[0]))
    label = pp.Word(pp.alphas + "_", pp.alphanums + "_-") | pp.QuotedString('"')
    value = rational | label

    brace = (pp.Suppress("{") + pp.Optional(pp.DelimitedList(value)) + pp.Suppress("}")).set_parse_action(
        lambda t: [_Term("finite", list(t))]
    )
    bound = pp.Literal("-inf") | pp.Literal("inf") | rational
    interval = (pp.one_of("[ (") + bound + pp.Suppress(",") + bound + pp.one_of("] )")).set_parse_action(
        lambda t: [_Term("interval", list(t))]
    )
    tail = (
        pp.Word(pp.alphas + "_", pp.alphanums + "_") + pp.Suppress("[") + integer + pp.Suppress(":") + pp.Suppress("]")
    ).set_parse_action(lambda t: [_Term("tail", (t[0], t[1]))])
    empty = pp.Literal(EMPTY).set_parse_action(lambda t: [_Term("empty")])

    term = empty | brace | interval | tail
    component = pp.Group(term + pp.ZeroOrMore(pp.Suppress(pp.one_of("∪ |")) + term))
    return component + pp.ZeroOrMore(pp.Suppress(pp.one_of("× *")) + component) + pp.StringEnd()


_GRAMMAR = _build_grammar()


def _bound(token) -> Optional[Fraction]:
    return None if token in ("-inf", "inf") else token


def _component_to_set(terms, registry: SequenceRegistry) -> SymbolicSet:
    result = SymbolicSet.empty()
    for term in terms:
        if term.kind == "finite":
            result = result | SymbolicSet.of(*term.payload)
        elif term.kind == "interval":
            open_tok, lo, hi, close_tok = term.payload
            result = result | SymbolicSet([Interval(_bound(lo), _bound(hi), open_tok == "[", close_tok == "]")])
        elif term.kind == "tail":
            seq_id, start = term.payload
            result = result | SymbolicSet([TailFamily(registry.get(seq_id), start)])
    return result


def parse_sets(text: str, registry: Optional[SequenceRegistry] = None) -> List[SymbolicSet]:
    """
    Parse a product of sets, one per player in order.

    Raises:
        MalformedSetError: on a syntax error or an unknown sequence id.
    """
    registry = registry or DEFAULT_REGISTRY
    try:
        parsed = _GRAMMAR.parse_string(text.strip(), parse_all=True)
    except pp.ParseException as e:
        logger.error(f"Could not parse set notation '{text}': {e}")
        raise MalformedSetError(f"cannot parse '{text}': {e.msg} at column {e.col}")
    return [_component_to_set(group, registry) for group in parsed]


def parse_set(text: str, registry: Optional[SequenceRegistry] = None) -> SymbolicSet:
    sets = parse_sets(text, registry)
    if len(sets) != 1:
        raise MalformedSetError(f"expected one set, got a product of {len(sets)} in '{text}'")
    return sets[0]
