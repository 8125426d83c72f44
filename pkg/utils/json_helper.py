import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Iterator, Union

import orjson

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)


def encode_rational(value: Fraction) -> dict:
    """Rational as {"num", "den"} decimal strings; Fraction already keeps den > 0 and gcd 1."""
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def decode_rational(obj: Any) -> Fraction:
    """
    Accepts the {"num","den"} object, a plain integer, or a "p/q" string.

    Raises:
        ValueError: for anything else, including a zero or negative denominator.
    """
    if isinstance(obj, bool):
        raise ValueError(f"boolean is not a rational: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        num, den = int(obj["num"]), int(obj["den"])
        if den <= 0:
            raise ValueError(f"denominator must be positive, got {den}")
        return Fraction(num, den)
    raise ValueError(f"not a rational: {obj!r}")


def dumps(obj: Any, pretty: bool = False) -> bytes:
    option = orjson.OPT_INDENT_2 if pretty else 0
    return orjson.dumps(obj, option=option)


def loads(data: Union[str, bytes]) -> Any:
    return orjson.loads(data)


def write_json(path: Union[str, Path], obj: Any) -> None:
    Path(path).write_bytes(dumps(obj, pretty=True) + b"\n")
    logger.debug(f"Wrote JSON document to {path}")


def read_json(path: Union[str, Path]) -> Any:
    try:
        return loads(Path(path).read_bytes())
    except orjson.JSONDecodeError as e:
        logger.error(f"Failed to parse JSON from '{path}': {e}")
        raise


def write_json_lines(path: Union[str, Path], rows: Iterable[Any]) -> None:
    with open(path, "wb") as f:
        for row in rows:
            f.write(dumps(row) + b"\n")


def read_json_lines(path: Union[str, Path]) -> Iterator[Any]:
    with open(path, "rb") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                yield loads(line)
            except orjson.JSONDecodeError as e:
                logger.error(f"Malformed JSON line {line_no} in '{path}': {e}")
                raise
