# src/utils/serialize.py

"""
Deterministic JSON / CSV output.

Rationals are always written as "num/den" strings (integers as "n/1"), keys are
sorted, and no floats are ever produced.
"""

import csv
import io
import json
import re
from fractions import Fraction
from typing import Any, Iterable, List, Sequence

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (Fraction, int)):
        return rational_str(obj)
    if isinstance(obj, float):
        raise TypeError("floating point values are never serialized")
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, (Fraction, int)) else rational_str(k): to_jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def from_jsonable(obj: Any) -> Any:
    """Inverse of to_jsonable up to tuple/list and int/Fraction identification."""
    if isinstance(obj, str) and _RATIONAL.match(obj):
        return parse_rational(obj)
    if isinstance(obj, dict):
        return {k: from_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [from_jsonable(v) for v in obj]
    return obj


def loads(text: str) -> Any:
    return from_jsonable(json.loads(text))


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([rational_str(v) if isinstance(v, (Fraction, int)) and not isinstance(v, bool) else v
                         for v in row])
    return buffer.getvalue()


def read_csv(text: str) -> List[dict]:
    return [dict(row) for row in csv.DictReader(io.StringIO(text))]
