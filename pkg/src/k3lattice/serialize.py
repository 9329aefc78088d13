"""Canonical JSON: rationals as "p/q" strings, sorted keys, no floats."""
from __future__ import annotations

import enum
import json
from fractions import Fraction


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(obj, approx: bool = False):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[str(k)] = to_jsonable(v, approx)
            if approx and isinstance(v, Fraction):
                out[f"{k}_approx"] = float(v)
        return out
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, approx) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json(), approx)
    if isinstance(obj, float):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, approx: bool = False) -> str:
    return json.dumps(to_jsonable(obj, approx), sort_keys=True, indent=2)


def as_table(obj, prefix: str = "") -> list[str]:
    """Flatten a JSON-able value into ``key: value`` lines."""
    obj = to_jsonable(obj)
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines += as_table(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            lines += as_table(v, f"{prefix}[{i}]")
    else:
        lines.append(f"{prefix}: {json.dumps(obj)}")
    return lines
