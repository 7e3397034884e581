"""Canonical JSON serialization: deterministic key order, exact rationals as
"num/den" strings, dataclass/tuple flattening."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

SCHEMA_VERSION = 1


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return repr(obj)


def dumps(obj, pretty: bool = False) -> str:
    payload = to_jsonable(obj)
    if isinstance(payload, dict) and "schema" not in payload:
        payload = {"schema": SCHEMA_VERSION, **payload}
    if pretty:
        return json.dumps(payload, indent=2, sort_keys=True)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))
