from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any

import json

def to_plain(value: Any) -> Any:
    '''
    Given a report value built from the library's types, return its
    JSON-ready representation

    Fractions become "p/q" strings (integers stay integers), sets become
    sorted lists, dataclasses become dicts of their fields and objects with
    a custom ``__str__`` (points, Puiseux numbers, halfspaces) become that
    string. Infinite floats become "inf".
    '''
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, float):
        return "inf" if value == float("inf") else "-inf" if value == float("-inf") else value
    if isinstance(value, dict):
        return {_key(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_plain(v) for v in value), key=_sort_key)
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if is_dataclass(value) and type(value).__str__ is object.__str__:
        return {f.name: to_plain(getattr(value, f.name)) for f in fields(value) if not f.name.startswith("_")}
    return str(value)

def _key(k: Any) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(str(to_plain(x)) for x in k)
    return str(to_plain(k))

def _sort_key(v: Any):
    return (not isinstance(v, (int, float)), v if isinstance(v, (int, float)) else str(v))

def dumps(report: Any) -> str:
    '''
    Deterministic JSON text of a report (sorted keys, two-space indent)
    '''
    return json.dumps(to_plain(report), indent=2, sort_keys=True)
