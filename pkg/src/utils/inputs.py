from __future__ import annotations
from fractions import Fraction
from typing import List, Optional, Union

import json
import logging

from pydantic import BaseModel, ValidationError, validator, root_validator

from .errors import ParseError
from .parser import parse_rational

logger = logging.getLogger(__name__)

## Input Models
class IdealInput(BaseModel):
    nvars: int
    generators: List[List[int]]

    @validator('nvars')
    def is_valid_nvars(cls, v):
        if v < 1:
            raise ValueError("an ideal needs at least one variable")
        return v

    @validator('generators')
    def is_valid_generators(cls, v):
        if not v:
            raise ValueError("an ideal needs at least one generator")
        if any(x < 0 for g in v for x in g):
            raise ValueError("exponents must be nonnegative integers")
        return v

class InputFile(BaseModel):
    points: Optional[List[List[Union[int, str]]]] = None
    ideal: Optional[IdealInput] = None

    @validator('points')
    def is_valid_points(cls, v):
        if not v:
            raise ValueError("give at least one point")
        for p in v:
            if len(p) < 2:
                raise ValueError("points need at least 2 coordinates")
            for c in p:
                parse_rational(c)
        return v

    @root_validator(skip_on_failure=True)
    def has_one_payload(cls, values):
        if (values.get('points') is None) == (values.get('ideal') is None):
            raise ValueError("give exactly one of 'points' and 'ideal'")
        return values

    def rationals(self) -> List[List[Fraction]]:
        return [[parse_rational(c) for c in p] for p in self.points or []]

def parse_input(text: str, source: str = "<input>") -> InputFile:
    """Validate the JSON text of an input file

    JSON syntax errors carry their line and column; structural errors name
    the offending field path.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: {e.msg}", line=e.lineno, column=e.colno) from e
    if not isinstance(raw, dict):
        raise ParseError(f"{source}: the top level must be an object", line=1, column=1)
    # floats are not exact
    if _has_float(raw):
        raise ParseError(f"{source}: decimal numbers are not allowed, write rationals as \"p/q\"")
    try:
        return InputFile.parse_obj(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{source}: {where}: {first['msg']}") from e

def _has_float(value) -> bool:
    if isinstance(value, float):
        return True
    if isinstance(value, dict):
        return any(_has_float(v) for v in value.values())
    if isinstance(value, list):
        return any(_has_float(v) for v in value)
    return False

def load_input(path: str) -> InputFile:
    with open(path) as f:
        text = f.read()
    logger.info("read %s", path)
    return parse_input(text, path)
