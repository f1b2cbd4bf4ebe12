from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Callable, Iterator, Tuple, List, Dict, Any,
    Optional, Union, Final, Generic, TypeVar,
)
A = TypeVar("A")

import re

from .errors import ParseError

@dataclass
class Parser(Generic[A]):
    """Represents a regex parser to extract info from text

    The assembled ``Parser[Dataclass]`` object can be called on a string
    (``text``) to attempt the parsing. If successful, it returns the parsed
    data as the output type. Otherwise returns `None`.

    Attributes:
        output: The type of the parsed output, if successful.
        pattern: The regex pattern to search for. The respective regex named
            groups correspond exactly to the output fields.
        subparsers: The respective functions or parsers to call on for the
            extracted group text (which is ``None`` for a group that did not
            take part in the match).
        tweak: Any additional finishing touches to perform on the returned
            info. Returning ``None`` rejects the match.
        flags: Flags handed to ``re``.
    """
    output: type
    pattern: str
    subparsers: List[Union[Parser, Callable[[Optional[str]], Any]]]
    tweak: Callable[[A], Optional[A]] = lambda parsed: parsed
    flags: int = 0

    def __post_init__(self) -> None:
        if hasattr(self.output, "__annotations__"):
            self.annotations = self.output.__annotations__
        else:
            self.annotations = self.output.__origin__.__annotations__
        assert self.annotations, \
            f"original output type {self.output!r} must have type annotations"

    def scan(self, text: str) -> Iterator[Tuple[Tuple[int, int], A]]:
        """Iterate through all matches found, with their spans
        """
        for match in re.finditer(self.pattern, text, flags=self.flags):
            if match.end() == match.start():
                continue
            groups = match.groupdict()
            kwargs = {}
            successfully_parsed = True
            for i, name in enumerate(self.annotations):
                value = self.subparsers[i](groups[name])
                if value is None:
                    successfully_parsed = False
                    break
                kwargs[name] = value
            if not successfully_parsed: continue

            parsed = self.output(**kwargs)
            parsed = self.tweak(parsed)
            if parsed is not None:
                yield match.span(), parsed

        return None

    def iter(self, text: str) -> Iterator[A]:
        """Iterate through all matches found
        """
        for _, parsed in self.scan(text):
            yield parsed

    def tile(self, text: str) -> List[A]:
        """Parse ``text`` as a gapless run of matches

        Raises ``ParseError`` with the column of the first character that no
        match covers.
        """
        parsed_all = []
        position = 0
        for (start, end), parsed in self.scan(text):
            if start != position:
                raise ParseError(f"unexpected text {text[position:start]!r}", column=position + 1)
            parsed_all.append(parsed)
            position = end
        if position != len(text) or not parsed_all:
            raise ParseError(f"unexpected text {text[position:]!r}", column=position + 1)
        return parsed_all

    def __call__(self, text: str) -> Optional[A]:
        """Return first match
        """
        parsed = None
        for parsed in self.iter(text): break
        return parsed

    def __str__(self):
        return self.pattern

#
# Rationals
#

RATIONAL_PATTERN: Final[str] = r"[+-]?\d+(?:/\d+)?"

def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Read an exact rational from ``"p/q"``, ``"p"`` or an integer

    Decimal points are refused, exact input only.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    stripped = text.strip()
    if not re.fullmatch(RATIONAL_PATTERN, stripped):
        raise ParseError(f"not a rational: {text!r}")
    if stripped.endswith("/0"):
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(stripped)

#
# Puiseux polynomial terms
#

@dataclass
class PuiseuxTerm:
    sign: str
    coeff: str
    var: str
    exponent: str

    @property
    def value(self) -> Tuple[Fraction, Fraction]:
        """(exponent, signed coefficient) of the term"""
        coeff = Fraction(self.coeff) if self.coeff else Fraction(1)
        if self.sign == "-":
            coeff = -coeff
        if not self.var:
            return Fraction(0), coeff
        if not self.exponent:
            return Fraction(1), coeff
        return Fraction(self.exponent.strip("()")), coeff

_parser_puiseux_term = Parser[PuiseuxTerm](
    PuiseuxTerm,
    r"(?P<sign>[+-]?)"
    r"(?P<coeff>\d+(?:/\d+)?)?"
    r"(?:\*?(?P<var>t)(?:\^(?P<exponent>\(-?\d+(?:/\d+)?\)|\d+))?)?",
    [
        lambda s: s or "",
        lambda s: s or "",
        lambda s: s or "",
        lambda s: s or "",
    ],
    lambda parsed: parsed if (parsed.coeff or parsed.var) else None,
)

def parse_puiseux_terms(text: str) -> Dict[Fraction, Fraction]:
    """Parse ``c*t^(p/q)`` sums into an exponent -> coefficient map

    Whitespace is ignored. Accepted term shapes: ``c``, ``c*t``, ``c*t^n``,
    ``c*t^(p/q)``, ``t``, ``t^n``, ``t^(p/q)``, each with an optional sign
    (required between terms). Repeated exponents are summed; zero sums are
    dropped.
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParseError("empty polynomial")
    parsed_terms = _parser_puiseux_term.tile(compact)
    for term in parsed_terms[1:]:
        if not term.sign:
            raise ParseError(f"missing operator in {text!r}")
    terms: Dict[Fraction, Fraction] = {}
    for term in parsed_terms:
        exponent, coeff = term.value
        terms[exponent] = terms.get(exponent, Fraction(0)) + coeff
    return {e: c for e, c in terms.items() if c != 0}
