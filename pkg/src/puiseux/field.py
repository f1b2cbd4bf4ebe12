from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Iterable, List, Sequence, Tuple, Union, Final

import logging
import re

from sympy import Poly, QQ, Rational, Symbol

from utils.errors import TropoError, ParseError
from utils.parser import parse_puiseux_terms, parse_rational

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Degree = Union[Fraction, float]

NEG_INF: Final[float] = float("-inf")

# raised when a numeric evaluation hits a zero denominator
class PoleError(TropoError, ZeroDivisionError): pass

# s = t^(1/N) after rescaling exponents by their common denominator N
_S = Symbol("s")

#
# Polynomials in t with rational exponents
#

@dataclass(frozen=True, eq=False)
class PuiseuxPoly:
    """Finite sum of ``c * t^e`` with rational ``c`` and ``e``

    Attributes:
        terms: ``(exponent, coefficient)`` pairs, exponents strictly
            descending, no zero coefficients. The empty tuple is 0.
    """
    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, terms: Dict[Fraction, Fraction]) -> PuiseuxPoly:
        return cls(tuple(sorted(
            ((Fraction(e), Fraction(c)) for e, c in terms.items() if c != 0),
            reverse=True,
        )))

    @classmethod
    def monomial(cls, coeff: Scalar, exponent: Scalar = 0) -> PuiseuxPoly:
        if coeff == 0:
            return ZERO_POLY
        return cls(((Fraction(exponent), Fraction(coeff)),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def degree(self) -> Degree:
        return self.terms[0][0] if self.terms else NEG_INF

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    @property
    def low_degree(self) -> Degree:
        return self.terms[-1][0] if self.terms else NEG_INF

    def as_dict(self) -> Dict[Fraction, Fraction]:
        return dict(self.terms)

    def __add__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return PuiseuxPoly.from_dict(acc)

    def __neg__(self) -> PuiseuxPoly:
        return PuiseuxPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        return self + (-other)

    def __mul__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        if not self.terms or not other.terms:
            return ZERO_POLY
        if len(other.terms) == 1:
            return self.scale(other.terms[0][1], other.terms[0][0])
        if len(self.terms) == 1:
            return other.scale(self.terms[0][1], self.terms[0][0])
        acc: Dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return PuiseuxPoly.from_dict(acc)

    def scale(self, coeff: Scalar, shift: Scalar = 0) -> PuiseuxPoly:
        """Multiply by ``coeff * t^shift``"""
        if coeff == 0:
            return ZERO_POLY
        return PuiseuxPoly(tuple((e + shift, c * coeff) for e, c in self.terms))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PuiseuxPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.terms):
            body = _format_term(abs(c), e)
            if i == 0:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append((" + " if c > 0 else " - ") + body)
        return "".join(out)

ZERO_POLY: Final[PuiseuxPoly] = PuiseuxPoly()
ONE_POLY: Final[PuiseuxPoly] = PuiseuxPoly(((Fraction(0), Fraction(1)),))

def _format_term(coeff: Fraction, exponent: Fraction) -> str:
    if exponent == 0:
        return str(coeff)
    if exponent == 1:
        power = "t"
    elif exponent.denominator == 1 and exponent > 0:
        power = f"t^{exponent}"
    else:
        power = f"t^({exponent})"
    return power if coeff == 1 else f"{coeff}*{power}"

#
# sympy bridge: exponents rescaled to integers in s = t^(1/N)
#

def _exponent_scale(polys: Iterable[PuiseuxPoly]) -> int:
    return reduce(lcm, (e.denominator for p in polys for e, _ in p.terms), 1)

def _to_sympy(poly: PuiseuxPoly, scale: int) -> Tuple[Poly, int]:
    shift = int(poly.low_degree * scale)
    rep = {
        (int(e * scale) - shift,): Rational(c.numerator, c.denominator)
        for e, c in poly.terms
    }
    return Poly.from_dict(rep, _S, domain=QQ), shift

def _from_sympy(poly: Poly, scale: int, shift: int) -> PuiseuxPoly:
    return PuiseuxPoly.from_dict({
        Fraction(k + shift, scale): Fraction(int(c.p), int(c.q))
        for (k,), c in poly.as_dict().items()
    })

def poly_gcd(polys: Sequence[PuiseuxPoly]) -> PuiseuxPoly:
    """Monic gcd of nonzero polynomials, up to a power of t (lowest term t^0)"""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return ZERO_POLY
    if any(p.is_monomial() for p in polys):
        return ONE_POLY
    scale = _exponent_scale(polys)
    converted = [_to_sympy(p, scale)[0] for p in polys]
    g = reduce(lambda a, b: a.gcd(b), converted)
    return _from_sympy(g.monic(), scale, 0)

def poly_exact_quotient(poly: PuiseuxPoly, divisor: PuiseuxPoly) -> PuiseuxPoly:
    """``poly / divisor`` when the division is exact"""
    if divisor.is_monomial():
        e, c = divisor.terms[0]
        return poly.scale(1 / c, -e)
    scale = _exponent_scale([poly, divisor])
    p, p_shift = _to_sympy(poly, scale)
    q, q_shift = _to_sympy(divisor, scale)
    return _from_sympy(p.exquo(q), scale, p_shift - q_shift)

#
# The field K
#

@dataclass(frozen=True, eq=False)
class PuiseuxNumber:
    """Element ``num / den`` of the ordered field K, t infinitely large

    Values built through the public constructors are canonical: ``den`` is
    gcd-reduced against ``num``, has leading coefficient 1 and lowest
    exponent 0, and is ``1`` whenever it would be a monomial.

    Attributes:
        num: numerator.
        den: denominator, never zero.
    """
    num: PuiseuxPoly
    den: PuiseuxPoly = ONE_POLY

    @classmethod
    def make(cls, num: PuiseuxPoly, den: PuiseuxPoly = ONE_POLY) -> PuiseuxNumber:
        """Canonical ``num / den``"""
        if den.is_zero():
            raise ZeroDivisionError("Puiseux division by zero")
        if num.is_zero():
            return ZERO
        if den.is_monomial():
            e, c = den.terms[0]
            return cls(num.scale(1 / c, -e))
        g = poly_gcd([num, den])
        if g != ONE_POLY:
            num = poly_exact_quotient(num, g)
            den = poly_exact_quotient(den, g)
        if den.is_monomial():
            e, c = den.terms[0]
            return cls(num.scale(1 / c, -e))
        lc, low = den.leading_coefficient, den.low_degree
        return cls(num.scale(1 / lc, -low), den.scale(1 / lc, -low))

    @classmethod
    def of(cls, value: Union[PuiseuxNumber, Scalar]) -> PuiseuxNumber:
        if isinstance(value, PuiseuxNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(PuiseuxPoly.monomial(value, 0))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE_POLY

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    #
    # Field operations
    #

    def __add__(self, other):
        other = PuiseuxNumber.of(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == ONE_POLY:
                return PuiseuxNumber(self.num + other.num)
            return PuiseuxNumber.make(self.num + other.num, self.den)
        return PuiseuxNumber.make(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self) -> PuiseuxNumber:
        return PuiseuxNumber(-self.num, self.den)

    def __sub__(self, other):
        other = PuiseuxNumber.of(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = PuiseuxNumber.of(other)
        if other is NotImplemented:
            return other
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return PuiseuxNumber(self.num * other.num)
        return PuiseuxNumber.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = PuiseuxNumber.of(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("Puiseux division by zero")
        return PuiseuxNumber.make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return PuiseuxNumber.of(other) / self

    def __pow__(self, exponent: int) -> PuiseuxNumber:
        if exponent < 0:
            return PuiseuxNumber.of(1) / (self ** -exponent)
        out = ONE
        for _ in range(exponent):
            out = out * self
        return out

    #
    # Order
    #

    def sign(self) -> int:
        if self.num.is_zero():
            return 0
        s = 1 if self.num.leading_coefficient > 0 else -1
        return s if self.den.leading_coefficient > 0 else -s

    def compare(self, other) -> int:
        """-1, 0 or 1 as ``self`` is less than, equal to or greater than ``other``"""
        return (self - other).sign()

    def __eq__(self, other) -> bool:
        other = PuiseuxNumber.of(other)
        if other is NotImplemented:
            return False
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        if self.den == ONE_POLY and self.num.is_monomial() and self.num.terms[0][0] == 0:
            return hash(self.num.terms[0][1])
        canonical = PuiseuxNumber.make(self.num, self.den)
        return hash((canonical.num, canonical.den))

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    #
    # Degree map
    #

    @property
    def degree(self) -> Degree:
        if self.num.is_zero():
            return NEG_INF
        return self.num.degree - self.den.degree

    @property
    def leading_coefficient(self) -> Fraction:
        if self.num.is_zero():
            return Fraction(0)
        return self.num.leading_coefficient / self.den.leading_coefficient

    def leading_monomial(self) -> PuiseuxNumber:
        """``c * t^deg`` matching the leading behaviour"""
        if self.num.is_zero():
            return ZERO
        return monomial(self.leading_coefficient, self.degree)

    #
    # Text form
    #

    def __str__(self) -> str:
        if self.den == ONE_POLY:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"PuiseuxNumber({str(self)!r})"

ZERO: Final[PuiseuxNumber] = PuiseuxNumber(ZERO_POLY)
ONE: Final[PuiseuxNumber] = PuiseuxNumber(ONE_POLY)
T: Final[PuiseuxNumber] = PuiseuxNumber(PuiseuxPoly(((Fraction(1), Fraction(1)),)))

def monomial(coeff: Scalar, exponent: Scalar) -> PuiseuxNumber:
    """``coeff * t^exponent``"""
    return PuiseuxNumber(PuiseuxPoly.monomial(Fraction(coeff), Fraction(exponent)))

def degree(x: PuiseuxNumber) -> Degree:
    return x.degree

def sign(x: PuiseuxNumber) -> int:
    return x.sign()

def compare(x: PuiseuxNumber, y: PuiseuxNumber) -> int:
    return x.compare(y)

_FRACTION_FORM = re.compile(r"^\((?P<num>[^()]*(?:\([^()]*\)[^()]*)*)\)/\((?P<den>[^()]*(?:\([^()]*\)[^()]*)*)\)$")

def parse_puiseux(text: str) -> PuiseuxNumber:
    """Inverse of ``str``: ``c*t^(p/q)`` sums, optionally ``(...)/(...)``"""
    compact = re.sub(r"\s+", "", text)
    match = _FRACTION_FORM.match(compact)
    if match is None:
        return PuiseuxNumber(PuiseuxPoly.from_dict(parse_puiseux_terms(compact)))
    num = PuiseuxPoly.from_dict(parse_puiseux_terms(match.group("num")))
    den = PuiseuxPoly.from_dict(parse_puiseux_terms(match.group("den")))
    if den.is_zero():
        raise ParseError(f"zero denominator in {text!r}")
    return PuiseuxNumber.make(num, den)

def evaluate_numeric(x: PuiseuxNumber, t0: Union[str, Scalar]) -> Fraction:
    """Exact value at ``t = t0 > 0``

    Every power ``t0^e`` must be rational, e.g. ``t^(1/2)`` at a square.
    """
    t0 = parse_rational(t0)
    if t0 <= 0:
        raise ValueError(f"evaluation point must be positive, got {t0}")
    base = Rational(t0.numerator, t0.denominator)

    def _value(poly: PuiseuxPoly) -> Fraction:
        total = Fraction(0)
        for e, c in poly.terms:
            power = base ** Rational(e.numerator, e.denominator)
            if not power.is_Rational:
                raise ValueError(f"t^({e}) is irrational at t = {t0}")
            total += c * Fraction(int(power.p), int(power.q))
        return total

    den = _value(x.den)
    if den == 0:
        raise PoleError(f"{x} has a pole at t = {t0}")
    return _value(x.num) / den

#
# Vectors
#

def clear_denominators(vector: Sequence[PuiseuxNumber]) -> List[PuiseuxNumber]:
    """Positive multiple of ``vector`` with polynomial entries"""
    dens: List[PuiseuxPoly] = []
    for x in vector:
        if x.den != ONE_POLY and x.den not in dens:
            dens.append(x.den)
    if not dens:
        return list(vector)
    common = reduce(lambda a, b: a * b, dens)
    factor = PuiseuxNumber(common)
    return [x * factor for x in vector]

def primitive_vector(vector: Sequence[PuiseuxNumber]) -> List[PuiseuxNumber]:
    """Positive multiple of ``vector`` with coprime polynomial entries"""
    vector = clear_denominators(vector)
    nums = [x.num for x in vector if not x.is_zero()]
    if not nums:
        return list(vector)
    g = poly_gcd(nums)
    # zero entries pass through untouched
    if g != ONE_POLY:
        vector = [x if x.is_zero() else PuiseuxNumber(poly_exact_quotient(x.num, g)) for x in vector]
    # strip the common power of t so the lowest exponent in use is 0
    low = min(x.num.low_degree for x in vector if not x.is_zero())
    if low == 0:
        return list(vector)
    return [x if x.is_zero() else PuiseuxNumber(x.num.scale(1, -low)) for x in vector]


if __name__ == "__main__":
    x = parse_puiseux("t^2 - 1")
    y = parse_puiseux("t - 1")
    print(x / y, (x / y).degree, (PuiseuxNumber.of(1) / y).sign())
