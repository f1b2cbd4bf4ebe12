from .field import (
    PuiseuxPoly, PuiseuxNumber, PoleError,
    ZERO, ONE, T,
    monomial, degree, sign, compare,
    parse_puiseux, evaluate_numeric,
    clear_denominators, primitive_vector,
)
