import unittest
from fractions import Fraction
from random import Random

from puiseux import (
    ONE, T, ZERO, PoleError,
    clear_denominators, compare, degree, evaluate_numeric, monomial,
    parse_puiseux, primitive_vector, sign,
)
from utils.errors import ParseError

class TestPuiseuxArithmetic(unittest.TestCase):

    def test_monomial(self):
        expected = "t^2"
        actual = str(monomial(1, 2))
        self.assertEqual(expected, actual)

    def test_zero_coefficient(self):
        self.assertTrue(monomial(0, 5).is_zero())
        self.assertEqual(ZERO, monomial(0, 5))

    def test_fractional_exponent(self):
        expected = "-3*t^(1/2)"
        actual = str(monomial(-3, Fraction(1, 2)))
        self.assertEqual(expected, actual)

    def test_cancellation(self):
        self.assertTrue((T - T).is_zero())
        self.assertFalse(T - T)

    def test_division_reduces(self):
        expected = parse_puiseux("t + 1")
        actual = parse_puiseux("t^2 - 1") / parse_puiseux("t - 1")
        self.assertEqual(expected, actual)
        self.assertTrue(actual.is_polynomial())

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            ONE / ZERO

    def test_mixed_with_rationals(self):
        expected = parse_puiseux("2*t + 1/2")
        actual = 2 * T + Fraction(1, 2)
        self.assertEqual(expected, actual)

    def test_powers(self):
        self.assertEqual(monomial(1, 6), T ** 6)
        self.assertEqual(monomial(1, -2), T ** -2)

class TestPuiseuxOrder(unittest.TestCase):

    def test_t_is_infinitely_large(self):
        self.assertEqual(1, sign(T - 1000))
        self.assertEqual(-1, compare(T, T ** 2))
        self.assertTrue(monomial(1, Fraction(1, 100)) > 10 ** 6)

    def test_negative_exponents(self):
        self.assertEqual(1, sign(monomial(1, -1) - monomial(1, -2)))
        self.assertEqual(-1, sign(monomial(1, -1) - 1))

    def test_sign_of_quotient(self):
        x = ONE / parse_puiseux("t - 1")
        self.assertEqual(1, x.sign())
        self.assertEqual(-1, (-x).sign())
        self.assertEqual(0, ZERO.sign())

    def test_degree(self):
        x = parse_puiseux("t^2 + 1") / parse_puiseux("t - 1")
        self.assertEqual(Fraction(1), degree(x))
        self.assertEqual(Fraction(1), x.leading_coefficient)
        self.assertEqual(T, x.leading_monomial())

    def test_degree_of_zero(self):
        self.assertEqual(float("-inf"), ZERO.degree)

    def test_sorting(self):
        values = [T, ONE, monomial(-1, 3), monomial(1, Fraction(1, 2)), ZERO]
        expected = [monomial(-1, 3), ZERO, ONE, monomial(1, Fraction(1, 2)), T]
        self.assertEqual(expected, sorted(values))

class TestPuiseuxText(unittest.TestCase):

    def test_round_trip(self):
        x = parse_puiseux("3*t^(1/2) - t + 2")
        expected = "-t + 3*t^(1/2) + 2"
        self.assertEqual(expected, str(x))
        self.assertEqual(x, parse_puiseux(str(x)))

    def test_quotient_round_trip(self):
        x = ONE / parse_puiseux("t^2 + t + 1")
        self.assertEqual(x, parse_puiseux(str(x)))

    def test_negative_exponent_text(self):
        expected = monomial(5, -2)
        actual = parse_puiseux("5*t^(-2)")
        self.assertEqual(expected, actual)

    def test_bad_text(self):
        with self.assertRaises(ParseError):
            parse_puiseux("t^x")
        with self.assertRaises(ParseError):
            parse_puiseux("t 2")
        with self.assertRaises(ParseError):
            parse_puiseux("")

class TestPuiseuxNumeric(unittest.TestCase):

    def test_evaluate(self):
        self.assertEqual(Fraction(3), evaluate_numeric(parse_puiseux("t^(1/2) + 1"), 4))
        self.assertEqual(Fraction(1, 3), evaluate_numeric(ONE / parse_puiseux("t + 1"), "2"))

    def test_pole(self):
        with self.assertRaises(PoleError):
            evaluate_numeric(ONE / parse_puiseux("t - 1"), 1)

    def test_irrational_power(self):
        with self.assertRaises(ValueError):
            evaluate_numeric(monomial(1, Fraction(1, 2)), 2)

    def test_nonpositive_point(self):
        with self.assertRaises(ValueError):
            evaluate_numeric(T, 0)

class TestPuiseuxVectors(unittest.TestCase):

    def setUp(self):
        self.vector = [ONE / parse_puiseux("t + 1"), T, monomial(-2, 0)]

    def test_clear_denominators(self):
        cleared = clear_denominators(self.vector)
        self.assertTrue(all(x.is_polynomial() for x in cleared))
        ratio = cleared[0] / self.vector[0]
        self.assertEqual(1, ratio.sign())
        for x, y in zip(self.vector, cleared):
            self.assertEqual(x * ratio, y)

    def test_primitive_vector(self):
        vector = [monomial(2, 2), monomial(4, 1), ZERO]
        actual = primitive_vector(vector)
        self.assertEqual(actual[0] / actual[1], vector[0] / vector[1])
        self.assertEqual(1, (actual[0] / vector[0]).sign())
        self.assertTrue(actual[2].is_zero())
        self.assertEqual(Fraction(0), actual[1].degree)

    def test_primitive_vector_common_factor_with_zero(self):
        vector = [parse_puiseux("t^2 - 1"), ZERO, parse_puiseux("t - 1")]
        actual = primitive_vector(vector)
        self.assertEqual([parse_puiseux("t + 1"), ZERO, ONE], actual)

    def test_primitive_vector_shifts_powers_of_t(self):
        vector = [parse_puiseux("t^3 - t^2"), ZERO, parse_puiseux("-t^2")]
        actual = primitive_vector(vector)
        self.assertEqual([parse_puiseux("t - 1"), ZERO, parse_puiseux("-1")], actual)

class TestOrderedFieldAxioms(unittest.TestCase):

    @staticmethod
    def element(rng):
        x = ZERO
        for _ in range(rng.randint(1, 3)):
            x = x + monomial(rng.randint(-3, 3), Fraction(rng.randint(-3, 3), rng.choice((1, 2))))
        if rng.random() < 0.3:
            x = x / (T ** rng.randint(1, 2) + rng.randint(1, 3))
        return x

    def setUp(self):
        rng = Random(17)
        self.triples = [tuple(self.element(rng) for _ in range(3)) for _ in range(200)]

    def test_field_axioms(self):
        for x, y, z in self.triples:
            self.assertEqual(x + y, y + x)
            self.assertEqual(x * y, y * x)
            self.assertEqual((x + y) + z, x + (y + z))
            self.assertEqual((x * y) * z, x * (y * z))
            self.assertEqual(x * (y + z), x * y + x * z)
            self.assertTrue((x + (-x)).is_zero())
            if not x.is_zero():
                self.assertEqual(ONE, x * (ONE / x))

    def test_order_axioms(self):
        for x, y, z in self.triples:
            self.assertEqual(1, [x < y, x == y, x > y].count(True))
            self.assertEqual(sign(x) * sign(y), sign(x * y))
            if x < y:
                self.assertLess(x + z, y + z)
                if z > 0:
                    self.assertLess(x * z, y * z)
                elif z < 0:
                    self.assertGreater(x * z, y * z)

if __name__ == "__main__":
    unittest.main()
