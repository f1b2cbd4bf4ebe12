import unittest
from fractions import Fraction

from utils.errors import ParseError
from utils.inputs import parse_input, load_input
from utils.parser import parse_puiseux_terms, parse_rational

class TestRationalParser(unittest.TestCase):

    def test_forms(self):
        self.assertEqual(Fraction(3), parse_rational("3"))
        self.assertEqual(Fraction(-1, 2), parse_rational(" -1/2 "))
        self.assertEqual(Fraction(2, 3), parse_rational("4/6"))
        self.assertEqual(Fraction(7), parse_rational(7))

    def test_rejects_decimals(self):
        with self.assertRaises(ParseError):
            parse_rational("1.5")

    def test_rejects_zero_denominator(self):
        with self.assertRaises(ParseError):
            parse_rational("1/0")

    def test_rejects_other_types(self):
        with self.assertRaises(ParseError):
            parse_rational(True)
        with self.assertRaises(ParseError):
            parse_rational(1.5)

class TestPuiseuxTermParser(unittest.TestCase):

    def test_terms(self):
        expected = {Fraction(2): Fraction(1), Fraction(1, 2): Fraction(-3), Fraction(0): Fraction(5)}
        actual = parse_puiseux_terms("t^2 - 3*t^(1/2) + 5")
        self.assertEqual(expected, actual)

    def test_repeated_exponents_sum(self):
        expected = {Fraction(1): Fraction(3)}
        actual = parse_puiseux_terms("t + 2t + 1 - 1")
        self.assertEqual(expected, actual)

    def test_error_column(self):
        with self.assertRaises(ParseError) as ctx:
            parse_puiseux_terms("t+?")
        self.assertEqual(2, ctx.exception.column)

class TestInputFiles(unittest.TestCase):

    def test_points(self):
        data = parse_input('{"points": [[0, "1/2", 3], ["0", 1, "-2"]]}')
        expected = [[Fraction(0), Fraction(1, 2), Fraction(3)], [Fraction(0), Fraction(1), Fraction(-2)]]
        self.assertEqual(expected, data.rationals())
        self.assertIsNone(data.ideal)

    def test_ideal(self):
        data = parse_input('{"ideal": {"nvars": 2, "generators": [[1, 0], [0, 1]]}}')
        self.assertEqual(2, data.ideal.nvars)
        self.assertEqual([[1, 0], [0, 1]], data.ideal.generators)
        self.assertIsNone(data.points)

    def test_syntax_error_has_line(self):
        with self.assertRaises(ParseError) as ctx:
            load_input("test_inputs/bad_syntax.json")
        self.assertEqual(2, ctx.exception.line)

    def test_floats_rejected(self):
        with self.assertRaises(ParseError):
            load_input("test_inputs/bad_float.json")

    def test_needs_exactly_one_payload(self):
        with self.assertRaises(ParseError):
            parse_input('{}')
        with self.assertRaises(ParseError):
            parse_input('{"points": [[0, 1]], "ideal": {"nvars": 1, "generators": [[1]]}}')

    def test_bad_coordinate(self):
        with self.assertRaises(ParseError):
            parse_input('{"points": [[0, "x"]]}')

    def test_short_point(self):
        with self.assertRaises(ParseError):
            parse_input('{"points": [[0]]}')

    def test_negative_exponent(self):
        with self.assertRaises(ParseError):
            parse_input('{"ideal": {"nvars": 2, "generators": [[-1, 0]]}}')

    def test_top_level_list(self):
        with self.assertRaises(ParseError):
            parse_input('[[0, 1]]')

if __name__ == "__main__":
    unittest.main()
