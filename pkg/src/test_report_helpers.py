import json
import unittest
from fractions import Fraction

from tropical.core import TropicalPoint
from utils.report_helpers import dumps, to_plain

class TestToPlain(unittest.TestCase):

    def test_numbers(self):
        self.assertEqual("1/2", to_plain(Fraction(1, 2)))
        self.assertEqual(2, to_plain(Fraction(4, 2)))
        self.assertEqual("inf", to_plain(float("inf")))
        self.assertEqual(True, to_plain(True))

    def test_containers(self):
        expected = {"0,1": [1, 2], "x": None}
        actual = to_plain({(0, 1): {2, 1}, "x": None})
        self.assertEqual(expected, actual)

    def test_points_use_their_text(self):
        self.assertEqual(str(TropicalPoint.of(0, 1, 2)), to_plain(TropicalPoint.of(0, 1, 2)))

    def test_dumps_is_deterministic(self):
        text = dumps({"b": Fraction(3, 4), "a": [Fraction(1)]})
        self.assertEqual({"a": [1], "b": "3/4"}, json.loads(text))
        self.assertLess(text.index('"a"'), text.index('"b"'))

if __name__ == "__main__":
    unittest.main()
