import unittest
from fractions import Fraction
from itertools import permutations
from random import Random

from tropical.core import (
    BOUNDARY, INF, INTERIOR, OUTSIDE,
    TropicalHalfspace, TropicalHyperplane, TropicalMatrix, TropicalPoint,
    canonicalize, chirotope, extreme_points, halfspace_position, is_general_position,
    membership, permutation_sign, sectors_of, tconv_combination, tropical_det,
    tropical_segment, tropical_sign,
)
from utils.errors import DimensionError

def P(*coords):
    return TropicalPoint.of(*coords)

def brute_force_sign(M):
    n = M.n
    values = {perm: sum(M.entries[i][perm[i]] for i in range(n)) for perm in permutations(range(n))}
    best = max(values.values())
    optimal = [perm for perm, value in values.items() if value == best]
    return best, (permutation_sign(optimal[0]) if len(optimal) == 1 else 0)

class TestPoints(unittest.TestCase):

    def test_canonicalize(self):
        self.assertEqual(P(0, 3, 0), canonicalize([1, 4, 1]))
        self.assertEqual(P(0, 0, 0), canonicalize([0, 0, 0]))
        self.assertEqual((Fraction(0), Fraction(1), Fraction(3)), canonicalize([-2, -1, 1]).coords)

    def test_canonicalize_rationals(self):
        expected = (Fraction(0), Fraction(1, 2), Fraction(-1))
        actual = canonicalize(["1/2", 1, "-1/2"]).coords
        self.assertEqual(expected, actual)

    def test_too_short(self):
        with self.assertRaises(DimensionError):
            canonicalize([0])

    def test_projective_equality(self):
        self.assertEqual(P(5, 8, 5), P(0, 3, 0))

class TestCombinations(unittest.TestCase):

    def setUp(self):
        self.triangle = [P(0, 3, 0), P(0, 1, 1), P(0, 2, 3)]

    def test_single_point(self):
        self.assertEqual(P(0, 3, 0), tconv_combination([0], [P(0, 3, 0)]))

    def test_componentwise_max(self):
        self.assertEqual(P(0, 3, 1), tconv_combination([0, 0], self.triangle[:2]))

    def test_triangle_combination(self):
        self.assertEqual(P(0, 2, 1), tconv_combination([-1, 0, -2], self.triangle))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionError):
            tconv_combination([0, 0], [P(0, 1), P(0, 1, 2)])
        with self.assertRaises(DimensionError):
            tconv_combination([0], self.triangle)

    def test_shift_invariance(self):
        rng = Random(11)
        for _ in range(200):
            c = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in self.triangle]
            shifted = [x + 5 for x in c]
            self.assertEqual(tconv_combination(c, self.triangle), tconv_combination(shifted, self.triangle))

    def test_repeated_points(self):
        doubled = self.triangle + self.triangle
        c = [-1, 0, -2]
        self.assertEqual(tconv_combination(c, self.triangle), tconv_combination(c + c, doubled))

class TestMembership(unittest.TestCase):

    def setUp(self):
        self.triangle = [P(0, 3, 0), P(0, 1, 1), P(0, 2, 3)]

    def test_inside(self):
        inside, coeffs = membership(P(0, 2, 1), self.triangle)
        self.assertTrue(inside)
        self.assertEqual((Fraction(-1), Fraction(0), Fraction(-2)), coeffs)

    def test_outside(self):
        inside, coeffs = membership(P(0, 4, 0), self.triangle)
        self.assertFalse(inside)
        self.assertEqual(P(0, 3, 0), tconv_combination(coeffs, self.triangle))

    def test_vertex(self):
        inside, coeffs = membership(self.triangle[0], self.triangle)
        self.assertTrue(inside)
        self.assertEqual(Fraction(0), coeffs[0])

    def test_empty(self):
        with self.assertRaises(DimensionError):
            membership(P(0, 1, 1), [])

    def test_round_trip(self):
        rng = Random(3)
        for _ in range(200):
            c = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in self.triangle]
            x = tconv_combination(c, self.triangle)
            self.assertTrue(membership(x, self.triangle)[0])

    def test_extreme_points(self):
        with_interior = self.triangle + [P(0, 2, 1), P(0, 3, 0)]
        self.assertEqual([0, 1, 2], extreme_points(with_interior))

class TestSectors(unittest.TestCase):

    def test_unique_argmax(self):
        self.assertEqual(frozenset({2}), sectors_of(P(0, 5, 0), TropicalHyperplane.of([0, 1, 2])))

    def test_apex(self):
        self.assertEqual(frozenset({1, 2, 3}), sectors_of(P(0, 1, 2), TropicalHyperplane.of([0, 1, 2])))

    def test_on_hyperplane(self):
        self.assertEqual(frozenset({1, 2}), sectors_of(P(0, 3, 0), TropicalHyperplane.of([0, 3, 1])))

    def test_infinite_apex(self):
        H = TropicalHyperplane.of([INF, 1, 2])
        self.assertEqual((1, 2), H.finite)
        self.assertEqual(frozenset({3}), sectors_of(P(0, 0, 5), H))

    def test_every_point_in_a_sector(self):
        H = TropicalHyperplane.of([0, 1, 2])
        rng = Random(5)
        for _ in range(200):
            x = P(0, rng.randint(-4, 4), rng.randint(-4, 4))
            self.assertGreaterEqual(len(sectors_of(x, H)), 1)

    def test_needs_two_finite_coordinates(self):
        with self.assertRaises(DimensionError):
            TropicalHyperplane.of([INF, INF, 0])

class TestHalfspaces(unittest.TestCase):

    def setUp(self):
        self.triangle = [P(0, 3, 0), P(0, 1, 1), P(0, 2, 3)]

    def test_triangle_halfspace(self):
        HS = TropicalHalfspace.of([0, 1, 2], {2})
        positions = [halfspace_position(v, HS) for v in self.triangle]
        self.assertEqual([INTERIOR, BOUNDARY, BOUNDARY], positions)

    def test_apex_is_boundary(self):
        HS = TropicalHalfspace.of([0, 1, 2], {2})
        self.assertEqual(BOUNDARY, HS.position(P(0, 1, 2)))

    def test_fourth_halfspace(self):
        below = P(0, 3, -5)
        cut = TropicalHalfspace.of([0, 3, 0], {3})
        self.assertEqual(OUTSIDE, halfspace_position(below, cut))
        for v in self.triangle:
            self.assertNotEqual(OUTSIDE, halfspace_position(v, cut))
        # the two-sector version only touches the ray
        touching = TropicalHalfspace.of([0, 3, 0], {2, 3})
        self.assertEqual(BOUNDARY, halfspace_position(below, touching))

    def test_sector_set_must_be_proper(self):
        with self.assertRaises(DimensionError):
            TropicalHalfspace.of([0, 1, 2], {1, 2, 3})
        with self.assertRaises(DimensionError):
            TropicalHalfspace.of([0, 1, 2], set())

class TestDeterminant(unittest.TestCase):

    def test_small(self):
        self.assertEqual(3, tropical_det(TropicalMatrix.of([[0, 1], [2, 0]])))
        self.assertEqual(0, tropical_det(TropicalMatrix.of([[0, -1], [-1, 0]])))
        self.assertEqual(0, tropical_det(TropicalMatrix.of([[0] * 3] * 3)))

    def test_sign(self):
        self.assertEqual((-1, (1, 0)), tropical_sign(TropicalMatrix.of([[0, 1], [2, 0]])))
        self.assertEqual((0, None), tropical_sign(TropicalMatrix.of([[0, 0], [0, 0]])))
        self.assertEqual(1, tropical_sign(TropicalMatrix.of([[0, -1], [-1, 0]]))[0])

    def test_against_enumeration(self):
        rng = Random(7)
        for n in range(1, 6):
            for _ in range(40):
                M = TropicalMatrix.of([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
                best, sign = brute_force_sign(M)
                self.assertEqual(best, tropical_det(M))
                self.assertEqual(sign, tropical_sign(M)[0])

    def test_column_operations(self):
        rng = Random(13)
        checked = 0
        while checked < 200:
            rows = [[rng.randint(-20, 20) for _ in range(4)] for _ in range(4)]
            M = TropicalMatrix.of(rows)
            sign, _ = tropical_sign(M)
            if sign == 0:
                continue
            swapped = TropicalMatrix.of([[row[1], row[0], row[2], row[3]] for row in rows])
            scaled = TropicalMatrix.of([[row[0], row[1] + 7, row[2], row[3]] for row in rows])
            self.assertEqual(-sign, tropical_sign(swapped)[0])
            self.assertEqual(sign, tropical_sign(scaled)[0])
            checked += 1

    def test_model_submatrix(self):
        columns = [P(0, 2, 0, 1), P(0, 2, 1, 0), P(0, 1, 2, 5), P(0, 1, 3, 4)]
        M = TropicalMatrix.from_columns(columns)
        best, sign = brute_force_sign(M)
        self.assertEqual(best, tropical_det(M))
        self.assertEqual(sign, tropical_sign(M)[0])

class TestChirotope(unittest.TestCase):

    def setUp(self):
        self.model = [
            P(0, 2, 0, 1), P(0, 2, 1, 0), P(0, 1, 2, 5),
            P(0, 1, 3, 4), P(0, 1, 4, 3), P(0, 1, 5, 2),
        ]

    def test_model(self):
        signs = chirotope(self.model)
        self.assertEqual(15, len(signs))
        self.assertIn(0, signs.values())
        self.assertFalse(is_general_position(self.model))

    def test_repeated_column(self):
        V = [P(0, 1, 2), P(0, 1, 2), P(0, 3, 0)]
        self.assertEqual({(0, 1, 2): 0}, chirotope(V))
        self.assertFalse(is_general_position(V))

    def test_too_few_points(self):
        with self.assertRaises(DimensionError):
            chirotope(self.model[:3])

    def test_triangle(self):
        triangle = [P(0, 3, 0), P(0, 1, 1), P(0, 2, 3)]
        _, sign = brute_force_sign(TropicalMatrix.from_columns(triangle))
        self.assertEqual({(0, 1, 2): sign}, chirotope(triangle))

class TestSegments(unittest.TestCase):

    def test_single_point(self):
        p = P(0, 2, 4)
        self.assertEqual([p], tropical_segment(p, p))

    def test_tp1(self):
        self.assertEqual([P(0, 0), P(0, 5)], tropical_segment(P(0, 0), P(0, 5)))

    def test_breakpoints_in_hull(self):
        p, q = P(0, 2, 4), P(0, 2, 2)
        segment = tropical_segment(p, q)
        self.assertEqual(p, segment[0])
        self.assertEqual(q, segment[-1])
        for x in segment:
            self.assertTrue(membership(x, [p, q])[0])

    def test_bent_segment(self):
        p, q = P(0, 0, 0), P(0, 2, 1)
        segment = tropical_segment(p, q)
        self.assertEqual([P(0, 0, 0), P(0, 1, 0), P(0, 2, 1)], segment)

if __name__ == "__main__":
    unittest.main()
