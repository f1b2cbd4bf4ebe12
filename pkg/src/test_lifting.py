import unittest
from fractions import Fraction
from random import Random

from puiseux.field import PuiseuxNumber, monomial, parse_puiseux
from tropical.core import (
    BOUNDARY, TropicalHalfspace, TropicalPoint, chirotope, halfspace_position, is_general_position,
    tconv_combination,
)
from tropical.covectors import decompose
from tropical.lifting import (
    LiftError, boundary_image, combination_lift, degree_point, explicit_lift, facet_functional,
    facet_halfspaces, facet_lift, fatoms, generic_lift, halfspace_image, hull_lift,
    interior_by_halfspaces, is_generic, lift_chirotope, polytope_dim, sample_grid, purity_check,
    refines, sample_lifts,
)
from utils.errors import DimensionError
from utils.inputs import load_input

def P(*coords):
    return TropicalPoint.of(*coords)

TRIANGLE = [P(0, 3, 0), P(0, 1, 1), P(0, 2, 3)]
MODEL = [P(0, 2, 0, 1), P(0, 2, 1, 0), P(0, 1, 2, 5), P(0, 1, 3, 4), P(0, 1, 4, 3), P(0, 1, 5, 2)]
FIXTURES = ["triangle", "small_triangle", "model", "three_tier", "cube_pendant", "octahedron"]

def points(name):
    return [TropicalPoint.of(*p) for p in load_input(f"test_inputs/{name}.json").rationals()]

class TestDegreeMap(unittest.TestCase):

    def test_degree_point(self):
        x = [monomial(1, 2), monomial(3, 5) + monomial(1, 1), monomial(1, 0)]
        self.assertEqual(P(0, 3, -2), degree_point(x))

    def test_degree_of_zero(self):
        with self.assertRaises(DimensionError):
            degree_point([monomial(1, 0), monomial(0, 0)])

    def test_halfspace_image_inverts_facet_functional(self):
        H = TropicalHalfspace.of([0, 1, 2], {2})
        self.assertEqual(H, halfspace_image(facet_functional(H)))

    def test_zero_functional(self):
        zero = facet_functional(TropicalHalfspace.of([0, 1, 2], {2}))
        zero = type(zero)(tuple(monomial(0, 0) for _ in zero.coeffs), 0, True)
        with self.assertRaises(DimensionError):
            halfspace_image(zero)

class TestLifts(unittest.TestCase):

    def test_hull_lift(self):
        L = hull_lift(TRIANGLE)
        self.assertEqual("hull", L.name)
        self.assertEqual(TRIANGLE, [degree_point(v) for v in L.vectors])

    def test_explicit_lift_checks_degrees(self):
        wrong = [[monomial(1, 0), monomial(1, 1), monomial(1, 1)]] * 3
        with self.assertRaises(LiftError):
            explicit_lift(TRIANGLE, wrong)

    def test_explicit_lift_checks_signs(self):
        vectors = [[monomial(1, c) for c in v.coords] for v in TRIANGLE]
        vectors[1][2] = monomial(-1, 1)
        with self.assertRaises(LiftError):
            explicit_lift(TRIANGLE, vectors)

    def test_generic_lift_is_deterministic(self):
        first = generic_lift(MODEL, 3)
        self.assertEqual(first, generic_lift(MODEL, 3))
        self.assertEqual("generic:3", first.name)
        self.assertTrue(is_generic(first))
        self.assertEqual(MODEL, [degree_point(v) for v in first.vectors])

    def test_combination_lift_degrees(self):
        rng = Random(6)
        for L in (hull_lift(TRIANGLE), generic_lift(TRIANGLE, 1)):
            for _ in range(100):
                c = [Fraction(rng.randint(-6, 6), 2) for _ in TRIANGLE]
                self.assertEqual(tconv_combination(c, TRIANGLE), degree_point(combination_lift(L, c)))

    def test_lift_chirotope_refines_tropical_signs(self):
        tropical = chirotope(MODEL)
        for seed in (0, 1):
            self.assertTrue(refines(lift_chirotope(generic_lift(MODEL, seed)), tropical))

class TestFacetLift(unittest.TestCase):

    def setUp(self):
        self.halfspace = TropicalHalfspace.of([0, 1, 2], {2})

    def test_chosen_points_span_a_facet(self):
        L = facet_lift(TRIANGLE, self.halfspace, [1, 2])
        self.assertEqual("facet:BC", L.name)
        self.assertIn(frozenset({1, 2}), {f.vertex_indices for f in L.lattice().facets})

    def test_functional_vanishes_on_chosen_points(self):
        L = facet_lift(TRIANGLE, self.halfspace, [1, 2])
        f = facet_functional(self.halfspace).coeffs
        for i in (1, 2):
            value = sum((a * b for a, b in zip(f, L.vectors[i])), monomial(0, 0))
            self.assertTrue(PuiseuxNumber.of(value).is_zero())
        value = sum((a * b for a, b in zip(f, L.vectors[0])), monomial(0, 0))
        self.assertEqual(1, PuiseuxNumber.of(value).sign())

    def test_interior_point_cannot_be_chosen(self):
        with self.assertRaises(LiftError):
            facet_lift(TRIANGLE, self.halfspace, [0, 1])

    def test_point_outside(self):
        V = TRIANGLE + [P(0, 3, -5)]
        with self.assertRaises(LiftError):
            facet_lift(V, TropicalHalfspace.of([0, 3, 0], {3}), [0])

class TestImages(unittest.TestCase):

    def setUp(self):
        self.complex = decompose(TRIANGLE)
        self.lift = hull_lift(TRIANGLE)

    def test_polytope_dim(self):
        self.assertEqual(2, polytope_dim(self.complex))

    def test_top_fatom(self):
        found = fatoms(self.lift, 2, self.complex)
        self.assertEqual(1, len(found))
        self.assertEqual(frozenset(range(3)), found[0].vertex_indices)

    def test_boundary_image(self):
        boundary = boundary_image(self.lift, self.complex)
        for v in TRIANGLE:
            self.assertIn(self.complex.locate(v), boundary)
        self.assertTrue(all(self.complex[c].dim <= 1 for c in boundary))

    def test_vertices_are_not_interior(self):
        self.assertFalse(interior_by_halfspaces(self.lift, TRIANGLE[0], self.complex))

    def test_facet_halfspaces_hold_the_vertices(self):
        self.assertEqual([], purity_check(self.lift, TRIANGLE))

    def test_model_facet_halfspaces(self):
        found = facet_halfspaces(hull_lift(MODEL))
        self.assertIn(TropicalHalfspace.of([0, 2, 4, 4], {2, 3, 4}), found)
        self.assertIn(TropicalHalfspace.of([0, 2, 5, 5], {1}), found)

    def test_model_facet_functional(self):
        # -(t^6 + t^5 - t^2 - t) x1 + (t^4 + t^3 - t - 1) x2 + (t^2 - t) x3 + (t^2 - t) x4 >= 0
        expected = [parse_puiseux(p) for p in ("-t^6 - t^5 + t^2 + t", "t^4 + t^3 - t - 1", "t^2 - t", "t^2 - t")]
        facet = hull_lift(MODEL).lattice().find({0, 1, 3, 4})
        self.assertIn(facet, hull_lift(MODEL).lattice().facets)
        actual = [PuiseuxNumber.of(x) for x in facet.supporting.coeffs]
        ratio = actual[0] / expected[0]
        self.assertEqual(1, ratio.sign())
        for a, b in zip(actual, expected):
            self.assertEqual(a, ratio * b)

    def test_lower_dimensional_interior(self):
        segment = [P(0, 0, 0), P(0, 2, 1)]
        with self.assertRaises(DimensionError):
            interior_by_halfspaces(hull_lift(segment), P(0, 1, 0), decompose(segment))

    def test_sample_grid(self):
        grid = sample_grid(TRIANGLE)
        self.assertEqual(99, len(grid))
        self.assertIn(P(0, 0, -1), grid)
        self.assertIn(P(0, 4, 4), grid)

    def test_facet_functional_boundary(self):
        H = TropicalHalfspace.of([0, 1, 2], {2})
        self.assertEqual(BOUNDARY, halfspace_position(TRIANGLE[1], H))

class TestLiftProperties(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.fixtures = {}
        for name in FIXTURES:
            V = points(name)
            cls.fixtures[name] = (V, sample_lifts(V, 5, 0))

    def test_lifts_refine_the_tropical_chirotope(self):
        for name, (V, lifts) in self.fixtures.items():
            tropical = chirotope(V)
            for L in lifts:
                self.assertTrue(refines(lift_chirotope(L), tropical), f"{name} {L.name}")

    def test_boundary_is_lift_independent(self):
        for name, (V, lifts) in self.fixtures.items():
            complex = decompose(V)
            expected = boundary_image(lifts[0], complex)
            for L in lifts[1:]:
                self.assertEqual(expected, boundary_image(L, complex), f"{name} {L.name}")

class TestGeneralPosition(unittest.TestCase):

    def setUp(self):
        rng = Random(23)
        self.configurations = []
        while len(self.configurations) < 40:
            V = [P(0, rng.randint(-8, 8), rng.randint(-8, 8)) for _ in range(5)]
            if len(set(V)) == len(V) and is_general_position(V):
                self.configurations.append(V)

    def test_generic_lifts_agree(self):
        for V in self.configurations:
            tropical = chirotope(V)
            expected = None
            for seed in range(5):
                L = generic_lift(V, seed)
                self.assertEqual(tropical, lift_chirotope(L))
                lattice = L.lattice()
                for face in lattice.faces[:-1]:
                    self.assertEqual(face.dim + 1, len(face.vertex_indices))
                found = {f.vertex_indices for f in lattice.faces}
                if expected is None:
                    expected = found
                self.assertEqual(expected, found)

if __name__ == "__main__":
    unittest.main()
