from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import (
    Dict, FrozenSet, Iterable, List, Sequence, Tuple,
)

import logging

import numpy as np

from configs import (
    GENERIC_COEFF_DENOMINATOR, GENERIC_EXPONENT_DENOMINATOR, LIFT_RESAMPLE_BUDGET,
)
from polyhedra.hull import (
    FaceLattice, FaceRecord, Functional, GeneratorSet, determinant, echelon, face_lattice,
)
from puiseux.field import PuiseuxNumber, monomial
from utils.errors import DimensionError, TropoError

from .core import (
    INF, INTERIOR, OUTSIDE, TropicalHalfspace, TropicalPoint,
    canonicalize, halfspace_position, membership, _check_dims,
)
from .covectors import CellComplex, tconv_cells

logger = logging.getLogger(__name__)

KVector = Tuple[PuiseuxNumber, ...]

# raised when a lift breaks its degree or sign conditions, or cannot be made generic
class LiftError(TropoError): pass

#
# Lifts
#

@dataclass(frozen=True)
class Lift:
    """Vectors over K whose coordinatewise degrees give the tropical points

    Attributes:
        source: the tropical points.
        vectors: one K-vector per point, all leading coefficients positive.
        kind: ``hull``, ``generic``, ``facet`` or ``explicit``.
        label: short name used in reports, e.g. ``generic:3``.
    """
    source: Tuple[TropicalPoint, ...]
    vectors: Tuple[KVector, ...]
    kind: str
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.source) != len(self.vectors):
            raise LiftError(f"{len(self.vectors)} vectors for {len(self.source)} points")
        for i, (p, v) in enumerate(zip(self.source, self.vectors)):
            if len(v) != p.d:
                raise LiftError(f"vector {i} has length {len(v)}, expected {p.d}")
            if any(x.sign() <= 0 for x in v):
                raise LiftError(f"vector {i} has a coordinate with nonpositive leading coefficient")
            if degree_point(v) != p:
                raise LiftError(f"vector {i} has degrees {degree_point(v)}, expected {p}")

    @property
    def name(self) -> str:
        return self.label or self.kind

    def generators(self) -> GeneratorSet:
        return GeneratorSet.of(self.vectors, homogeneous=True)

    def lattice(self) -> FaceLattice:
        return _lattice(self)

@lru_cache(maxsize=None)
def _lattice(L: Lift) -> FaceLattice:
    lattice = face_lattice(L.generators())
    logger.info("lift %s: dim %d, f-vector %s", L.name, lattice.dim, lattice.f_vector())
    return lattice

def hull_lift(V: Sequence[TropicalPoint]) -> Lift:
    """``t^v`` coordinatewise"""
    _check_dims(V)
    return Lift(tuple(V), tuple(tuple(monomial(1, c) for c in v.coords) for v in V), "hull", "hull")

def explicit_lift(V: Sequence[TropicalPoint], vectors: Sequence[Sequence[PuiseuxNumber]], label: str = "explicit") -> Lift:
    """A caller-supplied lift, validated"""
    _check_dims(V)
    return Lift(tuple(V), tuple(tuple(PuiseuxNumber.of(x) for x in v) for v in vectors), "explicit", label)

def is_generic(L: Lift) -> bool:
    """Every maximal affinely independent subset has a nonzero orientation"""
    pivots, independent = echelon(L.vectors)
    r = len(independent)
    rows = [[v[c] for c in pivots] for v in L.vectors]
    return all(determinant([rows[i] for i in subset]) != 0 for subset in combinations(range(len(rows)), r))

def generic_lift(V: Sequence[TropicalPoint], seed: int) -> Lift:
    """``t^v + c t^(v - e)`` with random ``0 < c < 1`` and ``0 < e < 1/2``

    Resampled until every orientation is nonzero; deterministic per seed.
    """
    _check_dims(V)
    rng = np.random.default_rng(seed)
    d = V[0].d
    top_exponent = max(1, (GENERIC_EXPONENT_DENOMINATOR - 1) // 2)
    for attempt in range(LIFT_RESAMPLE_BUDGET):
        coeffs = rng.integers(1, GENERIC_COEFF_DENOMINATOR, size=(len(V), d))
        shifts = rng.integers(1, top_exponent + 1, size=(len(V), d))
        vectors = tuple(
            tuple(
                monomial(1, v.coords[j]) + monomial(
                    Fraction(int(coeffs[i][j]), GENERIC_COEFF_DENOMINATOR),
                    v.coords[j] - Fraction(int(shifts[i][j]), GENERIC_EXPONENT_DENOMINATOR),
                )
                for j in range(d)
            )
            for i, v in enumerate(V)
        )
        lift = Lift(tuple(V), vectors, "generic", f"generic:{seed}")
        if is_generic(lift):
            return lift
        logger.warning("generic lift with seed %d is degenerate, resampling (attempt %d)", seed, attempt + 1)
    raise LiftError(f"no generic lift found for seed {seed} within {LIFT_RESAMPLE_BUDGET} attempts")

def facet_lift(V: Sequence[TropicalPoint], halfspace: TropicalHalfspace, vertex_indices: Iterable[int]) -> Lift:
    """A lift in which the points ``vertex_indices`` span a face cut out by one hyperplane

    The functional is ``f_i = +-t^(-apex_i)`` with ``+`` on the halfspace's
    sectors. Each chosen point sits on the tropical boundary, so its leading
    terms under ``f`` can be balanced to cancel; a lower-order correction on
    one tied coordinate then makes ``f`` vanish exactly. All other points
    are weighted towards the sectors, keeping ``f`` positive on them.
    """
    d = _check_dims(V)
    apex = halfspace.apex
    if any(a == INF for a in apex):
        raise LiftError("facet lifts need a finite apex")
    chosen = set(vertex_indices)
    signs = [1 if j + 1 in halfspace.sectors else -1 for j in range(d)]
    f = [monomial(s, -a) for s, a in zip(signs, apex)]
    vectors = []
    for i, v in enumerate(V):
        position = halfspace_position(v, halfspace)
        if position == OUTSIDE:
            raise LiftError(f"point {i} is outside {halfspace}")
        values = [v.coords[j] - apex[j] for j in range(d)]
        top = max(values)
        tied = [j for j in range(d) if values[j] == top]
        plus = [j for j in tied if signs[j] > 0]
        minus = [j for j in tied if signs[j] < 0]
        weights = [Fraction(1)] * d
        if plus and minus:
            for j in plus:
                weights[j] = Fraction(1 if i in chosen else 2, len(plus))
            for j in minus:
                weights[j] = Fraction(1, len(minus))
        vector = [monomial(weights[j], v.coords[j]) for j in range(d)]
        if i in chosen:
            if position != "boundary":
                raise LiftError(f"point {i} is not on the boundary of {halfspace}")
            value = sum((fj * xj for fj, xj in zip(f, vector)), monomial(0, 0))
            j = tied[0]
            vector[j] = vector[j] - monomial(signs[j], apex[j]) * value
        vectors.append(tuple(vector))
    label = "facet:" + "".join(_letter(i) for i in sorted(chosen))
    return Lift(tuple(V), tuple(vectors), "facet", label)

def _letter(i: int) -> str:
    return chr(ord("A") + i) if i < 26 else f"[{i}]"

def facet_functional(halfspace: TropicalHalfspace) -> Functional:
    """The homogeneous functional used by ``facet_lift``"""
    return Functional(
        tuple(monomial(1 if j + 1 in halfspace.sectors else -1, -a) for j, a in enumerate(halfspace.apex)),
        0, True,
    )

def sample_lifts(
    V: Sequence[TropicalPoint],
    samples: int,
    seed: int,
    witnesses: Sequence[Tuple[TropicalHalfspace, FrozenSet[int]]] = (),
) -> List[Lift]:
    """Hull lift, ``samples`` generic lifts, then one facet lift per witness"""
    lifts = [hull_lift(V)]
    lifts += [generic_lift(V, seed + i) for i in range(samples)]
    lifts += [facet_lift(V, halfspace, vertices) for halfspace, vertices in witnesses]
    logger.info("sampled %d lifts", len(lifts))
    return lifts

def combination_lift(L: Lift, coeffs: Sequence[Fraction]) -> KVector:
    """``sum_i t^(c_i) v_i``, the K-combination behind a tropical combination"""
    d = L.source[0].d
    total = [monomial(0, 0)] * d
    for c, v in zip(coeffs, L.vectors):
        weight = monomial(1, c)
        total = [a + weight * b for a, b in zip(total, v)]
    return tuple(total)

#
# Degree map
#

def degree_point(x: Sequence[PuiseuxNumber]) -> TropicalPoint:
    """Coordinatewise degree, canonicalized"""
    if any(PuiseuxNumber.of(c).is_zero() for c in x):
        raise DimensionError("the degree of 0 is undefined")
    return canonicalize(PuiseuxNumber.of(c).degree for c in x)

def halfspace_image(F: Functional) -> TropicalHalfspace:
    """Tropical halfspace of a homogeneous functional

    Apex ``-deg f_i`` (``inf`` for ``f_i = 0``), sectors where ``f_i > 0``.
    """
    coeffs = [PuiseuxNumber.of(c) for c in F.coeffs]
    if all(c.is_zero() for c in coeffs):
        raise DimensionError("the zero functional has no halfspace")
    apex = [INF if c.is_zero() else -c.degree for c in coeffs]
    return TropicalHalfspace.of(apex, [j + 1 for j, c in enumerate(coeffs) if c.sign() > 0])

def lift_chirotope(L: Lift) -> Dict[Tuple[int, ...], int]:
    """Signs of the determinants of all d-subsets of the lifted vectors"""
    d = L.source[0].d
    out = {}
    for subset in combinations(range(len(L.vectors)), d):
        det = determinant([L.vectors[i] for i in subset])
        out[subset] = 1 if det > 0 else -1 if det < 0 else 0
    return out

def refines(signs: Dict[Tuple[int, ...], int], partial: Dict[Tuple[int, ...], int]) -> bool:
    """Whether ``signs`` agrees with ``partial`` wherever the latter is nonzero"""
    return all(signs[key] == value for key, value in partial.items() if value != 0)

#
# Fatoms and boundaries
#

@dataclass(frozen=True)
class Fatom:
    """Degree image of a k-face of a lift

    Attributes:
        k: dimension.
        lift_face: the face of the lift.
        image_cells: cells of the tropical hull of the face's vertices.
        cells: the k-dimensional cells among them, empty when the image collapses.
    """
    k: int
    lift_face: FaceRecord
    image_cells: FrozenSet[int]
    cells: FrozenSet[int]

    @property
    def vertex_indices(self) -> FrozenSet[int]:
        return self.lift_face.vertex_indices

def face_image(complex: CellComplex, face: FaceRecord) -> FrozenSet[int]:
    return tconv_cells(complex, face.vertex_indices)

def fatoms(L: Lift, k: int, complex: CellComplex, degenerate: bool = False) -> List[Fatom]:
    """Images of the k-faces of ``L``

    Faces whose image has lower dimension are dropped unless ``degenerate``
    is set; those fatoms have no k-cells.
    """
    out = []
    for face in L.lattice().of_dim(k):
        image = face_image(complex, face)
        top = complex.dim_of(image)
        if top > face.dim:
            raise LiftError(f"face {sorted(face.vertex_indices)} of {L.name} maps to a higher dimension")
        if top == k or degenerate:
            out.append(Fatom(k, face, image, frozenset(c for c in image if complex[c].dim == k)))
    return out

def polytope_dim(complex: CellComplex) -> int:
    return complex.dim_of(complex.bounded_ids())

def lift_dim(lifts: Sequence[Lift]) -> int:
    """Largest dimension among the lifted polytopes"""
    return max(L.lattice().dim for L in lifts)

def boundary_image(L: Lift, complex: CellComplex) -> FrozenSet[int]:
    """Union of the images of the lift's facets

    A polytope of lower dimension than its ambient space is all boundary.
    """
    if polytope_dim(complex) < complex.d - 1:
        return frozenset(complex.bounded_ids())
    lattice = L.lattice()
    return frozenset().union(*(face_image(complex, f) for f in lattice.facets))

def facet_halfspaces(L: Lift) -> List[TropicalHalfspace]:
    return [halfspace_image(f.supporting) for f in L.lattice().facets]

def interior_by_halfspaces(L: Lift, x: TropicalPoint, complex: CellComplex) -> bool:
    """Whether ``x`` lies strictly inside every facet halfspace of ``L``"""
    if polytope_dim(complex) < complex.d - 1:
        raise DimensionError("interiors are only described for full-dimensional polytopes")
    return all(halfspace_position(x, h) == INTERIOR for h in facet_halfspaces(L))

def purity_check(L: Lift, points: Sequence[TropicalPoint]) -> List[TropicalPoint]:
    """Points where the closed facet halfspaces disagree with membership"""
    halfspaces = facet_halfspaces(L)
    V = list(L.source)
    out = []
    for x in points:
        inside = all(halfspace_position(x, h) != OUTSIDE for h in halfspaces)
        if inside != membership(x, V)[0]:
            out.append(x)
    return out

def sample_grid(V: Sequence[TropicalPoint], step: Fraction = Fraction(1, 2), margin: int = 1) -> List[TropicalPoint]:
    """Rational grid over the bounding box of ``V``, widened by ``margin``"""
    d = _check_dims(V)
    lows = [min(v.coords[j] for v in V) - margin for j in range(1, d)]
    highs = [max(v.coords[j] for v in V) + margin for j in range(1, d)]
    axes = [np.arange(0, int((hi - lo) / step) + 1) for lo, hi in zip(lows, highs)]
    out = []
    for index in np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d - 1):
        out.append(canonicalize([0] + [lo + int(k) * step for lo, k in zip(lows, index)]))
    return out
