from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce, singledispatch
from math import gcd, lcm
from typing import (
    Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple,
)

import logging

from puiseux.field import PuiseuxNumber, primitive_vector
from utils.errors import DimensionError, TropoError

logger = logging.getLogger(__name__)

Vector = Tuple[Any, ...]

# raised when a hull cannot be built, e.g. the polyhedron contains a line
class HullError(TropoError): pass

#
# Field-dependent helpers, dispatched on the element type
#

@singledispatch
def primitive(element, vector: Sequence) -> List:
    """Positive multiple of ``vector`` with small entries, unique per ray"""
    return list(vector)

@primitive.register(int)
@primitive.register(Fraction)
def _primitive_rational(element, vector: Sequence) -> List:
    values = [Fraction(x) for x in vector]
    scale = reduce(lcm, (x.denominator for x in values), 1)
    ints = [int(x * scale) for x in values]
    common = reduce(gcd, ints, 0)
    if common == 0:
        return values
    return [Fraction(x, common) for x in ints]

@primitive.register(PuiseuxNumber)
def _primitive_puiseux(element, vector: Sequence) -> List:
    out = primitive_vector([PuiseuxNumber.of(x) for x in vector])
    first = next((x for x in out if not x.is_zero()), None)
    if first is None:
        return out
    scale = abs(first.leading_coefficient)
    return [x * (1 / scale) for x in out]

@singledispatch
def order_key(element) -> Tuple:
    return (element,)

@order_key.register(PuiseuxNumber)
def _order_key_puiseux(element: PuiseuxNumber) -> Tuple:
    return (element.degree, element.leading_coefficient)

def normalize(vector: Sequence) -> Vector:
    first = next((x for x in vector if x != 0), None)
    if first is None:
        return tuple(vector)
    # mixed vectors dispatch on their field elements, not on plain 0 or 1
    sample = next((x for x in vector if isinstance(x, PuiseuxNumber)), first)
    return tuple(primitive(sample, vector))

def dot(u: Sequence, v: Sequence):
    total = 0
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            total = total + a * b
    return total

def determinant(rows: Sequence[Sequence]):
    """Exact determinant over any field, by dynamic programming over column subsets"""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise DimensionError("determinant of a non-square matrix")
    table: Dict[int, Any] = {0: 1}
    for row in rows:
        following: Dict[int, Any] = {}
        for mask, value in table.items():
            for j in range(n):
                if mask >> j & 1 or row[j] == 0:
                    continue
                term = value * row[j]
                if bin(mask >> (j + 1)).count("1") % 2:
                    term = -term
                key = mask | 1 << j
                following[key] = following[key] + term if key in following else term
        table = following
    return table.get((1 << n) - 1, 0)

def _sign(x) -> int:
    return 1 if x > 0 else -1 if x < 0 else 0

def echelon(vectors: Sequence[Sequence]) -> Tuple[List[int], List[int]]:
    """Pivot columns and the indices of a maximal independent subset

    Fraction-free elimination; rows are kept primitive to stop growth.
    """
    basis: List[Tuple[int, Vector]] = []
    independent: List[int] = []
    for index, vector in enumerate(vectors):
        row = tuple(vector)
        for column, b in basis:
            if row[column] != 0:
                row = normalize([b[column] * x - row[column] * y for x, y in zip(row, b)])
        column = next((c for c, x in enumerate(row) if x != 0), None)
        if column is not None:
            basis.append((column, row))
            independent.append(index)
    return sorted(c for c, _ in basis), independent

def rank(vectors: Sequence[Sequence]) -> int:
    return len(echelon(vectors)[1])

#
# Generators, functionals, faces
#

@dataclass(frozen=True)
class GeneratorSet:
    """Points and rays of a polyhedron over an ordered field

    Attributes:
        points: vectors of equal length.
        rays: recession directions, same length as the points.
        homogeneous: points are given as cone vectors with a positive first
            coordinate (the affine point is the rest divided by it); rays
            then have first coordinate 0.
    """
    points: Tuple[Vector, ...]
    rays: Tuple[Vector, ...] = ()
    homogeneous: bool = False

    def __post_init__(self) -> None:
        if not self.points:
            raise DimensionError("a generator set needs at least one point")
        n = len(self.points[0])
        for v in self.points + self.rays:
            if len(v) != n:
                raise DimensionError(f"generator of length {len(v)} among length {n}")
        if self.homogeneous:
            if any(not p[0] > 0 for p in self.points):
                raise DimensionError("homogeneous points need a positive first coordinate")
            if any(r[0] != 0 for r in self.rays):
                raise DimensionError("homogeneous rays need first coordinate 0")

    @classmethod
    def of(cls, points: Iterable[Sequence], rays: Iterable[Sequence] = (), homogeneous: bool = False) -> GeneratorSet:
        return cls(tuple(tuple(p) for p in points), tuple(tuple(r) for r in rays), homogeneous)

    @property
    def n_points(self) -> int:
        return len(self.points)

    def cone(self) -> List[Vector]:
        """Cone generators: points first, then rays"""
        if self.homogeneous:
            return [normalize(v) for v in self.points + self.rays]
        return [normalize((1,) + tuple(p)) for p in self.points] + \
            [normalize((0,) + tuple(r)) for r in self.rays]

@dataclass(frozen=True)
class Functional:
    """Halfspace ``coeffs . x + offset >= 0``

    For homogeneous generator sets ``coeffs`` acts on the cone vectors and
    ``offset`` is 0.
    """
    coeffs: Vector
    offset: Any = 0
    homogeneous: bool = False

    @classmethod
    def from_cone(cls, vector: Sequence, homogeneous: bool) -> Functional:
        if homogeneous:
            return cls(tuple(vector), 0, True)
        return cls(tuple(vector[1:]), vector[0], False)

    def cone_vector(self) -> Vector:
        return self.coeffs if self.homogeneous else (self.offset,) + tuple(self.coeffs)

    def __call__(self, x: Sequence):
        return dot(self.coeffs, x) + self.offset

    def __add__(self, other: Functional) -> Functional:
        return Functional.from_cone(
            tuple(a + b for a, b in zip(self.cone_vector(), other.cone_vector())),
            self.homogeneous,
        )

@dataclass(frozen=True)
class FaceRecord:
    """A nonempty face of a polyhedron

    Attributes:
        vertex_indices: point generators lying on the face.
        ray_indices: ray generators lying on the face.
        dim: affine dimension.
        supporting: sum of the facet functionals through the face, ``None``
            for the polyhedron itself.
    """
    vertex_indices: FrozenSet[int]
    ray_indices: FrozenSet[int]
    dim: int
    supporting: Optional[Functional] = None

    def contains(self, other: FaceRecord) -> bool:
        return other.vertex_indices <= self.vertex_indices and other.ray_indices <= self.ray_indices

    @property
    def bounded(self) -> bool:
        return not self.ray_indices

@dataclass
class FaceLattice:
    """All nonempty faces of ``conv(points) + cone(rays)``

    Attributes:
        generators: the input.
        dim: dimension of the polyhedron.
        facets: facet records, each with its functional as ``supporting``.
        faces: all nonempty faces, sorted by dimension, the polyhedron last.
        equations: functionals vanishing on the affine hull.
    """
    generators: GeneratorSet
    dim: int
    facets: List[FaceRecord]
    faces: List[FaceRecord]
    equations: List[Functional] = field(default_factory=list)

    def of_dim(self, k: int) -> List[FaceRecord]:
        return [f for f in self.faces if f.dim == k]

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(self.of_dim(k)) for k in range(self.dim))

    def vertices(self) -> List[int]:
        return sorted(i for f in self.of_dim(0) for i in f.vertex_indices)

    def find(self, vertex_indices: Iterable[int], ray_indices: Iterable[int] = ()) -> Optional[FaceRecord]:
        key = (frozenset(vertex_indices), frozenset(ray_indices))
        for f in self.faces:
            if (f.vertex_indices, f.ray_indices) == key:
                return f
        return None

    def facets_containing(self, face: FaceRecord) -> List[FaceRecord]:
        return [f for f in self.facets if f.contains(face)]

    def is_simplicial(self) -> bool:
        return all(len(f.vertex_indices) == f.dim + 1 and not f.ray_indices for f in self.faces)

    def top(self) -> FaceRecord:
        return self.faces[-1]

#
# Double description
#

def _initial_rays(basis: Sequence[Vector]) -> List[Vector]:
    """Dual basis of an invertible matrix, signed to be positive on its own row"""
    r = len(basis)
    det = determinant(basis)
    s = _sign(det)
    rays = []
    for i in range(r):
        minor_rows = [row for k, row in enumerate(basis) if k != i]
        ray = []
        for col in range(r):
            minor = [[x for c, x in enumerate(row) if c != col] for row in minor_rows]
            cofactor = determinant(minor) if minor else 1
            if (i + col) % 2:
                cofactor = -cofactor
            ray.append(s * cofactor)
        rays.append(normalize(ray))
    return rays

def _cone_rays(gens: Sequence[Vector], order: Sequence[int], independent: Sequence[int]) -> List[Vector]:
    """Extreme rays of the dual of ``cone(gens)``, a full-dimensional cone

    The cone's facet normals are found by adding generators one at a time;
    two rays are combined only if no third ray vanishes on everything both
    vanish on.
    """
    rays = _initial_rays([gens[i] for i in independent])
    zeros: List[Set[int]] = [set(j for j in independent if j != i) for i in independent]
    processed = list(independent)
    for g in order:
        if g in independent:
            continue
        values = [dot(h, gens[g]) for h in rays]
        plus = [i for i, v in enumerate(values) if v > 0]
        minus = [i for i, v in enumerate(values) if v < 0]
        zero = [i for i, v in enumerate(values) if v == 0]
        processed.append(g)
        if not minus:
            for i in zero:
                zeros[i].add(g)
            continue
        new_rays: List[Vector] = []
        new_zeros: List[Set[int]] = []
        for p in plus:
            for m in minus:
                common = zeros[p] & zeros[m]
                if len(common) < len(gens[0]) - 2:
                    continue
                if any(k != p and k != m and common <= zeros[k] for k in range(len(rays))):
                    continue
                a, b = values[p], values[m]
                new_rays.append(normalize([a * y - b * x for x, y in zip(rays[p], rays[m])]))
                new_zeros.append(common | {g})
        kept = plus + zero
        for i in zero:
            zeros[i].add(g)
        rays = [rays[i] for i in kept] + new_rays
        zeros = [zeros[i] for i in kept] + new_zeros
        logger.debug("generator %d: %d plus, %d minus, %d rays", g, len(plus), len(minus), len(rays))
    return rays

def _nullspace(rows: Sequence[Vector], n: int) -> List[Vector]:
    """Basis of ``{x : row . x = 0 for all rows}`` by reduced elimination"""
    matrix = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][col]
        matrix[r] = [x / lead if x != 0 else x for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vector: List[Any] = [0] * n
        vector[f] = 1
        for i, col in enumerate(pivots):
            vector[col] = -matrix[i][f]
        basis.append(normalize(vector))
    return basis

def _insertion_order(G: GeneratorSet, gens: Sequence[Vector]) -> List[int]:
    n_points = G.n_points
    points = sorted(range(n_points), key=lambda i: tuple(order_key(x) for x in gens[i]))
    return points + list(range(n_points, len(gens)))

def facets(G: GeneratorSet) -> List[FaceRecord]:
    """Irredundant facets of the polyhedron with their incidences"""
    return face_lattice(G).facets

def face_lattice(G: GeneratorSet) -> FaceLattice:
    """All nonempty faces, via intersections of facet incidences"""
    gens = G.cone()
    n = len(gens[0])
    order = _insertion_order(G, gens)
    pivots, independent = echelon([gens[i] for i in order])
    independent = [order[i] for i in independent]
    r = len(independent)
    projected = [tuple(v[c] for c in pivots) for v in gens]
    if r < n:
        equations = [Functional.from_cone(e, G.homogeneous) for e in _nullspace([gens[i] for i in independent], n)]
    else:
        equations = []
    n_points = G.n_points
    everything = (frozenset(range(n_points)), frozenset(range(len(gens) - n_points)))

    cone_rays = _cone_rays(projected, order, independent)
    if rank(cone_rays) < r:
        raise HullError("the polyhedron contains a line")

    facet_records: List[FaceRecord] = []
    seen = set()
    for h in cone_rays:
        on = [i for i, g in enumerate(projected) if dot(h, g) == 0]
        points_on = frozenset(i for i in on if i < n_points)
        if not points_on:
            # face at infinity of the homogenization
            continue
        key = (points_on, frozenset(i - n_points for i in on if i >= n_points))
        if key in seen:
            continue
        seen.add(key)
        full = [0] * n
        for c, x in zip(pivots, h):
            full[c] = x
        facet_records.append(FaceRecord(key[0], key[1], -1, Functional.from_cone(tuple(full), G.homogeneous)))

    # closure of facet incidences under intersection
    keys: Set[Tuple[FrozenSet[int], FrozenSet[int]]] = {everything}
    frontier = [(f.vertex_indices, f.ray_indices) for f in facet_records]
    while frontier:
        current = frontier.pop()
        if current in keys or not current[0]:
            continue
        keys.add(current)
        for f in facet_records:
            meet = (current[0] & f.vertex_indices, current[1] & f.ray_indices)
            if meet[0] and meet not in keys:
                frontier.append(meet)

    dims: Dict[Tuple[FrozenSet[int], FrozenSet[int]], int] = {}
    for key in sorted(keys, key=lambda k: (len(k[0]) + len(k[1]))):
        below = [dims[k] for k in dims if k != key and k[0] <= key[0] and k[1] <= key[1]]
        dims[key] = 1 + max(below) if below else 0
    dims[everything] = r - 1

    records: List[FaceRecord] = []
    for key, dim in dims.items():
        if key == everything:
            continue
        through = [f.supporting for f in facet_records if key[0] <= f.vertex_indices and key[1] <= f.ray_indices]
        supporting = reduce(lambda a, b: a + b, through) if through else None
        records.append(FaceRecord(key[0], key[1], dim, supporting))
    records.sort(key=lambda f: (f.dim, sorted(f.vertex_indices), sorted(f.ray_indices)))
    records.append(FaceRecord(everything[0], everything[1], r - 1, None))
    facet_list = [f for f in records if f.dim == r - 2]
    logger.debug("hull: dim %d, %d facets, %d faces", r - 1, len(facet_list), len(records))
    return FaceLattice(G, r - 1, facet_list, records, equations)

def bounded_faces(L: FaceLattice) -> List[FaceRecord]:
    """Faces without rays"""
    return [f for f in L.faces if f.bounded]

def affine_hull(G: GeneratorSet) -> Tuple[int, List[Vector]]:
    """Affine dimension and an affinely independent spanning subset of the points"""
    gens = G.cone()
    _, independent = echelon(gens)
    return len(independent) - 1, [gens[i] for i in independent]

def orientation(G: GeneratorSet, subset: Sequence[int]) -> int:
    """Sign of the determinant of the homogenized points ``subset``

    Coordinates are restricted to a set of pivot coordinates of the whole
    configuration, so lower-dimensional inputs are oriented within their
    affine hull.
    """
    gens = G.cone()
    pivots, independent = echelon(gens)
    if len(subset) != len(independent):
        raise DimensionError(f"orientation needs {len(independent)} points, got {len(subset)}")
    rows = [[gens[i][c] for c in pivots] for i in subset]
    return _sign(determinant(rows))
