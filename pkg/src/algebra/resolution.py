from __future__ import annotations
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import (
    Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple,
)

import logging

from configs import SCARF_GENERATOR_LIMIT
from polyhedra.hull import FaceLattice, GeneratorSet, face_lattice
from puiseux.field import monomial
from tropical.core import TropicalPoint, is_general_position
from tropical.lifting import Lift, explicit_lift, generic_lift, hull_lift
from utils.errors import DimensionError, TropoError

from .homology import ChainComplex, is_acyclic, rational_betti, simplicial_chain_complex

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

# raised when an exhaustive subset scan would be too large
class BudgetError(TropoError): pass

#
# Ideals
#

def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))

def lcm(exponents: Iterable[Exponent]) -> Exponent:
    return tuple(max(column) for column in zip(*exponents))

@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal by its minimal generators

    Attributes:
        nvars: number of variables.
        generators: exponent vectors, pairwise incomparable.
    """
    nvars: int
    generators: Tuple[Exponent, ...]

    @classmethod
    def of(cls, nvars: int, generators: Iterable[Sequence[int]]) -> MonomialIdeal:
        """Normalize to minimal generators, dropping dominated ones"""
        raw = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != nvars:
                raise DimensionError(f"generator {g} has {len(g)} exponents, expected {nvars}")
            if any(x < 0 for x in g):
                raise DimensionError(f"generator {g} has a negative exponent")
            if g not in raw:
                raw.append(g)
        if not raw:
            raise DimensionError("an ideal needs at least one generator")
        minimal = [g for g in raw if not any(h != g and divides(h, g) for h in raw)]
        if len(minimal) < len(raw):
            logger.warning("dropped %d dominated generators", len(raw) - len(minimal))
        return cls(nvars, tuple(minimal))

    def __len__(self) -> int:
        return len(self.generators)

    def label(self, indices: Iterable[int]) -> Exponent:
        return lcm(self.generators[i] for i in indices)

    def __str__(self) -> str:
        return "<" + ", ".join(format_monomial(g) for g in self.generators) + ">"

def format_monomial(exponent: Exponent) -> str:
    names = "xyzuvw" if len(exponent) <= 6 else None
    parts = []
    for i, e in enumerate(exponent):
        if e == 0:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"

def tropicalize(I: MonomialIdeal) -> List[TropicalPoint]:
    """Points ``(0, a)``"""
    return [TropicalPoint.of(0, *g) for g in I.generators]

def lcm_lattice(I: MonomialIdeal) -> List[Exponent]:
    """All least common multiples of nonempty generator subsets"""
    elements: Set[Exponent] = set(I.generators)
    frontier = list(elements)
    while frontier:
        a = frontier.pop()
        for g in I.generators:
            b = lcm([a, g])
            if b not in elements:
                elements.add(b)
                frontier.append(b)
    return sorted(elements, key=lambda e: (sum(e), e))

#
# Hull polyhedra and labeled complexes
#

def hull_polyhedron(I: MonomialIdeal, L: Lift) -> GeneratorSet:
    """Lifted generators plus the positive orthant in the last coordinates"""
    if list(L.source) != tropicalize(I):
        raise DimensionError("the lift does not lift the generators of the ideal")
    d = I.nvars + 1
    rays = [tuple(1 if j == i else 0 for j in range(d)) for i in range(1, d)]
    return GeneratorSet.of(L.vectors, rays, homogeneous=True)

@dataclass(frozen=True)
class LabeledCell:
    """A bounded face with its monomial label

    Attributes:
        vertex_indices: generators at its vertices.
        dim: dimension.
        label: lcm of the vertex generators.
        boundary: ``(facet position, sign)`` pairs.
    """
    vertex_indices: FrozenSet[int]
    dim: int
    label: Exponent
    boundary: Tuple[Tuple[int, int], ...] = ()

@dataclass
class LabeledComplex:
    """Bounded faces of a hull polyhedron labeled by lcms, with signed boundaries"""
    ideal: MonomialIdeal
    cells: List[LabeledCell]
    chain: ChainComplex = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.chain = self.restricted(range(len(self.cells)))

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cells)

    def ranks(self) -> Tuple[int, ...]:
        return tuple(sum(c.dim == k for c in self.cells) for k in range(self.dim + 1))

    def positions(self, k: int) -> List[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == k]

    def restricted(self, keep: Iterable[int]) -> ChainComplex:
        """Chain complex of the subcomplex on the cells ``keep``"""
        keep = set(keep)
        by_dim: Dict[int, List[int]] = {}
        for i in sorted(keep):
            by_dim.setdefault(self.cells[i].dim, []).append(i)
        top = max(by_dim) if by_dim else -1
        ranks = [len(by_dim.get(k, [])) for k in range(top + 1)]
        boundaries = {}
        for k in range(1, top + 1):
            rows = {cell: r for r, cell in enumerate(by_dim.get(k - 1, []))}
            matrix = [[0] * ranks[k] for _ in range(ranks[k - 1])]
            for col, cell in enumerate(by_dim.get(k, [])):
                for facet, sign in self.cells[cell].boundary:
                    matrix[rows[facet]][col] = sign
            boundaries[k] = matrix
        return ChainComplex(ranks, boundaries)

    def below(self, b: Exponent) -> List[int]:
        return [i for i, c in enumerate(self.cells) if divides(c.label, b)]

    def signature(self) -> FrozenSet[FrozenSet[int]]:
        """The cells as vertex sets, for comparing complexes"""
        return frozenset(c.vertex_indices for c in self.cells)

def _edge_boundary(vertices: Sequence[int], index: Dict[FrozenSet[int], int]) -> Tuple[Tuple[int, int], ...]:
    u, v = sorted(vertices)
    return ((index[frozenset([u])], -1), (index[frozenset([v])], 1))

def _oriented_boundary(
    facets: List[int],
    cells: List[LabeledCell],
) -> Tuple[Tuple[int, int], ...]:
    """Signs on the facets of a cell making the boundary of the boundary vanish

    The facet with the smallest vertex tuple gets ``+1``; signs spread to
    neighbours across shared ridges, which meet with opposite coefficients.
    """
    facets = sorted(facets, key=lambda i: sorted(cells[i].vertex_indices))
    coefficient = {i: dict(cells[i].boundary) for i in facets}
    signs = {facets[0]: 1}
    queue = deque([facets[0]])
    while queue:
        a = queue.popleft()
        for b in facets:
            if b in signs:
                continue
            shared = set(coefficient[a]) & set(coefficient[b])
            if not shared:
                continue
            ridge = min(shared)
            signs[b] = -signs[a] * coefficient[a][ridge] * coefficient[b][ridge]
            queue.append(b)
    if len(signs) != len(facets):
        raise DimensionError("facets of a cell are not connected through ridges")
    return tuple((i, signs[i]) for i in facets)

def labeled_complex(I: MonomialIdeal, lattice: FaceLattice) -> LabeledComplex:
    """Bounded faces of ``lattice`` with lcm labels and signed boundaries"""
    bounded = sorted(
        (f for f in lattice.faces if f.bounded),
        key=lambda f: (f.dim, sorted(f.vertex_indices)),
    )
    cells: List[LabeledCell] = []
    index: Dict[FrozenSet[int], int] = {}
    for face in bounded:
        if face.dim == 0:
            boundary: Tuple[Tuple[int, int], ...] = ()
        elif face.dim == 1:
            ends = [v for v in face.vertex_indices if frozenset([v]) in index]
            if len(ends) != 2:
                raise DimensionError(f"edge {sorted(face.vertex_indices)} does not have two vertices")
            boundary = _edge_boundary(ends, index)
        else:
            facets = [
                index[other.vertex_indices] for other in bounded
                if other.dim == face.dim - 1 and face.contains(other)
            ]
            boundary = _oriented_boundary(facets, cells)
        index[face.vertex_indices] = len(cells)
        cells.append(LabeledCell(face.vertex_indices, face.dim, I.label(face.vertex_indices), boundary))
    # the chain complex checks that the boundary squares to zero
    return LabeledComplex(I, cells)

def resolution_complex(I: MonomialIdeal, L: Lift) -> LabeledComplex:
    return labeled_complex(I, face_lattice(hull_polyhedron(I, L)))

#
# Certificates
#

@dataclass
class ResolutionReport:
    """Result of checking a labeled complex

    Attributes:
        ranks: cells per homological degree.
        verdicts: acyclicity of the subcomplex below each lcm-lattice element.
        minimal: no cell has the label of one of its facets.
        scarf_contained: every Scarf face is a cell, or ``None`` if unchecked.
    """
    ranks: Tuple[int, ...]
    verdicts: Dict[Exponent, bool]
    minimal: bool
    scarf_contained: Optional[bool] = None

    @property
    def is_resolution(self) -> bool:
        return all(self.verdicts.values())

def check_resolution(LC: LabeledComplex, I: MonomialIdeal, scarf: Optional[Sequence[FrozenSet[int]]] = None) -> ResolutionReport:
    verdicts = {}
    for b in lcm_lattice(I):
        verdicts[b] = is_acyclic(LC.restricted(LC.below(b)))
        if not verdicts[b]:
            logger.warning("subcomplex below %s is not acyclic", format_monomial(b))
    minimal = all(
        LC.cells[facet].label != cell.label
        for cell in LC.cells for facet, _ in cell.boundary
    )
    contained = None
    if scarf is not None:
        contained = set(scarf) <= set(LC.signature())
    return ResolutionReport(LC.ranks(), verdicts, minimal, contained)

def betti_numbers(I: MonomialIdeal) -> Dict[Tuple[int, Exponent], int]:
    """Multigraded Betti numbers of the ideal, read off the Taylor complex

    ``beta_{i,b}`` is the dimension of the reduced homology in degree
    ``i - 1`` of the subsets of generators whose lcm strictly divides ``b``.
    """
    n = len(I)
    if n > SCARF_GENERATOR_LIMIT:
        raise BudgetError(f"{n} generators exceed the subset budget {SCARF_GENERATOR_LIMIT}")
    out = {}
    for b in lcm_lattice(I):
        under = [i for i in range(n) if divides(I.generators[i], b)]
        simplices = [
            s for size in range(1, len(under) + 1) for s in combinations(under, size)
            if I.label(s) != b
        ]
        betti = rational_betti(simplicial_chain_complex(simplices))
        for k, rank in betti.items():
            if rank:
                out[(k + 1, b)] = rank
    return out

def total_betti(I: MonomialIdeal) -> Tuple[int, ...]:
    totals = Counter()
    for (i, _), rank in betti_numbers(I).items():
        totals[i] += rank
    return tuple(totals[i] for i in range(max(totals) + 1)) if totals else ()

def scarf_complex(I: MonomialIdeal) -> List[FrozenSet[int]]:
    """Generator subsets whose lcm no other subset shares"""
    n = len(I)
    if n > SCARF_GENERATOR_LIMIT:
        raise BudgetError(f"{n} generators exceed the Scarf budget {SCARF_GENERATOR_LIMIT}")
    labels = {}
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            labels[frozenset(subset)] = I.label(subset)
    counts = Counter(labels.values())
    return sorted((s for s, b in labels.items() if counts[b] == 1), key=lambda s: (len(s), sorted(s)))

def is_tropically_generic(I: MonomialIdeal) -> bool:
    """General position of the tropicalized generators; fewer than d of them is generic"""
    V = tropicalize(I)
    if len(V) < I.nvars + 1:
        return True
    return is_general_position(V)

def supporting_functional_check(lattice: FaceLattice) -> bool:
    """Bounded faces are exactly those whose functional is positive on every ray"""
    rays = lattice.generators.rays
    for face in lattice.faces:
        if face.supporting is None:
            continue
        positive = all(face.supporting(r) > 0 for r in rays)
        if positive != face.bounded:
            return False
    return True

@dataclass
class LiftComparison:
    name: str
    ranks: Tuple[int, ...]
    report: ResolutionReport
    signature: FrozenSet[FrozenSet[int]]
    largest_face: int

def compare_lifts(I: MonomialIdeal, seeds: Sequence[int], extra: Sequence[Lift] = ()) -> List[LiftComparison]:
    """Resolutions from the hull lift, generic lifts and any extra lifts"""
    V = tropicalize(I)
    scarf = scarf_complex(I) if len(I) <= SCARF_GENERATOR_LIMIT else None
    lifts = [hull_lift(V)] + [generic_lift(V, s) for s in seeds] + list(extra)
    out = []
    for L in lifts:
        LC = resolution_complex(I, L)
        report = check_resolution(LC, I, scarf)
        largest = max(len(c.vertex_indices) for c in LC.cells)
        out.append(LiftComparison(L.name, report.ranks, report, LC.signature(), largest))
        logger.info("lift %s: ranks %s, resolution %s", L.name, report.ranks, report.is_resolution)
    return out

def large_face_example(n: int = 7) -> Tuple[MonomialIdeal, Lift]:
    """Ideal ``<x^n y^m z^(n-1-m)>`` and a lift putting all generators on one bounded polygon

    The lifted generators satisfy ``X + Y + Z = t^n``, a plane positive on
    the orthant rays, and lie on the curve ``Y Z = t^(n-1)``, so each is a
    vertex of the polygon.
    """
    I = MonomialIdeal.of(3, [(n, m, n - 1 - m) for m in range(n)])
    V = tropicalize(I)
    vectors = []
    for _, m, l in I.generators:
        y, z = monomial(1, m), monomial(1, l)
        vectors.append((monomial(1, 0), monomial(1, n) - y - z, y, z))
    return I, explicit_lift(V, vectors, "large-face")
