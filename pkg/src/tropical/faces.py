from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import (
    Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union,
)

import logging

import numpy as np

from algebra.homology import HomologyReport, order_complex, order_complex_homology
from configs import EXTREME_SET_PAIRS, FACE_SEARCH_DEPTH
from puiseux.field import ONE, PuiseuxNumber
from utils.errors import DimensionError, TropoError

from .core import (
    BOUNDARY, OUTSIDE, TropicalHalfspace, TropicalPoint,
    extreme_points, halfspace_position, tconv_combination,
)
from .covectors import (
    CellComplex, boundary_cells, decompose, is_connected, segment_cells, tconv_cells,
)
from .lifting import Fatom, Lift, face_image, facet_lift, fatoms, lift_dim, polytope_dim

logger = logging.getLogger(__name__)

SignVector = Tuple[int, ...]

# raised when the face search gives up before finding any closed set
class FaceSearchError(TropoError): pass

def letters(indices: Iterable[int]) -> str:
    """``{0, 1, 3}`` -> ``ABD``"""
    return "".join(chr(ord("A") + i) if i < 26 else f"[{i}]" for i in sorted(indices))

#
# J-facets
#

@dataclass(frozen=True)
class JFacet:
    """Maximal vertex set on the boundary of a halfspace containing the polytope

    Attributes:
        vertex_indices: the vertices on the boundary.
        witness: the first witnessing halfspace found.
        witnesses: all witnessing halfspaces with a pseudovertex apex.
    """
    vertex_indices: FrozenSet[int]
    witness: TropicalHalfspace
    witnesses: Tuple[TropicalHalfspace, ...] = ()

    @property
    def name(self) -> str:
        return letters(self.vertex_indices)

def _bipartitions(d: int) -> List[FrozenSet[int]]:
    return [frozenset(s) for size in range(1, d) for s in combinations(range(1, d + 1), size)]

def j_facets(V: Sequence[TropicalPoint], complex: Optional[CellComplex] = None) -> List[JFacet]:
    """J-facets of the tropical hull of ``V``, apices drawn from the pseudovertices"""
    complex = complex or decompose(V)
    E = extreme_points(V)
    found: Dict[FrozenSet[int], List[TropicalHalfspace]] = {}
    for cid in complex.of_dim(0):
        apex = complex[cid].witness
        for A in _bipartitions(complex.d):
            halfspace = TropicalHalfspace.of(apex.coords, A)
            positions = {i: halfspace_position(V[i], halfspace) for i in E}
            if OUTSIDE in positions.values():
                continue
            on = frozenset(i for i, p in positions.items() if p == BOUNDARY)
            if on and len(on) < len(E):
                found.setdefault(on, []).append(halfspace)
    maximal = [s for s in found if not any(s < t for t in found)]
    maximal.sort(key=lambda s: sorted(s))
    out = [JFacet(s, found[s][0], tuple(found[s])) for s in maximal]
    logger.info("found %d J-facets", len(out))
    return out

@dataclass
class JFaceLattice:
    """Vertex sets closed under intersection, the full vertex set on top"""
    elements: List[FrozenSet[int]]

    def __contains__(self, vertex_set: Iterable[int]) -> bool:
        return frozenset(vertex_set) in self.elements

    def chain_lengths(self) -> Set[int]:
        """Lengths (number of elements) of the maximal chains"""
        return {len(chain) for chain in order_complex(self.elements, lambda a, b: a < b)}

    def is_graded(self) -> bool:
        return len(self.chain_lengths()) == 1

    def atoms(self) -> List[FrozenSet[int]]:
        return [e for e in self.elements if not any(f < e for f in self.elements)]

def j_face_lattice(V: Sequence[TropicalPoint], facets: Optional[Sequence[JFacet]] = None) -> JFaceLattice:
    facets = facets if facets is not None else j_facets(V)
    top = frozenset(extreme_points(V))
    elements: Set[FrozenSet[int]] = {top}
    frontier = [f.vertex_indices for f in facets]
    while frontier:
        current = frontier.pop()
        if not current or current in elements:
            continue
        elements.add(current)
        frontier.extend(current & f.vertex_indices for f in facets)
    return JFaceLattice(sorted(elements, key=lambda s: (len(s), sorted(s))))

def j_face_complex_homology(V: Sequence[TropicalPoint], facets: Sequence[JFacet]) -> Tuple[HomologyReport, Tuple[int, ...]]:
    """Homology of the complex glued from the J-facets

    Each J-facet is a polygon whose edges are read off its facet lift.
    Returns the reduced homology and the counts of vertices, edges and
    polygons.
    """
    vertices = {frozenset([i]) for i in extreme_points(V)}
    edges: Set[FrozenSet[int]] = set()
    polygons = set()
    for facet in facets:
        lattice = facet_lift(V, facet.witness, facet.vertex_indices).lattice()
        face = lattice.find(facet.vertex_indices)
        if face is None:
            raise DimensionError(f"J-facet {facet.name} is not a face of its own lift")
        polygons.add(facet.vertex_indices)
        edges.update(e.vertex_indices for e in lattice.of_dim(1) if face.contains(e))
    elements = sorted(vertices | edges | polygons, key=lambda s: (len(s), sorted(s)))
    report = order_complex_homology(elements, lambda a, b: a < b)
    return report, (len(vertices), len(edges), len(polygons))

#
# Faces from lifts
#

@dataclass(frozen=True)
class Face:
    """A face of a tropical polytope read off a sample of lifts

    Attributes:
        k: dimension.
        cells: the k-dimensional boundary cells making up the face.
        support: every cell of the face, lower-dimensional pieces included.
        vertex_indices: the points of ``V`` in the face.
        sheeted: the lifts have higher dimension than the polytope, so faces
            with the same image are told apart by their vertices.
    """
    k: int
    cells: FrozenSet[int]
    support: FrozenSet[int]
    vertex_indices: FrozenSet[int]
    sheeted: bool = False

    @property
    def name(self) -> str:
        return letters(self.vertex_indices)

    @property
    def key(self) -> FrozenSet[int]:
        return _key(self.cells, self.vertex_indices, self.sheeted)

def _key(cells: FrozenSet[int], vertex_indices: FrozenSet[int], sheeted: bool) -> FrozenSet[int]:
    """Search atoms: the k-cells, plus ``~i`` for every vertex ``i`` when sheeted"""
    if not sheeted:
        return cells
    return cells | frozenset(~i for i in vertex_indices)

class _FaceSearch:
    """Minimal unions of atoms that every sampled lift covers by its own fatoms"""

    def __init__(self, covers: List[List[FrozenSet[int]]], depth: int):
        self.covers = covers
        self.depth = depth
        self.found: Set[FrozenSet[int]] = set()
        self.seen: Set[FrozenSet[int]] = set()
        self.cutoff = False

    def _step(self, S: FrozenSet[int]) -> Tuple[str, Any]:
        """Force what is forced; report a branching choice if one remains"""
        while True:
            choice = None
            grown = False
            for cover in self.covers:
                covered = frozenset().union(*(G for G in cover if G <= S))
                for x in sorted(S - covered):
                    options = {G for G in cover if x in G and not G <= S}
                    if not options:
                        return "dead", None
                    minimal = sorted((G for G in options if not any(H < G for H in options)), key=sorted)
                    if len(minimal) == 1:
                        S = S | minimal[0]
                        grown = True
                        break
                    if choice is None:
                        choice = minimal
                if grown:
                    break
            if grown:
                continue
            if choice is None:
                return "closed", S
            return "branch", (S, choice)

    def run(self, seed: int) -> None:
        self._search(frozenset([seed]), 0)

    def _search(self, S: FrozenSet[int], depth: int) -> None:
        if S in self.seen or any(T <= S for T in self.found):
            return
        self.seen.add(S)
        state, value = self._step(S)
        if state == "closed":
            self.found.add(value)
            return
        if state == "dead":
            return
        S, options = value
        if depth >= self.depth:
            self.cutoff = True
            return
        logger.debug("face search: branching %d ways at depth %d", len(options), depth)
        for option in options:
            self._search(S | option, depth + 1)

def faces(
    V: Sequence[TropicalPoint],
    k: int,
    lifts: Sequence[Lift],
    complex: Optional[CellComplex] = None,
    depth: int = FACE_SEARCH_DEPTH,
) -> List[Face]:
    """k-faces: minimal boundary unions that are unions of fatoms in every lift

    When the lifts have higher dimension than the polytope their boundaries
    cover it more than once. Fatoms with collapsed images are then kept and
    each one carries its vertices next to its cells, so a face is the image
    of a lift face rather than a bare set of cells.
    """
    if not lifts:
        raise DimensionError("faces need at least one lift")
    complex = complex or decompose(V)
    sheeted = polytope_dim(complex) < lift_dim(lifts)
    boundary = boundary_cells(V, complex)
    per_lift: List[List[Fatom]] = [
        [f for f in fatoms(L, k, complex, degenerate=sheeted) if f.cells <= boundary]
        for L in lifts
    ]
    covers = [sorted({_key(f.cells, f.vertex_indices, sheeted) for f in fs}, key=sorted) for fs in per_lift]
    search = _FaceSearch(covers, depth)
    for seed in sorted(frozenset().union(*(G for cover in covers for G in cover))):
        search.run(seed)
    if not search.found and search.cutoff:
        raise FaceSearchError(f"no {k}-face found within search depth {depth}")
    if search.cutoff:
        logger.warning("face search hit depth %d for k = %d; results may be incomplete", depth, k)
    minimal = [S for S in search.found if not any(T < S for T in search.found)]

    vertex_cells = {complex.locate(v): i for i, v in enumerate(V)}
    out = []
    for S in minimal:
        cells = frozenset(t for t in S if t >= 0)
        support = set(cells)
        for fs in per_lift:
            for f in fs:
                if _key(f.cells, f.vertex_indices, sheeted) <= S:
                    support |= f.image_cells
        support = frozenset(support)
        if sheeted:
            vertices = frozenset(~t for t in S if t < 0)
        else:
            vertices = frozenset(i for c, i in vertex_cells.items() if c in support)
        out.append(Face(k, cells, support, vertices, sheeted))
    out.sort(key=lambda f: (sorted(f.vertex_indices), sorted(f.cells)))
    logger.info("found %d faces of dimension %d", len(out), k)
    return out

def face_poset(V: Sequence[TropicalPoint], lifts: Sequence[Lift], complex: Optional[CellComplex] = None) -> Dict[int, List[Face]]:
    """All proper faces, by dimension, up to one below the dimension of the lifts"""
    if not lifts:
        raise DimensionError("faces need at least one lift")
    complex = complex or decompose(V)
    return {k: faces(V, k, lifts, complex) for k in range(lift_dim(lifts))}

def f_vector(poset: Dict[int, List[Face]]) -> Tuple[int, ...]:
    return tuple(len(poset[k]) for k in sorted(poset))

def is_below(a: Face, b: Face) -> bool:
    return a.k < b.k and a.support < b.support and a.vertex_indices <= b.vertex_indices

def face_complex_homology(poset: Dict[int, List[Face]]) -> HomologyReport:
    """Homology of the order complex of the proper faces"""
    elements = [f for k in sorted(poset) for f in poset[k]]
    return order_complex_homology(elements, is_below)

#
# Intersections
#

def _lift_faces_in(face: Face, L: Lift, complex: CellComplex) -> List[FrozenSet[int]]:
    """Vertex sets of the k-faces of ``L`` whose fatoms make up ``face``"""
    return [
        f.vertex_indices for f in fatoms(L, face.k, complex, degenerate=face.sheeted)
        if _key(f.cells, f.vertex_indices, face.sheeted) <= face.key
    ]

def face_intersection(F: Face, G: Face, L: Lift, complex: CellComplex) -> FrozenSet[int]:
    """Degree image of the intersection of the parts of ``L`` lying over ``F`` and ``G``"""
    out: Set[int] = set()
    over_g = _lift_faces_in(G, L, complex)
    for a in _lift_faces_in(F, L, complex):
        for b in over_g:
            W = a & b
            if W:
                out |= tconv_cells(complex, W)
    return frozenset(out)

@dataclass
class IntersectionReport:
    faces: Tuple[str, str]
    per_lift: Dict[str, FrozenSet[int]]

    @property
    def stable(self) -> bool:
        return len(set(self.per_lift.values())) <= 1

def intersection_stability(F: Face, G: Face, lifts: Sequence[Lift], complex: CellComplex) -> IntersectionReport:
    """Face intersections computed in every lift, kept apart for comparison"""
    report = IntersectionReport((F.name, G.name), {L.name: face_intersection(F, G, L, complex) for L in lifts})
    if not report.stable:
        logger.warning("intersection of %s and %s depends on the lift", F.name, G.name)
    return report

#
# Directions and sign vectors
#

@dataclass(frozen=True)
class Direction:
    """Sector bipartition data of a facet-like face

    Attributes:
        R: coordinates positive in every defining functional.
        S: coordinates negative in every defining functional.
        per_lift: ``(lift name, R, S)`` for every lift realizing the face.
        unrealized: lifts with no facet over the face.
    """
    R: FrozenSet[int]
    S: FrozenSet[int]
    per_lift: Tuple[Tuple[str, FrozenSet[int], FrozenSet[int]], ...] = ()
    unrealized: Tuple[str, ...] = ()

    def __str__(self) -> str:
        return "{%s, %s}" % ("".join(map(str, sorted(self.R))), "".join(map(str, sorted(self.S))))

def _signs(coeffs: Sequence) -> SignVector:
    return tuple(PuiseuxNumber.of(c).sign() for c in coeffs)

def direction(target: Union[Face, Iterable[int]], lifts: Sequence[Lift], complex: CellComplex) -> Direction:
    """Coordinates where every lift's defining functionals agree in sign

    ``target`` is a ``Face`` or a vertex set; a lift realizes a vertex set
    through a facet with exactly those vertices, and a ``Face`` through a
    facet whose image is the whole face. Lifts that only cover the face by
    several facets count as unrealized.
    """
    if isinstance(target, Face):
        def realizes(L: Lift) -> List:
            out = []
            for f in L.lattice().facets:
                if f.dim != target.k:
                    continue
                cells = frozenset(c for c in face_image(complex, f) if complex[c].dim == target.k)
                if _key(cells, f.vertex_indices, target.sheeted) == target.key:
                    out.append(f)
            return out
    else:
        W = frozenset(target)
        def realizes(L: Lift) -> List:
            return [f for f in L.lattice().facets if f.vertex_indices == W]

    d = complex.d
    R = frozenset(range(1, d + 1))
    S = frozenset(range(1, d + 1))
    per_lift = []
    unrealized = []
    for L in lifts:
        found = realizes(L)
        if not found:
            unrealized.append(L.name)
            continue
        r = frozenset(range(1, d + 1))
        s = frozenset(range(1, d + 1))
        for f in found:
            signs = _signs(f.supporting.coeffs)
            r &= frozenset(j + 1 for j, x in enumerate(signs) if x > 0)
            s &= frozenset(j + 1 for j, x in enumerate(signs) if x < 0)
        per_lift.append((L.name, r, s))
        R &= r
        S &= s
    if not per_lift:
        logger.warning("no sampled lift realizes the face by a facet")
        return Direction(frozenset(), frozenset(), (), tuple(unrealized))
    if unrealized:
        logger.warning("direction only partially realized: %s", ", ".join(unrealized))
    return Direction(R, S, tuple(per_lift), tuple(unrealized))

def pencil_sign_vectors(f: Sequence, g: Sequence) -> Set[SignVector]:
    """Sign vectors of ``f + r g`` over all ``r > 0`` in K

    Signs can only change where some coordinate of ``f + r g`` vanishes, so
    it is enough to look at those ratios and between them.
    """
    f = [PuiseuxNumber.of(x) for x in f]
    g = [PuiseuxNumber.of(x) for x in g]
    breaks = sorted({-a / b for a, b in zip(f, g) if not b.is_zero() and (-a / b).sign() > 0})
    if breaks:
        samples = breaks + [(x + y) / 2 for x, y in zip(breaks, breaks[1:])]
        samples += [breaks[0] / 2, breaks[-1] * 2]
    else:
        samples = [ONE]
    return {tuple((a + r * b).sign() for a, b in zip(f, g)) for r in samples}

def edge_sign_vectors(L: Lift, vertex_indices: Iterable[int]) -> Set[SignVector]:
    """Sign vectors of all positive combinations of the two facets through a face"""
    lattice = L.lattice()
    face = lattice.find(vertex_indices)
    if face is None:
        raise DimensionError(f"{letters(vertex_indices)} is not a face of {L.name}")
    incident = lattice.facets_containing(face)
    if len(incident) != 2:
        raise DimensionError(f"{letters(vertex_indices)} lies in {len(incident)} facets of {L.name}, not 2")
    return pencil_sign_vectors(incident[0].supporting.coeffs, incident[1].supporting.coeffs)

def format_signs(signs: SignVector) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in signs)

#
# Conjecture checks
#

def random_members(V: Sequence[TropicalPoint], count: int, rng: np.random.Generator) -> List[TropicalPoint]:
    """Tropical combinations of ``V`` with random integer coefficients"""
    spread = max(max(v.coords) - min(v.coords) for v in V) + 1
    out = []
    for _ in range(count):
        coeffs = rng.integers(-int(spread) * 2, 1, size=len(V))
        out.append(tconv_combination([Fraction(int(c), 2) for c in coeffs], V))
    return out

def extreme_set_check(
    V: Sequence[TropicalPoint],
    face: Face,
    complex: CellComplex,
    pairs: int = EXTREME_SET_PAIRS,
    seed: int = 0,
) -> List[Tuple[TropicalPoint, TropicalPoint]]:
    """Pairs of points outside ``face`` whose tropical segment still meets it"""
    rng = np.random.default_rng(seed)
    pool = [p for p in random_members(V, 4 * pairs, rng) if complex.locate(p) not in face.support]
    violations = []
    for _ in range(pairs):
        if len(pool) < 2:
            break
        i, j = rng.choice(len(pool), size=2, replace=False)
        p, q = pool[int(i)], pool[int(j)]
        if segment_cells(complex, p, q) & face.support:
            violations.append((p, q))
    return violations

def conjecture_report(
    V: Sequence[TropicalPoint],
    lifts: Sequence[Lift],
    complex: CellComplex,
    poset: Dict[int, List[Face]],
    pairs: int = EXTREME_SET_PAIRS,
    seed: int = 0,
) -> Dict[str, Any]:
    """Machine-readable results of the checks on the faces of ``V``"""
    top = max(poset) if poset else -1
    homology = face_complex_homology(poset)
    sphere = homology.nonzero() == {top: (1, [])}

    intersections = []
    tops = poset.get(top, [])
    for F, G in combinations(tops, 2):
        report = intersection_stability(F, G, lifts, complex)
        intersections.append({
            "faces": list(report.faces),
            "stable": report.stable,
            "per_lift": {name: sorted(cells) for name, cells in report.per_lift.items()},
        })

    extreme = []
    for k in sorted(poset):
        for face in poset[k]:
            violations = extreme_set_check(V, face, complex, pairs, seed)
            extreme.append({
                "face": face.name,
                "k": k,
                "violations": [[str(p), str(q)] for p, q in violations],
            })

    counterexamples = (0 if sphere else 1) + \
        sum(not item["stable"] for item in intersections) + \
        sum(bool(item["violations"]) for item in extreme)
    return {
        "sphere_homology": {
            "degree": top,
            "homology": {str(k): {"free": r, "torsion": t} for k, (r, t) in homology.nonzero().items()},
            "holds": sphere,
        },
        "connected_faces": {
            face.name: is_connected(complex, face.cells or face.support) for k in sorted(poset) for face in poset[k] if k > 0
        },
        "intersections": intersections,
        "extreme_sets": extreme,
        "counterexamples": counterexamples,
    }
