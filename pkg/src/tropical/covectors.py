from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm
from typing import (
    Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple,
)

import logging
import math

import networkx as nx
import numpy as np

from .core import TropicalPoint, canonicalize, tropical_segment, _check_dims

logger = logging.getLogger(__name__)

#
# Covectors
#

@dataclass(frozen=True)
class Covector:
    """Type of a point relative to a vertex list

    Attributes:
        types: per vertex ``v_i`` the 1-based coordinates ``j`` maximizing
            ``v_ij - x_j``.
    """
    types: Tuple[FrozenSet[int], ...]

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset().union(*self.types)

    def refines(self, other: Covector) -> bool:
        """Whether the cell of ``self`` is a face of the cell of ``other``"""
        return all(a >= b for a, b in zip(self.types, other.types))

    def restrict(self, indices: Iterable[int]) -> Covector:
        return Covector(tuple(self.types[i] for i in indices))

    def __str__(self) -> str:
        return "(" + ",".join("".join(str(j) for j in sorted(s)) for s in self.types) + ")"

def covector_of(x: TropicalPoint, V: Sequence[TropicalPoint]) -> Covector:
    d = _check_dims(V, x.d)
    types = []
    for v in V:
        values = [v.coords[j] - x.coords[j] for j in range(d)]
        top = max(values)
        types.append(frozenset(j + 1 for j in range(d) if values[j] == top))
    return Covector(tuple(types))

def _scale(values: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)

def covectors_of(points: Sequence[TropicalPoint], V: Sequence[TropicalPoint]) -> List[Covector]:
    """Types of many points at once, evaluated on a scaled integer grid"""
    if not points:
        return []
    d = _check_dims(V)
    _check_dims(points, d)
    scale = _scale([c for p in list(V) + list(points) for c in p.coords])
    vs = np.array([[int(c * scale) for c in v.coords] for v in V], dtype=np.int64)
    xs = np.array([[int(c * scale) for c in p.coords] for p in points], dtype=np.int64)
    values = vs[None, :, :] - xs[:, None, :]
    tops = values.max(axis=2, keepdims=True)
    hits = values == tops
    out = []
    for row in hits:
        out.append(Covector(tuple(frozenset(int(j) + 1 for j in np.flatnonzero(mask)) for mask in row)))
    return out

#
# Difference-constraint systems
#

class _CellSystem:
    """Closed cell ``{x : x_m - x_l <= v_im - v_il for m in S_i}`` on an integer grid"""

    def __init__(self, weights: Sequence[Sequence[int]], types: Sequence[FrozenSet[int]]):
        self.weights = weights
        self.types = types
        self.d = d = len(weights[0])
        edges = [[math.inf] * d for _ in range(d)]
        for row, S in zip(weights, types):
            for m in S:
                for l in range(d):
                    if l != m:
                        edges[l][m] = min(edges[l][m], row[m] - row[l])
        for a in range(d):
            edges[a][a] = min(edges[a][a], 0)
        self.edges = edges
        self.dist = _shortest_paths(edges)

    @property
    def feasible(self) -> bool:
        return all(self.dist[a][a] >= 0 for a in range(self.d))

    def closure(self) -> Tuple[FrozenSet[int], ...]:
        out = []
        for row, S in zip(self.weights, self.types):
            m = min(S)
            out.append(frozenset(
                j for j in range(self.d) if j in S or self.dist[m][j] <= row[j] - row[m]
            ))
        return tuple(out)

    def dimension(self) -> int:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.d))
        for a, b in combinations(range(self.d), 2):
            if self.dist[a][b] + self.dist[b][a] == 0:
                graph.add_edge(a, b)
        return nx.number_connected_components(graph) - 1

    @property
    def bounded(self) -> bool:
        return all(x != math.inf for row in self.dist for x in row)

    def interior_point(self) -> List[int]:
        """Integer point where every unforced constraint is strict

        Needs weights scaled by at least ``2 d`` so that shaving 1 off each
        unforced constraint keeps every cycle nonnegative.
        """
        d = self.d
        shaved = [row[:] for row in self.edges]
        for l in range(d):
            for m in range(d):
                w = self.edges[l][m]
                if l != m and w != math.inf and w + self.dist[m][l] != 0:
                    shaved[l][m] = w - 1
        dist = _shortest_paths(shaved)
        return [min(0, min(dist[b][a] for b in range(d))) for a in range(d)]

def _shortest_paths(edges: Sequence[Sequence[float]]) -> List[List[float]]:
    d = len(edges)
    dist = [list(row) for row in edges]
    for k in range(d):
        for a in range(d):
            if dist[a][k] == math.inf:
                continue
            for b in range(d):
                through = dist[a][k] + dist[k][b]
                if through < dist[a][b]:
                    dist[a][b] = through
    return dist

#
# Cell complex
#

@dataclass(frozen=True)
class Cell:
    """A cell of the covector decomposition

    Attributes:
        id: position in ``CellComplex.cells``.
        covector: the type of every relative-interior point.
        dim: dimension in tropical projective space.
        witness: a relative-interior point.
        bounded: whether the cell is bounded, i.e. lies in the polytope.
    """
    id: int
    covector: Covector
    dim: int
    witness: TropicalPoint
    bounded: bool

@dataclass
class CellComplex:
    """Polyhedral decomposition of tropical projective space by a vertex list"""
    points: Tuple[TropicalPoint, ...]
    cells: List[Cell]
    index: Dict[Covector, int] = field(default_factory=dict)
    _faces: Dict[int, FrozenSet[int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.index = {c.covector: c.id for c in self.cells}

    @property
    def d(self) -> int:
        return self.points[0].d

    def __getitem__(self, cid: int) -> Cell:
        return self.cells[cid]

    def __len__(self) -> int:
        return len(self.cells)

    def bounded_ids(self) -> List[int]:
        return [c.id for c in self.cells if c.bounded]

    def of_dim(self, k: int, bounded: bool = True) -> List[int]:
        return [c.id for c in self.cells if c.dim == k and (c.bounded or not bounded)]

    def faces_of(self, cid: int) -> FrozenSet[int]:
        """Cells in the closure of ``cid``, itself included"""
        if cid not in self._faces:
            mine = self.cells[cid].covector
            self._faces[cid] = frozenset(c.id for c in self.cells if c.covector.refines(mine))
        return self._faces[cid]

    def closure(self, cids: Iterable[int]) -> FrozenSet[int]:
        return frozenset().union(*(self.faces_of(c) for c in cids))

    def cofaces_of(self, cid: int) -> List[int]:
        mine = self.cells[cid].covector
        return [c.id for c in self.cells if mine.refines(c.covector)]

    def locate(self, x: TropicalPoint) -> int:
        return self.index[covector_of(x, self.points)]

    def locate_many(self, xs: Sequence[TropicalPoint]) -> List[int]:
        return [self.index[c] for c in covectors_of(xs, self.points)]

    def dim_of(self, cids: Iterable[int]) -> int:
        return max((self.cells[c].dim for c in cids), default=-1)

    def f_vector(self, bounded: bool = True) -> Tuple[int, ...]:
        top = max(c.dim for c in self.cells if c.bounded or not bounded)
        return tuple(len(self.of_dim(k, bounded)) for k in range(top + 1))

def decompose(V: Sequence[TropicalPoint]) -> CellComplex:
    """All cells of the arrangement of negated hyperplanes at the points of ``V``

    Cells are found point by point: every cell of the arrangement of the
    first ``i + 1`` points restricts to a cell of the first ``i``.
    """
    d = _check_dims(V)
    scale = _scale(c for v in V for c in v.coords) * 2 * d
    weights = [[int(c * scale) for c in v.coords] for v in V]
    subsets = [frozenset(s) for size in range(1, d + 1) for s in combinations(range(d), size)]

    layer: List[Tuple[FrozenSet[int], ...]] = [()]
    for i in range(len(V)):
        following = []
        for prefix in layer:
            for S in subsets:
                candidate = prefix + (S,)
                system = _CellSystem(weights[:i + 1], candidate)
                if system.feasible and system.closure() == candidate:
                    following.append(candidate)
        layer = following
        logger.debug("covector layer %d: %d cells", i + 1, len(layer))

    raw = []
    for types in layer:
        system = _CellSystem(weights, types)
        point = system.interior_point()
        witness = canonicalize(Fraction(x, scale) for x in point)
        covector = Covector(tuple(frozenset(j + 1 for j in S) for S in types))
        raw.append((system.dimension(), covector, witness, system.bounded))
    raw.sort(key=lambda item: (item[0], [tuple(sorted(s)) for s in item[1].types]))
    cells = [Cell(i, covector, dim, witness, bounded) for i, (dim, covector, witness, bounded) in enumerate(raw)]
    logger.info("decomposed %d points into %d cells (%d bounded)", len(V), len(cells), sum(c.bounded for c in cells))
    return CellComplex(tuple(V), cells)

def pseudovertices(V: Sequence[TropicalPoint], complex: Optional[CellComplex] = None) -> List[TropicalPoint]:
    """Bounded 0-cells"""
    complex = complex or decompose(V)
    return [complex[c].witness for c in complex.of_dim(0)]

def tconv_cells(complex: CellComplex, W: Iterable[int]) -> FrozenSet[int]:
    """Bounded cells lying in the tropical hull of the points ``W``"""
    W = sorted(set(W))
    full = frozenset(range(1, complex.d + 1))
    return frozenset(
        c.id for c in complex.cells
        if c.bounded and frozenset().union(*(c.covector.types[i] for i in W)) == full
    )

def boundary_cells(V: Sequence[TropicalPoint], complex: Optional[CellComplex] = None) -> FrozenSet[int]:
    """Bounded cells on the topological boundary of the polytope

    A bounded cell is interior exactly when every cell around it is bounded.
    """
    complex = complex or decompose(V)
    out = set()
    for cid in complex.bounded_ids():
        if any(not complex[c].bounded for c in complex.cofaces_of(cid)):
            out.add(cid)
    return frozenset(out)

def segment_cells(complex: CellComplex, p: TropicalPoint, q: TropicalPoint) -> FrozenSet[int]:
    """Cells met by the tropical segment from ``p`` to ``q``"""
    corners = tropical_segment(p, q)
    V = complex.points
    d = complex.d
    hit = {complex.locate(corners[0])}
    for a, b in zip(corners, corners[1:]):
        step = [b.coords[j] - a.coords[j] for j in range(d)]
        critical = {Fraction(0), Fraction(1)}
        for v in V:
            for j, l in combinations(range(d), 2):
                # v_j - a_j - s step_j == v_l - a_l - s step_l
                slope = step[l] - step[j]
                if slope != 0:
                    s = (v.coords[l] - a.coords[l] - v.coords[j] + a.coords[j]) / slope
                    if 0 < s < 1:
                        critical.add(s)
        marks = sorted(critical)
        offsets = marks + [(x + y) / 2 for x, y in zip(marks, marks[1:])]
        points = [canonicalize(a.coords[j] + s * step[j] for j in range(d)) for s in offsets]
        hit.update(complex.locate_many(points))
    return frozenset(hit)

def cell_graph(complex: CellComplex, cids: Iterable[int]) -> nx.Graph:
    """Cells as nodes, joined when they share a facet"""
    cids = sorted(set(cids))
    graph = nx.Graph()
    graph.add_nodes_from(cids)
    for a, b in combinations(cids, 2):
        k = min(complex[a].dim, complex[b].dim)
        shared = complex.faces_of(a) & complex.faces_of(b)
        if k > 0 and any(complex[c].dim == k - 1 for c in shared):
            graph.add_edge(a, b)
    return graph

def is_connected(complex: CellComplex, cids: Iterable[int]) -> bool:
    graph = cell_graph(complex, cids)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)
