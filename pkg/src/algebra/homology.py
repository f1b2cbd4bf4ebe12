from __future__ import annotations
from dataclasses import dataclass, field
from itertools import combinations
from typing import (
    Callable, Dict, Hashable, Iterable, List, Sequence, Tuple, TypeVar,
)

import logging

import numpy as np
from sympy.polys.domains import ZZ, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp, invariant_factors

from utils.errors import TropoError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]
N = TypeVar("N", bound=Hashable)

# raised when a boundary map composed with the next one is not zero
class ChainComplexError(TropoError): pass

#
# Smith normal form
#

def _domain_matrix(M: Sequence[Sequence[int]], rows: int, cols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in M], (rows, cols), ZZ)

def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[List[int], Tuple[IntMatrix, IntMatrix]]:
    """Diagonal of the Smith normal form of ``M`` and unimodular ``(S, T)``

    ``S * M * T`` is diagonal with the returned entries, each dividing the
    next; zeros trail.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [], (_identity(rows), _identity(cols))
    a, s, t = smith_normal_decomp(_domain_matrix(M, rows, cols))
    A, S, T = a.to_Matrix(), s.to_Matrix(), t.to_Matrix()
    diagonal = [abs(int(A[i, i])) for i in range(min(rows, cols))]
    return diagonal, (_to_lists(S), _to_lists(T))

def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]

def _to_lists(M) -> IntMatrix:
    return [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]

def _invariants(M: IntMatrix, rows: int, cols: int) -> List[int]:
    if rows == 0 or cols == 0:
        return []
    return [abs(int(f)) for f in invariant_factors(_domain_matrix(M, rows, cols)) if f != 0]

def rank_over_q(M: IntMatrix, rows: int, cols: int) -> int:
    if rows == 0 or cols == 0:
        return 0
    return _domain_matrix(M, rows, cols).convert_to(QQ).rank()

#
# Chain complexes
#

@dataclass
class ChainComplex:
    """Integer chain complex, augmented so homology is reduced

    Attributes:
        ranks: ``ranks[k]`` is the number of k-cells, k = 0..top.
        boundaries: ``boundaries[k]`` is the matrix of the boundary map
            from k-cells to (k-1)-cells (rows: (k-1)-cells), k >= 1. The
            augmentation from 0-cells to the integers is added on
            construction.
    """
    ranks: List[int]
    boundaries: Dict[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.boundaries = dict(self.boundaries)
        self.boundaries[0] = [[1] * self.rank(0)]
        for k in range(1, len(self.ranks)):
            matrix = self.boundaries.get(k)
            if matrix is None:
                self.boundaries[k] = [[0] * self.rank(k) for _ in range(self.rank(k - 1))]
            elif len(matrix) != self.rank(k - 1) or any(len(row) != self.rank(k) for row in matrix):
                raise ChainComplexError(f"boundary map {k} has the wrong shape")
        for k in range(1, len(self.ranks)):
            if self.rank(k) == 0 or self.rank(k - 2) == 0:
                continue
            product = np.array(self.boundaries[k - 1], dtype=np.int64) @ np.array(self.boundaries[k], dtype=np.int64)
            if np.any(product):
                raise ChainComplexError(f"boundary maps {k - 1} and {k} do not compose to zero")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, k: int) -> int:
        if k == -1:
            return 1
        if 0 <= k < len(self.ranks):
            return self.ranks[k]
        return 0

    def matrix(self, k: int) -> IntMatrix:
        return self.boundaries.get(k, [])

    def euler_characteristic(self) -> int:
        """Reduced: includes the -1 term"""
        return sum((-1) ** k * self.rank(k) for k in range(-1, self.top + 1))

@dataclass
class HomologyReport:
    """Reduced integer homology by degree

    Attributes:
        free: free rank per degree, degrees -1..top.
        torsion: torsion coefficients (all > 1) per degree.
    """
    free: Dict[int, int]
    torsion: Dict[int, List[int]]

    def is_zero(self) -> bool:
        return not any(self.free.values()) and not any(self.torsion.values())

    def nonzero(self) -> Dict[int, Tuple[int, List[int]]]:
        return {
            k: (self.free[k], self.torsion[k])
            for k in sorted(self.free)
            if self.free[k] or self.torsion[k]
        }

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * rank for k, rank in self.free.items())

    def __str__(self) -> str:
        parts = []
        for k, (rank, torsion) in self.nonzero().items():
            groups = (["Z^%d" % rank] if rank > 1 else ["Z"] if rank else []) + [f"Z/{c}" for c in torsion]
            parts.append(f"H{k} = " + " + ".join(groups))
        return ", ".join(parts) if parts else "acyclic"

def reduced_homology(C: ChainComplex) -> HomologyReport:
    """Reduced homology with integer coefficients"""
    ranks_of_maps: Dict[int, int] = {}
    torsion_of_maps: Dict[int, List[int]] = {}
    for k in range(0, C.top + 2):
        rows, cols = C.rank(k - 1), C.rank(k)
        factors = _invariants(C.matrix(k), rows, cols) if k <= C.top else []
        ranks_of_maps[k] = len(factors)
        torsion_of_maps[k] = [f for f in factors if f > 1]
    free = {}
    torsion = {}
    for k in range(-1, C.top + 1):
        free[k] = C.rank(k) - ranks_of_maps.get(k, 0) - ranks_of_maps.get(k + 1, 0)
        torsion[k] = torsion_of_maps.get(k + 1, [])
    report = HomologyReport(free, torsion)
    if report.euler_characteristic() != C.euler_characteristic():
        raise ChainComplexError("Euler characteristic of ranks and homology disagree")
    return report

def rational_betti(C: ChainComplex) -> Dict[int, int]:
    """Reduced Betti numbers over Q, the cross-check of the free part"""
    rank = {k: rank_over_q(C.matrix(k), C.rank(k - 1), C.rank(k)) for k in range(0, C.top + 1)}
    return {
        k: C.rank(k) - rank.get(k, 0) - rank.get(k + 1, 0)
        for k in range(-1, C.top + 1)
    }

def is_acyclic(C: ChainComplex) -> bool:
    """All reduced homology vanishes; the empty complex is not acyclic"""
    return reduced_homology(C).is_zero()

#
# Simplicial and poset complexes
#

def simplicial_chain_complex(simplices: Iterable[Sequence[N]]) -> ChainComplex:
    """Chain complex of the simplicial complex generated by ``simplices``

    Vertices may be any sortable labels; every face of a listed simplex is
    included.
    """
    faces: Dict[int, set] = {}
    for simplex in simplices:
        simplex = tuple(sorted(simplex))
        for size in range(1, len(simplex) + 1):
            for face in combinations(simplex, size):
                faces.setdefault(size - 1, set()).add(face)
    if not faces:
        return ChainComplex([])
    top = max(faces)
    ordered = {k: sorted(faces.get(k, ())) for k in range(top + 1)}
    index = {k: {face: i for i, face in enumerate(ordered[k])} for k in ordered}
    boundaries = {}
    for k in range(1, top + 1):
        matrix = [[0] * len(ordered[k]) for _ in range(len(ordered[k - 1]))]
        for j, face in enumerate(ordered[k]):
            for i in range(len(face)):
                matrix[index[k - 1][face[:i] + face[i + 1:]]][j] = (-1) ** i
        boundaries[k] = matrix
    return ChainComplex([len(ordered[k]) for k in range(top + 1)], boundaries)

def order_complex(elements: Sequence[N], less: Callable[[N, N], bool]) -> List[Tuple[int, ...]]:
    """Maximal chains of a finite poset, as index tuples

    ``less(a, b)`` is the strict order. Chains list element indices from
    bottom to top.
    """
    n = len(elements)
    above = {i: [j for j in range(n) if less(elements[i], elements[j])] for i in range(n)}
    minimal = [i for i in range(n) if not any(less(elements[j], elements[i]) for j in range(n))]
    chains: List[Tuple[int, ...]] = []

    def _extend(chain: Tuple[int, ...]) -> None:
        nexts = [j for j in above[chain[-1]] if not any(
            less(elements[chain[-1]], elements[m]) and less(elements[m], elements[j]) for m in range(n)
        )]
        if not nexts:
            chains.append(chain)
            return
        for j in nexts:
            _extend(chain + (j,))

    for i in minimal:
        _extend((i,))
    return chains

def order_complex_homology(elements: Sequence[N], less: Callable[[N, N], bool]) -> HomologyReport:
    """Reduced homology of the order complex of a finite poset

    For the face poset of a regular cell complex this is the homology of
    the complex itself.
    """
    return reduced_homology(simplicial_chain_complex(order_complex(elements, less)))


if __name__ == "__main__":
    hollow_triangle = simplicial_chain_complex([(0, 1), (1, 2), (0, 2)])
    print(reduced_homology(hollow_triangle))
    print(smith_normal_form([[2, 0], [0, 3]])[0])
