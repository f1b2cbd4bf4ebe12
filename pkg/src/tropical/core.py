from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import (
    Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union, Final,
)

import logging
import math

from utils.errors import DimensionError
from utils.parser import parse_rational

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str]
SectorSet = FrozenSet[int]

INF: Final[float] = math.inf

# halfspace positions
INTERIOR: Final[str] = "interior"
BOUNDARY: Final[str] = "boundary"
OUTSIDE: Final[str] = "outside"

#
# Points, hyperplanes, halfspaces
#

@dataclass(frozen=True)
class TropicalPoint:
    """Point of tropical projective space, first coordinate fixed to 0

    Attributes:
        coords: exact rational coordinates of the canonical representative.
    """
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords: Rational) -> TropicalPoint:
        return canonicalize(coords)

    @property
    def d(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

def canonicalize(raw: Iterable[Rational]) -> TropicalPoint:
    """Representative with first coordinate 0"""
    values = [parse_rational(c) for c in raw]
    if len(values) < 2:
        raise DimensionError(f"tropical points need at least 2 coordinates, got {len(values)}")
    first = values[0]
    return TropicalPoint(tuple(c - first for c in values))

@dataclass(frozen=True)
class TropicalHyperplane:
    """Tropical hyperplane given by its apex, +inf allowed per coordinate

    Attributes:
        apex: canonical apex, the first finite coordinate is 0.
    """
    apex: Tuple[Union[Fraction, float], ...]

    @classmethod
    def of(cls, apex: Iterable[Union[Rational, float]]) -> TropicalHyperplane:
        values = [c if c == INF else parse_rational(c) for c in apex]
        finite = [c for c in values if c != INF]
        if len(finite) < 2:
            raise DimensionError("a tropical hyperplane needs at least two finite apex coordinates")
        shift = finite[0]
        return cls(tuple(c if c == INF else c - shift for c in values))

    @property
    def d(self) -> int:
        return len(self.apex)

    @property
    def finite(self) -> Tuple[int, ...]:
        """0-based indices with a finite apex coordinate"""
        return tuple(i for i, c in enumerate(self.apex) if c != INF)

    def __str__(self) -> str:
        return "(" + ",".join("inf" if c == INF else str(c) for c in self.apex) + ")"

@dataclass(frozen=True)
class TropicalHalfspace:
    """Closed union of the sectors ``sectors`` of a tropical hyperplane

    Attributes:
        hyperplane: the bounding hyperplane.
        sectors: 1-based indices A, a nonempty proper subset of 1..d.
    """
    hyperplane: TropicalHyperplane
    sectors: SectorSet

    def __post_init__(self) -> None:
        d = self.hyperplane.d
        if not self.sectors or len(self.sectors) >= d or not all(1 <= i <= d for i in self.sectors):
            raise DimensionError(f"sector set {sorted(self.sectors)} is not a nonempty proper subset of 1..{d}")

    @classmethod
    def of(cls, apex: Iterable[Union[Rational, float]], sectors: Iterable[int]) -> TropicalHalfspace:
        return cls(TropicalHyperplane.of(apex), frozenset(sectors))

    @property
    def apex(self) -> Tuple[Union[Fraction, float], ...]:
        return self.hyperplane.apex

    def position(self, x: TropicalPoint) -> str:
        return halfspace_position(x, self)

    def __str__(self) -> str:
        return f"{self.hyperplane} sectors {{{','.join(str(i) for i in sorted(self.sectors))}}}"

@dataclass(frozen=True)
class TropicalMatrix:
    """Square matrix of rationals, columns are points"""
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise DimensionError("tropical matrices must be square")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Rational]]) -> TropicalMatrix:
        return cls(tuple(tuple(parse_rational(c) for c in row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[TropicalPoint]) -> TropicalMatrix:
        n = len(columns)
        return cls(tuple(tuple(columns[j].coords[i] for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

#
# Combinations and membership
#

def _check_dims(points: Sequence[TropicalPoint], d: Optional[int] = None) -> int:
    if not points:
        raise DimensionError("empty point list")
    d = points[0].d if d is None else d
    for p in points:
        if p.d != d:
            raise DimensionError(f"dimension mismatch: {p.d} != {d}")
    return d

def tconv_combination(coeffs: Sequence[Rational], points: Sequence[TropicalPoint]) -> TropicalPoint:
    """Max-plus combination ``max_i (c_i + v_i)``, canonicalized"""
    d = _check_dims(points)
    if len(coeffs) != len(points):
        raise DimensionError(f"{len(coeffs)} coefficients for {len(points)} points")
    cs = [parse_rational(c) for c in coeffs]
    return canonicalize(
        max(c + p.coords[j] for c, p in zip(cs, points)) for j in range(d)
    )

def membership(x: TropicalPoint, V: Sequence[TropicalPoint]) -> Tuple[bool, Tuple[Fraction, ...]]:
    """Whether ``x`` lies in the tropical hull of ``V``, with the witness coefficients

    ``c_i = min_j (x_j - v_ij)``; ``x`` is inside iff combining ``V`` with
    these coefficients gives back ``x``.
    """
    _check_dims(V, x.d)
    coeffs = tuple(min(xj - vj for xj, vj in zip(x.coords, v.coords)) for v in V)
    return tconv_combination(coeffs, V) == x, coeffs

def extreme_points(V: Sequence[TropicalPoint]) -> List[int]:
    """Indices of the points not in the tropical hull of the others

    Repeated points count once, at their first index.
    """
    _check_dims(V)
    out = []
    for i, v in enumerate(V):
        if any(V[j] == v for j in range(i)):
            continue
        others = [w for w in V if w != v]
        if not others or not membership(v, others)[0]:
            out.append(i)
    return out

#
# Sectors
#

def sectors_of(x: TropicalPoint, H: TropicalHyperplane) -> SectorSet:
    """1-based argmax of ``x_i - apex_i`` over the finite apex coordinates"""
    if x.d != H.d:
        raise DimensionError(f"dimension mismatch: {x.d} != {H.d}")
    values = {i: x.coords[i] - H.apex[i] for i in H.finite}
    top = max(values.values())
    return frozenset(i + 1 for i, value in values.items() if value == top)

def halfspace_position(x: TropicalPoint, HS: TropicalHalfspace) -> str:
    """``interior``, ``boundary`` or ``outside``"""
    H = HS.hyperplane
    if x.d != H.d:
        raise DimensionError(f"dimension mismatch: {x.d} != {H.d}")
    inside = [x.coords[i] - H.apex[i] for i in H.finite if i + 1 in HS.sectors]
    outside = [x.coords[i] - H.apex[i] for i in H.finite if i + 1 not in HS.sectors]
    top_in = max(inside) if inside else -INF
    top_out = max(outside) if outside else -INF
    if top_in > top_out:
        return INTERIOR
    if top_in == top_out:
        return BOUNDARY
    return OUTSIDE

#
# Tropical determinant
#

def _assignment(weights: Sequence[Sequence[Fraction]]) -> Tuple[Fraction, Tuple[int, ...]]:
    """Maximum-weight perfect assignment (Hungarian method on negated weights)

    Returns the optimum and the permutation as ``perm[row] = column``.
    """
    n = len(weights)
    cost = [[-w for w in row] for row in weights]
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv: List[Union[Fraction, float]] = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta: Union[Fraction, float] = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = [0] * n
    for j in range(1, n + 1):
        perm[p[j] - 1] = j - 1
    return sum(weights[i][perm[i]] for i in range(n)), tuple(perm)

def tropical_det(M: TropicalMatrix) -> Fraction:
    """``max_sigma sum_i M[i][sigma(i)]``"""
    if M.n == 0:
        return Fraction(0)
    return _assignment(M.entries)[0]

def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
    return -1 if (len(perm) - cycles) % 2 else 1

def tropical_sign(M: TropicalMatrix) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Sign of the unique optimal permutation, ``(0, None)`` on a tie

    Uniqueness: the optimum is re-solved once per optimal edge with that
    edge priced out; an unchanged optimum means a second optimal
    permutation avoids it.
    """
    n = M.n
    if n <= 1:
        return 1, tuple(range(n))
    best, perm = _assignment(M.entries)
    entries = [list(row) for row in M.entries]
    low = min(min(row) for row in entries)
    high = max(max(row) for row in entries)
    penalty = low - n * (high - low) - 1
    for i in range(n):
        j = perm[i]
        saved = entries[i][j]
        entries[i][j] = penalty
        alternative, _ = _assignment(entries)
        entries[i][j] = saved
        if alternative == best:
            return 0, None
    return permutation_sign(perm), perm

#
# Partial oriented matroid
#

def chirotope(V: Sequence[TropicalPoint]) -> Dict[Tuple[int, ...], int]:
    """Tropical sign of every d-subset (0-based, increasing) of ``V``"""
    d = _check_dims(V)
    if len(V) < d:
        raise DimensionError(f"need at least {d} points, got {len(V)}")
    return {
        subset: tropical_sign(TropicalMatrix.from_columns([V[i] for i in subset]))[0]
        for subset in combinations(range(len(V)), d)
    }

def is_general_position(V: Sequence[TropicalPoint]) -> bool:
    return all(s != 0 for s in chirotope(V).values())

#
# Segments
#

def tropical_segment(p: TropicalPoint, q: TropicalPoint) -> List[TropicalPoint]:
    """Breakpoints of the tropical segment from ``p`` to ``q``, in order

    The segment is ``max(lam + p, q)`` for ``lam`` running down through the
    sorted differences ``q_j - p_j``; consecutive breakpoints are joined by
    ordinary segments.
    """
    if p.d != q.d:
        raise DimensionError(f"dimension mismatch: {p.d} != {q.d}")
    out: List[TropicalPoint] = []
    for lam in sorted({qj - pj for pj, qj in zip(p.coords, q.coords)}, reverse=True):
        point = canonicalize(max(lam + pj, qj) for pj, qj in zip(p.coords, q.coords))
        if not out or out[-1] != point:
            out.append(point)
    return out


if __name__ == "__main__":
    triangle = [TropicalPoint.of(0, 3, 0), TropicalPoint.of(0, 1, 1), TropicalPoint.of(0, 2, 3)]
    print(membership(TropicalPoint.of(0, 2, 1), triangle))
    print(tropical_sign(TropicalMatrix.of([[0, 1], [2, 0]])))
