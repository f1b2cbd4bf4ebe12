from __future__ import annotations
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import logging
import math

import svgwrite

from tropical.core import INF, TropicalHalfspace, canonicalize
from tropical.covectors import CellComplex
from utils.errors import DimensionError

logger = logging.getLogger(__name__)

Point2 = Tuple[float, float]

SCALE = 40
MARGIN = 30
RAY_LENGTH = 2

# TP^3 is drawn through this fixed axonometric map of (x2, x3, x4)
AXONOMETRIC = ((1.0, 0.0, -0.5), (0.0, 1.0, -0.35))

def project(x: Sequence) -> Point2:
    """Plane coordinates of a canonical point, y pointing up"""
    coords = [float(c) for c in x[1:]]
    if len(coords) == 2:
        return coords[0], coords[1]
    if len(coords) == 3:
        u = sum(a * c for a, c in zip(AXONOMETRIC[0], coords))
        v = sum(a * c for a, c in zip(AXONOMETRIC[1], coords))
        return u, v
    raise DimensionError(f"only TP^2 and TP^3 can be drawn, got d = {len(x)}")

def _hyperplane_rays(halfspace: TropicalHalfspace) -> List[Tuple[Point2, Point2]]:
    """Segments along the rays of the hyperplane in directions -e_i"""
    apex = halfspace.apex
    d = len(apex)
    base = [c if c != INF else 0 for c in apex]
    out = []
    for i in halfspace.hyperplane.finite:
        direction = [0] * d
        direction[i] = -RAY_LENGTH
        tip = canonicalize([Fraction(b) + s for b, s in zip(base, direction)])
        out.append((project(canonicalize(base).coords), project(tip.coords)))
    return out

def _polygon_order(points: List[Point2]) -> List[Point2]:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))

def render(
    complex: CellComplex,
    overlay: Iterable[TropicalHalfspace] = (),
    path: str = "tropohull.svg",
) -> svgwrite.Drawing:
    """Bounded cells, the points and the pseudovertices; optional hyperplanes on top"""
    d = complex.d
    if d not in (3, 4):
        raise DimensionError(f"only TP^2 and TP^3 can be drawn, got d = {d}")
    zero_cells = {c: project(complex[c].witness.coords) for c in complex.of_dim(0)}

    polygons = []
    for cid in complex.of_dim(2):
        corners = [zero_cells[c] for c in complex.faces_of(cid) if c in zero_cells]
        polygons.append(_polygon_order(corners))
    segments = []
    for cid in complex.of_dim(1):
        ends = [zero_cells[c] for c in complex.faces_of(cid) if c in zero_cells]
        segments.append(sorted(ends))
    rays = [ray for h in overlay for ray in _hyperplane_rays(h)]
    points = [project(p.coords) for p in complex.points]

    everything = [p for poly in polygons for p in poly] + [p for s in segments for p in s] + \
        [p for r in rays for p in r] + points + list(zero_cells.values())
    lo_x = min(p[0] for p in everything)
    hi_x = max(p[0] for p in everything)
    lo_y = min(p[1] for p in everything)
    hi_y = max(p[1] for p in everything)
    width = (hi_x - lo_x) * SCALE + 2 * MARGIN
    height = (hi_y - lo_y) * SCALE + 2 * MARGIN

    def place(p: Point2) -> Point2:
        return (round((p[0] - lo_x) * SCALE + MARGIN, 3), round((hi_y - p[1]) * SCALE + MARGIN, 3))

    dwg = svgwrite.Drawing(path, size=(round(width, 3), round(height, 3)), profile="full")
    dwg.add(dwg.rect(insert=(0, 0), size=(round(width, 3), round(height, 3)), fill="white"))
    g = dwg.g()
    for poly in polygons:
        g.add(dwg.polygon([place(p) for p in poly], fill="lightgray", stroke="none"))
    for seg in segments:
        g.add(dwg.polyline([place(p) for p in seg], stroke="black", fill="none", stroke_width=2))
    for start, end in rays:
        g.add(dwg.polyline([place(start), place(end)], stroke="steelblue", fill="none", stroke_width=1))
    for p in zero_cells.values():
        g.add(dwg.circle(center=place(p), r=3, fill="white", stroke="black"))
    for p in points:
        g.add(dwg.circle(center=place(p), r=4, fill="black"))
    dwg.add(g)
    logger.info("drew %d polygons, %d segments, %d points", len(polygons), len(segments), len(points))
    return dwg

def save_svg(complex: CellComplex, path: str, overlay: Iterable[TropicalHalfspace] = ()) -> str:
    dwg = render(complex, overlay, path)
    dwg.save()
    return path
