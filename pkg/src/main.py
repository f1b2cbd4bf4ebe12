from __future__ import annotations
from typing import Any, Callable, Dict, List, Optional

import argparse
import logging
import sys

from pydantic import BaseModel, ValidationError, validator

from algebra.homology import ChainComplexError
from algebra.resolution import (
    BudgetError, MonomialIdeal, check_resolution, compare_lifts,
    format_monomial, is_tropically_generic, resolution_complex, scarf_complex,
    total_betti, tropicalize,
)
from configs import DEFAULT_SAMPLES, DEFAULT_SEED, EXIT_CODES, LOG_FORMAT, LOG_LEVEL, SCARF_GENERATOR_LIMIT
from polyhedra.hull import HullError
from puiseux.field import PoleError
from render.svg import save_svg
from tropical.core import TropicalPoint, extreme_points, membership
from tropical.covectors import decompose, pseudovertices
from tropical.faces import (
    FaceSearchError, conjecture_report, direction, face_poset, faces, j_face_complex_homology,
    j_face_lattice, j_facets,
)
from tropical.lifting import LiftError, generic_lift, hull_lift, lift_dim, polytope_dim, sample_lifts
from utils.errors import DimensionError, ParseError
from utils.inputs import InputFile, load_input
from utils.parser import parse_rational
from utils.report_helpers import dumps, to_plain

logger = logging.getLogger("tropohull")

COMMANDS = ("hull", "member", "faces", "jfacets", "resolve", "svg", "conjectures")

INPUT_ERRORS = (ParseError, DimensionError, ValidationError, PoleError, BudgetError, OSError, ValueError)
INVARIANT_ERRORS = (ChainComplexError, HullError, LiftError, FaceSearchError)

# a pipeline ran but one of its certificates failed
class VerdictFailed(Exception):
    def __init__(self, report: Dict[str, Any]):
        super().__init__("a verification verdict failed")
        self.report = report

## Request Models
class JobSpec(BaseModel):
    command: str
    input: str
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    as_json: bool = False
    out: Optional[str] = None
    k: Optional[int] = None
    point: Optional[str] = None
    lift: str = "hull"
    compare: int = 0
    overlay: bool = False

    @validator('command')
    def is_valid_command(cls, v):
        if v not in COMMANDS:
            raise ValueError(f"command must be one of {', '.join(COMMANDS)}")
        return v

    @validator('seed')
    def is_valid_seed(cls, v):
        if not 0 <= v < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return v

    @validator('samples', 'compare')
    def is_nonnegative(cls, v):
        if v < 0:
            raise ValueError("counts must be nonnegative")
        return v

    @validator('k')
    def is_valid_k(cls, v):
        if v is not None and v < 0:
            raise ValueError("face dimension must be nonnegative")
        return v

    @validator('lift')
    def is_valid_lift(cls, v):
        if v not in ("hull", "generic"):
            raise ValueError("lift must be 'hull' or 'generic'")
        return v

    def seeds(self, n: int) -> List[int]:
        return [self.seed + i for i in range(n)]

def _points(data: InputFile) -> List[TropicalPoint]:
    if data.points is None:
        raise DimensionError("this command needs a 'points' input")
    return [TropicalPoint.of(*p) for p in data.rationals()]

def _ideal(data: InputFile) -> MonomialIdeal:
    if data.ideal is None:
        raise DimensionError("this command needs an 'ideal' input")
    return MonomialIdeal.of(data.ideal.nvars, data.ideal.generators)

def _parse_point(text: str) -> TropicalPoint:
    parts = [p.strip() for p in text.split(",")]
    return TropicalPoint.of(*(parse_rational(p) for p in parts))

def _witnesses(V: List[TropicalPoint], complex) -> list:
    return [(f.witness, f.vertex_indices) for f in j_facets(V, complex)]

#
# Commands
#

def cmd_hull(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given a points file, return the pseudovertices, the number of cells of
    the covector decomposition by dimension and the f-vector of its bounded
    cells
    '''
    V = _points(data)
    complex = decompose(V)
    return {
        "points": [str(v) for v in V],
        "extreme_points": extreme_points(V),
        "pseudovertices": [str(p) for p in pseudovertices(V, complex)],
        "cells_by_dim": list(complex.f_vector(bounded=False)),
        "bounded_f_vector": list(complex.f_vector()),
        "dimension": polytope_dim(complex),
    }

def cmd_member(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given a points file and ``--point``, return whether the point lies in
    the tropical hull and the coefficients certifying it
    '''
    if job.point is None:
        raise DimensionError("member needs --point")
    V = _points(data)
    x = _parse_point(job.point)
    inside, coeffs = membership(x, V)
    return {"point": str(x), "inside": inside, "coefficients": list(coeffs)}

def cmd_faces(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given a points file, return the faces found across the sampled lifts,
    with the directions of the top-dimensional ones and the lifts that
    failed to realize them
    '''
    V = _points(data)
    complex = decompose(V)
    lifts = sample_lifts(V, job.samples, job.seed, _witnesses(V, complex))
    if job.k is not None:
        poset = {job.k: faces(V, job.k, lifts, complex)}
    else:
        poset = face_poset(V, lifts, complex)
    top = lift_dim(lifts) - 1
    report: Dict[str, Any] = {
        "lifts": [L.name for L in lifts],
        "f_vector": [len(poset[k]) for k in sorted(poset)],
        "faces": {str(k): [f.name for f in poset[k]] for k in sorted(poset)},
    }
    if top in poset:
        diagnostics = {}
        for face in poset[top]:
            d = direction(face, lifts, complex)
            diagnostics[face.name] = {"direction": str(d), "unrealized": list(d.unrealized)}
        report["directions"] = diagnostics
    return report

def cmd_jfacets(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given a points file, return the J-facets with their witnessing
    halfspaces, whether the lattice they generate is graded and the homology
    of the complex glued from them
    '''
    V = _points(data)
    complex = decompose(V)
    facets = j_facets(V, complex)
    lattice = j_face_lattice(V, facets)
    homology, counts = j_face_complex_homology(V, facets)
    return {
        "j_facets": [
            {"vertices": f.name, "witness": str(f.witness), "witnesses": [str(h) for h in f.witnesses]}
            for f in facets
        ],
        "lattice_size": len(lattice.elements),
        "chain_lengths": sorted(lattice.chain_lengths()),
        "graded": lattice.is_graded(),
        "complex_counts": list(counts),
        "complex_homology": str(homology),
    }

def cmd_resolve(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given an ideal file, build the labeled complex of the chosen lift and
    certify it as a cellular resolution; with ``--compare N`` do the same
    for the hull lift and N generic lifts
    '''
    I = _ideal(data)
    small = len(I) <= SCARF_GENERATOR_LIMIT
    scarf = scarf_complex(I) if small else None
    report: Dict[str, Any] = {
        "ideal": str(I),
        "generic": is_tropically_generic(I),
        "betti": list(total_betti(I)) if small else None,
    }
    if job.compare:
        comparisons = compare_lifts(I, job.seeds(job.compare))
        report["lifts"] = [
            {
                "lift": c.name,
                "ranks": list(c.ranks),
                "resolution": c.report.is_resolution,
                "minimal": c.report.minimal,
                "scarf_contained": c.report.scarf_contained,
                "largest_face": c.largest_face,
            }
            for c in comparisons
        ]
        report["distinct_complexes"] = len({c.signature for c in comparisons})
        ok = all(c.report.is_resolution for c in comparisons)
    else:
        V = tropicalize(I)
        L = hull_lift(V) if job.lift == "hull" else generic_lift(V, job.seed)
        LC = resolution_complex(I, L)
        result = check_resolution(LC, I, scarf)
        report.update({
            "lift": L.name,
            "ranks": list(result.ranks),
            "resolution": result.is_resolution,
            "minimal": result.minimal,
            "scarf_contained": result.scarf_contained,
            "failed": [format_monomial(b) for b, passed in result.verdicts.items() if not passed],
            "cells": [
                {"generators": sorted(c.vertex_indices), "label": format_monomial(c.label)}
                for c in LC.cells
            ],
        })
        if small and result.minimal and result.is_resolution:
            report["betti_agrees"] = list(result.ranks) == list(total_betti(I))
        ok = result.is_resolution
    if not ok:
        raise VerdictFailed(report)
    return report

def cmd_svg(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given a points file in TP^2 or TP^3, draw the bounded cells, the points
    and the pseudovertices; ``--overlay`` adds the J-facet hyperplanes
    '''
    V = _points(data)
    complex = decompose(V)
    overlay = [f.witness for f in j_facets(V, complex)] if job.overlay else []
    path = save_svg(complex, job.out or "tropohull.svg", overlay)
    return {"svg": path}

def cmd_conjectures(job: JobSpec, data: InputFile) -> Dict[str, Any]:
    '''
    Given a points file, run the checks on the faces of the sampled lifts
    and return the machine-readable report, counterexamples included
    '''
    V = _points(data)
    complex = decompose(V)
    lifts = sample_lifts(V, job.samples, job.seed, _witnesses(V, complex))
    poset = face_poset(V, lifts, complex)
    return conjecture_report(V, lifts, complex, poset, seed=job.seed)

HANDLERS: Dict[str, Callable[[JobSpec, InputFile], Dict[str, Any]]] = {
    "hull": cmd_hull,
    "member": cmd_member,
    "faces": cmd_faces,
    "jfacets": cmd_jfacets,
    "resolve": cmd_resolve,
    "svg": cmd_svg,
    "conjectures": cmd_conjectures,
}

#
# Output
#

def format_text(report: Dict[str, Any]) -> str:
    lines = []
    for key, value in to_plain(report).items():
        if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append(f"{key}:")
            lines.extend(f"  {_inline(item)}" for item in value)
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {_inline(v)}" for k, v in value.items())
        else:
            lines.append(f"{key}: {_inline(value)}")
    return "\n".join(lines)

def _inline(value: Any) -> str:
    if isinstance(value, dict):
        return ", ".join(f"{k}={_inline(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    return str(value)

def emit(job: JobSpec, report: Dict[str, Any]) -> None:
    text = dumps(report) if job.as_json or job.command == "conjectures" else format_text(report)
    if job.out and job.command != "svg":
        with open(job.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)

#
# Entry point
#

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropohull", description="Exact computations with tropical polytopes")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="JSON file with 'points' or 'ideal'")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="generic lifts to sample")
    parser.add_argument("--json", dest="as_json", action="store_true", help="structured output")
    parser.add_argument("--out", help="output path (SVG for svg, report otherwise)")
    parser.add_argument("--k", type=int, help="only faces of this dimension")
    parser.add_argument("--point", help="comma separated coordinates, e.g. 0,2,1/2")
    parser.add_argument("--lift", default="hull", help="hull or generic")
    parser.add_argument("--compare", type=int, default=0, help="compare the hull lift with N generic lifts")
    parser.add_argument("--overlay", action="store_true", help="draw J-facet hyperplanes")
    return parser

def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec(**vars(args))
        data = load_input(job.input)
        report = HANDLERS[job.command](job, data)
    except VerdictFailed as e:
        emit(job, e.report)
        logger.error("%s", e)
        return EXIT_CODES["invariant"]
    except INVARIANT_ERRORS as e:
        logger.error("invariant violated: %s", e)
        return EXIT_CODES["invariant"]
    except INPUT_ERRORS as e:
        logger.error("input error: %s", e)
        return EXIT_CODES["input"]
    emit(job, report)
    return EXIT_CODES["ok"]

def main() -> None:
    logging.basicConfig(format=LOG_FORMAT, level=LOG_LEVEL)
    sys.exit(run())

if __name__ == "__main__":
    main()
