"""``analyze``: run the analysis pipeline on a JSON job document.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 internal
inconsistency (the report is still written when one was produced).
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import SCHEMA_VERSION, __version__
from . import degeneration as dg
from . import detrop, surface
from .errors import (InternalInconsistency, NoRationalScaling, ParseError, TropmutError,
                     ValidationError)
from .detrop import FactoredPoly
from .polyptych import PLPolytope, build_polytope, pl_vertices, sink_source
from .svg import render_charts as _render

ANALYSES = ("validate", "charts", "moduli", "classgroup", "cox", "complexity", "toricity",
            "singularities", "degeneration", "dual-mutation", "family")

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_INTERNAL = 0, 2, 3, 4


# ---------------------------------------------------------------------------
# input

@dataclass(frozen=True)
class JobSpec:
    s: int
    f_mode: str
    f_data: tuple
    constraints: tuple
    analyses: tuple = ANALYSES

    def polynomial(self) -> FactoredPoly:
        if self.f_mode == "roots":
            return FactoredPoly.from_roots(self.f_data)
        return FactoredPoly.from_coeffs(self.f_data)

    def polytope(self) -> PLPolytope:
        return build_polytope(self.s, self.constraints)

    def surface_input(self) -> surface.SurfaceInput:
        return surface.SurfaceInput(self.polynomial(), self.polytope())


def _rational(v, where):
    if isinstance(v, bool):
        raise ParseError(f"{where}: expected a rational number, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"{where}: expected an integer or a 'p/q' string, got {v!r}")


def _integer(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer, got {v!r}")
    return v


def parse_job(doc) -> JobSpec:
    """Build a :class:`JobSpec` from a decoded JSON object."""
    if not isinstance(doc, dict):
        raise ParseError("job must be a JSON object")
    for key in ("s", "f", "polytope"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    s = _integer(doc["s"], "s")
    f = doc["f"]
    if not isinstance(f, dict) or len(f) != 1 or not ({"roots", "coeffs"} & set(f)):
        raise ParseError("f must be an object with exactly one of 'roots' or 'coeffs'")
    if "roots" in f:
        mode = "roots"
        if not isinstance(f["roots"], list):
            raise ParseError("f.roots must be a list of [alpha, beta] pairs")
        data = []
        for k, pair in enumerate(f["roots"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"f.roots[{k}] must be a pair [alpha, beta]")
            data.append((_rational(pair[0], f"f.roots[{k}][0]"), _integer(pair[1], f"f.roots[{k}][1]")))
        data = tuple(data)
    else:
        mode = "coeffs"
        if not isinstance(f["coeffs"], list):
            raise ParseError("f.coeffs must be a list, constant term first")
        data = tuple(_rational(c, f"f.coeffs[{k}]") for k, c in enumerate(f["coeffs"]))
    poly = doc["polytope"]
    if not isinstance(poly, list):
        raise ParseError("polytope must be a list of {point, level} objects")
    cons = []
    for k, item in enumerate(poly):
        if not isinstance(item, dict) or "point" not in item or "level" not in item:
            raise ParseError(f"polytope[{k}] must have keys 'point' and 'level'")
        pt = item["point"]
        if not isinstance(pt, list) or len(pt) != 3:
            raise ParseError(f"polytope[{k}].point must be [a, b, c]")
        cons.append((tuple(_integer(x, f"polytope[{k}].point") for x in pt),
                     _integer(item["level"], f"polytope[{k}].level")))
    dilate = _integer(doc.get("dilate", 1), "dilate")
    if dilate < 1:
        raise ParseError("dilate must be a positive integer")
    cons = tuple((pt, dilate * lvl) for pt, lvl in cons)
    analyses = doc.get("analyses", ["all"])
    if not isinstance(analyses, list) or not all(isinstance(a, str) for a in analyses):
        raise ParseError("analyses must be a list of names")
    return JobSpec(s=s, f_mode=mode, f_data=data, constraints=cons,
                   analyses=_resolve_analyses(analyses))


def _resolve_analyses(names):
    unknown = [a for a in names if a != "all" and a not in ANALYSES]
    if unknown:
        raise ParseError(f"unknown analyses {unknown}; choose from {list(ANALYSES) + ['all']}")
    if "all" in names:
        return ANALYSES
    return tuple(a for a in ANALYSES if a in names)


# ---------------------------------------------------------------------------
# serialization

def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [_jsonable(x) for x in v]
        return sorted(items, key=json.dumps) if isinstance(v, (set, frozenset)) else items
    return v


def dumps(report) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def _matrix(m):
    return [[str(x) for x in row] for row in m]


def _face(face):
    if face.is_divisor:
        return {"kind": "divisor", "divisor": f"D{face.index + 1}"}
    return {"kind": "nodal", "point": list(face.point.chart1)}


# ---------------------------------------------------------------------------
# sections

def _echo(job, P):
    if job.f_mode == "roots":
        f = {"roots": [[str(a), b] for a, b in job.f_data]}
    else:
        f = {"coeffs": [str(c) for c in job.f_data]}
    return {
        "s": job.s,
        "f": f,
        "polytope": [{"point": list(c.point.as_tuple()), "level": c.level} for c in P.constraints],
        "user_order": [k + 1 for k in P.user_order],
        "analyses": list(job.analyses),
    }


def _charts(P):
    sink, source = sink_source(P)
    out = {}
    for k in (1, 2):
        poly = P.chart(k)
        out[f"chart{k}"] = {
            "vertices": [list(v) for v in poly.vertices],
            "lattice_points": len(poly.lattice_points),
            "facets": {f"D{i + 1}": list(e) for i, e in enumerate(P.facet_map[k])},
        }
    out["pl_vertices"] = [list(v.chart1) for v in pl_vertices(P)]
    out["sink"] = _face(sink)
    out["source"] = _face(source)
    return out


def _moduli(f, warnings):
    out = {
        "polynomial": str(f),
        "degree": f.s,
        "gamma": detrop.gamma(f),
        "roots": [{"label": r.label, "multiplicity": r.multiplicity,
                   "value": r.value if r.is_rational else None,
                   "defining_factor": None if r.is_rational else [str(c) for c in r.defining_poly]}
                  for r in f.roots],
    }
    try:
        nf = detrop.normal_form(f)
        out["normal_form"] = {"b": list(nf.b), "lam": nf.lam, "c": nf.c}
    except NoRationalScaling as exc:
        out["normal_form"] = None
        warnings.append(f"moduli: {exc}")
    group, exact = detrop.aut_normalized(f)
    out["automorphisms"] = {"elements": [[g.eps, g.j] for g in group], "order": len(group),
                            "exact": exact}
    out["interior_curves"] = [{"curve": f"C{c.index}", "locus": c.locus}
                              for c in detrop.interior_curves(f)]
    out["interior_singularities"] = [{"root": str(r), "type": t, "point": [str(x) for x in pt]}
                                     for r, t, pt in detrop.interior_singularities(f)]
    if f.has_symbolic_roots:
        warnings.append("symbolic coefficients: f has irrational roots, carried as labels")
    return out


def _classgroup(inp):
    cg = surface.class_group(inp)
    aff = surface.class_group_affine(inp.f)
    return {
        "generators": list(cg.labels),
        "relations": [list(r) for r in cg.relations],
        "invariant_factors": list(cg.snf.invariant_factors),
        "free_rank": cg.free_rank,
        "torsion": list(cg.torsion),
        "group": cg.describe(),
        "rho": cg.rho,
        "affine": aff.describe(),
    }


def _cox(inp):
    cox = surface.cox_presentation(inp)
    return {
        "generators": list(cox.generators),
        "degrees": {g: list(d) for g, d in zip(cox.generators, cox.degrees)},
        "relations": [str(r) for r in cox.relations],
        "symbolic": cox.symbolic,
        "dimension": cox.is_complete_intersection_count,
    }


def _complexity(inp):
    rep = surface.complexity(inp)
    return {"complexity": rep.complexity, "rho": rep.rho, "n_boundary": rep.n_boundary,
            "cross_check": rep.cross_check}


def _toricity(inp, errors):
    v = surface.toricity(inp)
    out = {"criterion": v.criterion, "oracle": v.oracle, "agree": v.agree,
           "eliminated": [f"w{i + 1}" for i in v.eliminated], "reading": v.note,
           "toric": v.criterion if v.agree else None}
    if not v.agree:
        errors.append(f"CriterionOracleMismatch: {v.mismatch_message()}")
    return out


def _singularities(inp):
    rep = surface.boundary_report(inp)
    return {
        "boundary": [{"vertex": list(b.point.chart1), "chart": b.chart, "type": b.describe(),
                      "r": b.r, "a": b.a, "pl_vertex": b.pl_vertex, "note": b.note}
                     for b in surface.boundary_singularities(inp)],
        "interior": [{"root": str(r), "type": t} for r, t, _ in
                     detrop.interior_singularities(inp.f)],
        "components": [{"label": c["label"], "point": list(c["point"]), "level": c["level"],
                        "input_position": c["input_position"], "tags": c["tags"]}
                       for c in rep["components"]],
        "curves_meeting_sink": rep["curves_meeting_sink"],
        "curves_meeting_source": rep["curves_meeting_source"],
        "smooth_along_boundary": rep["smooth_along_boundary"],
        "gorenstein_along_boundary": rep["gorenstein_along_boundary"],
        "log_calabi_yau": rep["log_calabi_yau"],
        "boundary_supports_ample": rep["boundary_supports_ample"],
        "advisories": rep["advisories"],
    }


def _degeneration(inp, warnings):
    out = {"fibers": {}}
    for k in (1, 2):
        data, split = dg.toric_fiber(inp.P, k)
        out["fibers"][f"chart{k}"] = {
            "rays": [list(r) for r in data.rays],
            "self_intersections": [str(x) for x in data.self_intersections],
            "cone_multiplicities": list(data.cone_multiplicities),
            "smooth": data.smooth,
            "gorenstein": data.gorenstein,
            "split": {f"D{i + 1}": list(e) for i, e in enumerate(split)},
            "intersection_matrix": _matrix(dg.intersection_matrix(inp, k)),
        }
    out["boundary_intersection_matrix"] = _matrix(dg.boundary_intersection_matrix(inp))
    good = dg.isometric_charts(inp)
    out["isometric_charts"] = list(good)
    if dg.intersection_matrix(inp, 1) != dg.intersection_matrix(inp, 2):
        warnings.append("degeneration: chart intersection matrices differ; only charts "
                        f"{list(good)} reproduce the boundary intersection form")
    models = {}
    for which, m in dg.collinear_blowup_model(inp).items():
        entry = {"divisor": None if m.divisor is None else f"D{m.divisor + 1}",
                 "minus_two_curves": m.minus_two_curves, "advisory": m.advisory or None}
        if m.surface is not None:
            entry["rays"] = [list(r) for r in m.rays]
            entry["divisor_of_ray"] = [f"D{i + 1}" for i in m.divisor_of_ray]
            entry["self_intersections"] = [str(x) for x in m.surface.self_intersections]
        models[which] = entry
    out["toric_models"] = models
    out["divisorial_fan"] = {
        "note": "h0, hinf are the slice maxima of chart 1 and chart 2 (a pinned choice)",
        "rows": [{"b": r.b, "h0": r.h0, "hinf": r.hinf, "h": list(r.h), "sections": r.sections}
                 for r in dg.divisorial_fan_table(inp)],
    }
    return out


def _dual_mutation(P, errors):
    v = dg.dual_mutation_check(P, strict=False)
    if not v.holds:
        errors.append("MutationIdentityFailed: mutated chart-1 dual differs from chart-2 dual")
    verts = lambda poly: [[str(x), str(y)] for x, y in poly.vertices]
    return {"holds": v.holds, "dual1": verts(v.dual1), "dual2": verts(v.dual2),
            "image": verts(v.image), "convention": v.convention}


def _family(inp):
    fam = dg.family_presentation(inp)
    h = dg.hilbert_counts(inp, 4)
    return {
        "relation": fam.relation,
        "generators": {f"{a},{b}": str(m) for (a, b), m in fam.generators.items()},
        "support_matches": {
            "[1:0]": fam.support[(1, 0)] == inp.P.chart1.lattice_points,
            "[0:1]": fam.support[(0, 1)] == inp.P.chart2.lattice_points,
        },
        "hilbert": {"[1:0]": h[(1, 0)], "[0:1]": h[(0, 1)], "[1:1]": h[(1, 1)]},
    }


# ---------------------------------------------------------------------------
# pipeline

def run(job: JobSpec) -> dict:
    """Run the requested analyses; validation errors propagate, cross-check failures are recorded."""
    P = job.polytope()
    f = job.polynomial()
    inp = surface.SurfaceInput(f, P)
    warnings, errors = [], []
    report = {"schema_version": SCHEMA_VERSION, "version": __version__,
              "input": _echo(job, P), "sections": {}}
    sec = report["sections"]
    for name in job.analyses:
        try:
            if name == "validate":
                sec[name] = {"valid": True, "n": P.n, "j": P.j}
            elif name == "charts":
                sec[name] = _charts(P)
            elif name == "moduli":
                sec[name] = _moduli(f, warnings)
            elif name == "classgroup":
                sec[name] = _classgroup(inp)
            elif name == "cox":
                sec[name] = _cox(inp)
            elif name == "complexity":
                sec[name] = _complexity(inp)
            elif name == "toricity":
                sec[name] = _toricity(inp, errors)
            elif name == "singularities":
                sec[name] = _singularities(inp)
            elif name == "degeneration":
                sec[name] = _degeneration(inp, warnings)
            elif name == "dual-mutation":
                sec[name] = _dual_mutation(P, errors)
            elif name == "family":
                sec[name] = _family(inp)
        except InternalInconsistency as exc:
            errors.append(f"{type(exc).__name__}: {exc}")
            sec[name] = None
    warnings.append("inequality orientation: P = {m : p_i(m) >= level_i} with negative levels")
    report["warnings"] = warnings
    report["errors"] = errors
    return report


def render_charts(job: JobSpec) -> str:
    return _render(job.polytope())


def _diagnostic(exc, code):
    return dumps({"schema_version": SCHEMA_VERSION, "version": __version__,
                  "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}})


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="analyze", description=__doc__.splitlines()[0])
    ap.add_argument("file", nargs="?", help="job document (JSON)")
    ap.add_argument("--only", help="comma-separated analyses, overriding the job's list")
    ap.add_argument("--svg", metavar="OUT", help="write both chart polygons as SVG")
    ap.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    ap.add_argument("--stdin", action="store_true", help="read the job from standard input")
    ap.add_argument("--version", action="version",
                    version=f"analyze {__version__} (schema {SCHEMA_VERSION})")
    args = ap.parse_args(argv)
    try:
        if args.stdin == bool(args.file):
            raise ParseError("give exactly one of a job file or --stdin")
        try:
            text = sys.stdin.read() if args.stdin else open(args.file, encoding="utf-8").read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        job = parse_job(doc)
        if args.only:
            job = JobSpec(job.s, job.f_mode, job.f_data, job.constraints,
                          _resolve_analyses([a.strip() for a in args.only.split(",") if a.strip()]))
        report = run(job)
        svg = render_charts(job) if args.svg else None
    except ParseError as exc:
        sys.stderr.write(_diagnostic(exc, EXIT_PARSE))
        return EXIT_PARSE
    except ValidationError as exc:
        sys.stderr.write(_diagnostic(exc, EXIT_VALIDATION))
        return EXIT_VALIDATION
    except InternalInconsistency as exc:
        sys.stderr.write(_diagnostic(exc, EXIT_INTERNAL))
        return EXIT_INTERNAL
    text = dumps(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if svg is not None:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_INTERNAL if report["errors"] else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
