"""Invariants of the projective surface ``X_f(P)`` and its boundary.

Divisor vectors are indexed ``(D_1, ..., D_n, C_1, ..., C_2g)`` where ``D_i`` is
the boundary component of the ``i``-th constraint in canonical order and
``C_{2i-1} = {x1 = 0, y = alpha_i}``, ``C_{2i} = {x2 = 0, y = alpha_i}``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from functools import reduce

from .detrop import FactoredPoly
from .errors import CriterionOracleMismatch, DegreeMismatch, InternalInconsistency, ValidationError
from .lattice import smith_normal_form, SNFResult, cyclic_quotient_type
from .polyptych import PLPolytope, PLPoint, mutate, pl_vertices, sink_source

__all__ = [
    "SurfaceInput",
    "DegreeVectors",
    "degree_vectors",
    "ClassGroupPresentation",
    "class_group",
    "AffineClassGroup",
    "class_group_affine",
    "CoxRelation",
    "CoxPresentation",
    "cox_presentation",
    "ComplexityReport",
    "complexity",
    "ToricityVerdict",
    "toricity",
    "is_toric",
    "BoundarySingularity",
    "boundary_singularities",
    "boundary_report",
    "TORICITY_READING",
]

TORICITY_READING = (
    "criterion read as: gamma = 1 and (exactly one c_i = +1 with all other c_i <= 0, "
    "or exactly one c_i = -1 with all other c_i >= 0); the Cox-ring elimination is "
    "kept as an independent check")


@dataclass(frozen=True)
class SurfaceInput:
    f: FactoredPoly
    P: PLPolytope

    def __post_init__(self):
        if self.f.s != self.P.s:
            raise DegreeMismatch(f"deg f = {self.f.s} but the shear parameter is s = {self.P.s}")

    @property
    def n(self):
        return self.P.n

    @property
    def gamma(self):
        return self.f.gamma

    @property
    def labels(self):
        return tuple(f"D{i + 1}" for i in range(self.n)) + tuple(
            f"C{k + 1}" for k in range(2 * self.gamma))


# ---------------------------------------------------------------------------
# divisors of x, y, y - alpha

@dataclass(frozen=True)
class DegreeVectors:
    x: tuple
    y: tuple
    y_minus_alpha: tuple


def degree_vectors(inp: SurfaceInput) -> DegreeVectors:
    """Orders of vanishing of ``x = x2``, ``y`` and ``y - alpha_k`` along all divisors."""
    n, g, j = inp.n, inp.gamma, inp.P.j
    pts = inp.P.points
    x = [p.a for p in pts] + [0] * (2 * g)
    for i, beta in enumerate(inp.f.betas):
        x[n + 2 * i + 1] = beta
    y = [-p.c for p in pts] + [0] * (2 * g)
    yk = []
    for k in range(g):
        v = [-pts[i].c if i < j else 0 for i in range(n)] + [0] * (2 * g)
        v[n + 2 * k] = v[n + 2 * k + 1] = 1
        yk.append(tuple(v))
    return DegreeVectors(tuple(x), tuple(y), tuple(yk))


# ---------------------------------------------------------------------------
# class group

@dataclass(frozen=True)
class ClassGroupPresentation:
    """``Z<labels> / rowspace(relations)`` with its Smith normal form."""

    labels: tuple
    relations: tuple
    snf: SNFResult

    @property
    def rank(self):
        return self.snf.rank

    @property
    def free_rank(self):
        return self.snf.free_rank

    @property
    def torsion(self):
        return self.snf.torsion

    @property
    def rho(self):
        return self.free_rank

    def describe(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def class_of(self, v):
        """Coordinates of the class of ``v``: torsion residues then free part."""
        w = [sum(v[i] * self.snf.right[i][k] for i in range(len(v))) for k in range(len(v))]
        facs = self.snf.invariant_factors
        tors = tuple(w[k] % d for k, d in enumerate(facs) if d > 1)
        return tors + tuple(w[len(facs):])


def _relation_rows(inp):
    n, g, j = inp.n, inp.gamma, inp.P.j
    pts = inp.P.points
    size = n + 2 * g
    r0 = [p.c for p in pts] + [0] * (2 * g)
    r1 = [p.a for p in pts] + [0] * (2 * g)
    for i, beta in enumerate(inp.f.betas):
        r1[n + 2 * i + 1] += beta
    rows = [tuple(r0), tuple(r1)]
    for k in range(g):
        r = [0] * size
        for i in range(j):
            r[i] = -pts[i].c
        r[n + 2 * k] += 1
        r[n + 2 * k + 1] += 1
        rows.append(tuple(r))
    return tuple(rows)


def class_group(inp: SurfaceInput) -> ClassGroupPresentation:
    rows = _relation_rows(inp)
    snf = smith_normal_form(rows)
    if snf.rank != inp.gamma + 2:
        raise InternalInconsistency(
            f"relation matrix has rank {snf.rank}, expected gamma + 2 = {inp.gamma + 2}")
    return ClassGroupPresentation(labels=inp.labels, relations=rows, snf=snf)


@dataclass(frozen=True)
class AffineClassGroup:
    free_rank: int
    torsion_order: int
    snf: SNFResult

    def describe(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        if self.torsion_order > 1:
            parts.append(f"Z/{self.torsion_order}")
        return " + ".join(parts) or "0"


def class_group_affine(f) -> AffineClassGroup:
    """``Cl(U_f) = Z^(gamma-1) + Z/gcd(betas)``, cross-checked against an SNF."""
    betas = f.betas if isinstance(f, FactoredPoly) else tuple(f)
    g = len(betas)
    rows = []
    for i in range(g):
        r = [0] * (2 * g)
        r[2 * i] = r[2 * i + 1] = 1
        rows.append(r)
    rows.append([betas[i // 2] if i % 2 == 0 else 0 for i in range(2 * g)])
    snf = smith_normal_form(rows)
    d = reduce(gcd, betas)
    if snf.free_rank != g - 1 or snf.torsion != ((d,) if d > 1 else ()):
        raise InternalInconsistency(
            f"affine class group formula Z^{g - 1} + Z/{d} disagrees with SNF "
            f"(free rank {snf.free_rank}, torsion {snf.torsion})")
    return AffineClassGroup(free_rank=g - 1, torsion_order=d, snf=snf)


# ---------------------------------------------------------------------------
# Cox ring

def _fmt_coeff(c):
    return str(c)


def _fmt_monomial(exps):
    parts = [f"w{i + 1}" if e == 1 else f"w{i + 1}^{e}" for i, e in sorted(exps.items()) if e]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class CoxRelation:
    """``w_a * w_b + alpha * M_plus - M_minus`` (variables 0-indexed)."""

    pair: tuple
    alpha: object
    plus: dict
    minus: dict

    def terms(self):
        """Polynomial as ``{exponent dict (frozen): coefficient}``."""
        return [({self.pair[0]: 1, self.pair[1]: 1}, Fraction(1)),
                (dict(self.plus), self.alpha),
                (dict(self.minus), Fraction(-1))]

    def __str__(self):
        head = f"w{self.pair[0] + 1}*w{self.pair[1] + 1}"
        mp, mm = _fmt_monomial(self.plus), _fmt_monomial(self.minus)
        a = self.alpha
        if isinstance(a, Fraction):
            if a == 1:
                mid = f" + {mp}"
            elif a == -1:
                mid = f" - {mp}"
            elif a > 0:
                mid = f" + {a}*{mp}"
            else:
                mid = f" - {-a}*{mp}"
        else:
            mid = f" + {a}*{mp}"
        return head + mid + f" - {mm}"


@dataclass(frozen=True)
class CoxPresentation:
    generators: tuple
    degrees: tuple
    relations: tuple
    symbolic: bool
    class_group: ClassGroupPresentation

    @property
    def is_complete_intersection_count(self):
        return len(self.generators) - len(self.relations)


def cox_presentation(inp: SurfaceInput) -> CoxPresentation:
    cg = class_group(inp)
    n, g, j = inp.n, inp.gamma, inp.P.j
    size = n + 2 * g
    pts = inp.P.points
    unit = lambda k: tuple(int(i == k) for i in range(size))
    degrees = tuple(cg.class_of(unit(k)) for k in range(size))
    plus = {i: pts[i].c for i in range(j) if pts[i].c}
    minus = {i: -pts[i].c for i in range(j, n)}
    rels = []
    for k, root in enumerate(inp.f.roots):
        alpha = root.value if root.is_rational else root.label
        rels.append(CoxRelation(pair=(n + 2 * k, n + 2 * k + 1), alpha=alpha,
                                plus=plus, minus=minus))
    # Cl-homogeneity of every relation
    for rel in rels:
        classes = set()
        for exps, _ in rel.terms():
            v = [0] * size
            for i, e in exps.items():
                v[i] += e
            classes.add(cg.class_of(v))
        if len(classes) != 1:
            raise InternalInconsistency(f"Cox relation {rel} is not homogeneous")
    if size - len(rels) != n + g:
        raise InternalInconsistency("Cox presentation fails the complete-intersection count")
    return CoxPresentation(generators=tuple(f"w{i + 1}" for i in range(size)),
                           degrees=degrees, relations=tuple(rels),
                           symbolic=inp.f.has_symbolic_roots, class_group=cg)


# ---------------------------------------------------------------------------
# complexity

@dataclass(frozen=True)
class ComplexityReport:
    complexity: int
    rho: int
    n_boundary: int

    @property
    def cross_check(self):
        return 2 + self.rho - self.n_boundary


def complexity(inp: SurfaceInput) -> ComplexityReport:
    """Number of distinct roots, checked against ``dim + rho - |B|``."""
    if inp.n < 2:
        raise InternalInconsistency("boundary must have at least two components")
    cg = class_group(inp)
    rep = ComplexityReport(complexity=inp.gamma, rho=cg.rho, n_boundary=inp.n)
    if rep.cross_check != rep.complexity:
        raise InternalInconsistency(
            f"complexity mismatch: gamma = {inp.gamma}, 2 + rho - n = {rep.cross_check}")
    return rep


# ---------------------------------------------------------------------------
# toricity

@dataclass(frozen=True)
class ToricityVerdict:
    criterion: bool
    oracle: bool
    eliminated: tuple
    note: str = TORICITY_READING

    @property
    def agree(self):
        return self.criterion == self.oracle

    @property
    def toric(self):
        if not self.agree:
            raise CriterionOracleMismatch(self.mismatch_message(), self)
        return self.criterion

    def mismatch_message(self):
        return (f"toricity criterion says {self.criterion}, Cox-ring oracle says {self.oracle} "
                f"(oracle eliminates {', '.join(f'w{i + 1}' for i in self.eliminated) or 'nothing'})"
                f"; {self.note}")


def toricity_criterion(inp: SurfaceInput) -> bool:
    if inp.gamma != 1:
        return False
    cs = [p.c for p in inp.P.points]
    for sign in (1, -1):
        hits = [c for c in cs if c == sign]
        others_ok = all(c * sign <= 0 for c in cs if c != sign)
        if len(hits) == 1 and others_ok:
            return True
    return False


def cox_elimination(cox: CoxPresentation):
    """Eliminate variables that enter relations linearly.

    Returns the 0-based indices eliminated. The Cox ring is positively graded,
    so it is a polynomial ring exactly when the linear parts of the relations
    (their differentials at the origin) are independent, and then every
    relation removes one variable. Symbolic roots are replaced by distinct
    integers, which is enough because only their distinctness enters the rank.
    """
    rows = []
    for k, rel in enumerate(cox.relations):
        row = {}
        for exps, coeff in rel.terms():
            if sum(exps.values()) == 1:
                (var, _), = exps.items()
                if not isinstance(coeff, Fraction):
                    coeff = Fraction(k + 2)
                row[var] = row.get(var, 0) + coeff
        rows.append(row)
    eliminated = []
    rows = [dict(r) for r in rows]
    for r in range(len(rows)):
        pivot = next((v for v in sorted(rows[r]) if rows[r][v] != 0), None)
        if pivot is None:
            return tuple(eliminated), False
        eliminated.append(pivot)
        for t in range(r + 1, len(rows)):
            if rows[t].get(pivot):
                f = rows[t][pivot] / rows[r][pivot]
                for v, cf in rows[r].items():
                    rows[t][v] = rows[t].get(v, 0) - f * cf
    return tuple(eliminated), True


def toricity(inp: SurfaceInput) -> ToricityVerdict:
    """Both certificates, without raising on disagreement."""
    eliminated, poly = cox_elimination(cox_presentation(inp))
    return ToricityVerdict(criterion=toricity_criterion(inp), oracle=poly,
                           eliminated=eliminated if poly else ())


def is_toric(inp: SurfaceInput) -> bool:
    """Toricity verdict; raises :class:`CriterionOracleMismatch` if the two routes differ."""
    return toricity(inp).toric


# ---------------------------------------------------------------------------
# boundary

@dataclass(frozen=True)
class BoundarySingularity:
    point: PLPoint
    chart: int
    r: int
    a: int
    pl_vertex: bool
    note: str = ""

    @property
    def smooth(self):
        return self.r == 1

    def describe(self):
        return "smooth" if self.smooth else f"1/{self.r}(1,{self.a})"


def _adjacent_facets(P, chart, v):
    poly = P.chart(chart)
    k = poly.vertex_index(v)
    return P.edge_owner(chart, k - 1 if k else len(poly.vertices) - 1), P.edge_owner(chart, k)


def boundary_singularities(P) -> list:
    """Cyclic quotient type at every vertex of ``P``; non-PL vertices are smooth."""
    if isinstance(P, SurfaceInput):
        P = P.P
    out = []
    pls = set(pl_vertices(P))
    for pt in sorted(pls):
        chart, note = 1, ""
        if pt.y == 0:
            cs = [P.constraints[i].c for i in _adjacent_facets(P, 1, pt.chart1)]
            if all(c >= 0 for c in cs):
                chart = 1
            elif all(c <= 0 for c in cs):
                chart = 2
            else:
                note = "vertex on the mutation wall with facets linear in different charts"
        poly = P.chart(chart)
        r, a = cyclic_quotient_type(*poly.normal_cone(pt.in_chart(chart)))
        out.append(BoundarySingularity(pt, chart, r, a, True, note))
    for chart in (1, 2):
        for v in P.chart(chart).vertices:
            pt = PLPoint(P.s, v if chart == 1 else mutate(P.s, v))
            if pt not in pls:
                out.append(BoundarySingularity(pt, chart, 1, 0, False,
                                               "not a PL vertex: smooth point of X_f(P)"))
    return out


def boundary_report(inp: SurfaceInput) -> dict:
    """Boundary components, sink/source incidence and regularity flags."""
    P = inp.P
    sink, source = sink_source(P)
    comps = []
    for i, con in enumerate(P.constraints):
        tags = []
        if sink.is_divisor and sink.index == i:
            tags.append("sink")
        if source.is_divisor and source.index == i:
            tags.append("source")
        edges = {}
        for chart in (1, 2):
            poly = P.chart(chart)
            nv = len(poly.vertices)
            edges[chart] = [(poly.vertices[e], poly.vertices[(e + 1) % nv])
                            for e in P.facet_map[chart][i]]
        comps.append({
            "label": f"D{i + 1}",
            "point": con.point.as_tuple(),
            "level": con.level,
            "input_position": P.user_order[i] + 1,
            "tags": tags,
            "chart1_edges": edges[1],
            "chart2_edges": edges[2],
        })
    curves = [f"C{k + 1}" for k in range(2 * inp.gamma)]
    report = {
        "components": comps,
        "sink": sink,
        "source": source,
        "curves_meeting_sink": curves[0::2],
        "curves_meeting_source": curves[1::2],
        "smooth_along_boundary": P.chart1.is_smooth or P.chart2.is_smooth,
        "gorenstein_along_boundary": P.chart1.is_gorenstein or P.chart2.is_gorenstein,
        "log_calabi_yau": True,
        "boundary_supports_ample": True,
        "advisories": [],
    }
    for name, face in (("sink", sink), ("source", source)):
        if not face.is_divisor:
            report["advisories"].append(
                f"{name} is the nodal point {face.point.chart1}: insert the ray e2 in both "
                f"charts (weighted blow up at the node) before building the toric model")
    return report
