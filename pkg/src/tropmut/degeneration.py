"""Toric degenerations of ``X_f(P)``.

Each chart polygon ``P_k`` gives a toric special fiber ``T(P_k)``. A boundary
divisor ``D_i`` that is not linear in a chart breaks at ``y = 0`` and
degenerates to two toric divisors there; the facet-split map records this.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from . import _poly
from .errors import EmptySlice, InternalInconsistency, MutationIdentityFailed
from .lattice import RationalPolygon, det2, hull2d, polar_dual
from .polyptych import PLPolytope, adapted_monomial, mutate, sink_source
from .surface import SurfaceInput, degree_vectors

__all__ = [
    "ToricSurfaceData",
    "toric_surface",
    "toric_fiber",
    "intersection_matrix",
    "boundary_intersection_matrix",
    "isometric_charts",
    "ToricModel",
    "collinear_blowup_model",
    "FamilyPresentation",
    "family_presentation",
    "hilbert_counts",
    "DualMutationVerdict",
    "combinatorial_mutation",
    "dual_mutation_check",
    "MUTATION_CONVENTION",
    "DivisorialRow",
    "divisorial_fan_table",
    "divisorial_row",
]


# ---------------------------------------------------------------------------
# toric surfaces

@dataclass(frozen=True)
class ToricSurfaceData:
    """Complete fan in the plane given by counterclockwise primitive rays."""

    rays: tuple
    self_intersections: tuple
    cone_multiplicities: tuple

    @property
    def smooth(self):
        return all(m == 1 for m in self.cone_multiplicities)

    @property
    def gorenstein(self):
        # each cone has a linear form equal to 1 on both rays
        for k, u in enumerate(self.rays):
            v = self.rays[(k + 1) % len(self.rays)]
            d = det2(u, v)
            if (v[1] - u[1]) % d or (u[0] - v[0]) % d:
                return False
        return True

    def pairing(self, i, j):
        """Intersection number of the toric divisors of rays ``i`` and ``j``."""
        m = len(self.rays)
        if i == j:
            return self.self_intersections[i]
        if (i + 1) % m == j:
            return Fraction(1, self.cone_multiplicities[i])
        if (j + 1) % m == i:
            return Fraction(1, self.cone_multiplicities[j])
        return Fraction(0)


def toric_surface(rays) -> ToricSurfaceData:
    """Self-intersections ``-det(v-, v+) / (det(v-, v) det(v, v+))`` of a complete fan."""
    rays = tuple(tuple(r) for r in rays)
    m = len(rays)
    mult = tuple(det2(rays[k], rays[(k + 1) % m]) for k in range(m))
    if any(d <= 0 for d in mult):
        raise InternalInconsistency(f"rays {rays} do not form a complete counterclockwise fan")
    selfs = []
    for k in range(m):
        prev, cur, nxt = rays[k - 1], rays[k], rays[(k + 1) % m]
        selfs.append(Fraction(-det2(prev, nxt), mult[k - 1] * mult[k]))
    return ToricSurfaceData(rays=rays, self_intersections=tuple(selfs), cone_multiplicities=mult)


def toric_fiber(P: PLPolytope, chart: int):
    """``(ToricSurfaceData, split)`` for ``T(P_chart)``; ``split[i]`` lists ray indices of ``D_i``."""
    poly = P.chart(chart)
    data = toric_surface(n for n, _ in poly.facets)
    return data, tuple(P.facet_map[chart])


def intersection_matrix(inp, chart: int) -> tuple:
    """``D_i . D_j`` computed on ``T(P_chart)`` with split divisors summed."""
    P = inp.P if isinstance(inp, SurfaceInput) else inp
    data, split = toric_fiber(P, chart)
    n = P.n
    return tuple(tuple(sum((data.pairing(r, t) for r in split[i] for t in split[k]), Fraction(0))
                       for k in range(n)) for i in range(n))


def _nodes(P):
    # consecutive pairs of distinct facet owners around the chart-1 polygon
    poly = P.chart1
    nv = len(poly.vertices)
    out = []
    for e in range(nv):
        i, k = P.edge_owner(1, e - 1 if e else nv - 1), P.edge_owner(1, e)
        if i != k:
            out.append((poly.vertices[e], i, k))
    return out


def isometric_charts(P) -> tuple:
    """Charts whose toric fiber reproduces the boundary intersection form.

    A chart fails when some node on the wall ``y = 0`` joins two facets that
    are both bent in that chart: the toric cone there is not the cone of
    ``X_f(P)``.
    """
    if isinstance(P, SurfaceInput):
        P = P.P
    good = {1, 2}
    for v, i, k in _nodes(P):
        if v[1] != 0:
            continue
        cs = (P.constraints[i].c, P.constraints[k].c)
        if all(c < 0 for c in cs):
            good.discard(1)
        if all(c > 0 for c in cs):
            good.discard(2)
    return tuple(sorted(good))


def boundary_intersection_matrix(inp: SurfaceInput) -> tuple:
    """``D_i . D_j`` on ``X_f(P)`` without passing through a single toric fiber.

    Two boundary components meeting at a node of type ``1/r(1, a)`` meet with
    multiplicity ``1/r``, the cone being read in a chart where both facets
    through the node are linear. Self-intersections then follow from
    ``D_k . div(g) = 0`` for ``g = y`` when ``c_k != 0``, ``g = x2`` at the
    sink and ``g = x1`` at the source.
    """
    P, s = inp.P, inp.P.s
    n = P.n
    M = [[Fraction(0)] * n for _ in range(n)]
    for v, i, k in _nodes(P):
        cs = (P.constraints[i].c, P.constraints[k].c)
        chart = 1
        if v[1] == 0 and not all(c >= 0 for c in cs):
            chart = 2
            if not all(c <= 0 for c in cs):
                raise InternalInconsistency(f"node {v} has no chart with both facets linear")
        poly = P.chart(chart)
        pt = v if chart == 1 else mutate(s, v)
        u, w = poly.normal_cone(pt)
        M[i][k] += Fraction(1, abs(det2(u, w)))
        M[k][i] = M[i][k]
    deg = degree_vectors(inp)
    sink, source = sink_source(P)
    x1 = [sum(b * yk[i] for b, yk in zip(inp.f.betas, deg.y_minus_alpha)) - deg.x[i]
          for i in range(n)]
    for k in range(n):
        if P.constraints[k].c != 0:
            g = deg.y
        elif sink.is_divisor and sink.index == k:
            g = deg.x
        elif source.is_divisor and source.index == k:
            g = x1
        else:
            raise InternalInconsistency(f"horizontal facet D{k + 1} is neither sink nor source")
        M[k][k] = -sum((g[i] * M[i][k] for i in range(n) if i != k), Fraction(0)) / g[k]
    return tuple(tuple(r) for r in M)


# ---------------------------------------------------------------------------
# toric model

def _shear(s, v, sign):
    # S(x, y) = (x, y + s x) and its inverse
    return (v[0], v[1] + sign * s * v[0])


@dataclass(frozen=True)
class ToricModel:
    """Toric model obtained by contracting the interior curves meeting ``face``.

    ``divisor_of_ray[k]`` is the boundary divisor whose image is ray ``k``.
    """

    face: str
    divisor: int | None
    rays: tuple
    divisor_of_ray: tuple
    surface: ToricSurfaceData | None
    minus_two_curves: int
    advisory: str = ""

    def self_intersection(self, i):
        return self.surface.self_intersections[self.divisor_of_ray.index(i)]


def _model_for(P, face, which):
    s = P.s
    if not face.is_divisor:
        return None, (), (
            f"{which} is the nodal point {face.point.chart1}: insert the ray e2 in both "
            f"charts (weighted blow up at the node) before building the toric model")
    poly = P.chart1
    nv = len(poly.vertices)
    owner = [P.edge_owner(1, e) for e in range(nv)]
    rays = [n for n, _ in poly.facets]
    # the arc between the wall y = 0 on the right and the sink (or source)
    upper = which == "sink"
    for e in range(nv):
        v, w = poly.vertices[e], poly.vertices[(e + 1) % nv]
        if rays[e][0] < 0 and (min(v[1], w[1]) >= 0 if upper else max(v[1], w[1]) <= 0):
            rays[e] = _shear(s, rays[e], -1 if upper else 1)
    merged, owners = [], []
    for e in range(nv):
        if merged and merged[-1] == rays[e] and owners[-1] == owner[e]:
            continue
        merged.append(rays[e])
        owners.append(owner[e])
    if len(merged) > 1 and merged[0] == merged[-1] and owners[0] == owners[-1]:
        merged.pop()
        owners.pop()
    return tuple(merged), tuple(owners), ""


def collinear_blowup_model(inp: SurfaceInput) -> dict:
    """Toric models at the sink and at the source.

    The chart-1 fan is unsheared on the right-hand arc between the wall and
    the sink (resp. source), which merges the two rays of the divisor broken
    at the wall.
    """
    P = inp.P
    sink, source = sink_source(P)
    contractions = sum(b - 1 for b in inp.f.betas)
    out = {}
    for which, face in (("sink", sink), ("source", source)):
        rays, owners, advisory = _model_for(P, face, which)
        surface = toric_surface(rays) if rays else None
        out[which] = ToricModel(face=which, divisor=face.index, rays=rays,
                                divisor_of_ray=owners, surface=surface,
                                minus_two_curves=contractions, advisory=advisory)
    return out


# ---------------------------------------------------------------------------
# global family over P^1

@dataclass(frozen=True)
class FamilyPresentation:
    """Generators ``X_{a,b}`` over chart-2 lattice points and the relation over ``[t0:t1]``.

    ``special[(1, 0)]`` maps ``(a, b)`` to the exponent ``(b, e)`` of ``x^b y^e``,
    read back as the chart-1 point ``(-e, b)``; ``special[(0, 1)]`` uses
    ``x^b y^a`` read as the chart-2 point ``(a, b)``.
    """

    generators: dict
    relation: str
    special: dict
    support: dict

    @property
    def n_generators(self):
        return len(self.generators)


def _relation_string(f):
    parts = []
    for r in f.roots:
        alpha = f"({r.value})" if r.is_rational else r.label
        base = f"(tau0*y - tau1*{alpha})"
        parts.append(base if r.multiplicity == 1 else f"{base}^{r.multiplicity}")
    return "x1*x2 - " + "*".join(parts)


def family_presentation(inp: SurfaceInput) -> FamilyPresentation:
    P, s = inp.P, inp.P.s
    gens = {}
    for a, b in sorted(P.chart2.lattice_points):
        gens[(a, b)] = adapted_monomial(2, a, b, s)
    at_10 = {pt: (m.x1 - m.x2, m.y + s * m.x2) for pt, m in gens.items()}
    at_01 = {pt: (m.x1 - m.x2, m.y) for pt, m in gens.items()}
    support = {
        (1, 0): frozenset((-e, b) for b, e in at_10.values()),
        (0, 1): frozenset((e, b) for b, e in at_01.values()),
    }
    if len(set(at_10.values())) != len(gens) or len(set(at_01.values())) != len(gens):
        raise InternalInconsistency("specialized generators collide")
    return FamilyPresentation(generators=gens, relation=_relation_string(inp.f),
                              special={(1, 0): at_10, (0, 1): at_01}, support=support)


def _rank(rows):
    """Rank over Q of integer polynomials given as ``{exponent: coefficient}``.

    Sparse echelon form keyed by the lowest exponent; rows are kept primitive.
    """
    basis = {}
    for row in rows:
        row = {e: c for e, c in row.items() if c}
        while row:
            low = min(row)
            piv = basis.get(low)
            if piv is None:
                basis[low] = row
                break
            a, b = piv[low], row[low]
            out = {}
            for e in row.keys() | piv.keys():
                c = a * row.get(e, 0) - b * piv.get(e, 0)
                if c:
                    out[e] = c
            g = reduce(gcd, out.values(), 0)
            row = {e: c // g for e, c in out.items()} if g > 1 else out
    return len(basis)


def hilbert_counts(inp: SurfaceInput, kmax: int = 4) -> dict:
    """Dimension of the span of ``k``-fold products of generators on three fibers.

    Keys are ``(1, 0)``, ``(0, 1)`` and ``(1, 1)``; values list the counts for
    ``k = 1..kmax``. On the general fiber ``x2 = f(y) / x1`` so a product is
    ``x1^B y^A f^m``; dimensions come from exact ranks over Q per ``B``.
    """
    fam = family_presentation(inp)
    # a primitive integer multiple of f: rescaling rows does not change ranks
    den = reduce(lcm, (c.denominator for c in inp.f.coeffs), 1)
    fint = [int(c * den) for c in inp.f.coeffs]
    # triples (A, B, m) for generator x1^b y^a (b >= 0) or x2^-b y^a
    gens = [(m.y, m.x1 - m.x2, m.x2) for m in fam.generators.values()]
    counts = {(1, 0): [], (0, 1): [], (1, 1): []}
    layer = {(0, 0, 0)}
    fpow = {0: (1,)}
    for _ in range(kmax):
        layer = {(t[0] + g[0], t[1] + g[1], t[2] + g[2]) for t in layer for g in gens}
        counts[(0, 1)].append(len({(A, B) for A, B, m in layer}))
        counts[(1, 0)].append(len({(A + inp.P.s * m, B) for A, B, m in layer}))
        by_b = {}
        for A, B, m in layer:
            by_b.setdefault(B, []).append((A, m))
        total = 0
        for B, items in by_b.items():
            rows = []
            for A, m in items:
                if m not in fpow:
                    fpow[m] = tuple(int(c) for c in _poly.power(fint, m))
                rows.append({A + e: c for e, c in enumerate(fpow[m])})
            total += _rank(rows)
        counts[(1, 1)].append(total)
    return counts


# ---------------------------------------------------------------------------
# combinatorial mutation of the duals

MUTATION_CONVENTION = (
    "width vector e1, factor conv{(0,0),(0,s)}: the slice at height h = u1 keeps its lower "
    "end and moves its upper end by s*h (h < 0 requires the slice to have length >= s|h|); "
    "the chart-2 dual is compared after the reflection (u1, u2) -> (-u1, u2) that relates "
    "the chart-2 coordinates to the sheared chart-1 coordinates")


def _slice(poly: RationalPolygon, h):
    pts = []
    vs = poly.vertices
    for k, v in enumerate(vs):
        w = vs[(k + 1) % len(vs)]
        if v[0] == h:
            pts.append(v[1])
        if (v[0] - h) * (w[0] - h) < 0:
            t = (h - v[0]) / (w[0] - v[0])
            pts.append(v[1] + t * (w[1] - v[1]))
    return min(pts), max(pts)


def combinatorial_mutation(poly: RationalPolygon, s: int, sign: int = 1) -> RationalPolygon:
    """Mutation with width vector ``e1`` and factor ``conv{(0,0),(0,s)}``.

    With ``sign = -1`` the factor is ``conv{(0,0),(0,-s)}``.
    """
    heights = sorted({v[0] for v in poly.vertices} | {Fraction(0)})
    heights = [h for h in heights if heights[0] <= h <= heights[-1]]
    pts = []
    for h in heights:
        lo, hi = _slice(poly, h)
        if sign > 0:
            hi = hi + s * h
        else:
            lo = lo - s * h
        if hi < lo:
            raise MutationIdentityFailed(
                f"slice at height {h} is shorter than the factor; mutation is undefined")
        pts.extend([(h, lo), (h, hi)])
    return hull2d(pts)


def _reflect(poly):
    return hull2d((-x, y) for x, y in poly.vertices)


@dataclass(frozen=True)
class DualMutationVerdict:
    holds: bool
    dual1: RationalPolygon
    dual2: RationalPolygon
    image: RationalPolygon
    convention: str = MUTATION_CONVENTION


def dual_mutation_check(P, strict: bool = True) -> DualMutationVerdict:
    """Check that the mutation of the chart-1 dual is the chart-2 dual."""
    if isinstance(P, SurfaceInput):
        P = P.P
    d1, d2 = polar_dual(P.chart1), polar_dual(P.chart2)
    image = _reflect(combinatorial_mutation(d1, P.s))
    ok = image == d2
    if strict and not ok:
        raise MutationIdentityFailed(
            f"mutated chart-1 dual {image.vertices} differs from chart-2 dual {d2.vertices}")
    return DualMutationVerdict(ok, d1, d2, image)


# ---------------------------------------------------------------------------
# divisorial fan coefficients

@dataclass(frozen=True)
class DivisorialRow:
    """Coefficients at x-degree ``b``; ``h0`` and ``hinf`` are the slice maxima in the two charts."""

    b: int
    h0: int
    hinf: int
    h: tuple
    sections: int

    @property
    def identity_holds(self):
        return self.h0 + self.hinf + sum(self.h) + 1 == self.sections


def divisorial_row(inp: SurfaceInput, b: int) -> DivisorialRow:
    P = inp.P
    s1 = [x for x, y in P.chart1.lattice_points if y == b]
    s2 = [x for x, y in P.chart2.lattice_points if y == b]
    if not s2:
        raise EmptySlice(f"x-degree {b} is outside the projection of the polytope")
    row = DivisorialRow(b=b, h0=max(s1), hinf=max(s2),
                        h=tuple(-beta * min(0, b) for beta in inp.f.betas), sections=len(s2))
    if not row.identity_holds:
        raise InternalInconsistency(f"section-count identity fails at b = {b}")
    return row


def divisorial_fan_table(inp: SurfaceInput) -> tuple:
    ys = [y for _, y in inp.P.chart2.vertices]
    return tuple(divisorial_row(inp, b) for b in range(min(ys), max(ys) + 1))
