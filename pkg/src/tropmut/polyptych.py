"""The polyptych lattice ``M_s`` with one shear, and its PL polytopes.

A point of ``M_s`` is stored by its chart-1 coordinates ``(x, y)``; the chart-2
coordinates are ``mutate(s, (x, y))``. Both charts share the second
coordinate, so ``y`` is chart independent.

A polytope is cut out by tropical points ``p_i = (a_i, b_i, c_i)`` and negative
levels ``l_i`` as ``{m : p_i(m) >= l_i}``. Each tropical point is concave in
both charts, so each chart image is an intersection of ordinary half-planes:

* chart 1: ``c x + a y >= l`` and ``c x - b y >= l``
* chart 2: ``-c x' + a y >= l`` and ``-c x' + (c s - b) y >= l``
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple

from .errors import (InvalidTropicalPoint, NonConvexChartImage, NonIntegralVertex,
                     NonNegativeLevel, NonPrimitiveTropicalPoint, RedundantConstraint, Unbounded,
                     ValidationError)
from .lattice import LatticePolygon, half_plane_polygon, hull2d

__all__ = [
    "mutate",
    "TropicalPoint",
    "Constraint",
    "PLPoint",
    "Face",
    "PLPolytope",
    "eval_tropical",
    "build_polytope",
    "pl_vertices",
    "sink_source",
    "Monomial",
    "adapted_monomial",
]


def _check_s(s):
    if not isinstance(s, int) or s < 1:
        raise ValidationError(f"shear parameter must be a positive integer, got {s!r}")


def mutate(s: int, pt, direction=(1, 2)):
    """Apply the chart change ``(x, y) -> (-x, y)`` for ``y >= 0``, ``(sy - x, y)`` for ``y <= 0``.

    The map is an involution, so both directions use the same formula.
    """
    if tuple(direction) not in ((1, 2), (2, 1)):
        raise ValueError("direction must be (1, 2) or (2, 1)")
    x, y = pt
    if y >= 0:
        return (-x, y)
    return (s * y - x, y)


@dataclass(frozen=True, order=True)
class TropicalPoint:
    a: int
    b: int
    c: int

    def is_valid(self, s):
        return self.a + self.b == min(s * self.c, 0)

    def validate(self, s):
        if not self.is_valid(s):
            raise InvalidTropicalPoint(
                f"tropical point {self.as_tuple()} violates a + b = min(s c, 0) for s = {s}")
        if gcd(self.a, self.b, self.c) != 1:
            raise NonPrimitiveTropicalPoint(
                f"tropical point {self.as_tuple()} is not primitive (gcd of a, b, c is "
                f"{gcd(self.a, self.b, self.c)})")
        return self

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def chart_normals(self, chart, s):
        """Inner normals of the two half-planes in the given chart (upper, lower)."""
        a, b, c = self.a, self.b, self.c
        if chart == 1:
            return (c, a), (c, -b)
        return (-c, a), (-c, c * s - b)

    def linear_in(self, chart, s):
        up, low = self.chart_normals(chart, s)
        return up == low


def eval_tropical(p: TropicalPoint, pt) -> int:
    """Value of ``p`` at a chart-1 point."""
    x, y = pt
    if y >= 0:
        return p.c * x + p.a * y
    return p.c * x - p.b * y


def _eval_chart(p, chart, s, pt):
    up, low = p.chart_normals(chart, s)
    n = up if pt[1] >= 0 else low
    return n[0] * pt[0] + n[1] * pt[1]


@dataclass(frozen=True)
class Constraint:
    point: TropicalPoint
    level: int

    @property
    def c(self):
        return self.point.c


@dataclass(frozen=True, order=True)
class PLPoint:
    """A point of ``M_s`` given by chart-1 coordinates."""

    s: int
    chart1: tuple

    @property
    def chart2(self):
        return mutate(self.s, self.chart1)

    @property
    def y(self):
        return self.chart1[1]

    def in_chart(self, chart):
        return self.chart1 if chart == 1 else self.chart2


@dataclass(frozen=True)
class Face:
    """Sink or source: either a boundary divisor (``kind == 'divisor'``) or a nodal vertex."""

    kind: str
    index: int | None = None
    point: PLPoint | None = None

    @property
    def is_divisor(self):
        return self.kind == "divisor"


@dataclass(frozen=True, eq=False)
class PLPolytope:
    """Validated polytope in ``M_s``.

    ``constraints`` are in canonical order (``c >= 0`` first, stable);
    ``user_order[k]`` is the position in the caller's list of canonical
    constraint ``k``. ``facet_map[chart][i]`` lists the edge indices of the
    chart polygon that make up facet ``i``.
    """

    s: int
    constraints: tuple
    user_order: tuple
    chart1: LatticePolygon
    chart2: LatticePolygon
    facet_map: dict = field(repr=False)

    @property
    def n(self):
        return len(self.constraints)

    @property
    def j(self):
        """Number of constraints with ``c >= 0``."""
        return sum(1 for con in self.constraints if con.c >= 0)

    @property
    def points(self):
        return tuple(con.point for con in self.constraints)

    @property
    def levels(self):
        return tuple(con.level for con in self.constraints)

    def chart(self, k):
        return self.chart1 if k == 1 else self.chart2

    def edge_owner(self, chart, edge):
        for i, edges in enumerate(self.facet_map[chart]):
            if edge in edges:
                return i
        raise KeyError(edge)

    def dilate(self, k):
        return build_polytope(self.s, [(con.point, k * con.level) for con in self.constraints])

    def lattice_points(self):
        """Lattice points as :class:`PLPoint` (from chart 1)."""
        return frozenset(PLPoint(self.s, p) for p in self.chart1.lattice_points)


def _coerce_constraint(item):
    if isinstance(item, Constraint):
        return item
    point, level = item
    if not isinstance(point, TropicalPoint):
        point = TropicalPoint(*map(int, point))
    return Constraint(point, int(level))


def _edges_owned(p, level, chart, s, poly):
    owned = []
    vs = poly.vertices
    for k, v in enumerate(vs):
        w = vs[(k + 1) % len(vs)]
        checks = [v, w]
        if (v[1] < 0 < w[1]) or (w[1] < 0 < v[1]):
            t = Fraction(-v[1], w[1] - v[1])
            checks.append((v[0] + t * (w[0] - v[0]), 0))
        if all(_eval_chart(p, chart, s, q) == level for q in checks):
            owned.append(k)
    return tuple(owned)


def build_polytope(s: int, constraints: Iterable) -> PLPolytope:
    """Validate constraints and compute both chart images and the facet map."""
    _check_s(s)
    user = [_coerce_constraint(item) for item in constraints]
    for k, con in enumerate(user):
        if con.level >= 0:
            raise NonNegativeLevel(f"constraint {k + 1} has level {con.level}; levels must be < 0")
        con.point.validate(s)
    order = sorted(range(len(user)), key=lambda k: user[k].c < 0)
    cons = tuple(user[k] for k in order)

    charts = {}
    for chart in (1, 2):
        halfplanes = []
        for con in cons:
            for nrm in con.point.chart_normals(chart, s):
                halfplanes.append((nrm, con.level))
        try:
            rp = half_plane_polygon(halfplanes)
        except ValueError:
            raise Unbounded("constraints do not bound a polytope") from None
        if not rp.is_integral:
            bad = next(v for v in rp.vertices if v[0].denominator != 1 or v[1].denominator != 1)
            raise NonIntegralVertex(
                f"chart {chart} image has non-integral vertex ({bad[0]}, {bad[1]})")
        charts[chart] = rp.to_lattice()

    p1, p2 = charts[1], charts[2]
    transported = hull2d(mutate(s, q) for q in p1.lattice_points)
    if transported != p2:
        raise NonConvexChartImage("hull of transported chart-1 lattice points differs from chart 2")
    pl_images = set(mutate(s, v) for v in p1.vertices)
    for k, v in enumerate(p1.vertices):
        w = p1.vertices[(k + 1) % len(p1.vertices)]
        if (v[1] < 0 < w[1]) or (w[1] < 0 < v[1]):
            t = Fraction(-v[1], w[1] - v[1])
            pl_images.add(mutate(s, (v[0] + t * (w[0] - v[0]), 0)))
    if hull2d(pl_images) != p2:
        raise NonConvexChartImage("PL images of chart-1 vertices do not span chart 2")

    facet_map = {}
    for chart, poly in charts.items():
        owned = [_edges_owned(con.point, con.level, chart, s, poly) for con in cons]
        for i, edges in enumerate(owned):
            if not edges:
                raise RedundantConstraint(
                    f"constraint {order[i] + 1} (point {cons[i].point.as_tuple()}, level "
                    f"{cons[i].level}) is not tight on a 1-dimensional face")
            if len(edges) > 2:
                raise ValidationError(f"facet {i + 1} meets more than two edges in chart {chart}")
        for e in range(len(poly.vertices)):
            owners = [i for i, edges in enumerate(owned) if e in edges]
            if len(owners) > 1:
                raise RedundantConstraint(
                    "constraints " + ", ".join(str(order[i] + 1) for i in owners)
                    + f" define the same facet (chart {chart} edge {e})")
            if not owners:
                raise ValidationError(f"chart {chart} edge {e} is not owned by any constraint")
        facet_map[chart] = tuple(owned)

    return PLPolytope(s=s, constraints=cons, user_order=tuple(order),
                      chart1=p1, chart2=p2, facet_map=facet_map)


def pl_vertices(P: PLPolytope) -> tuple:
    """Vertices of ``P`` that are vertices of both chart images, sorted."""
    v2 = set(P.chart2.vertices)
    return tuple(sorted(PLPoint(P.s, v) for v in P.chart1.vertices
                        if mutate(P.s, v) in v2))


def _extremal_face(P, top):
    ys = [v[1] for v in P.chart1.vertices]
    target = max(ys) if top else min(ys)
    verts = [v for v in P.chart1.vertices if v[1] == target]
    if len(verts) == 1:
        return Face("nodal", point=PLPoint(P.s, verts[0]))
    n = len(P.chart1.vertices)
    for k, v in enumerate(P.chart1.vertices):
        w = P.chart1.vertices[(k + 1) % n]
        if v[1] == w[1] == target:
            return Face("divisor", index=P.edge_owner(1, k))
    raise AssertionError("horizontal extremal edge not found")


def sink_source(P: PLPolytope) -> tuple:
    """Faces of maximal (sink) and minimal (source) ``y``."""
    return _extremal_face(P, True), _extremal_face(P, False)


class Monomial(NamedTuple):
    """Laurent monomial ``x1^e1 * x2^e2 * y^ey``."""

    x1: int
    x2: int
    y: int

    def __str__(self):
        parts = []
        for name, e in (("x1", self.x1), ("x2", self.x2), ("y", self.y)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def adapted_monomial(chart: int, a: int, b: int, s: int) -> Monomial:
    """Adapted basis element of the lattice point ``(a, b)`` of the given chart."""
    if chart == 1:
        if b >= 0:
            return Monomial(b, 0, -a)
        return Monomial(0, -b, s * b - a)
    if chart == 2:
        if b >= 0:
            return Monomial(b, 0, a)
        return Monomial(0, -b, a)
    raise ValueError("chart must be 1 or 2")
