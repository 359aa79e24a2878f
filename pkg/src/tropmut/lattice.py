"""Exact integer linear algebra and planar lattice polygons.

Everything here works with Python ``int`` and :class:`fractions.Fraction`;
there is no floating point anywhere.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DegeneratePolytope, NotAVertex, OriginNotInterior, ValidationError

__all__ = [
    "SNFResult",
    "smith_normal_form",
    "matmul",
    "identity",
    "det2",
    "primitive",
    "RationalPolygon",
    "LatticePolygon",
    "hull2d",
    "lattice_points",
    "polar_dual",
    "cyclic_quotient_type",
    "vertex_cone_type",
    "gorenstein_index",
    "half_plane_polygon",
]


# ---------------------------------------------------------------------------
# integer matrices

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form ``left @ m @ right == diagonal``.

    ``invariant_factors`` lists the nonzero diagonal entries (each dividing the
    next, ones included). ``free_rank`` is the rank of the cokernel of the row
    map, i.e. of ``Z^cols / rowspace(m)``, which is the convention used for
    presenting abelian groups by relation rows.
    """

    invariant_factors: tuple
    free_rank: int
    left: tuple
    right: tuple
    diagonal: tuple

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def torsion(self):
        return tuple(d for d in self.invariant_factors if d > 1)


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> SNFResult:
    """Smith normal form with unimodular transforms.

    ``ncols`` is only needed for a matrix with zero rows.
    """
    a = [[int(x) for x in row] for row in m]
    r = len(a)
    c = len(a[0]) if r else (ncols or 0)
    if any(len(row) != c for row in a):
        raise ValidationError("matrix is not rectangular")
    left = identity(r)
    right = identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for mat in (a, right):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        for mat in (a, right):
            for row in mat:
                row[dst] += q * row[src]

    def nearest(x, y):
        # quotient rounding to nearest keeps entries small
        q, rem = divmod(x, y)
        return q + 1 if 2 * rem > abs(y) else q

    for t in range(min(r, c)):
        while True:
            # global minimum of the remaining block: every remainder below is smaller
            pivot = None
            for i in range(t, r):
                for j in range(t, c):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -nearest(a[i][t], p))
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -nearest(a[t][j], p))
            if any(a[i][t] for i in range(t + 1, r)) or any(a[t][j] for j in range(t + 1, c)):
                continue
            bad = next((i for i in range(t + 1, r)
                        if any(a[i][j] % p for j in range(t + 1, c))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < r and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    factors = tuple(a[i][i] for i in range(min(r, c)) if a[i][i])
    return SNFResult(
        invariant_factors=factors,
        free_rank=c - len(factors),
        left=tuple(map(tuple, left)),
        right=tuple(map(tuple, right)),
        diagonal=tuple(map(tuple, a)),
    )


# ---------------------------------------------------------------------------
# planar helpers

def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def primitive(v):
    g = gcd(int(v[0]), int(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (int(v[0]) // g, int(v[1]) // g)


def _as_point(p):
    return (Fraction(p[0]), Fraction(p[1]))


def _canonical_rotation(vertices):
    k = min(range(len(vertices)), key=lambda i: vertices[i])
    return tuple(vertices[k:] + vertices[:k])


def _hull_vertices(points):
    # integer input stays integer; the polygon constructor converts the vertices
    pts = sorted({tuple(t if isinstance(t, int) else Fraction(t) for t in p) for p in points})
    if len(pts) < 3:
        raise DegeneratePolytope(f"need at least 3 distinct points, got {len(pts)}")

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegeneratePolytope("all points are collinear")
    return _canonical_rotation(hull)


@dataclass(frozen=True)
class RationalPolygon:
    """Convex polygon with rational vertices in counterclockwise order."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(_as_point(v) for v in self.vertices)
        n = len(verts)
        if n < 3:
            raise DegeneratePolytope("a polygon needs at least three vertices")
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            if det2((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) <= 0:
                raise ValidationError("vertices are not strictly convex and counterclockwise")
        object.__setattr__(self, "vertices", _canonical_rotation(list(verts)))

    @cached_property
    def facets(self):
        """Pairs ``(normal, level)`` with ``<normal, x> >= level`` on the polygon.

        Facet ``i`` is the edge from ``vertices[i]`` to ``vertices[i+1]``.
        Normals are scaled to be primitive integer vectors.
        """
        out = []
        vs = self.vertices
        for i, v in enumerate(vs):
            w = vs[(i + 1) % len(vs)]
            d = (w[0] - v[0], w[1] - v[1])
            den = lcm(d[0].denominator, d[1].denominator)
            n = primitive((-d[1] * den, d[0] * den))
            out.append((n, n[0] * v[0] + n[1] * v[1]))
        return tuple(out)

    def contains(self, p, strict=False):
        for n, lvl in self.facets:
            val = n[0] * p[0] + n[1] * p[1]
            if val < lvl or (strict and val == lvl):
                return False
        return True

    @property
    def is_integral(self):
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.vertices)

    def to_lattice(self):
        if not self.is_integral:
            raise ValidationError("polygon has non-integral vertices")
        return LatticePolygon(tuple((int(x), int(y)) for x, y in self.vertices))

    def scaled(self, k):
        k = Fraction(k)
        return type(self)(tuple((k * x, k * y) for x, y in self.vertices))

    def __eq__(self, other):
        if not isinstance(other, RationalPolygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)


@dataclass(frozen=True, eq=False)
class LatticePolygon(RationalPolygon):
    """Full-dimensional convex polygon with integral vertices."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_integral:
            raise ValidationError("lattice polygon has a non-integral vertex")
        object.__setattr__(self, "vertices",
                           tuple((int(x), int(y)) for x, y in self.vertices))

    @cached_property
    def lattice_points(self):
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return frozenset((x, y)
                         for x in range(min(xs), max(xs) + 1)
                         for y in range(min(ys), max(ys) + 1)
                         if self.contains((x, y)))

    @cached_property
    def interior_points(self):
        return frozenset(p for p in self.lattice_points if self.contains(p, strict=True))

    def vertex_index(self, v):
        v = (int(v[0]), int(v[1]))
        try:
            return self.vertices.index(v)
        except ValueError:
            raise NotAVertex(f"{v} is not a vertex of the polygon") from None

    def normal_cone(self, v):
        """Inner normals ``(u1, u2)`` of the two facets at vertex ``v``, ccw."""
        i = self.vertex_index(v)
        f = self.facets
        return f[i][0], f[i - 1][0]

    def scaled(self, k):
        return LatticePolygon(tuple((k * x, k * y) for x, y in self.vertices))

    def translated(self, t):
        return LatticePolygon(tuple((x + t[0], y + t[1]) for x, y in self.vertices))

    @property
    def is_smooth(self):
        return all(cyclic_quotient_type(*self.normal_cone(v))[0] == 1 for v in self.vertices)

    @property
    def is_gorenstein(self):
        """Every vertex cone of the normal fan is Gorenstein."""
        for v in self.vertices:
            u1, u2 = self.normal_cone(v)
            d = det2(u1, u2)
            # solve <m,u1> = <m,u2> = 1
            mx = Fraction(u2[1] - u1[1], d)
            my = Fraction(u1[0] - u2[0], d)
            if mx.denominator != 1 or my.denominator != 1:
                return False
        return True


def hull2d(points: Iterable) -> RationalPolygon:
    """Convex hull of a finite set of rational points."""
    return RationalPolygon(_hull_vertices(points))


def lattice_points(p: LatticePolygon) -> frozenset:
    return p.lattice_points


def polar_dual(p: RationalPolygon) -> RationalPolygon:
    """``{u : <u, v> >= -1 for all v in p}``."""
    verts = []
    for n, lvl in p.facets:
        if lvl >= 0:
            raise OriginNotInterior("origin is not strictly inside the polygon")
        verts.append((Fraction(n[0]) / -lvl, Fraction(n[1]) / -lvl))
    return hull2d(verts)


def half_plane_polygon(constraints) -> RationalPolygon:
    """Bounded intersection of half-planes ``n . x >= level``.

    Raises :class:`ValueError` if the region is unbounded; callers translate it
    into their own error type.
    """
    cons = []
    for n, l in constraints:
        # clear denominators so the feasibility tests stay in integers
        den = lcm(*(Fraction(t).denominator for t in (n[0], n[1], l)))
        cons.append(((int(n[0] * den), int(n[1] * den)), int(l * den)))
    for n, _ in cons:
        for d in ((-n[1], n[0]), (n[1], -n[0])):
            if all(m[0] * d[0] + m[1] * d[1] >= 0 for m, _ in cons):
                raise ValueError("half-plane intersection is unbounded")
    pts = set()
    for i in range(len(cons)):
        (a, b), l1 = cons[i]
        for j in range(i + 1, len(cons)):
            (c, d), l2 = cons[j]
            den = a * d - b * c
            if den == 0:
                continue
            xn, yn = l1 * d - b * l2, a * l2 - l1 * c
            if den < 0:
                xn, yn, den = -xn, -yn, -den
            if all(n[0] * xn + n[1] * yn >= l * den for n, l in cons):
                pts.add((Fraction(xn, den), Fraction(yn, den)))
    return hull2d(pts)


# ---------------------------------------------------------------------------
# cones

def cyclic_quotient_type(u, v):
    """Type ``(r, a)`` of the cone spanned by ``u`` and ``v``, i.e. ``1/r(1, a)``.

    The cone is brought to ``cone(e2, r e1 - a e2)`` with ``0 <= a < r``. Since
    swapping the two rays replaces ``a`` by its inverse mod ``r``, the smaller
    of the two is returned. Smooth cones give ``(1, 0)``.
    """
    u, v = primitive(u), primitive(v)
    r = det2(u, v)
    if r == 0:
        raise ValidationError("cone is not strictly convex and full-dimensional")
    if r < 0:
        u, v, r = v, u, -r
    if r == 1:
        return (1, 0)
    # e with det(u, e) = 1, so u, e is a basis in which u = (0, 1), v = (r, beta)
    g, x, y = _ext_gcd(u[0], -u[1])
    assert g == 1
    # u0*y' - u1*x' = 1 with e = (x', y'):  x' = y, y' = x
    e = (y, x)
    assert det2(u, e) == 1
    beta = det2(v, e)
    a = (-beta) % r
    return (r, min(a, pow(a, -1, r)))


def _ext_gcd(a, b):
    # returns g, x, y with a*x + b*y = g >= 0
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def vertex_cone_type(p: LatticePolygon, v) -> tuple:
    """Cyclic quotient type of the toric surface ``T(p)`` at the fixed point of ``v``."""
    return cyclic_quotient_type(*p.normal_cone(v))


def gorenstein_index(p: LatticePolygon):
    """Gorenstein index of ``p`` viewed as a polygon with one interior point.

    If ``p`` has exactly one interior lattice point it is moved to the origin and
    the smallest ``k`` with ``k * p^*`` integral is returned (``1`` means
    reflexive). Polygons with zero or several interior points give ``None``.
    """
    inner = p.interior_points
    if len(inner) != 1:
        return None
    (cx, cy), = inner
    dual = polar_dual(p.translated((-cx, -cy)))
    k = 1
    for x, y in dual.vertices:
        k = lcm(k, x.denominator, y.denominator)
    return k
