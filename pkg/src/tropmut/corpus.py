"""Built-in inputs: the two worked examples and a seeded random generator of valid polytopes."""

import random
from fractions import Fraction
from math import floor, gcd, lcm

from .detrop import FactoredPoly
from .errors import RedundantConstraint, ValidationError
from .lattice import half_plane_polygon
from .polyptych import TropicalPoint, build_polytope, eval_tropical
from .surface import SurfaceInput

__all__ = ["E1_CONSTRAINTS", "E2_CONSTRAINTS", "e1", "e2", "random_polytope",
           "random_polynomial", "random_input", "corpus"]

E1_CONSTRAINTS = (((0, 0, 1), -1), ((1, -1, 0), -1), ((-1, 1, 0), -1), ((-1, 0, -1), -1))
E2_CONSTRAINTS = (((0, 0, 1), -1), ((1, -1, 0), -1), ((-1, 1, 0), -1), ((-1, -1, -1), -1))


def e1():
    """``s = 1``, ``f = y + 1``."""
    return SurfaceInput(FactoredPoly.from_roots([(-1, 1)]), build_polytope(1, E1_CONSTRAINTS))


def e2():
    """``s = 2``, ``f = (y + 2)(y + 1/2)``."""
    return SurfaceInput(FactoredPoly.from_roots([(-2, 1), (Fraction(-1, 2), 1)]),
                        build_polytope(2, E2_CONSTRAINTS))


def _random_point(rng, s, c):
    a = rng.randint(-3, 3)
    return (a, min(s * c, 0) - a, c)


def _denominator(s, cons):
    den = 1
    for chart in (1, 2):
        hp = [(nrm, lvl) for pt, lvl in cons
              for nrm in TropicalPoint(*pt).chart_normals(chart, s)]
        for x, y in half_plane_polygon(hp).vertices:
            den = lcm(den, x.denominator, y.denominator)
    return den


def _prune(s, cons):
    # drop constraints one at a time until the rest is irredundant
    try:
        return build_polytope(s, cons)
    except RedundantConstraint:
        for k in range(len(cons)):
            rest = cons[:k] + cons[k + 1:]
            if len(rest) < 3:
                break
            try:
                return _prune(s, rest)
            except ValidationError:
                continue
        raise


def _base(rng, s, max_dilation, max_points, tries):
    for _ in range(tries):
        cons = [(_random_point(rng, s, 1), -rng.randint(1, 2)),
                (_random_point(rng, s, -1), -rng.randint(1, 2))]
        while len(cons) < 3 + rng.randint(0, 1):
            cons.append((_random_point(rng, s, rng.randint(-2, 2)), -rng.randint(1, 2)))
        try:
            den = _denominator(s, cons)
        except ValueError:
            continue
        if den > max_dilation:
            continue
        cons = [(pt, den * rng.randint(1, 2) * lvl) for pt, lvl in cons]
        try:
            P = _prune(s, cons)
        except ValidationError:
            continue
        if len(P.chart1.lattice_points) <= max_points:
            return P
    raise RuntimeError("no valid polytope found")


def _minimum(P, point):
    # a PL function is linear on each side of the wall, so its minimum sits at a
    # vertex of the chart-1 polygon or where an edge crosses y = 0
    vs = P.chart1.vertices
    cands = list(vs)
    for k, v in enumerate(vs):
        w = vs[(k + 1) % len(vs)]
        if v[1] * w[1] < 0:
            t = Fraction(-v[1], w[1] - v[1])
            cands.append((v[0] + t * (w[0] - v[0]), 0))
    return min(eval_tropical(point, q) for q in cands)


def random_polytope(rng: random.Random, s: int, max_facets: int = 8, max_dilation: int = 4,
                    max_points: int = 40, tries: int = 10_000):
    """Random valid polytope with between 3 and ``max_facets`` facets.

    A small base polytope is built from random constraints (levels rescaled by
    the common denominator of the chart vertices when it is at most
    ``max_dilation``) and with at most ``max_points`` lattice points; further facets are then cut just above the minimum of a
    random tropical point, keeping only cuts that leave the polytope valid.
    """
    P = _base(rng, s, max_dilation, max_points, tries)
    target = rng.randint(3, max_facets)
    for _ in range(30 * max_facets):
        if P.n >= target:
            break
        c = rng.randint(-2, 2)
        a = rng.randint(-3, 3)
        if c == 0 and a == 0:
            continue
        point = TropicalPoint(a, min(s * c, 0) - a, c)
        if gcd(a, point.b, c) != 1:
            continue
        level = floor(_minimum(P, point)) + rng.randint(1, 2)
        if level >= 0:
            continue
        try:
            P = build_polytope(s, [(con.point, con.level) for con in P.constraints]
                               + [(point, level)])
        except ValidationError:
            continue
    return P


def random_polynomial(rng: random.Random, s: int) -> FactoredPoly:
    """Random ``f`` of degree ``s`` with nonzero rational roots."""
    betas = []
    left = s
    while left:
        b = rng.randint(1, left)
        betas.append(b)
        left -= b
    roots = set()
    while len(roots) < len(betas):
        roots.add(Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 3)))
    return FactoredPoly.from_roots(zip(sorted(roots), betas))


def random_input(rng: random.Random, s: int | None = None, max_facets: int = 8) -> SurfaceInput:
    s = s if s is not None else rng.randint(1, 4)
    return SurfaceInput(random_polynomial(rng, s), random_polytope(rng, s, max_facets))


def corpus(n: int = 100, seed: int = 0, smax: int = 4, max_facets: int = 8) -> list:
    """``n`` seeded random inputs cycling through ``s = 1..smax``."""
    rng = random.Random(seed)
    return [random_input(rng, 1 + k % smax, max_facets) for k in range(n)]
