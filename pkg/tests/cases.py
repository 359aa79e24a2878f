"""Handcrafted polytopes covering the sign patterns of the c-coordinates."""

from tropmut.detrop import FactoredPoly
from tropmut.polyptych import build_polytope
from tropmut.surface import SurfaceInput

# (s, tropical points), all levels -1
PATTERNS = [
    (1, [(-2, 1, -1), (-1, 0, -1), (-1, 1, 0), (1, -1, 0), (1, -1, 1)]),
    (1, [(-2, 1, -1), (-1, 0, -1), (-1, 1, 0), (1, -1, 1)]),
    (1, [(-2, 1, -1), (-1, 0, -1), (-1, 1, 0), (1, -1, 1), (2, -2, 1)]),
    (1, [(-2, 1, -1), (-1, 0, -1), (1, -1, 1)]),
    (1, [(-2, 1, -1), (-1, 0, -1), (0, 0, 1), (1, -1, 1)]),
    (1, [(-2, 1, -1), (-1, 1, 0), (1, -1, 0), (1, -1, 1)]),
    (1, [(-2, 1, -1), (-1, 1, 0), (1, -1, 0), (1, -1, 1), (2, -2, 1)]),
    (1, [(-2, 1, -1), (-1, 1, 0), (2, -2, 1)]),
    (1, [(-2, 1, -1), (-1, 1, 0), (1, -1, 1), (2, -2, 1)]),
    (1, [(-2, 1, -1), (0, 0, 1), (2, -2, 1)]),
    (2, [(-2, 0, -1), (-1, -1, -1), (-1, 1, 0), (1, -1, 1)]),
    (2, [(-2, 0, -1), (-1, -1, -1), (0, 0, 1)]),
    (2, [(-2, 0, -1), (-1, -1, -1), (0, 0, 1), (1, -1, 1)]),
    (2, [(-2, 0, -1), (-1, 1, 0), (1, -1, 0), (1, -1, 1)]),
    (2, [(-2, 0, -1), (-1, 1, 0), (1, -1, 1)]),
    (2, [(-2, 0, -1), (-1, 1, 0), (1, -1, 1), (2, -2, 1)]),
    (2, [(-2, 0, -1), (0, 0, 1), (1, -1, 1)]),
]

# same polytopes with two distinct roots
GAMMA2 = [
    (2, [(-2, 0, -1), (-1, 1, 0), (1, -1, 1)]),
    (2, [(-2, 0, -1), (-1, -1, -1), (0, 0, 1), (1, -1, 1)]),
]

# every c = 0: horizontal facets only, rejected before any surface exists
ALL_ZERO = (1, [(1, -1, 0), (-1, 1, 0)])


def surface(s, points, gamma=1):
    if gamma == 1:
        f = FactoredPoly.from_roots([(-1, s)])
    else:
        f = FactoredPoly.from_roots([(-1, s - 1), (-2, 1)])
    return SurfaceInput(f, build_polytope(s, [(p, -1) for p in points]))


def handcrafted():
    """The 19 valid handcrafted inputs."""
    return ([surface(s, pts) for s, pts in PATTERNS]
            + [surface(s, pts, gamma=2) for s, pts in GAMMA2])
