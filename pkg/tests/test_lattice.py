from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropmut.errors import DegeneratePolytope, NotAVertex, OriginNotInterior
from tropmut.lattice import (LatticePolygon, RationalPolygon, gorenstein_index, hull2d,
                             lattice_points, matmul, polar_dual, smith_normal_form,
                             vertex_cone_type)


def _det(m):
    # Bareiss-free exact determinant via fractions
    a = [[Fraction(x) for x in row] for row in m]
    n, d = len(a), Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i]), None)
        if p is None:
            return 0
        if p != i:
            a[i], a[p] = a[p], a[i]
            d = -d
        d *= a[i][i]
        for r in range(i + 1, n):
            q = a[r][i] / a[i][i]
            a[r] = [x - q * y for x, y in zip(a[r], a[i])]
    return d


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariant_factors == (1, 6)
    z = smith_normal_form([[0, 0], [0, 0]])
    assert z.invariant_factors == () and z.free_rank == 2
    i3 = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert i3.invariant_factors == (1, 1, 1) and i3.free_rank == 0


matrices = st.integers(1, 12).flatmap(
    lambda r: st.integers(1, 12).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_snf_round_trip(m):
    res = smith_normal_form(m)
    assert matmul(matmul([list(r) for r in res.left], m), [list(r) for r in res.right]) == \
        [list(r) for r in res.diagonal]
    diag = [res.diagonal[i][i] for i in range(min(len(m), len(m[0])))]
    nz = [d for d in diag if d]
    assert tuple(nz) == res.invariant_factors
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(_det(res.left)) == 1 and abs(_det(res.right)) == 1


def test_hull_examples():
    tri = hull2d([(0, 0), (1, 0), (0, 1), (Fraction(1, 4), Fraction(1, 4))])
    assert set(tri.vertices) == {(0, 0), (1, 0), (0, 1)}
    sq = hull2d([(1, 1), (-1, 1), (1, -1), (-1, -1)])
    assert set(sq.vertices) == {(1, 1), (-1, 1), (1, -1), (-1, -1)}
    with pytest.raises(DegeneratePolytope):
        hull2d([(0, 0), (1, 1), (2, 2)])


points = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=15)


def _hull_or_none(pts):
    try:
        return hull2d(pts)
    except DegeneratePolytope:
        return None


@settings(max_examples=100, deadline=None)
@given(points)
def test_hull_idempotent(pts):
    h = _hull_or_none(pts)
    if h is None:
        return
    assert hull2d(h.vertices) == h
    assert all(h.contains(p) for p in pts)


@settings(max_examples=100, deadline=None)
@given(points)
def test_lattice_points_match_scan(pts):
    h = _hull_or_none(pts)
    if h is None:
        return
    p = h.to_lattice()
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    scan = {(x, y) for x in range(int(min(xs)), int(max(xs)) + 1)
            for y in range(int(min(ys)), int(max(ys)) + 1) if p.contains((x, y))}
    assert lattice_points(p) == scan


def test_lattice_point_examples(E1):
    assert len(lattice_points(LatticePolygon(((0, 0), (1, 0), (1, 1), (0, 1))))) == 4
    assert len(E1.P.chart1.lattice_points) == 8
    assert len(E1.P.chart2.lattice_points) == 8


def test_polar_dual_square_diamond():
    sq = LatticePolygon(((-1, -1), (1, -1), (1, 1), (-1, 1)))
    diamond = polar_dual(sq)
    assert set(diamond.vertices) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert polar_dual(diamond) == sq


def test_polar_dual_e1(E1):
    d = polar_dual(E1.P.chart1)
    # each facet <n, x> >= l gives the dual vertex n / -l
    expected = {(Fraction(nx, -lvl), Fraction(ny, -lvl)) for (nx, ny), lvl in E1.P.chart1.facets}
    assert set(d.vertices) == expected


def test_polar_dual_needs_origin_inside():
    with pytest.raises(OriginNotInterior):
        polar_dual(LatticePolygon(((0, 0), (1, 0), (0, 1))))


@settings(max_examples=100, deadline=None)
@given(points)
def test_polar_biduality(pts):
    h = _hull_or_none(pts + [(3, 0), (-3, 1), (0, -3), (1, 3)])
    if h is None or not h.contains((0, 0), strict=True):
        return
    assert polar_dual(polar_dual(h)) == h


def test_vertex_cone_types(E1):
    sq = LatticePolygon(((0, 0), (1, 0), (1, 1), (0, 1)))
    assert vertex_cone_type(sq, (0, 0)) == (1, 0)
    # polygon whose normal cone at the origin is spanned by (0,1) and (2,-1)
    p = LatticePolygon(((0, 0), (2, 0), (1, 2)))
    assert sorted(p.normal_cone((0, 0))) == sorted([(0, 1), (2, -1)])
    assert vertex_cone_type(p, (0, 0)) == (2, 1)
    assert all(vertex_cone_type(E1.P.chart1, v) == (1, 0) for v in E1.P.chart1.vertices)
    with pytest.raises(NotAVertex):
        vertex_cone_type(sq, (5, 5))


def test_gorenstein_index():
    assert gorenstein_index(LatticePolygon(((-1, -1), (1, -1), (1, 1), (-1, 1)))) == 1
    assert gorenstein_index(LatticePolygon(((0, 0), (3, 0), (0, 3)))) == 1
    assert gorenstein_index(LatticePolygon(((0, 0), (1, 0), (0, 1)))) is None
    # no interior lattice point at all
    assert gorenstein_index(LatticePolygon(((0, 0), (2, 0), (0, 2)))) is None
    # two interior points
    assert gorenstein_index(LatticePolygon(((-1, -1), (1, -1), (0, 2)))) is None


@settings(max_examples=100, deadline=None)
@given(points)
def test_unique_interior_point_is_reflexive(pts):
    h = _hull_or_none(pts)
    if h is None:
        return
    p = h.to_lattice()
    if len(p.interior_points) == 1:
        assert gorenstein_index(p) == 1
    else:
        assert gorenstein_index(p) is None


def test_rational_polygon_rejects_clockwise():
    with pytest.raises(Exception):
        RationalPolygon(((0, 0), (0, 1), (1, 0)))
