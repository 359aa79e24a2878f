import pytest
from hypothesis import given, settings, strategies as st

from tropmut.corpus import E1_CONSTRAINTS
from tropmut.errors import (InvalidTropicalPoint, NonNegativeLevel, NonPrimitiveTropicalPoint,
                            Unbounded)
from tropmut.lattice import hull2d
from tropmut.polyptych import (Monomial, PLPoint, TropicalPoint, adapted_monomial,
                               build_polytope, eval_tropical, mutate, pl_vertices, sink_source)


def test_mutate_examples():
    assert mutate(1, (2, 3)) == (-2, 3)
    assert mutate(2, (5, 0)) == (-5, 0)
    assert mutate(1, (1, -1)) == (-2, -1)
    assert mutate(1, (-2, -1), (2, 1)) == (1, -1)


@settings(max_examples=300)
@given(st.integers(1, 8), st.integers(-50, 50), st.integers(-50, 50))
def test_mutate_involution(s, x, y):
    img = mutate(s, (x, y))
    assert img[1] == y
    assert mutate(s, img, (2, 1)) == (x, y)
    assert mutate(s, img) == (x, y)


def test_eval_tropical_examples():
    assert eval_tropical(TropicalPoint(1, -1, 0), (5, -2)) == -2
    assert eval_tropical(TropicalPoint(0, 0, 1), (-1, 7)) == -1


@settings(max_examples=200)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 8), st.integers(-20, 20))
def test_eval_branch_agreement(a, c, s, x):
    p = TropicalPoint(a, min(s * c, 0) - a, c)
    assert eval_tropical(p, (x, 0)) == c * x


def test_tropical_point_validation():
    with pytest.raises(InvalidTropicalPoint):
        TropicalPoint(1, 1, 0).validate(1)
    with pytest.raises(NonPrimitiveTropicalPoint):
        TropicalPoint(2, -2, 0).validate(1)
    TropicalPoint(-1, 0, -1).validate(1)


def test_build_e1(E1):
    P = E1.P
    assert set(P.chart1.vertices) == {(-1, -1), (1, -1), (1, 0), (0, 1), (-1, 1)}
    assert set(P.chart2.vertices) == {(-2, -1), (0, -1), (1, 0), (1, 1), (0, 1)}


def test_build_e2(E2):
    P = E2.P
    assert set(P.chart1.vertices) == {(-1, -1), (0, -1), (1, 0), (0, 1), (-1, 1)}
    assert set(P.chart2.vertices) == {(-2, -1), (-1, -1), (1, 0), (1, 1), (0, 1)}


def test_build_errors():
    with pytest.raises(Unbounded):
        build_polytope(1, [((0, 0, 1), -1)])
    bad = list(E1_CONSTRAINTS)
    bad[0] = (bad[0][0], 0)
    with pytest.raises(NonNegativeLevel):
        build_polytope(1, bad)


def test_constraint_sorting():
    shuffled = [E1_CONSTRAINTS[3], E1_CONSTRAINTS[0], E1_CONSTRAINTS[2], E1_CONSTRAINTS[1]]
    P = build_polytope(1, shuffled)
    cs = [con.c for con in P.constraints]
    assert cs == sorted(cs, key=lambda c: c < 0)
    assert [shuffled[k] for k in P.user_order] == [
        (con.point.as_tuple(), con.level) for con in P.constraints]


def test_pl_vertices(E1, E2):
    assert {v.chart1 for v in pl_vertices(E1.P)} == {(-1, -1), (1, -1), (0, 1), (-1, 1)}
    assert (1, 0) not in {v.chart1 for v in pl_vertices(E2.P)}


TRIANGLE = [((-2, 1, -1), -1), ((-1, 0, -1), -1), ((1, -1, 1), -1)]


def test_pl_vertices_triangle():
    P = build_polytope(1, TRIANGLE)
    assert set(P.chart1.vertices) == {(-3, 2), (1, -2), (1, 0)}
    assert {v.chart1 for v in pl_vertices(P)} == set(P.chart1.vertices)
    # chart 2 has the extra bend (-1, 0) which is not a PL vertex
    assert len(P.chart2.vertices) == 4


def test_sink_source(E1, E2):
    for inp in (E1, E2):
        sink, source = sink_source(inp.P)
        assert sink.is_divisor and inp.P.points[sink.index].as_tuple() == (-1, 1, 0)
        assert source.is_divisor and inp.P.points[source.index].as_tuple() == (1, -1, 0)


def test_sink_nodal():
    sink, _ = sink_source(build_polytope(1, TRIANGLE))
    assert not sink.is_divisor and sink.point.chart1 == (-3, 2)


def test_adapted_monomials():
    assert adapted_monomial(2, 2, -1, 5) == Monomial(0, 1, 2)
    assert adapted_monomial(1, 2, -1, 2) == Monomial(0, 1, -4)
    assert adapted_monomial(1, 0, 0, 3) == adapted_monomial(2, 0, 0, 3) == Monomial(0, 0, 0)
    assert str(Monomial(0, 1, 2)) == "x2*y^2"


@given(st.integers(1, 8), st.integers(-9, 9))
def test_adapted_rows_agree_at_b_zero(s, a):
    for chart in (1, 2):
        m = adapted_monomial(chart, a, 0, s)
        assert m.x1 == m.x2 == 0


def test_chart_transport_and_counts(random_inputs):
    for inp in random_inputs[:20]:
        P = inp.P
        assert {mutate(P.s, q) for q in P.chart1.lattice_points} == P.chart2.lattice_points
        assert hull2d(P.chart2.lattice_points) == P.chart2
        for k in range(1, 5):
            D = P.dilate(k)
            assert len(D.chart1.lattice_points) == len(D.chart2.lattice_points)


def test_facet_map_total(random_inputs):
    for inp in random_inputs:
        P = inp.P
        for chart in (1, 2):
            edges = [e for owned in P.facet_map[chart] for e in owned]
            assert all(1 <= len(owned) <= 2 for owned in P.facet_map[chart])
            assert sorted(edges) == list(range(len(P.chart(chart).vertices)))


def test_plpoint_relation():
    for s in range(1, 5):
        for x in range(-3, 4):
            for y in range(-3, 4):
                q = PLPoint(s, (x, y))
                assert q.chart1[0] + q.chart2[0] == min(0, s * y)
