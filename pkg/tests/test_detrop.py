from fractions import Fraction
from functools import reduce
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from tropmut import _poly
from tropmut.detrop import (DihedralElement, FactoredPoly, are_isomorphic, aut, aut_normalized,
                            gamma, interior_curves, interior_singularities, normal_form)
from tropmut.errors import InvalidPolynomial, NoRationalScaling, NotNormalForm

F = FactoredPoly.from_coeffs
R = FactoredPoly.from_roots


def test_gamma_examples():
    assert gamma(R([(-1, 3)])) == 1
    assert gamma(R([(1, 1), (2, 2)])) == 2
    assert gamma(F([1, 0, 2, 0, 1])) == 2


def test_invalid_polynomials():
    with pytest.raises(InvalidPolynomial):
        F([0, 1])
    with pytest.raises(InvalidPolynomial):
        R([(0, 1)])
    with pytest.raises(InvalidPolynomial):
        R([(1, 0)])


def test_symbolic_roots():
    f = F([1, 0, 1])
    assert f.has_symbolic_roots and f.gamma == 2
    assert [r.label for r in f.roots] == ["rho1", "rho2"]


def test_normal_form_examples():
    nf = normal_form(F([2, 0, 2]))
    assert nf.b == (0,) and nf.lam == Fraction(1, 2) and nf.c == 1
    nf = normal_form(F([1, 3, 1]))
    assert nf.b == (3,) and nf.lam == 1 and nf.c == 1
    with pytest.raises(NoRationalScaling):
        normal_form(F([2, 0, 0, 1]))


def test_normal_form_witness():
    f = F([4, 5, 1])  # (y + 1)(y + 4)
    nf = normal_form(f)
    scaled = [nf.lam * a * nf.c ** k for k, a in enumerate(f.coeffs)]
    assert tuple(scaled) == nf.coeffs


def test_isomorphism_examples():
    v = are_isomorphic(F([1, 0, 1]), F([4, 0, 1]))
    assert v.isomorphic and v.flip == "plain" and v.lam == 4
    # lam f(c y) = g with lam = 4 forces c^2 = 1/4
    assert v.c_pow == Fraction(1, 4) and v.d == 2 and v.c == Fraction(1, 2)
    same = are_isomorphic(F([1, 1, 1]), F([1, 1, 1]))
    assert same.isomorphic and same.lam == 1 and same.c == 1
    assert not are_isomorphic(F([1, 1, 1]), F([1, 2, 1])).isomorphic


def test_isomorphism_reversed():
    v = are_isomorphic(F([1, 2]), F([2, 1]))
    assert v.isomorphic


coeff_lists = st.integers(1, 4).flatmap(
    lambda s: st.lists(st.integers(-5, 5), min_size=s + 1, max_size=s + 1)).filter(
        lambda c: c[0] != 0 and c[-1] != 0)


@settings(max_examples=80, deadline=None)
@given(coeff_lists, st.integers(1, 4), st.sampled_from([-2, -1, 1, 3]),
       st.sampled_from([Fraction(1, 2), 1, 2, -3]))
def test_isomorphism_properties(c, s_unused, lam, cc):
    f = F(c)
    g = F([lam * a * Fraction(cc) ** k for k, a in enumerate(c)])
    assert are_isomorphic(f, f).isomorphic
    assert are_isomorphic(f, g).isomorphic
    assert are_isomorphic(g, f).isomorphic
    h = F([3 * a * Fraction(2) ** k for k, a in enumerate(g.coeffs)])
    assert are_isomorphic(f, h).isomorphic


def test_aut_examples():
    for s in range(1, 7):
        coeffs = [1] + [0] * (s - 1) + [1]
        assert len(aut(F(coeffs))) == 2 * s
    assert sorted((e.eps, e.j) for e in aut(F([1, 2, 1]))) == [(0, 0), (1, 0)]
    assert [(e.eps, e.j) for e in aut(F([1, 2, 3, 1]))] == [(0, 0)]
    with pytest.raises(NotNormalForm):
        aut(F([2, 0, 1]))


def test_aut_over_q_only():
    group, exact = aut_normalized(F([2, 0, 0, 1]))
    assert not exact and DihedralElement.identity(3) in group


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda s: st.lists(st.integers(-2, 2), min_size=s - 1, max_size=s - 1)))
def test_aut_is_subgroup(b):
    f = F([1] + b + [1])
    group = set(aut(f))
    assert DihedralElement.identity(f.s) in group
    assert all(g * h in group for g in group for h in group)


@settings(max_examples=60, deadline=None)
@given(coeff_lists)
def test_normal_form_idempotent(c):
    try:
        nf = normal_form(F(c))
    except NoRationalScaling:
        return
    again = normal_form(F(nf.coeffs))
    assert again.b == nf.b and again.lam == 1 and again.c == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6).filter(bool), st.integers(1, 3)),
                min_size=1, max_size=4, unique_by=lambda t: t[0]))
def test_roots_and_coeffs_agree(pairs):
    f = R(pairs)
    g = F(f.coeffs)
    assert g.gamma == f.gamma == len(pairs)
    assert sorted(g.betas) == sorted(b for _, b in pairs)
    assert f.s % reduce(gcd, f.betas) == 0
    sq = F(_poly.power(_poly.from_roots([(a, 1) for a, _ in pairs]), 3))
    assert gamma(sq) == len(pairs)


def test_gamma_equals_degree_iff_squarefree():
    for c in ([1, 3, 2], [1, 2, 1], [6, 11, 6, 1], [4, 4, 1]):
        f = F(c)
        sq = _poly.deg(_poly.gcd_(f.coeffs, _poly.deriv(f.coeffs))) == 0
        assert (gamma(f) == f.s) == sq


def test_interior_curves():
    cs = interior_curves(R([(-1, 1)]))
    assert [(c.index, c.parity, c.locus) for c in cs] == [
        (1, "odd", "x1 = 0, y = -1"), (2, "even", "x2 = 0, y = -1")]
    assert len(interior_curves(R([(-2, 1), (Fraction(-1, 2), 1)]))) == 4
    assert len(interior_curves(R([(-1, 3)]))) == 2


def test_interior_singularities():
    (root, kind, point), = interior_singularities(R([(-1, 2)]))
    assert kind == "A_1" and point == (0, 0, -1)
    assert interior_singularities(R([(1, 1), (2, 1)])) == []
    (root, kind, point), = interior_singularities(R([(1, 3), (2, 1)]))
    assert kind == "A_2" and root.value == 1
