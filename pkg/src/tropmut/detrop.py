"""The polynomial ``f`` of a detropicalization ``A_f = K[x1, x2, y^{+-1}] / (x1 x2 - f(y))``.

All arithmetic is over Q. Roots that are not rational are carried symbolically:
each one is labelled and tied to the squarefree stratum (and the factor of it)
whose zero it is. Everything downstream only needs the number of distinct
roots, their multiplicities and a label per root.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from . import _poly as P
from .errors import InvalidPolynomial, NoRationalScaling, NotNormalForm, ValidationError

__all__ = [
    "Root",
    "FactoredPoly",
    "gamma",
    "NormalForm",
    "normal_form",
    "IsoVerdict",
    "are_isomorphic",
    "DihedralElement",
    "zeta_power",
    "aut",
    "aut_normalized",
    "InteriorCurve",
    "interior_curves",
    "interior_singularities",
]


@dataclass(frozen=True)
class Root:
    """A distinct root of ``f``.

    ``value`` is a Fraction for rational roots and ``None`` for symbolic ones,
    in which case ``defining_poly`` is the rational factor it is a zero of.
    """

    label: str
    multiplicity: int
    value: Fraction | None = None
    defining_poly: tuple = ()

    @property
    def is_rational(self):
        return self.value is not None

    def __str__(self):
        return str(self.value) if self.is_rational else self.label


@dataclass(frozen=True, eq=False)
class FactoredPoly:
    """Degree ``s`` polynomial with nonzero constant term.

    Build it with :meth:`from_roots` or :meth:`from_coeffs`; coefficients are
    stored constant term first.
    """

    coeffs: tuple
    mode: str
    strata: tuple
    roots: tuple

    @property
    def s(self):
        return len(self.coeffs) - 1

    degree = s

    @property
    def gamma(self):
        return len(self.roots)

    @property
    def betas(self):
        return tuple(r.multiplicity for r in self.roots)

    @property
    def alphas(self):
        return tuple(r.value for r in self.roots)

    @property
    def has_symbolic_roots(self):
        return any(not r.is_rational for r in self.roots)

    @property
    def is_normal_form(self):
        return self.coeffs[-1] == 1 and self.coeffs[0] == 1

    def __eq__(self, other):
        if not isinstance(other, FactoredPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return P.fmt(self.coeffs)

    @classmethod
    def from_roots(cls, roots):
        """``prod (y - alpha)^beta`` from pairs ``(alpha, beta)``."""
        pairs = []
        for alpha, beta in roots:
            alpha = Fraction(alpha)
            if alpha == 0:
                raise InvalidPolynomial("roots must be nonzero (constant term would vanish)")
            if int(beta) != beta or beta < 1:
                raise InvalidPolynomial(f"multiplicity {beta!r} is not a positive integer")
            pairs.append((alpha, int(beta)))
        if not pairs:
            raise InvalidPolynomial("f must have positive degree")
        if len({a for a, _ in pairs}) != len(pairs):
            raise InvalidPolynomial("roots must be listed once each")
        coeffs = P.from_roots(pairs)
        root_objs = tuple(Root(label=f"alpha{i + 1}", multiplicity=b, value=a)
                          for i, (a, b) in enumerate(pairs))
        return cls(coeffs=coeffs, mode="roots",
                   strata=tuple(P.squarefree_decomposition(coeffs)), roots=root_objs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence):
        """From coefficients listed constant term first."""
        c = P.norm(coeffs)
        if len(c) < 2:
            raise InvalidPolynomial("f must have positive degree")
        if c[0] == 0:
            raise InvalidPolynomial("f must have a nonzero constant term")
        strata = tuple(P.squarefree_decomposition(c))
        roots = []
        sym = 0
        for k, g in strata:
            rest = g
            for r in P.rational_roots(g):
                roots.append(Root(label=f"alpha{len(roots) + 1}", multiplicity=k, value=r))
                rest = P.divmod_(rest, (-r, Fraction(1)))[0]
            for _ in range(P.deg(rest)):
                sym += 1
                roots.append(Root(label=f"rho{sym}", multiplicity=k, defining_poly=rest))
        # relabel so that labels follow root order
        roots = [Root(label=(f"alpha{i + 1}" if r.is_rational else r.label),
                      multiplicity=r.multiplicity, value=r.value,
                      defining_poly=r.defining_poly) for i, r in enumerate(roots)]
        return cls(coeffs=c, mode="coeffs", strata=strata, roots=tuple(roots))

    @classmethod
    def coerce(cls, f):
        if isinstance(f, cls):
            return f
        return cls.from_coeffs(f)


def gamma(f: FactoredPoly) -> int:
    """Number of distinct roots, from the squarefree decomposition."""
    return sum(P.deg(g) for _, g in f.strata)


# ---------------------------------------------------------------------------
# moduli

@dataclass(frozen=True)
class NormalForm:
    """``lam * f(c y) = y^s + b_{s-1} y^{s-1} + ... + b_1 y + 1``."""

    b: tuple
    lam: Fraction
    c: Fraction

    @property
    def coeffs(self):
        return (Fraction(1),) + tuple(self.b) + (Fraction(1),)


def normal_form(f) -> NormalForm:
    f = FactoredPoly.coerce(f)
    a = f.coeffs
    s = f.s
    c = P.rational_nth_root(a[0] / a[-1], s)
    if c is None:
        raise NoRationalScaling(
            f"{a[0] / a[-1]} has no rational {s}-th root; f = {f} cannot be normalized over Q")
    lam = 1 / a[0]
    b = tuple(lam * a[k] * c ** k for k in range(1, s))
    return NormalForm(b=b, lam=lam, c=c)


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of :func:`are_isomorphic`.

    The scaling ``c`` is pinned by ``c^d = c_pow`` where ``d`` is the gcd of
    the exponents carrying nonzero coefficients; ``c`` is the rational
    solution when one exists (positive for even ``d``), else ``None``.
    """

    isomorphic: bool
    flip: str | None = None
    lam: Fraction | None = None
    d: int | None = None
    c_pow: Fraction | None = None
    c: Fraction | None = None
    reason: str = ""


def _match(src, tgt):
    # find lam, c over an algebraically closed field with lam * src_k * c^k = tgt_k
    lam = tgt[0] / src[0]
    exps = []
    ratios = {}
    for k in range(1, len(src)):
        if (src[k] == 0) != (tgt[k] == 0):
            return None, f"coefficient of y^{k} vanishes on one side only"
        if src[k]:
            exps.append(k)
            ratios[k] = tgt[k] / (lam * src[k])
    d = reduce(gcd, exps)
    # Bezout coefficients to express c^d through the ratios
    u = _bezout(exps)
    cd = Fraction(1)
    for k, e in zip(exps, u):
        cd *= ratios[k] ** e
    for k in exps:
        if cd ** (k // d) != ratios[k]:
            return None, f"c^{k} = {ratios[k]} is incompatible with c^{d} = {cd}"
    return (lam, d, cd), ""


def _bezout(nums):
    # coefficients u with sum(u_i * nums_i) == gcd(nums)
    g, coeffs = nums[0], [1]
    for n in nums[1:]:
        x0, x1, a, b = 1, 0, g, n
        y0, y1 = 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        coeffs = [x0 * cf for cf in coeffs] + [y0]
        g = a
    return coeffs


def are_isomorphic(f, g) -> IsoVerdict:
    """Decide ``A_f ~ A_g``: ``lam f(c y) = g(y)`` or ``lam y^s f(c / y) = g(y)``."""
    f, g = FactoredPoly.coerce(f), FactoredPoly.coerce(g)
    if f.s != g.s:
        return IsoVerdict(False, reason=f"degrees differ ({f.s} vs {g.s})")
    reasons = []
    for flip, tgt in (("plain", g.coeffs), ("reversed", tuple(reversed(g.coeffs)))):
        found, why = _match(f.coeffs, tgt)
        if found is None:
            reasons.append(f"{flip}: {why}")
            continue
        lam, d, cd = found
        c = P.rational_nth_root(cd, d)
        return IsoVerdict(True, flip=flip, lam=lam, d=d, c_pow=cd, c=c)
    return IsoVerdict(False, reason="; ".join(reasons))


# ---------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True, order=True)
class DihedralElement:
    """``(eps, zeta^j)`` acting by ``y -> zeta^j * y^((-1)^eps)``."""

    eps: int
    j: int
    s: int

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.s)

    def __mul__(self, other):
        # (self o other)(y) = self(other(y))
        sign = -1 if self.eps else 1
        return DihedralElement(self.eps ^ other.eps, self.j + sign * other.j, self.s)

    @classmethod
    def identity(cls, s):
        return cls(0, 0, s)


def zeta_power(m, s):
    """Value of ``zeta^m`` for a primitive ``s``-th root of unity if rational, else ``None``."""
    m %= s
    if m == 0:
        return 1
    if 2 * m == s:
        return -1
    return None


def _fixes(b, el):
    s = el.s
    for k in range(s + 1):
        z = zeta_power(el.j * k, s)
        src, tgt = b[k], (b[s - k] if el.eps else b[k])
        if src == 0:
            if tgt != 0:
                return False
            continue
        if z is None or src * z != tgt:
            return False
    return True


def aut(f) -> list:
    """Elements of ``D_2s`` fixing a normal-form ``f``; brute force over the group."""
    f = FactoredPoly.coerce(f)
    if not f.is_normal_form:
        raise NotNormalForm(f"{f} is not monic with constant term 1")
    s = f.s
    b = f.coeffs
    group = [DihedralElement(e, j, s) for e in (0, 1) for j in range(s) if _fixes(b, DihedralElement(e, j, s))]
    members = set(group)
    if DihedralElement.identity(s) not in members or any(g * h not in members for g in group for h in group):
        raise AssertionError("automorphism set is not a subgroup")
    return group


def aut_normalized(f):
    """``(group, exact)``: the group of the normal form when ``f`` normalizes over Q.

    Otherwise the group is computed from the defining condition on the raw
    coefficients; it is then only the part visible over Q and ``exact`` is False.
    """
    f = FactoredPoly.coerce(f)
    if f.is_normal_form:
        return aut(f), True
    try:
        nf = normal_form(f)
    except NoRationalScaling:
        s = f.s
        group = [DihedralElement(e, j, s) for e in (0, 1) for j in range(s)
                 if _fixes(f.coeffs, DihedralElement(e, j, s))]
        return group, False
    return aut(FactoredPoly.from_coeffs(nf.coeffs)), True


# ---------------------------------------------------------------------------
# interior geometry

@dataclass(frozen=True)
class InteriorCurve:
    """``C_index``: odd index is ``{x1 = 0, y = root}``, even is ``{x2 = 0, y = root}``."""

    index: int
    root: Root

    @property
    def parity(self):
        return "odd" if self.index % 2 else "even"

    @property
    def locus(self):
        var = "x1" if self.index % 2 else "x2"
        return f"{var} = 0, y = {self.root}"


def interior_curves(f) -> list:
    f = FactoredPoly.coerce(f)
    out = []
    for i, r in enumerate(f.roots, start=1):
        out.append(InteriorCurve(2 * i - 1, r))
        out.append(InteriorCurve(2 * i, r))
    return out


def interior_singularities(f) -> list:
    """``(root, 'A_k', point)`` for each root of multiplicity ``k + 1 >= 2``."""
    f = FactoredPoly.coerce(f)
    return [(r, f"A_{r.multiplicity - 1}", (0, 0, r.value if r.is_rational else r.label))
            for r in f.roots if r.multiplicity >= 2]
