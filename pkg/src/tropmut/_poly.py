"""Dense univariate polynomials over Q as tuples of Fractions, constant term first."""

from fractions import Fraction
from math import gcd, isqrt


def norm(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def deg(p):
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return norm([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return norm(out)


def power(p, k):
    out = (Fraction(1),)
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_(p, q):
    q = norm(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(norm(p))
    quo = [Fraction(0)] * max(len(r) - len(q) + 1, 1)
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        f = r[-1] / q[-1]
        quo[k] = f
        for i, c in enumerate(q):
            r[i + k] -= f * c
        r = list(norm(r))
    return norm(quo), tuple(r)


def monic(p):
    p = norm(p)
    return tuple(c / p[-1] for c in p) if p else p


def gcd_(p, q):
    p, q = norm(p), norm(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def deriv(p):
    return norm([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def from_roots(roots):
    """``prod (y - r)^m`` for pairs ``(r, m)``."""
    out = (Fraction(1),)
    for r, m in roots:
        out = mul(out, power((-Fraction(r), Fraction(1)), m))
    return out


def squarefree_decomposition(p):
    """Yun's algorithm: monic squarefree, pairwise coprime ``g_k`` with ``p = lc * prod g_k^k``.

    Returns a list of ``(k, g_k)`` with ``deg g_k > 0``.
    """
    p = monic(p)
    if deg(p) < 1:
        return []
    out = []
    a = gcd_(p, deriv(p))
    b = divmod_(p, a)[0]
    c = divmod_(deriv(p), a)[0]
    d = sub(c, deriv(b))
    k = 1
    while deg(b) > 0:
        g = gcd_(b, d)
        if deg(g) > 0:
            out.append((k, g))
        b = divmod_(b, g)[0]
        c = divmod_(d, g)[0]
        d = sub(c, deriv(b))
        k += 1
    return out


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p):
    """Distinct rational roots of ``p`` (rational root test)."""
    p = norm(p)
    if deg(p) < 1:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints = ints[1:]
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for dn in _divisors(ints[-1]):
                for cand in (Fraction(num, dn), Fraction(-num, dn)):
                    if evaluate(p, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def integer_nth_root(n, k):
    """Exact ``k``-th root of a nonnegative integer, or ``None``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << (n.bit_length() // k + 1)
    # Newton iteration from above
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    for cand in (x - 1, x, x + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def rational_nth_root(q, k):
    """A rational ``c`` with ``c**k == q`` (positive when ``k`` is even), or ``None``."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if k % 2 == 0:
            return None
        sign = -1
    num = integer_nth_root(abs(q.numerator), k)
    den = integer_nth_root(q.denominator, k)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def fmt(p, var="y"):
    """Human-readable string, highest degree first."""
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            t = mono
        elif mono and c == -1:
            t = "-" + mono
        else:
            t = f"{c}*{mono}" if mono else str(c)
        terms.append(t)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
