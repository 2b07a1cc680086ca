"""Dense univariate polynomials with exact Fraction coefficients.

Polynomials are lists in little-endian order (index = degree).  Only the
handful of operations needed for inverting elements of quotient fields
Q[y]/(m(y)) live here; everything stays in exact rational arithmetic.
"""

from fractions import Fraction


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def neg(a):
    return [-x for x in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def scale(a, s):
    return trim([x * s for x in a])


def divmod_(a, b):
    """Quotient and remainder of a by b (b nonzero)."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = Fraction(1, 1) / b[-1]
    while len(trim(a)) >= len(b):
        a = trim(a)
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, y in enumerate(b):
            a[i + shift] -= coef * y
    return trim(q), trim(a)


def xgcd(a, b):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = trim(a), trim(b)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, add(u0, neg(mul(q, u1)))
        v0, v1 = v1, add(v0, neg(mul(q, v1)))
    return r0, u0, v0


def invmod(a, modulus):
    """Inverse of a in Q[y]/(modulus); raises ZeroDivisionError if a = 0 mod modulus."""
    g, u, _ = xgcd(a, modulus)
    if len(g) != 1:
        raise ZeroDivisionError("element not invertible modulo the given polynomial")
    _, r = divmod_(scale(u, Fraction(1) / g[0]), modulus)
    return r
