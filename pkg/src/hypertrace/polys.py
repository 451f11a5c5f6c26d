"""Dense univariate polynomial helpers.

Polynomials are tuples of coefficients in ascending degree order.  The
arithmetic is generic over any exact coefficient ring that overloads the
usual operators (Fraction, CyclotomicNumber); sums need an explicit ``zero``
when the coefficient ring is not the rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction

QZERO = Fraction(0)
QONE = Fraction(1)


def trim(p, zero=QZERO):
    p = list(p)
    while p and p[-1] == zero:
        p.pop()
    return tuple(p)


def degree(p, zero=QZERO) -> int:
    """Degree, with the zero polynomial reported as -1."""
    return len(trim(p, zero)) - 1


def add(p, q, zero=QZERO):
    n = max(len(p), len(q))
    out = [zero] * n
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out, zero)


def neg(p):
    return tuple(-c for c in p)


def sub(p, q, zero=QZERO):
    return add(p, neg(q), zero)


def scale(p, c, zero=QZERO):
    return trim([c * x for x in p], zero)


def mul(p, q, zero=QZERO):
    p = trim(p, zero)
    q = trim(q, zero)
    if not p or not q:
        return ()
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == zero:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out, zero)


def evaluate(p, x, zero=QZERO):
    acc = zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p, zero=QZERO):
    return trim([c * i for i, c in enumerate(p)][1:], zero)


def shift(p, c, zero=QZERO, one=QONE):
    """Compose with a translation: returns q with q(x) = p(x + c)."""
    out: tuple = ()
    lin = (c, one)
    for coeff in reversed(trim(p, zero)):
        out = add(mul(out, lin, zero), (coeff,), zero)
    return out


def divmod_poly(p, q, zero=QZERO):
    """Exact-field division with remainder; q must be nonzero."""
    q = trim(q, zero)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(trim(p, zero))
    dq = len(q) - 1
    lead = q[-1]
    quot = [zero] * max(len(rem) - dq, 0)
    while len(rem) - 1 >= dq and rem:
        k = len(rem) - 1 - dq
        c = rem[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            rem[k + i] = rem[k + i] - c * b
        while rem and rem[-1] == zero:
            rem.pop()
    return trim(quot, zero), tuple(rem)


def monic_from_roots(roots, zero=QZERO, one=QONE):
    out = (one,)
    for r in roots:
        out = mul(out, (-r, one), zero)
    return out


def falling_factorial(order: int, offset: Fraction | int = 0):
    """(m + offset)(m + offset - 1)...(m + offset - order + 1) as a poly in m."""
    out = (QONE,)
    for t in range(order):
        out = mul(out, (Fraction(offset) - t, QONE))
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, found by the rational root theorem.

    Returns (root, multiplicity) pairs sorted by root; the caller can detect a
    non-rational residual by comparing total multiplicity with the degree.
    """
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial")
    # strip trailing zero roots, clear denominators
    mult0 = 0
    while p and p[0] == 0:
        mult0 += 1
        p = p[1:]
    roots: list[tuple[Fraction, int]] = [(Fraction(0), mult0)] if mult0 else []
    if len(p) > 1:
        den = 1
        for c in p:
            den = math.lcm(den, c.denominator)
        ip = [int(c * den) for c in p]
        for num in _divisors(ip[0]):
            for q in _divisors(ip[-1]):
                for cand in (Fraction(num, q), Fraction(-num, q)):
                    mult = 0
                    while evaluate(p, cand) == 0:
                        mult += 1
                        p, rem = divmod_poly(p, (-cand, QONE))
                        assert rem == ()
                    if mult:
                        roots.append((cand, mult))
    roots.sort()
    return roots


def residual_after_rational_roots(p):
    """(roots-with-multiplicity, residual factor with no rational roots)."""
    roots = rational_roots(p)
    residual = trim(p)
    for r, m in roots:
        for _ in range(m):
            residual, rem = divmod_poly(residual, (-r, QONE))
            assert rem == ()
    return roots, residual
