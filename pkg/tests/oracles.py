"""Independent oracles used by the test suite.

These deliberately avoid the production code paths they check: the
characteristic polynomial oracle expands det(tI - M) by cofactors over
polynomial entries, quadratic-subfield membership goes through Kronecker
symbols instead of Gauss sums, and recurrences are checked against direct
coefficient matching.
"""

from fractions import Fraction


def poly_add(p, q, zero):
    out = [zero] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    while out and out[-1] == zero:
        out.pop()
    return tuple(out)


def poly_mul(p, q, zero):
    if not p or not q:
        return ()
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    while out and out[-1] == zero:
        out.pop()
    return tuple(out)


def charpoly_cofactor(matrix):
    """det(t*I - M) by recursive Laplace expansion over polynomial entries."""
    ring = matrix.ring
    zero, one = ring.zero(), ring.one()
    n = matrix.rows
    # entries[i][j] is the polynomial t*delta_ij - M[i][j]
    entries = [
        [
            (-matrix[i, j], one) if i == j else ((-matrix[i, j],) if matrix[i, j] != zero else ())
            for j in range(n)
        ]
        for i in range(n)
    ]

    def laplace(rows, cols):
        if not rows:
            return (one,)
        i = rows[0]
        acc = ()
        for idx, j in enumerate(cols):
            minor = laplace(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = poly_mul(entries[i][j], minor, zero)
            if idx % 2:
                term = tuple(-c for c in term)
            acc = poly_add(acc, term, zero)
        return acc

    poly = laplace(tuple(range(n)), tuple(range(n)))
    return tuple(poly)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return sign * result if n == 1 else 0


def sqrt_in_fixed_field(d: int, descriptor) -> bool:
    """Membership test Q(sqrt d) <= Fix(H) via the quadratic character.

    sqrt(d) lies in Q(zeta_N) iff disc(d) divides N, and k in (Z/N)^x fixes
    it iff the Kronecker character chi_disc(k) = 1.
    """
    from hypertrace.ratcore import quadratic_discriminant

    disc = quadratic_discriminant(d)
    if descriptor.conductor % abs(disc) != 0:
        return False
    return all(kronecker_symbol(disc, k) == 1 for k in descriptor.stabilizer)


def pochhammer_direct(x: Fraction, n: int) -> Fraction:
    """(x)_n by the bare product definition."""
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


def apply_operator_naive(op, coeffs):
    """L(F) coefficient-wise, with explicit term-by-term differentiation."""
    n = len(coeffs)
    out = [Fraction(0)] * n
    for order, poly in op.terms.items():
        for d, c in enumerate(poly):
            if not c:
                continue
            for j, a in enumerate(coeffs):
                # d/dz^order of a*z^j, then multiplied by c*z^d
                if j < order:
                    continue
                coeff = a
                for t in range(order):
                    coeff *= j - t
                target = j - order + d
                if target < n:
                    out[target] += c * coeff
    return out
