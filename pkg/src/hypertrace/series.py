"""Differential operators, exact series solving, and denominator audits.

Operators live in Q[z]<d/dz> in the normal form sum_i p_i(z) * D^i with
Fraction-coefficient polynomials p_i.  A series is an exact rational
coefficient vector.  Solving goes through the coefficient recurrence that is
formally equivalent to L(F) = 0, so regular singular expansion points are
accepted whenever the recurrence stays well posed; the Pochhammer closed
form supplies the canonical hypergeometric solutions independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .ratcore import format_rational, nth_root_ceil

_Z = (Fraction(0), Fraction(1))  # the polynomial z


class SolveError(ValueError):
    """Recurrence breakdown or inconsistent initial data."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class DifferentialOperator:
    """sum_i p_i(z) * D^i with exact rational polynomial coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, tuple[Fraction, ...]]):
        cleaned = {}
        for order, poly in terms.items():
            poly = polys.trim(tuple(Fraction(c) for c in poly))
            if poly:
                cleaned[order] = poly
        if not cleaned:
            raise ValueError("the zero operator is not allowed")
        self.terms = cleaned

    @property
    def order(self) -> int:
        return max(self.terms)

    @property
    def leading(self) -> tuple[Fraction, ...]:
        return self.terms[self.order]

    def coefficient(self, order: int) -> tuple[Fraction, ...]:
        return self.terms.get(order, ())

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        out = dict(self.terms)
        for i, p in other.terms.items():
            out[i] = polys.add(out.get(i, ()), p)
        out = {i: p for i, p in out.items() if polys.trim(p)}
        return DifferentialOperator(out or {0: ()})

    def __neg__(self) -> "DifferentialOperator":
        return DifferentialOperator({i: polys.neg(p) for i, p in self.terms.items()})

    def __sub__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return self + (-other)

    def __mul__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        """Operator composition (self applied after other)."""
        out: dict[int, tuple[Fraction, ...]] = {}
        for i, p in self.terms.items():
            for j, q in other.terms.items():
                # D^i q = sum_k C(i,k) q^(k) D^(i-k)
                deriv = q
                for k in range(i + 1):
                    if deriv:
                        coeff = polys.scale(polys.mul(p, deriv), Fraction(math.comb(i, k)))
                        target = i - k + j
                        out[target] = polys.add(out.get(target, ()), coeff)
                    deriv = polys.derivative(deriv)
        return DifferentialOperator(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        bits = []
        for i in sorted(self.terms, reverse=True):
            poly = " + ".join(
                f"{format_rational(c)}*z^{d}" for d, c in enumerate(self.terms[i]) if c
            )
            bits.append(f"({poly})*D^{i}")
        return " + ".join(bits)

    def apply(self, coeffs) -> list[Fraction]:
        """Coefficients of L(F) for the truncated series F = sum a_n z^n.

        Entry m of the result is trustworthy for m <= T - max_shift, where
        max_shift is the largest i - deg offset of the operator.
        """
        coeffs = list(coeffs)
        n = len(coeffs)
        out = [Fraction(0)] * n
        for i, p in self.terms.items():
            # i-th derivative of the series
            deriv = coeffs
            for k in range(i):
                deriv = [deriv[j] * j for j in range(1, len(deriv))]
            for d, c in enumerate(p):
                if not c:
                    continue
                for j, a in enumerate(deriv):
                    if a and j + d < n:
                        out[j + d] += c * a
        return out


def operator_from_poly(poly, order: int = 0) -> DifferentialOperator:
    return DifferentialOperator({order: tuple(Fraction(c) for c in poly)})


def theta_plus(c) -> DifferentialOperator:
    """z*D + c."""
    return DifferentialOperator({1: (Fraction(0), Fraction(1)), 0: (Fraction(c),)})


def hyp_operator(a, b) -> DifferentialOperator:
    """The hypergeometric operator prod(zD + b_i - 1) - z * prod(zD + a_j)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    if not a or not b or len(a) != len(b):
        raise ValueError("parameter lists must be nonempty and of equal length")
    left = theta_plus(b[0] - 1)
    for bi in b[1:]:
        left = left * theta_plus(bi - 1)
    right = theta_plus(a[0])
    for aj in a[1:]:
        right = right * theta_plus(aj)
    return left - operator_from_poly(_Z) * right


def krammer_operator() -> DifferentialOperator:
    """P(z) D^2 + (P'(z)/2) D + (z - 10)/18 with P = (z-1)(z-2)(z-82)."""
    p = polys.mul(polys.mul((Fraction(-1), Fraction(1)), (Fraction(-2), Fraction(1))), (Fraction(-82), Fraction(1)))
    dp_half = polys.scale(polys.derivative(p), Fraction(1, 2))
    tail = (Fraction(-10, 18), Fraction(1, 18))
    return DifferentialOperator({2: p, 1: dp_half, 0: tail})


def strip_z_factor(op: DifferentialOperator) -> tuple[DifferentialOperator, int]:
    """Divide out the largest common left factor z^k; returns (operator, k)."""
    k = min(
        next(d for d, c in enumerate(p) if c) for p in op.terms.values()
    )
    if k == 0:
        return op, 0
    return DifferentialOperator({i: p[k:] for i, p in op.terms.items()}), k


@dataclass(frozen=True)
class Recurrence:
    """Scheme sum_j q_j(m) a_{m+j} = 0 for all m >= 0 (a_k = 0 for k < 0).

    ``offsets`` maps the shift j to the polynomial q_j in m; the scheme is
    equivalent to coefficient-wise vanishing of L(F).
    """

    offsets: dict[int, tuple[Fraction, ...]]

    @property
    def max_shift(self) -> int:
        return max(self.offsets)

    @property
    def min_shift(self) -> int:
        return min(self.offsets)

    def q(self, j: int, m: int) -> Fraction:
        return polys.evaluate(self.offsets.get(j, ()), Fraction(m)) if j in self.offsets else Fraction(0)

    def relation(self, m: int) -> list[tuple[int, Fraction]]:
        """Nonzero terms (coefficient index, multiplier) of the m-th relation."""
        out = []
        for j, poly in sorted(self.offsets.items()):
            idx = m + j
            if idx >= 0:
                c = polys.evaluate(poly, Fraction(m))
                if c:
                    out.append((idx, c))
        return out


def operator_to_recurrence(op: DifferentialOperator) -> Recurrence:
    """Translate L into its coefficient recurrence.

    The coefficient of z^m in L(sum a_n z^n) is
    sum_{i,d} c_{i,d} * ff(m + i - d, i) * a_{m+i-d} with ff the falling
    factorial, so q_j collects the (i, d) with i - d = j.
    """
    offsets: dict[int, tuple[Fraction, ...]] = {}
    for i, poly in op.terms.items():
        for d, c in enumerate(poly):
            if not c:
                continue
            j = i - d
            term = polys.scale(polys.falling_factorial(i, j), c)
            offsets[j] = polys.add(offsets.get(j, ()), term)
    offsets = {j: p for j, p in offsets.items() if p}
    return Recurrence(offsets)


@dataclass(frozen=True)
class SeriesSolution:
    """Exact truncated power series: coefficients a_0..a_T."""

    coefficients: tuple[Fraction, ...]

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> Fraction:
        return self.coefficients[n]

    def serialize(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]


def solve_at_ordinary_point(op: DifferentialOperator, initial, truncation: int) -> SeriesSolution:
    """Unique truncated solution of L(F) = 0 with the given initial data.

    The operator order r dictates r initial coefficients a_0..a_{r-1}.  At an
    ordinary point the recurrence determines everything above; when the
    expansion point is regular singular the low-index relations become
    consistency constraints on the initial data and are checked exactly.
    Raises :class:`SolveError` when the recurrence's leading coefficient
    vanishes at a needed index (reporting it) or the data is inconsistent.
    """
    r = op.order
    initial = [Fraction(x) for x in initial]
    if len(initial) != r:
        raise SolveError(f"operator of order {r} needs exactly {r} initial values")
    if truncation + 1 < r:
        raise SolveError("truncation order below the initial segment")
    rec = operator_to_recurrence(op)
    s = rec.max_shift
    coeffs = initial + [Fraction(0)] * (truncation + 1 - r)
    for m in range(0, truncation - s + 1):
        top = m + s
        terms = rec.relation(m)
        if top < r:
            total = sum(c * coeffs[idx] for idx, c in terms)
            if total != 0:
                raise SolveError(
                    f"initial data violates the order-{m} coefficient relation", m
                )
            continue
        if top > truncation:
            break
        lead = rec.q(s, m)
        if lead == 0:
            raise SolveError(
                f"recurrence leading coefficient vanishes at n = {top}", top
            )
        acc = Fraction(0)
        for idx, c in terms:
            if idx != top:
                acc += c * coeffs[idx]
        coeffs[top] = -acc / lead
    return SeriesSolution(tuple(coeffs))


def pochhammer_series(a, b, truncation: int) -> SeriesSolution:
    """Coefficients prod (a_i)_n / (prod (b_j)_n * n!), exactly."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    for bj in b:
        if bj.denominator == 1 and bj <= 0:
            raise ValueError(f"forbidden lower parameter {bj}")
    coeffs = [Fraction(1)]
    for n in range(truncation):
        num = Fraction(1)
        for ai in a:
            num *= ai + n
        den = Fraction(n + 1)
        for bj in b:
            den *= bj + n
        coeffs.append(coeffs[-1] * num / den)
    return SeriesSolution(tuple(coeffs))


def hadamard(f: SeriesSolution, g: SeriesSolution) -> SeriesSolution:
    """Coefficient-wise product; truncations must agree."""
    if f.truncation != g.truncation:
        raise ValueError("truncation mismatch")
    return SeriesSolution(tuple(x * y for x, y in zip(f.coefficients, g.coefficients)))


# denominator growth audit ------------------------------------------------

# six significant digits in the reported root bound
_ROOT_DIGITS = 6
# heuristic unbounded-growth indicator: root at the window end exceeding
# this multiple of the root at the window start
GROWTH_FLAG_RATIO = Fraction(3, 2)


def _root_upper_bound(d: int, n: int) -> Fraction:
    """Smallest grid rational >= d^(1/n), ceiling-rounded to 6 digits."""
    digits = len(str(nth_root_ceil(d, n)))
    scale = 10 ** max(0, _ROOT_DIGITS - digits)
    return Fraction(nth_root_ceil(d * scale ** n, n), scale)


@dataclass(frozen=True)
class DenominatorAudit:
    """Growth statistics d_n = lcm of the coefficient denominators so far."""

    d: tuple[int, ...]
    window: tuple[int, int]
    window_root_max: Fraction
    root_start: Fraction
    root_end: Fraction
    unbounded_flag: bool

    @property
    def growth_ratio(self) -> Fraction:
        return self.root_end / self.root_start

    def serialize(self) -> dict:
        return {
            "window": list(self.window),
            "window_root_max": format_rational(self.window_root_max),
            "root_start": format_rational(self.root_start),
            "root_end": format_rational(self.root_end),
            "growth_ratio": format_rational(self.growth_ratio),
            "unbounded_flag": self.unbounded_flag,
            "d_end_digits": len(str(self.d[-1])),
        }


def denominator_audit(f: SeriesSolution, window: tuple[int, int]) -> DenominatorAudit:
    """Exact d_n over 0..n1 plus the max of d_n^(1/n) over the window.

    The root maximum is an exact rational upper bound (integer root
    extraction with ceiling, 6 significant digits).  The unbounded flag
    compares the window's end root against GROWTH_FLAG_RATIO times its start
    root: a convergent G-type audit stays near 1, a factorial-type audit
    grows linearly in n.
    """
    n0, n1 = window
    if n0 > n1:
        raise ValueError("empty window")
    if n1 > f.truncation:
        raise ValueError("window exceeds the truncation order")
    d = []
    acc = 1
    for c in f.coefficients[: n1 + 1]:
        acc = math.lcm(acc, c.denominator)
        d.append(acc)
    start = max(n0, 1)
    if start > n1:
        raise ValueError("window must contain an index n >= 1")
    root_max = Fraction(0)
    for n in range(start, n1 + 1):
        root_max = max(root_max, _root_upper_bound(d[n], n))
    root_start = _root_upper_bound(d[start], start)
    root_end = _root_upper_bound(d[n1], n1)
    return DenominatorAudit(
        d=tuple(d),
        window=(n0, n1),
        window_root_max=root_max,
        root_start=root_start,
        root_end=root_end,
        unbounded_flag=root_end > GROWTH_FLAG_RATIO * root_start,
    )


# indicial data ------------------------------------------------------------


@dataclass(frozen=True)
class IndicialData:
    """Rational local exponents with multiplicity, plus any residual factor."""

    exponents: tuple[Fraction, ...]
    residual: tuple[Fraction, ...]

    @property
    def all_rational(self) -> bool:
        return polys.degree(self.residual) <= 0


def _operator_at_infinity(op: DifferentialOperator) -> DifferentialOperator:
    """Rewrite L in the coordinate w = 1/z, cleared of denominators."""
    m = max(polys.degree(p) for p in op.terms.values())
    d_w = DifferentialOperator({1: (Fraction(0), Fraction(0), Fraction(-1))})  # -w^2 D_w
    out: DifferentialOperator | None = None
    for i, p in op.terms.items():
        # w^m * p(1/w) is the reversed coefficient vector padded to degree m
        rev = [Fraction(0)] * (m + 1)
        for dgr, c in enumerate(p):
            rev[m - dgr] = c
        piece = operator_from_poly(rev)
        power = DifferentialOperator({0: (Fraction(1),)})
        for _ in range(i):
            power = power * d_w
        piece = piece * power
        out = piece if out is None else out + piece
    return out


def indicial_exponents(op: DifferentialOperator, point) -> IndicialData:
    """Indicial polynomial roots at a finite rational point or infinity.

    Pass ``math.inf`` for the point at infinity.  Exponents at infinity are
    normalized so that a solution behaving like z^(-rho) has exponent rho,
    matching the parameter convention of hypergeometric operators.
    """
    if point == math.inf:
        local = _operator_at_infinity(op)
    else:
        shift = Fraction(point)
        if shift:
            local = DifferentialOperator(
                {i: polys.shift(p, shift) for i, p in op.terms.items()}
            )
        else:
            local = op
    # L(z^rho) = sum c_{i,d} ff(rho, i) z^(rho - i + d); the indicial
    # polynomial collects the terms with the smallest exponent offset d - i
    nu = min(
        min(d - i for d, c in enumerate(p) if c) for i, p in local.terms.items()
    )
    ind: tuple[Fraction, ...] = ()
    for i, p in local.terms.items():
        for d, c in enumerate(p):
            if c and d - i == nu:
                ind = polys.add(ind, polys.scale(polys.falling_factorial(i), c))
    roots, residual = polys.residual_after_rational_roots(ind)
    exponents = []
    for root, mult in roots:
        exponents.extend([root] * mult)
    return IndicialData(tuple(sorted(exponents)), residual)
