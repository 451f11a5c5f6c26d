"""Exact rational scalars and elementary number-theoretic helpers.

Rationals throughout the package are stdlib :class:`fractions.Fraction`
values: normalized on construction (gcd 1, positive denominator), hashable,
and exact, so equality and serialization are structural.  This module adds
the residue-class wrapper used for root-of-unity exponents together with the
integer helpers shared by quadratic-field identification and growth audits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    return Fraction(text.strip())


def format_rational(q: Fraction | int) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class ResidueClass:
    """Exponent x of the root of unity e^{2*pi*i*x}, reduced into [0, 1).

    Arithmetic is mod-1 arithmetic on exponents; ``order()`` is the
    multiplicative order of the corresponding root of unity.
    """

    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def order(self) -> int:
        """Multiplicative order of e^{2*pi*i*value}."""
        return self.value.denominator

    def __add__(self, other: "ResidueClass | Fraction | int") -> "ResidueClass":
        other_value = other.value if isinstance(other, ResidueClass) else Fraction(other)
        return ResidueClass(self.value + other_value)

    def __neg__(self) -> "ResidueClass":
        return ResidueClass(-self.value)

    def __sub__(self, other: "ResidueClass | Fraction | int") -> "ResidueClass":
        return self + (-other if isinstance(other, ResidueClass) else ResidueClass(-Fraction(other)))

    def times(self, k: int) -> "ResidueClass":
        """Image under the Galois-type action x -> k*x (mod 1)."""
        return ResidueClass(self.value * k)

    def __str__(self) -> str:
        return format_rational(self.value)


def _factorize(n: int, limit: int | None = None) -> dict[int, int]:
    """Factor ``n > 0`` by trial division.

    ``limit`` bounds the trial divisors; a composite residual above the bound
    raises, since the caller asked for a certificate we cannot give.
    """
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if limit is not None and p > limit:
            raise ValueError(f"unfactored residual {n} above trial bound {limit}")
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def squarefree_part(n: int, limit: int | None = None) -> int:
    """Squarefree d with n = d*m^2; the sign of d equals the sign of n."""
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    sign = -1 if n < 0 else 1
    d = 1
    for p, e in _factorize(abs(n), limit).items():
        if e % 2:
            d *= p
    return sign * d


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return abs(squarefree_part(n)) == abs(n)


def quadratic_discriminant(d: int) -> int:
    """Field discriminant of Q(sqrt(d)): d if d = 1 (mod 4), else 4d."""
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    if not is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    return d if d % 4 == 1 else 4 * d


def lcm_upto(n: int) -> int:
    """lcm(1, 2, ..., n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    for k in range(2, n + 1):
        out = math.lcm(out, k)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    out = n
    for p in _factorize(n):
        out -= out // p
    return out


def units_mod(n: int) -> tuple[int, ...]:
    """Representatives of (Z/n)^x in [1, n]; (1,) for n = 1."""
    if n == 1:
        return (1,)
    return tuple(k for k in range(1, n) if math.gcd(k, n) == 1)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def nth_root_floor(n: int, k: int) -> int:
    """floor(n**(1/k)) for n >= 0, k >= 1, by Newton iteration on integers."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n in (0, 1) or k == 1:
        return n if k == 1 else n
    x = 1 << (-(-n.bit_length() // k))  # upper bound: 2^ceil(bits/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x


def nth_root_ceil(n: int, k: int) -> int:
    r = nth_root_floor(n, k)
    return r if r ** k == n else r + 1
