"""Exact arithmetic in cyclotomic fields Q(zeta_N) and their subfields.

Elements are residues modulo the N-th cyclotomic polynomial, written in the
power basis 1, zeta, ..., zeta^(phi(N)-1) with Fraction coordinates.  The
representation is canonical, so two numbers at a common conductor are equal
iff their coordinate vectors are equal.  Subfields are never named by
primitive elements: a subfield of Q(zeta_N) is the fixed field of a subgroup
of (Z/N)^x and is carried around as that (conductor, stabilizer) pair.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .ratcore import (
    ResidueClass,
    euler_phi,
    format_rational,
    is_squarefree,
    quadratic_discriminant,
    units_mod,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

# cyclotomic polynomials, keyed by conductor; concurrent reads are safe and
# insertion happens under the lock (reentrant: the computation recurses)
_CYCLO_POLYS: dict[int, tuple[int, ...]] = {}
_CYCLO_LOCK = threading.RLock()

_FIELDS: dict[int, "CyclotomicField"] = {}


def _int_poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # exact division of integer polynomials, den monic up to sign
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % lead == 0
        c //= lead
        out[k] = c
        for i, b in enumerate(den):
            num[k + i] -= c * b
    assert all(c == 0 for c in num)
    return out


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, computed by dividing x^n - 1 by lower Phi_d."""
    if n < 1:
        raise ValueError("conductor must be >= 1")
    cached = _CYCLO_POLYS.get(n)
    if cached is not None:
        return cached
    with _CYCLO_LOCK:
        cached = _CYCLO_POLYS.get(n)
        if cached is not None:
            return cached
        num = [0] * (n + 1)
        num[0], num[n] = -1, 1
        for d in range(1, n):
            if n % d == 0:
                num = _int_poly_div_exact(num, cyclotomic_polynomial(d))
        poly = tuple(num)
        _CYCLO_POLYS[n] = poly
        return poly


class CyclotomicField:
    """Q(zeta_N) with a cached power-reduction table.

    Use :func:`cyclotomic_field` to get the shared instance per conductor.
    """

    __slots__ = ("conductor", "degree", "_powers")

    def __init__(self, conductor: int):
        modulus = cyclotomic_polynomial(conductor)
        self.conductor = conductor
        self.degree = len(modulus) - 1
        # zeta^e mod Phi_N for e up to max(N - 1, 2*degree - 2)
        top = max(conductor - 1, 2 * self.degree - 2)
        powers: list[tuple[int, ...]] = []
        row = [0] * self.degree
        row[0] = 1
        powers.append(tuple(row))
        reduction = [-c for c in modulus[:-1]]  # zeta^degree in the basis
        for _ in range(top):
            prev = powers[-1]
            row = [0] * self.degree
            for i in range(self.degree - 1):
                row[i + 1] = prev[i]
            head = prev[self.degree - 1]
            if head:
                for i in range(self.degree):
                    row[i] += head * reduction[i]
            powers.append(tuple(row))
        self._powers = tuple(powers)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.conductor})"

    # construction -----------------------------------------------------

    def from_coeffs(self, coeffs) -> "CyclotomicNumber":
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coeffs)}")
        return CyclotomicNumber(self, coeffs)

    def from_rational(self, q) -> "CyclotomicNumber":
        coeffs = [_ZERO] * self.degree
        coeffs[0] = Fraction(q)
        return CyclotomicNumber(self, tuple(coeffs))

    def zero(self) -> "CyclotomicNumber":
        return self.from_rational(0)

    def one(self) -> "CyclotomicNumber":
        return self.from_rational(1)

    def from_int(self, k: int) -> "CyclotomicNumber":
        return self.from_rational(k)

    def zeta(self, power: int = 1) -> "CyclotomicNumber":
        row = self._powers[power % self.conductor]
        return CyclotomicNumber(self, tuple(Fraction(c) for c in row))

    def root_of_unity(self, x) -> "CyclotomicNumber":
        """e^{2*pi*i*x} for an exponent x whose denominator divides N."""
        x = x.value if isinstance(x, ResidueClass) else Fraction(x) % 1
        if self.conductor % x.denominator != 0:
            raise ValueError(
                f"exponent {x} does not live at conductor {self.conductor}"
            )
        return self.zeta(int(x * self.conductor))

    # internal reduction ------------------------------------------------

    def _reduce_long(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        out = list(coeffs[: self.degree])
        out += [_ZERO] * (self.degree - len(out))
        for e in range(self.degree, len(coeffs)):
            c = coeffs[e]
            if c:
                row = self._powers[e]
                for i in range(self.degree):
                    if row[i]:
                        out[i] = out[i] + c * row[i]
        return tuple(out)

    def galois(self, k: int, v: "CyclotomicNumber") -> "CyclotomicNumber":
        if math.gcd(k, self.conductor) != 1:
            raise ValueError(f"{k} is not a unit mod {self.conductor}")
        if v.field is not self:
            raise ValueError("value belongs to a different conductor")
        out = [_ZERO] * self.degree
        for i, c in enumerate(v.coeffs):
            if c:
                row = self._powers[(i * k) % self.conductor]
                for j in range(self.degree):
                    if row[j]:
                        out[j] = out[j] + c * row[j]
        return CyclotomicNumber(self, tuple(out))

    def embed(self, v: "CyclotomicNumber") -> "CyclotomicNumber":
        """Image of v under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M)."""
        m = v.field.conductor
        if self.conductor % m != 0:
            raise ValueError(f"no embedding of conductor {m} into {self.conductor}")
        if v.field is self:
            return v
        step = self.conductor // m
        out = [_ZERO] * self.degree
        for i, c in enumerate(v.coeffs):
            if c:
                row = self._powers[(i * step) % self.conductor]
                for j in range(self.degree):
                    if row[j]:
                        out[j] = out[j] + c * row[j]
        return CyclotomicNumber(self, tuple(out))


def cyclotomic_field(conductor: int) -> CyclotomicField:
    field = _FIELDS.get(conductor)
    if field is None:
        field = CyclotomicField(conductor)
        _FIELDS[conductor] = field
    return field


class CyclotomicNumber:
    """Immutable element of Q(zeta_N) in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # ring structure ----------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            if other.field is not self.field:
                raise ValueError(
                    "mixed conductors; embed into a common conductor first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicNumber(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicNumber(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = self.field.degree
        long = [_ZERO] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        long[i + j] += a * b
        return CyclotomicNumber(self.field, self.field._reduce_long(long))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Field inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        modulus = tuple(
            Fraction(c) for c in cyclotomic_polynomial(self.field.conductor)
        )
        from . import polys

        r0, r1 = modulus, polys.trim(self.coeffs)
        s0, s1 = (), (_ONE,)
        while polys.degree(r1) > 0:
            q, r = polys.divmod_poly(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, polys.sub(s0, polys.mul(q, s1))
        assert r1, "cyclotomic modulus has no nontrivial common factor"
        inv = polys.scale(s1, _ONE / r1[0])
        coeffs = list(inv) + [_ZERO] * (self.field.degree - len(inv))
        return CyclotomicNumber(self.field, tuple(coeffs[: self.field.degree]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1, 1) / Fraction(other)
            return self * inv
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> "CyclotomicNumber":
        if self.field.conductor <= 2:
            return self
        return self.field.galois(self.field.conductor - 1, self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.conductor, self.coeffs))

    def __repr__(self) -> str:
        terms = [
            f"{format_rational(c)}*z^{i}" for i, c in enumerate(self.coeffs) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"<{body} @ Q(zeta_{self.field.conductor})>"

    def serialize(self) -> dict:
        return {
            "conductor": self.field.conductor,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }


# module-level operation names matching the public surface ---------------


def root_of_unity(x, conductor: int) -> CyclotomicNumber:
    return cyclotomic_field(conductor).root_of_unity(x)


def galois_apply(k: int, v: CyclotomicNumber) -> CyclotomicNumber:
    return v.field.galois(k, v)


def embed(v: CyclotomicNumber, conductor: int) -> CyclotomicNumber:
    return cyclotomic_field(conductor).embed(v)


def common_field(u: CyclotomicNumber, v: CyclotomicNumber) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    n = math.lcm(u.field.conductor, v.field.conductor)
    return embed(u, n), embed(v, n)


@dataclass(frozen=True)
class SubfieldDescriptor:
    """Subfield of Q(zeta_N) given as the fixed field of a stabilizer subgroup.

    ``stabilizer`` lists representatives in [1, N] of a subgroup H of
    (Z/N)^x; the field has degree phi(N)/|H|.
    """

    conductor: int
    stabilizer: tuple[int, ...]

    def __post_init__(self):
        n = self.conductor
        reduced = {k % n if n > 1 else 1 for k in self.stabilizer}
        object.__setattr__(self, "stabilizer", tuple(sorted(reduced)))
        h = set(self.stabilizer)
        if not h or any(math.gcd(k, n) != 1 for k in h):
            raise ValueError("stabilizer must consist of units")
        for a in h:
            for b in h:
                c = (a * b) % n
                if n == 1:
                    c = 1
                if c not in h:
                    raise ValueError("stabilizer is not closed under multiplication")
        if euler_phi(n) % len(h) != 0:
            raise ValueError("stabilizer size does not divide phi(N)")

    @property
    def degree(self) -> int:
        return euler_phi(self.conductor) // len(self.stabilizer)

    def lift_stabilizer(self, conductor: int) -> frozenset[int]:
        """Preimage of the stabilizer in (Z/M)^x for a multiple M of N."""
        if conductor % self.conductor != 0:
            raise ValueError("conductor must be a multiple")
        h = set(self.stabilizer)
        if self.conductor == 1:
            return frozenset(units_mod(conductor))
        return frozenset(
            k for k in units_mod(conductor) if (k % self.conductor) in h
        )

    def serialize(self) -> dict:
        return {"conductor": self.conductor, "stabilizer": list(self.stabilizer)}

    def describe(self) -> dict:
        return {
            "conductor": self.conductor,
            "stabilizer": list(self.stabilizer),
            "degree": self.degree,
            "abelian": True,
        }


def same_subfield(s: SubfieldDescriptor, t: SubfieldDescriptor) -> bool:
    n = math.lcm(s.conductor, t.conductor)
    return s.lift_stabilizer(n) == t.lift_stabilizer(n)


def field_contains(big: SubfieldDescriptor, small: SubfieldDescriptor) -> bool:
    """Whether the field of ``small`` sits inside the field of ``big``."""
    n = math.lcm(big.conductor, small.conductor)
    return big.lift_stabilizer(n) <= small.lift_stabilizer(n)


def rational_field(conductor: int = 1) -> SubfieldDescriptor:
    return SubfieldDescriptor(conductor, units_mod(conductor))


def real_cyclotomic_field(conductor: int) -> SubfieldDescriptor:
    """Descriptor of the maximal real subfield Q(zeta_N + zeta_N^-1)."""
    n = conductor
    if n <= 2:
        return rational_field(n)
    return SubfieldDescriptor(n, (1, n - 1))


def fixed_field(traces, conductor: int) -> SubfieldDescriptor:
    """Stabilizer of a finite set of cyclotomic numbers inside (Z/N)^x.

    The descriptor names the subfield of Q(zeta_N) generated by the set.
    """
    field = cyclotomic_field(conductor)
    values = [field.embed(t) if t.field is not field else t for t in traces]
    stab = []
    for k in units_mod(conductor):
        if all(field.galois(k, v) == v for v in values):
            stab.append(k)
    return SubfieldDescriptor(conductor, tuple(stab))


def _legendre(k: int, p: int) -> int:
    r = pow(k % p, (p - 1) // 2, p)
    return r - p if r > 1 else r


def sqrt_as_cyclotomic(d: int) -> CyclotomicNumber:
    """An exact square root of a squarefree d, built from prime Gauss sums.

    The sum over k of (k|p) zeta_p^k squares to (-1)^((p-1)/2) p; zeta_8 +
    zeta_8^-1 supplies sqrt(2) and zeta_4 supplies sqrt(-1).  The result
    lives at conductor |disc(Q(sqrt(d)))| and its sign is whatever the
    construction yields.
    """
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    if not is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    conductor = abs(quadratic_discriminant(d))
    field = cyclotomic_field(conductor)
    value = field.one()
    radicand = 1
    m = abs(d)
    if m % 2 == 0:
        step = conductor // 8
        value = value * (field.zeta(step) + field.zeta(-step))
        radicand *= 2
        m //= 2
    p = 3
    while m > 1:
        if m % p == 0:
            m //= p
            gauss = field.zero()
            step = conductor // p
            for k in range(1, p):
                gauss = gauss + _legendre(k, p) * field.zeta(step * k)
            value = value * gauss
            radicand *= p if p % 4 == 1 else -p
        p += 2
    if radicand != d:
        # radicand is -d; multiply by sqrt(-1)
        value = value * field.zeta(conductor // 4)
    return value


def quadratic_subfields(descriptor: SubfieldDescriptor) -> list[int]:
    """All squarefree d with Q(sqrt(d)) inside the described field.

    Candidates are the d whose quadratic discriminant divides the conductor;
    membership is decided by Galois-stability of the Gauss-sum square root.
    """
    n = descriptor.conductor
    found = []
    for d in range(-n, n + 1):
        if d in (0, 1) or not is_squarefree(d):
            continue
        if n % abs(quadratic_discriminant(d)) != 0:
            continue
        g = embed(sqrt_as_cyclotomic(d), n)
        field = g.field
        if all(field.galois(k, g) == g for k in descriptor.stabilizer):
            found.append(d)
    return sorted(found)
