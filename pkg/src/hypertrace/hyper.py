"""Hypergeometric parameter data and explicit monodromy over Q(zeta_N).

A datum is a pair of size-n multisets of residues mod 1; the associated
local system on the thrice-punctured line has monodromy matrices realized
here by companion matrices, with the loop ordering fixed as
gInf * g1 * g0 = Id.  All structural identities of the local monodromies
(characteristic polynomials, the pseudoreflection rank, the determinant of
g1, one Jordan block per eigenvalue) are verified on construction and a
violation raises: it would signal an implementation bug, not bad input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .cyclo import CyclotomicField, cyclotomic_field
from .linalg import (
    ExactMatrix,
    char_poly,
    companion_matrix,
    det,
    group_closure,
    inverse,
    jordan_shape,
    rank,
)
from .ratcore import ResidueClass, units_mod

FINITENESS_BFS_CAP = 10_000


@dataclass(frozen=True)
class HypergeometricDatum:
    """Parameter multisets (a; b), reduced mod 1 and kept sorted."""

    a: tuple[ResidueClass, ...]
    b: tuple[ResidueClass, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b) or not self.a:
            raise ValueError("need |a| = |b| >= 1")
        object.__setattr__(self, "a", tuple(sorted(self.a)))
        object.__setattr__(self, "b", tuple(sorted(self.b)))

    @classmethod
    def from_fractions(cls, a, b) -> "HypergeometricDatum":
        return cls(
            tuple(ResidueClass(Fraction(x)) for x in a),
            tuple(ResidueClass(Fraction(x)) for x in b),
        )

    @property
    def rank(self) -> int:
        return len(self.a)

    @property
    def conductor(self) -> int:
        out = 1
        for x in self.a + self.b:
            out = math.lcm(out, x.denominator)
        return out

    def a_values(self) -> tuple[Fraction, ...]:
        return tuple(x.value for x in self.a)

    def b_values(self) -> tuple[Fraction, ...]:
        return tuple(x.value for x in self.b)

    def exponent_sum(self) -> Fraction:
        """gamma = sum(b_j) - sum(a_i), the det(g1) exponent."""
        return sum(self.b_values(), Fraction(0)) - sum(self.a_values(), Fraction(0))

    def twisted(self, k: int) -> "HypergeometricDatum":
        """Galois twist: multiply every residue exponent by k."""
        return HypergeometricDatum(
            tuple(x.times(k) for x in self.a), tuple(x.times(k) for x in self.b)
        )

    def translated(self, c: Fraction) -> "HypergeometricDatum":
        return HypergeometricDatum(
            tuple(x + c for x in self.a), tuple(x + c for x in self.b)
        )


def is_irreducible(h: HypergeometricDatum) -> bool:
    """No a_i may equal any b_j as residues mod 1."""
    return not (set(h.a_values()) & set(h.b_values()))


def is_kummer_induced(h: HypergeometricDatum) -> int | None:
    """Smallest d >= 2 dividing n with both multisets (1/d)-translation
    invariant, i.e. the datum is a direct image along z -> z^d."""
    n = h.rank
    a_vals = sorted(h.a_values())
    b_vals = sorted(h.b_values())
    for d in range(2, n + 1):
        if n % d:
            continue
        step = Fraction(1, d)
        if sorted((x + step) % 1 for x in a_vals) == a_vals and sorted(
            (x + step) % 1 for x in b_vals
        ) == b_vals:
            return d
    return None


class MonodromyPostconditionError(RuntimeError):
    """A structural identity of the monodromy triple failed."""


@dataclass(frozen=True)
class MonodromyTriple:
    """(g0, g1, gInf) over Q(zeta_N) with gInf * g1 * g0 = Id."""

    g0: ExactMatrix
    g1: ExactMatrix
    gInf: ExactMatrix
    field: CyclotomicField

    def matrices(self) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
        return (self.g0, self.g1, self.gInf)

    def product_is_identity(self) -> bool:
        return (self.gInf * self.g1 * self.g0).is_identity()


def monodromy_triple(h: HypergeometricDatum, verify: bool = True) -> MonodromyTriple:
    """Companion-matrix monodromy of the hypergeometric datum.

    gInf is the companion matrix of prod(t - alpha_i), g0 the inverse of the
    companion matrix of prod(t - beta_j), and g1 = gInf^-1 * g0^-1, so the
    product relation holds by construction.  With ``verify`` the local-data
    identities are checked exactly.
    """
    field = cyclotomic_field(h.conductor)
    alphas = [field.root_of_unity(x) for x in h.a]
    betas = [field.root_of_unity(x) for x in h.b]
    zero, one = field.zero(), field.one()
    alpha_poly = polys.monic_from_roots(alphas, zero, one)
    beta_poly = polys.monic_from_roots(betas, zero, one)
    g_inf = companion_matrix(field, alpha_poly)
    b_comp = companion_matrix(field, beta_poly)
    g0 = inverse(b_comp)
    g1 = inverse(g_inf) * b_comp
    triple = MonodromyTriple(g0, g1, g_inf, field)
    if verify:
        _verify_triple(h, triple, alpha_poly, beta_poly)
    return triple


def _verify_triple(h, triple, alpha_poly, beta_poly):
    field = triple.field
    n = h.rank
    identity = ExactMatrix.identity(field, n)
    checks = []
    checks.append(("product", (triple.gInf * triple.g1 * triple.g0) == identity))
    checks.append(("char gInf", tuple(char_poly(triple.gInf)) == tuple(alpha_poly)))
    checks.append(
        ("char g0^-1", tuple(char_poly(inverse(triple.g0))) == tuple(beta_poly))
    )
    expected_rank = 0 if tuple(alpha_poly) == tuple(beta_poly) else 1
    checks.append(("rank(g1 - Id)", rank(triple.g1 - identity) == expected_rank))
    checks.append(
        ("det g1", det(triple.g1) == field.root_of_unity(h.exponent_sum() % 1))
    )
    for name, mat in (("g0", triple.g0), ("gInf", triple.gInf)):
        shape = jordan_shape(mat)
        checks.append((f"one block per eigenvalue of {name}",
                       all(len(blocks) == 1 for _, blocks in shape)))
    bad = [name for name, ok in checks if not ok]
    if bad:
        raise MonodromyPostconditionError(f"failed: {', '.join(bad)}")


def interlaces(h: HypergeometricDatum) -> bool:
    """Strict alternation of the alpha- and beta-angles on the unit circle.

    Interlacing of the datum itself makes the invariant Hermitian form
    definite; finiteness of the monodromy needs it for every Galois twist,
    see :func:`finite_by_interlacing`.
    """
    points = [(x, 0) for x in h.a_values()] + [(x, 1) for x in h.b_values()]
    if len({x for x, _ in points}) != len(points):
        return False
    points.sort()
    labels = [side for _, side in points]
    return all(labels[i] != labels[(i + 1) % len(labels)] for i in range(len(labels)))


def finite_by_interlacing(h: HypergeometricDatum) -> bool:
    """Finite monodromy iff every Galois twist k*a, k*b interlaces.

    Each twisted datum carries the Galois-conjugate representation; the
    group is finite iff all conjugates are unitary, i.e. all twists
    interlace.  The exact group-closure oracle cross-checks this criterion.
    """
    n = h.conductor
    return all(interlaces(h.twisted(k)) for k in units_mod(n))


REDUCIBLE = "reducible"
FINITE = "finite"
DIHEDRAL = "infinite-dihedral"
ZARISKI_SL2 = "zariski-SL2-up-to-center"


def classify_rank2(h: HypergeometricDatum) -> str:
    """Four-way monodromy classification for rank-2 data.

    Interlacing of every Galois twist decides finiteness (the rank-2
    Beukers-Heckman criterion, cross-checked elsewhere by exact group
    closure); Kummer induction then separates the infinite dihedral case
    from Zariski-dense SL2 up to center.
    """
    if h.rank != 2:
        raise ValueError("classification is for rank 2")
    if not is_irreducible(h):
        return REDUCIBLE
    if finite_by_interlacing(h):
        return FINITE
    if is_kummer_induced(h) is not None:
        return DIHEDRAL
    return ZARISKI_SL2


def classify_rank2_bfs(h: HypergeometricDatum, cap: int = FINITENESS_BFS_CAP) -> bool:
    """Exact-closure finiteness oracle: True iff the monodromy group closes
    within ``cap`` elements."""
    triple = monodromy_triple(h, verify=False)
    return group_closure([triple.g0, triple.g1], cap) is not None


@dataclass(frozen=True)
class TriangleSignature:
    """Multiplicative orders (l, m, r) of lambda, mu, nu."""

    orders: tuple[int, int, int]

    def __iter__(self):
        return iter(self.orders)


def generator_exponents(h: HypergeometricDatum) -> tuple[Fraction, Fraction, Fraction]:
    """Exponents of lambda = alpha1/alpha2, mu = beta1, nu = beta1/(alpha1*alpha2).

    Requires the rank-2 normalization with one b-residue equal to 0.
    """
    if h.rank != 2:
        raise ValueError("rank-2 data required")
    b_vals = h.b_values()
    if Fraction(0) not in b_vals:
        raise ValueError("normalization requires one b-residue equal to 0")
    a1, a2 = h.a_values()
    b1 = b_vals[1] if b_vals[0] == 0 else b_vals[0]
    lam = (a1 - a2) % 1
    mu = b1 % 1
    nu = (b1 - a1 - a2) % 1
    return lam, mu, nu


def triangle_signature(h: HypergeometricDatum) -> TriangleSignature:
    lam, mu, nu = generator_exponents(h)
    return TriangleSignature((lam.denominator, mu.denominator, nu.denominator))


def unimodular_twist(triple: MonodromyTriple) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Scalar twist (g0', g1', gInf') with unit determinants and product Id.

    Each matrix is scaled by a root of unity killing its determinant; the
    three twist exponents sum to 0 mod 1, so the product relation survives.
    The twist may enlarge the conductor by a factor of two per rank.
    """
    field = triple.field
    n = triple.g0.rows
    exps = []
    for mat in (triple.g0, triple.g1, triple.gInf):
        d = det(mat)
        exps.append(_root_exponent(d, field))
    twists = [Fraction(-e, n) % 1 for e in exps]
    # force the exponent sum to 0 mod 1 by adjusting the last twist
    total = sum(twists, Fraction(0)) % 1
    twists[2] = (twists[2] - total) % 1
    if (n * twists[2] + exps[2]) % 1 != 0:
        raise ValueError("determinant twist does not close up")
    conductor = field.conductor
    for t in twists:
        conductor = math.lcm(conductor, t.denominator)
    big = cyclotomic_field(conductor)
    out = []
    for mat, t in zip(triple.matrices(), twists):
        lifted = ExactMatrix(big, n, n, [big.embed(x) for x in mat.entries])
        out.append(lifted.scaled(big.root_of_unity(t)))
    return tuple(out)


def _root_exponent(value, field: CyclotomicField) -> Fraction:
    """Exponent x with value = e^{2*pi*i*x}, for a root of unity in the field."""
    order = field.conductor if field.conductor % 2 == 0 else 2 * field.conductor
    for j in range(order):
        x = Fraction(j, order)
        if field.conductor % x.denominator == 0:
            candidate = field.root_of_unity(x)
        else:
            candidate = field.root_of_unity((x - Fraction(1, 2)) % 1) * Fraction(-1)
        if candidate == value:
            return x
    raise ValueError("value is not a root of unity in the field")
