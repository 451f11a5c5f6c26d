"""Trace fields and adjoint trace fields via Galois stabilizers.

For rigid hypergeometric data the trace field is computed from the
eigenvalue exponents alone: it is the fixed field of the subgroup of
(Z/N)^x preserving both parameter multisets.  The rank-2 adjoint trace
field is likewise the fixed field of the stabilizer of the three generator
adjoint traces 2 + x + 1/x for x = lambda, mu, nu.  A word-trace sampling
oracle recovers the same fields from explicit matrix tuples and is used to
cross-check every identification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclo import (
    CyclotomicNumber,
    SubfieldDescriptor,
    cyclotomic_field,
    fixed_field,
)
from .hyper import HypergeometricDatum, generator_exponents, is_irreducible
from .linalg import ExactMatrix, det, inverse
from .ratcore import units_mod

WORD_SAMPLING_CAP = 8


def trace_field_rigid(h: HypergeometricDatum) -> SubfieldDescriptor:
    """Trace field of the local system attached to an irreducible datum.

    By rigidity the representation is determined by its local monodromies,
    so k in (Z/N)^x fixes all traces iff it fixes both parameter multisets.
    """
    if not is_irreducible(h):
        raise ValueError("datum is reducible; the rigid trace field needs irreducibility")
    n = h.conductor
    a_vals = sorted(h.a_values())
    b_vals = sorted(h.b_values())
    stab = []
    for k in units_mod(n):
        if (
            sorted((x * k) % 1 for x in a_vals) == a_vals
            and sorted((x * k) % 1 for x in b_vals) == b_vals
        ):
            stab.append(k)
    return SubfieldDescriptor(n, tuple(stab))


def adjoint_trace_field_rank2(h: HypergeometricDatum) -> SubfieldDescriptor:
    """Fixed field of the stabilizer of {2 + x + 1/x : x = lambda, mu, nu}.

    Since each x is a root of unity of exact order o, k fixes x + 1/x iff
    k = +-1 mod o; the conductor is the lcm of the three orders.
    """
    if h.rank != 2:
        raise ValueError("rank-2 data required")
    if not is_irreducible(h):
        raise ValueError("datum is reducible")
    lam, mu, nu = generator_exponents(h)
    orders = [x.denominator for x in (lam, mu, nu)]
    m = math.lcm(*orders)
    stab = tuple(
        k
        for k in units_mod(m)
        if all(k % o in (1 % o, (o - 1) % o) for o in orders)
    )
    return SubfieldDescriptor(m, stab)


def generator_adjoint_traces(h: HypergeometricDatum) -> tuple[CyclotomicNumber, ...]:
    """The exact numbers 2 + x + 1/x for x = lambda, mu, nu."""
    lam, mu, nu = generator_exponents(h)
    m = math.lcm(lam.denominator, mu.denominator, nu.denominator)
    field = cyclotomic_field(m)
    out = []
    for x in (lam, mu, nu):
        z = field.root_of_unity(x)
        out.append(field.from_rational(2) + z + z.inverse())
    return tuple(out)


def adjoint_trace_field_rank2_from_numbers(h: HypergeometricDatum) -> SubfieldDescriptor:
    """Same field as :func:`adjoint_trace_field_rank2`, but computed by the
    cyclotomic fixed-field routine on the actual trace values."""
    traces = generator_adjoint_traces(h)
    return fixed_field(traces, traces[0].field.conductor)


# word-trace sampling -------------------------------------------------------


@dataclass(frozen=True)
class WordTraceSample:
    """Traces of all words in the generators up to a length bound.

    When every generator has root-of-unity determinant the set is closed
    under the inverse-word symmetry, since tr(w^-1) is determined by tr(w)
    and det(w).
    """

    max_length: int
    traces: frozenset[CyclotomicNumber]


def _word_matrices(generators, max_length: int):
    """Distinct matrices of words of length <= max_length, by BFS level."""
    seen = set(generators)
    levels = [list(dict.fromkeys(generators))]
    for _ in range(max_length - 1):
        new = []
        for mat in levels[-1]:
            for g in generators:
                nxt = mat * g
                if nxt not in seen:
                    seen.add(nxt)
                    new.append(nxt)
        if not new:
            break
        levels.append(new)
    return seen


def word_trace_sample(generators, max_length: int, square: bool = False) -> WordTraceSample:
    mats = _word_matrices(list(generators), max_length)
    traces = set()
    for m in mats:
        traces.add((m * m).trace() if square else m.trace())
    return WordTraceSample(max_length, frozenset(traces))


def _stabilized_descriptor(generators, square: bool, max_cap: int = WORD_SAMPLING_CAP):
    """Grow the word sample until the stabilizer is unchanged for two
    consecutive length increments (lengths 2, 3, ...; hard cap)."""
    conductor = generators[0].ring.conductor
    history = []
    sample = None
    for length in range(2, max_cap + 1):
        sample = word_trace_sample(generators, length, square=square)
        descriptor = fixed_field(sample.traces, conductor)
        history.append(descriptor)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
    return history[-1], sample


def trace_field_tuple(matrices, max_length: int = WORD_SAMPLING_CAP) -> SubfieldDescriptor:
    """Sampled trace field of a matrix tuple (flagged "sampled" in reports)."""
    mats = list(matrices)
    descriptor, _ = _stabilized_descriptor(mats, square=False, max_cap=max_length)
    return descriptor


def adjoint_trace_field_tuple(matrices, max_length: int = WORD_SAMPLING_CAP) -> SubfieldDescriptor:
    """Sampled adjoint trace field of unimodular 2x2 matrices.

    Uses tr(w^2) = -2 + tr(Ad(w)): for determinant-one words the squared
    traces generate the adjoint trace field.
    """
    mats = list(matrices)
    for m in mats:
        if not det(m) == m.ring.one():
            raise ValueError("adjoint sampling requires determinant 1")
    descriptor, _ = _stabilized_descriptor(mats, square=True, max_cap=max_length)
    return descriptor


# adjoint representation matrices -------------------------------------------


def adjoint_matrix_gl2(g: ExactMatrix) -> ExactMatrix:
    """Matrix of X -> g X g^-1 on gl_2 in the basis E11, E12, E21, E22."""
    if g.rows != 2 or g.cols != 2:
        raise ValueError("2x2 matrix required")
    ring = g.ring
    ginv = inverse(g)
    cols = []
    zero, one = ring.zero(), ring.one()
    for i in range(2):
        for j in range(2):
            basis = ExactMatrix(ring, 2, 2, [one if (r, c) == (i, j) else zero for r in range(2) for c in range(2)])
            image = g * basis * ginv
            cols.append(list(image.entries))
    # cols[k] holds the image of the k-th basis vector, written in entries order
    entries = [cols[j][i] for i in range(4) for j in range(4)]
    return ExactMatrix(ring, 4, 4, entries)


def adjoint_matrix_sl2(g: ExactMatrix) -> ExactMatrix:
    """Matrix of X -> g X g^-1 on traceless 2x2 matrices (basis E12, E21, H)."""
    if g.rows != 2 or g.cols != 2:
        raise ValueError("2x2 matrix required")
    ring = g.ring
    ginv = inverse(g)
    zero, one = ring.zero(), ring.one()
    basis = [
        ExactMatrix(ring, 2, 2, (zero, one, zero, zero)),   # E12
        ExactMatrix(ring, 2, 2, (zero, zero, one, zero)),   # E21
        ExactMatrix(ring, 2, 2, (one, zero, zero, -one)),   # H = E11 - E22
    ]
    cols = []
    for x in basis:
        y = g * x * ginv
        # coordinates of a traceless matrix [[h, a], [b, -h]] are (a, b, h)
        cols.append((y[0, 1], y[1, 0], y[0, 0]))
    entries = [cols[j][i] for i in range(3) for j in range(3)]
    return ExactMatrix(ring, 3, 3, entries)
