"""Matrix-tuple middle convolution and the double-cover family.

Tuples list the monodromy matrices of the punctures in order, the puncture
at infinity last, with the product over the listed order equal to the
identity.  Middle convolution MC_lambda follows the block-matrix
construction of Dettweiler and Reiter: inflate to the p*n-dimensional tuple
B_1..B_p, then quotient by the blockwise fixed spaces K and the common
fixed space L.  The contract is pinned by the dimension formula, the
product relation, and the Jordan data of the double-cover family, which
jointly detect any layout error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .cyclo import cyclotomic_field, real_cyclotomic_field, same_subfield
from .linalg import (
    ExactMatrix,
    burnside_spans,
    det,
    inverse,
    jordan_shape,
    kernel_basis,
    rank,
    stack,
)
from .ratcore import ResidueClass, euler_phi
from .tracefield import trace_field_tuple


class MidConvError(RuntimeError):
    """Violation of a structural invariant of the convolution (a bug)."""


@dataclass(frozen=True)
class MonodromyTuple:
    """Invertible matrices M_1..M_r with M_1 * ... * M_r = Id, infinity last."""

    matrices: tuple[ExactMatrix, ...]

    def __post_init__(self):
        mats = self.matrices
        if not mats:
            raise ValueError("empty tuple")
        prod = mats[0]
        for m in mats[1:]:
            prod = prod * m
        if not prod.is_identity():
            raise ValueError("product over the listed order is not the identity")

    @property
    def field(self):
        return self.matrices[0].ring

    @property
    def rank(self) -> int:
        return self.matrices[0].rows

    @property
    def punctures(self) -> int:
        return len(self.matrices)

    def serialize(self):
        return [m.serialize() for m in self.matrices]


def double_cover_tuple(m: int, s: int, t: int) -> MonodromyTuple:
    """Rank-two tuple induced from an order-m character of the double cover.

    The four punctures all ramify in the elliptic double cover, so each
    matrix is antidiagonal with M_i^2 = Id (trace 0, determinant -1).  The
    character takes the values zeta_m^s and zeta_m^t on the two homology
    generators; with coset representative the first puncture loop, the
    matrices come out as

        M_1 = antidiag(1, 1),   M_2 = antidiag(zeta^-s, zeta^s),
        M_3 = antidiag(zeta^-t, zeta^t),   M_4 = (M_1 M_2 M_3)^-1.
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    s %= m
    t %= m
    if m > 1 and (s, t) == (0, 0):
        raise ValueError("need (s, t) != (0, 0) for a nontrivial character")
    field = cyclotomic_field(m)
    zero = field.zero()

    def antidiag(up, down):
        return ExactMatrix(field, 2, 2, (zero, up, down, zero))

    m1 = antidiag(field.one(), field.one())
    m2 = antidiag(field.zeta(-s), field.zeta(s))
    m3 = antidiag(field.zeta(-t), field.zeta(t))
    m4 = inverse(m1 * m2 * m3)
    return MonodromyTuple((m1, m2, m3, m4))


def _block_matrix(field, p: int, n: int, blocks) -> ExactMatrix:
    """Assemble a p x p grid of n x n matrices."""
    zero = field.zero()
    rows = []
    for bi in range(p):
        for i in range(n):
            row = []
            for bj in range(p):
                block = blocks.get((bi, bj))
                if block is None:
                    row.extend([zero] * n)
                else:
                    row.extend(block.row(i))
            rows.append(row)
    return ExactMatrix.from_rows(field, rows)


def _column_space_basis(vectors, field):
    """Row-reduce a list of coordinate vectors to an independent family."""
    zero = field.zero()
    basis = []
    pivots = []
    for vec in vectors:
        v = list(vec)
        for b, piv in zip(basis, pivots):
            if v[piv] != zero:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x != zero), None)
        if piv is None:
            continue
        inv = v[piv]
        basis.append([x / inv for x in v])
        pivots.append(piv)
    return basis, pivots


def middle_convolution(tup: MonodromyTuple, lam: Fraction | ResidueClass) -> MonodromyTuple:
    """Katz middle convolution MC_lambda realized on matrix tuples.

    ``lam`` is the exponent of the convolution's root of unity (1/2 for
    lambda = -1).  The exponent 0, i.e. lambda = 1, is degenerate and
    rejected.  The input must be irreducible as a tuple (Burnside spanning
    test); the output dimension is checked against

        sum_k rk(M_k - Id) + rk(lambda * M_1...M_p - Id) - n

    and any mismatch raises :class:`MidConvError`.
    """
    lam = lam.value if isinstance(lam, ResidueClass) else Fraction(lam) % 1
    if lam == 0:
        raise ValueError("MC_1 is degenerate; the convolution parameter must be nontrivial")
    conductor = math.lcm(tup.field.conductor, lam.denominator)
    field = cyclotomic_field(conductor)
    n = tup.rank
    mats = [
        ExactMatrix(field, n, n, [field.embed(x) for x in m.entries])
        for m in tup.matrices
    ]
    if not burnside_spans(mats):
        raise ValueError("tuple is reducible; middle convolution needs an irreducible input")
    # The block construction below is adapted to the relation
    # A_infinity * A_p * ... * A_1 = Id, so feed it the finite matrices in
    # reversed order and flip the quotients back at the end.
    finite = mats[:-1][::-1]
    p = len(finite)
    lam_val = field.root_of_unity(lam)
    identity = ExactMatrix.identity(field, n)
    big_identity = ExactMatrix.identity(field, p * n)

    blocks_of = []
    for k in range(p):
        blocks = {}
        for j in range(p):
            if j < k:
                blocks[(k, j)] = finite[j] - identity
            elif j == k:
                blocks[(k, k)] = finite[k].scaled(lam_val)
            else:
                blocks[(k, j)] = (finite[j] - identity).scaled(lam_val)
        for i in range(p):
            if i != k:
                blocks[(i, i)] = identity
        blocks_of.append(_block_matrix(field, p, n, blocks))

    # K: blockwise fixed vectors of the original matrices
    zero = field.zero()
    k_vectors = []
    for k in range(p):
        for v in kernel_basis(finite[k] - identity):
            vec = [zero] * (p * n)
            vec[k * n : (k + 1) * n] = list(v)
            k_vectors.append(vec)
    # L: common fixed space of the inflated tuple
    l_vectors = kernel_basis(stack([b - big_identity for b in blocks_of]))

    basis, pivots = _column_space_basis(list(k_vectors) + list(l_vectors), field)
    sub_dim = len(basis)

    prod_finite = None  # product over the listed puncture order
    for mfin in reversed(finite):
        prod_finite = mfin if prod_finite is None else prod_finite * mfin
    expected = (
        sum(rank(mfin - identity) for mfin in finite)
        + rank(prod_finite.scaled(lam_val) - identity)
        - n
    )
    out_dim = p * n - sub_dim
    if out_dim != expected:
        raise MidConvError(
            f"dimension formula violated: quotient has {out_dim}, expected {expected}"
        )

    # extend the invariant subspace basis to a full basis by standard vectors
    one = field.one()
    full = [list(b) for b in basis]
    piv_list = list(pivots)
    complement = []
    for i in range(p * n):
        cand = [zero] * (p * n)
        cand[i] = one
        v = list(cand)
        for b, piv in zip(full, piv_list):
            if v[piv] != zero:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if x != zero), None)
        if piv is None:
            continue
        complement.append(cand)
        full.append([x / v[piv] for x in v])
        piv_list.append(piv)
        if len(full) == p * n:
            break

    cols = [list(b) for b in basis] + complement
    change = ExactMatrix.from_rows(field, cols).transpose()
    change_inv = inverse(change)

    quotient = []
    for b in blocks_of:
        conj = change_inv * b * change
        for i in range(sub_dim, p * n):
            for j in range(sub_dim):
                if conj[i, j] != zero:
                    raise MidConvError("invariant subspace not preserved")
        quotient.append(
            ExactMatrix(
                field,
                out_dim,
                out_dim,
                [conj[i, j] for i in range(sub_dim, p * n) for j in range(sub_dim, p * n)],
            )
        )
    quotient.reverse()
    prod = quotient[0]
    for q in quotient[1:]:
        prod = prod * q
    quotient.append(inverse(prod))
    return MonodromyTuple(tuple(quotient))


@dataclass
class FamilyReport:
    """Pass/fail breakdown for one member of the double-cover family."""

    order: int
    character: tuple[int, int]
    items: list[tuple[str, bool, str]] = dataclass_field(default_factory=list)
    degenerate: bool = False
    output: MonodromyTuple | None = None
    jordan: list | None = None
    field_descriptor: dict | None = None

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.items.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return not self.degenerate and all(ok for _, ok, _ in self.items)

    def to_dict(self) -> dict:
        out = {
            "order": self.order,
            "character": list(self.character),
            "degenerate": self.degenerate,
            "passed": self.passed,
            "items": [
                {"check": name, "passed": ok, "detail": detail}
                for name, ok, detail in self.items
            ],
        }
        if self.output is not None:
            out["matrices"] = self.output.serialize()
        if self.jordan is not None:
            out["jordan_shapes"] = self.jordan
        if self.field_descriptor is not None:
            out["trace_field"] = self.field_descriptor
        return out


def verify_family(m: int, s: int, t: int) -> FamilyReport:
    """Check the double-cover family member against its published local data.

    (i) three unipotent local monodromies with a single size-2 Jordan block
    and one minus-unipotent; (ii) trivial determinants; (iii) sampled trace
    field equal to the real cyclotomic field Q(zeta_m + zeta_m^-1), of
    degree phi(m)/2.
    """
    report = FamilyReport(order=m, character=(s % max(m, 1), t % max(m, 1)))
    if m == 1 or (s % m, t % m) == (0, 0):
        report.degenerate = True
        report.add("tuple irreducible", False, "trivial character; skipped")
        return report
    tup = double_cover_tuple(m, s, t)
    try:
        out = middle_convolution(tup, Fraction(1, 2))
    except ValueError as exc:
        report.degenerate = True
        report.add("tuple irreducible", False, str(exc))
        return report
    report.output = out
    report.add("output rank 2", out.rank == 2, f"rank = {out.rank}")

    shapes = []
    for mat in out.matrices:
        shape = jordan_shape(mat)
        shapes.append(shape)
    report.jordan = [
        [
            {"exponent": str(exponent), "blocks": list(blocks)}
            for exponent, blocks in shape
        ]
        for shape in shapes
    ]
    profile = sorted(
        (shape[0][0].value, shape[0][1]) if len(shape) == 1 else ("split",)
        for shape in shapes
    )
    expected = sorted([(Fraction(0), (2,))] * 3 + [(Fraction(1, 2), (2,))])
    report.add(
        "local data: three unipotent, one minus-unipotent",
        profile == expected,
        f"jordan profile = {profile}",
    )
    ones = out.field.one()
    report.add(
        "trivial determinant",
        all(det(mat) == ones for mat in out.matrices),
        "",
    )
    descriptor = trace_field_tuple(out.matrices)
    report.field_descriptor = descriptor.describe()
    target = real_cyclotomic_field(m)
    report.add(
        "trace field is the real cyclotomic field",
        same_subfield(descriptor, target) and descriptor.degree == euler_phi(m) // 2,
        f"descriptor = (conductor {descriptor.conductor}, degree {descriptor.degree})",
    )
    return report
