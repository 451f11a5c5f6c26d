"""Dense exact linear algebra over the rationals or a cyclotomic field.

Matrices are immutable and hashable; every routine is fraction-free in
spirit (exact pivoting on the first nonzero entry, no thresholds anywhere).
The coefficient ring is any object with ``zero()``, ``one()`` and
``from_int()`` whose elements overload +, -, *, / and ==; in practice that
is :data:`QQ` or a :class:`hypertrace.cyclo.CyclotomicField`.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CyclotomicField
from .ratcore import ResidueClass


class _RationalRing:
    """Fraction coefficients presented through the common ring interface."""

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k: int):
        return Fraction(k)

    def __repr__(self):
        return "QQ"


QQ = _RationalRing()


class ExactMatrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match the shape")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, n, m, [x for r in rows for x in r])

    @classmethod
    def identity(cls, ring, n: int) -> "ExactMatrix":
        zero, one = ring.zero(), ring.one()
        return cls(ring, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, ring, rows: int, cols: int) -> "ExactMatrix":
        z = ring.zero()
        return cls(ring, rows, cols, [z] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            self.ring, self.rows, self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            self.ring, self.rows, self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.rows, self.cols, [-a for a in self.entries])

    def scaled(self, c) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.rows, self.cols, [c * a for a in self.entries])

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return self.scaled(other)
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        zero = self.ring.zero()
        out = []
        ocols = other.cols
        for i in range(self.rows):
            arow = self.row(i)
            for j in range(ocols):
                acc = zero
                for k, a in enumerate(arow):
                    b = other.entries[k * ocols + j]
                    acc = acc + a * b
                out.append(acc)
        return ExactMatrix(self.ring, self.rows, ocols, out)

    def __pow__(self, n: int) -> "ExactMatrix":
        if n < 0:
            return inverse(self) ** (-n)
        out = ExactMatrix.identity(self.ring, self.rows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.ring, self.cols, self.rows,
            [self.entries[j * self.cols + i] for i in range(self.cols) for j in range(self.rows)],
        )

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = self.ring.zero()
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        zero, one = self.ring.zero(), self.ring.one()
        return all(
            self[i, j] == (one if i == j else zero)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            ", ".join(repr(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"ExactMatrix[{body}]"

    def serialize(self):
        from .ratcore import format_rational

        def enc(x):
            return x.serialize() if hasattr(x, "serialize") else format_rational(x)

        return [[enc(x) for x in self.row(i)] for i in range(self.rows)]

    def _check_shape(self, other: "ExactMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def _echelon(rows, zero):
    """In-place forward elimination; returns the pivot column list."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: ExactMatrix) -> int:
    rows = m.to_rows()
    return len(_echelon(rows, m.ring.zero()))


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Exact basis of the right kernel; empty iff the matrix is injective."""
    zero, one = m.ring.zero(), m.ring.one()
    rows = m.to_rows()
    pivots = _echelon(rows, zero)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    zero = m.ring.zero()
    n = m.rows
    aug = [list(m.row(i)) + list(ExactMatrix.identity(m.ring, n).row(i)) for i in range(n)]
    pivots = _echelon(aug, zero)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix(m.ring, n, n, [x for row in aug for x in row[n:]])


def char_poly(m: ExactMatrix) -> list:
    """Monic characteristic polynomial det(t - M), ascending coefficients.

    Computed by the Faddeev-LeVerrier recurrence; exact in any coefficient
    field of characteristic zero.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    ring = m.ring
    coeffs = [ring.zero()] * (n + 1)
    coeffs[n] = ring.one()
    mk = ExactMatrix.identity(ring, n)
    for k in range(1, n + 1):
        mk = m * mk
        ck = -(mk.trace() / ring.from_int(k))
        coeffs[n - k] = ck
        if k < n:
            mk = mk + ExactMatrix.identity(ring, n).scaled(ck)
    return coeffs


def det(m: ExactMatrix):
    cp = char_poly(m)
    sign = -1 if m.rows % 2 else 1
    return cp[0] * m.ring.from_int(sign)


def stack(matrices: list[ExactMatrix]) -> ExactMatrix:
    cols = matrices[0].cols
    if any(x.cols != cols for x in matrices):
        raise ValueError("column mismatch")
    rows = []
    for x in matrices:
        rows.extend(x.to_rows())
    return ExactMatrix.from_rows(matrices[0].ring, rows)


def _eigenvalue_candidates(field: CyclotomicField):
    """Root-of-unity values available inside Q(zeta_N), with exponents.

    For odd N the field also contains -mu_N, i.e. all 2N-th roots of unity.
    """
    n = field.conductor
    order = n if n % 2 == 0 else 2 * n
    out = []
    for j in range(order):
        exp = Fraction(j, order)
        if n % exp.denominator == 0:
            val = field.root_of_unity(exp)
        else:
            val = field.root_of_unity(exp - Fraction(1, 2)) * Fraction(-1)
        out.append((ResidueClass(exp), val))
    return out


def jordan_shape(m: ExactMatrix) -> list[tuple[ResidueClass, tuple[int, ...]]]:
    """Jordan data of a matrix whose eigenvalues are roots of unity.

    For each eigenvalue e^{2*pi*i*x} present, returns (x, sorted block
    sizes), with block sizes recovered from kernel dimensions of powers of
    (M - alpha*I).  Raises if the characteristic polynomial does not split
    into root-of-unity factors over the working field.
    """
    field = m.ring
    if not isinstance(field, CyclotomicField):
        raise TypeError("jordan_shape needs a matrix over a cyclotomic field")
    n = m.rows
    cp = char_poly(m)
    shapes = []
    total = 0
    for exponent, alpha in _eigenvalue_candidates(field):
        # algebraic multiplicity by repeated synthetic division
        mult = 0
        poly = cp
        while len(poly) > 1:
            value = poly[-1]
            quotient = [None] * (len(poly) - 1)
            for i in range(len(poly) - 2, -1, -1):
                quotient[i] = value
                value = poly[i] + alpha * value
            if not value.is_zero():
                break
            mult += 1
            poly = quotient
        if mult == 0:
            continue
        total += mult
        shifted = m - ExactMatrix.identity(field, n).scaled(alpha)
        dims = [0]
        power = ExactMatrix.identity(field, n)
        while dims[-1] < mult:
            power = power * shifted
            dims.append(len(kernel_basis(power)))
        counts_ge = [dims[k] - dims[k - 1] for k in range(1, len(dims))]
        blocks = []
        for size in range(1, len(counts_ge) + 1):
            here = counts_ge[size - 1] - (counts_ge[size] if size < len(counts_ge) else 0)
            blocks.extend([size] * here)
        shapes.append((exponent, tuple(sorted(blocks))))
    if total != n:
        raise ValueError("an eigenvalue lies outside the root-of-unity lattice of the field")
    return shapes


def group_closure(generators, cap: int):
    """Multiplicative closure of invertible matrices, or None past ``cap``.

    A finite semigroup of invertible matrices is a group, so BFS over
    products of generators decides finiteness up to the element cap.
    """
    gens = list(generators)
    if not gens:
        return frozenset()
    identity = ExactMatrix.identity(gens[0].ring, gens[0].rows)
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for mat in frontier:
            for g in gens:
                nxt = mat * g
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        return None
                    new.append(nxt)
        frontier = new
    return frozenset(seen)


def burnside_spans(matrices) -> bool:
    """Whether words in the matrices span the full matrix algebra.

    This is the Burnside criterion for (absolute) irreducibility of the
    tuple acting on the standard column space.
    """
    mats = list(matrices)
    ring = mats[0].ring
    n = mats[0].rows
    zero = ring.zero()
    basis_rows: list[list] = []
    pivots: list[int] = []

    def try_add(mat: ExactMatrix) -> bool:
        vec = list(mat.entries)
        for prow, pcol in zip(basis_rows, pivots):
            if vec[pcol] != zero:
                f = vec[pcol]
                vec = [x - f * y for x, y in zip(vec, prow)]
        pivot = next((i for i, x in enumerate(vec) if x != zero), None)
        if pivot is None:
            return False
        inv = vec[pivot]
        basis_rows.append([x / inv for x in vec])
        pivots.append(pivot)
        return True

    frontier = [ExactMatrix.identity(ring, n)]
    try_add(frontier[0])
    while frontier and len(basis_rows) < n * n:
        new = []
        for mat in frontier:
            for g in mats:
                cand = mat * g
                if try_add(cand):
                    new.append(cand)
        frontier = new
    return len(basis_rows) == n * n


def companion_matrix(field, monic_coeffs) -> ExactMatrix:
    """Companion matrix of a monic polynomial, last column of -c_i."""
    coeffs = list(monic_coeffs)
    if not coeffs or coeffs[-1] != field.one():
        raise ValueError("polynomial must be monic")
    n = len(coeffs) - 1
    zero = field.zero()
    one = field.one()
    mat = [[zero] * n for _ in range(n)]
    for i in range(1, n):
        mat[i][i - 1] = one
    for i in range(n):
        mat[i][n - 1] = -coeffs[i]
    return ExactMatrix.from_rows(field, mat)
