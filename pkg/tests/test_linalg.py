import random
from fractions import Fraction

import pytest

from hypertrace.cyclo import cyclotomic_field
from hypertrace.linalg import (
    QQ,
    ExactMatrix,
    burnside_spans,
    char_poly,
    companion_matrix,
    det,
    group_closure,
    inverse,
    jordan_shape,
    kernel_basis,
    rank,
)
from hypertrace.ratcore import ResidueClass

from oracles import charpoly_cofactor


def rational(rows):
    return ExactMatrix.from_rows(QQ, [[Fraction(x) for x in r] for r in rows])


def test_char_poly_examples():
    identity = ExactMatrix.identity(QQ, 2)
    assert char_poly(identity) == [Fraction(1), Fraction(-2), Fraction(1)]
    comp = companion_matrix(QQ, [Fraction(1), Fraction(-3), Fraction(1)])
    assert char_poly(comp) == [Fraction(1), Fraction(-3), Fraction(1)]


def test_char_poly_against_cofactor_oracle():
    rng = random.Random(41)
    for _ in range(30):
        m = rational([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)])
        assert tuple(char_poly(m)) == charpoly_cofactor(m)


def test_char_poly_conjugation_invariant():
    rng = random.Random(42)
    done = 0
    while done < 20:
        m = rational([[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        p = rational([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        try:
            pinv = inverse(p)
        except ZeroDivisionError:
            continue
        assert char_poly(p * m * pinv) == char_poly(m)
        done += 1


def test_kernel_examples():
    zero = ExactMatrix.zero(QQ, 2, 2)
    assert len(kernel_basis(zero)) == 2
    assert kernel_basis(ExactMatrix.identity(QQ, 2)) == []
    one_dim = kernel_basis(rational([[1, 1], [1, 1]]))
    assert len(one_dim) == 1
    v = one_dim[0]
    assert v[0] == -v[1] != 0


def test_rank_nullity():
    rng = random.Random(17)
    for _ in range(1000):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = rational([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
        assert rank(m) + len(kernel_basis(m)) == cols


def test_jordan_shape_examples():
    f2 = cyclotomic_field(2)
    unipotent = ExactMatrix.from_rows(f2, [[f2.one(), f2.one()], [f2.zero(), f2.one()]])
    assert jordan_shape(unipotent) == [(ResidueClass(Fraction(0)), (2,))]

    minus = ExactMatrix.from_rows(
        f2, [[-f2.one(), f2.one()], [f2.zero(), -f2.one()]]
    )
    assert jordan_shape(minus) == [(ResidueClass(Fraction(1, 2)), (2,))]

    f3 = cyclotomic_field(3)
    diag = ExactMatrix.from_rows(
        f3, [[f3.zeta(1), f3.zero()], [f3.zero(), f3.zeta(2)]]
    )
    assert jordan_shape(diag) == [
        (ResidueClass(Fraction(1, 3)), (1,)),
        (ResidueClass(Fraction(2, 3)), (1,)),
    ]


def test_jordan_block_sizes_sum_to_multiplicity():
    rng = random.Random(4)
    f4 = cyclotomic_field(4)
    values = [f4.zeta(j) for j in range(4)]
    for _ in range(20):
        # upper triangular with root-of-unity diagonal
        n = rng.randint(2, 4)
        rows = []
        diag = [rng.choice(values) for _ in range(n)]
        for i in range(n):
            row = [f4.zero()] * i + [diag[i]] + [
                f4.from_rational(rng.randint(-1, 1)) for _ in range(n - i - 1)
            ]
            rows.append(row)
        m = ExactMatrix.from_rows(f4, rows)
        shapes = jordan_shape(m)
        total = sum(sum(blocks) for _, blocks in shapes)
        assert total == n
        for exponent, blocks in shapes:
            mult = sum(1 for v in diag if v == f4.root_of_unity(exponent.value))
            assert sum(blocks) == mult


def test_jordan_rejects_non_root_eigenvalues():
    f1 = cyclotomic_field(1)
    m = ExactMatrix.from_rows(f1, [[f1.from_rational(2)]])
    with pytest.raises(ValueError):
        jordan_shape(m)


def test_group_closure_and_cap():
    swap = rational([[0, 1], [1, 0]])
    neg = rational([[-1, 0], [0, -1]])
    closure = group_closure([swap, neg], 100)
    assert closure is not None and len(closure) == 4
    shear = rational([[1, 1], [0, 1]])
    assert group_closure([shear], 50) is None


def test_burnside_spanning():
    swap = rational([[0, 1], [1, 0]])
    shear = rational([[1, 1], [0, 1]])
    assert burnside_spans([swap, shear])
    diag = rational([[2, 0], [0, 3]])
    assert not burnside_spans([diag])


def test_inverse_and_det():
    comp = companion_matrix(QQ, [Fraction(1), Fraction(-3), Fraction(1)])
    assert inverse(comp) * comp == ExactMatrix.identity(QQ, 2)
    assert det(comp) == 1
    assert det(rational([[2, 0], [0, 3]])) == 6
    with pytest.raises(ZeroDivisionError):
        inverse(rational([[1, 1], [1, 1]]))
