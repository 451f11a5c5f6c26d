import random
from fractions import Fraction

import pytest

from hypertrace.cyclo import (
    cyclotomic_field,
    field_contains,
    quadratic_subfields,
    same_subfield,
)
from hypertrace.hyper import HypergeometricDatum, monodromy_triple, unimodular_twist
from hypertrace.linalg import ExactMatrix, inverse
from hypertrace.tracefield import (
    adjoint_matrix_gl2,
    adjoint_matrix_sl2,
    adjoint_trace_field_rank2,
    adjoint_trace_field_rank2_from_numbers,
    adjoint_trace_field_tuple,
    generator_adjoint_traces,
    trace_field_rigid,
    trace_field_tuple,
    word_trace_sample,
)

F = Fraction


def datum(a, b):
    return HypergeometricDatum.from_fractions(a, b)


def random_irreducible(rng, max_den=8):
    while True:
        def residue():
            den = rng.randint(1, max_den)
            return F(rng.randint(0, den - 1), den)

        h = datum([residue(), residue()], [residue(), 0])
        if set(h.a_values()) & set(h.b_values()):
            continue
        return h


def test_trace_field_rigid_examples():
    d1 = trace_field_rigid(datum([F(1, 2), F(1, 2)], [F(1, 3), 0]))
    assert d1.conductor == 6 and d1.stabilizer == (1,) and d1.degree == 2

    d2 = trace_field_rigid(datum([F(1, 5), F(4, 5)], [F(1, 2), 0]))
    assert d2.conductor == 10 and d2.stabilizer == (1, 9) and d2.degree == 2
    assert quadratic_subfields(d2) == [5]

    d3 = trace_field_rigid(datum([F(1, 2)], [0]))
    assert d3.degree == 1

    with pytest.raises(ValueError):
        trace_field_rigid(datum([F(1, 2)], [F(1, 2)]))


def test_trace_field_cross_check_g0_inverse_trace():
    h = datum([F(1, 2), F(1, 2)], [F(1, 3), 0])
    triple = monodromy_triple(h)
    field = triple.field
    assert inverse(triple.g0).trace() == field.root_of_unity(F(1, 3)) + 1


def test_adjoint_trace_field_examples():
    d1 = adjoint_trace_field_rank2(datum([F(1, 5), F(4, 5)], [F(1, 2), 0]))
    assert d1.degree == 2 and quadratic_subfields(d1) == [5]
    assert d1.conductor == 10 and d1.stabilizer == (1, 9)

    d2 = adjoint_trace_field_rank2(datum([F(1, 2), F(1, 2)], [F(1, 3), 0]))
    assert d2.degree == 1  # 2 + zeta_3 + zeta_3^-1 = 1 is rational

    # all three orders in {1,2,3,4,6} force the rational field
    for a, b in (
        ([F(1, 2), F(1, 2)], [F(1, 3), 0]),
        ([F(1, 4), F(3, 4)], [F(1, 2), 0]),
        ([F(1, 6), F(5, 6)], [F(1, 2), 0]),
    ):
        h = datum(a, b)
        orders = set()
        from hypertrace.hyper import generator_exponents

        orders = {x.denominator for x in generator_exponents(h)}
        if orders <= {1, 2, 3, 4, 6}:
            assert adjoint_trace_field_rank2(h).degree == 1


def test_adjoint_field_equals_fixed_field_of_trace_numbers():
    rng = random.Random(6)
    for _ in range(15):
        h = random_irreducible(rng)
        exponent_route = adjoint_trace_field_rank2(h)
        numbers_route = adjoint_trace_field_rank2_from_numbers(h)
        assert exponent_route == numbers_route


def test_adjoint_contained_in_trace_field():
    rng = random.Random(29)
    for _ in range(15):
        h = random_irreducible(rng)
        trace = trace_field_rigid(h)
        adjoint = adjoint_trace_field_rank2(h)
        assert field_contains(trace, adjoint)


def test_galois_twist_equivariance():
    rng = random.Random(15)
    from hypertrace.ratcore import units_mod

    for _ in range(10):
        h = random_irreducible(rng)
        n = h.conductor
        for k in units_mod(n):
            twisted = h.twisted(k)
            if set(twisted.a_values()) & set(twisted.b_values()):
                continue
            assert adjoint_trace_field_rank2(twisted) == adjoint_trace_field_rank2(h)


def test_word_trace_sample_inverse_symmetry():
    h = datum([F(1, 5), F(4, 5)], [F(1, 2), 0])
    generators = unimodular_twist(monodromy_triple(h))
    sample = word_trace_sample(generators, 3)
    assert sample.max_length == 3 and len(sample.traces) > 1
    # determinant-one words satisfy tr(w^-1) = tr(w), so the sampled trace
    # set is closed under the inverse-word symmetry
    for w in (generators[0] * generators[1], generators[2] * generators[0]):
        assert inverse(w).trace() == w.trace()
        assert w.trace() in sample.traces


def test_sampled_trace_field_matches_rigid():
    for a, b in (
        ([F(1, 2), F(1, 2)], [F(1, 3), 0]),
        ([F(1, 5), F(4, 5)], [F(1, 2), 0]),
        ([F(1, 8), F(3, 8)], [F(1, 2), 0]),
    ):
        h = datum(a, b)
        rigid = trace_field_rigid(h)
        sampled = trace_field_tuple(monodromy_triple(h).matrices())
        assert same_subfield(rigid, sampled)


def test_adjoint_tuple_examples():
    f1 = cyclotomic_field(4)
    identity = ExactMatrix.identity(f1, 2)
    d = adjoint_trace_field_tuple([identity, identity])
    assert d.degree == 1

    h = datum([F(1, 5), F(4, 5)], [F(1, 2), 0])
    twisted = unimodular_twist(monodromy_triple(h))
    sampled = adjoint_trace_field_tuple(twisted)
    assert same_subfield(sampled, adjoint_trace_field_rank2(h))

    with pytest.raises(ValueError):
        adjoint_trace_field_tuple([monodromy_triple(h).g0])


def test_adjoint_matrix_identities():
    rng = random.Random(33)
    h = datum([F(1, 5), F(4, 5)], [F(1, 2), 0])
    g0, g1, ginf = unimodular_twist(monodromy_triple(h))
    words = [g0, g1, ginf]
    for _ in range(20):
        w = words[rng.randrange(3)]
        for _ in range(rng.randint(1, 4)):
            w = w * words[rng.randrange(3)]
        trw = w.trace()
        assert adjoint_matrix_sl2(w).trace() == trw * trw - 1
        assert adjoint_matrix_gl2(w).trace() == trw * trw
        assert (w * w).trace() == adjoint_matrix_gl2(w).trace() - 2


def test_generator_adjoint_traces_match_adjoint_matrices():
    h = datum([F(1, 5), F(4, 5)], [F(1, 2), 0])
    triple = monodromy_triple(h)
    field = triple.field
    expected = generator_adjoint_traces(h)
    actual = [
        adjoint_matrix_gl2(m).trace()
        for m in (triple.gInf, triple.g0, triple.g1)
    ]
    for want, got in zip(expected, actual):
        assert got == field.embed(want) or got == want
