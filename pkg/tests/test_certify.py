import itertools
import json
import random
from fractions import Fraction

import pytest

from hypertrace.certify import (
    EnumerationInvariantError,
    audit_krammer_singularities,
    certify_krammer_route,
    certify_nonabelian_cubic,
    certify_quadratic_exclusion,
    enumerate_rank2,
    iter_rank2_rows,
    load_takeuchi_table,
    rational_quaternion_discriminants,
    REAL_CYCLOTOMIC_24_DISCRIMINANT,
)
from hypertrace.cyclo import quadratic_subfields
from hypertrace.hyper import (
    FINITE,
    REDUCIBLE,
    HypergeometricDatum,
    classify_rank2,
    is_kummer_induced,
)
from hypertrace.ratcore import is_squarefree
from hypertrace.tracefield import adjoint_trace_field_rank2

F = Fraction


def test_quadratic_exclusion_examples():
    assert certify_quadratic_exclusion(7).verdict
    report5 = certify_quadratic_exclusion(5)
    assert not report5.verdict
    assert not report5.steps[0].passed  # hypothesis D >= 7 fails

    report15 = certify_quadratic_exclusion(15)
    assert report15.verdict
    assert "60" in report15.steps[4].witness and "3600" in report15.steps[4].witness


def test_quadratic_exclusion_stored_discriminant():
    assert REAL_CYCLOTOMIC_24_DISCRIMINANT == 2**8 * 3**2
    report = certify_quadratic_exclusion(7)
    assert "2304" in report.steps[4].witness


def test_quadratic_exclusion_range():
    for d in range(7, 500, 2):
        if not is_squarefree(d):
            continue
        assert certify_quadratic_exclusion(d).verdict, d
    for d in (3, 5):
        assert not certify_quadratic_exclusion(d).verdict


def test_cubic_examples():
    assert certify_nonabelian_cubic(148).verdict
    assert not certify_nonabelian_cubic(49).verdict
    assert certify_nonabelian_cubic(1593).verdict


def test_krammer_route_examples():
    assert certify_krammer_route({3, 5}).verdict
    assert not certify_krammer_route({2, 3}).verdict
    assert not certify_krammer_route(set()).verdict
    assert not certify_krammer_route({7}).verdict  # odd cardinality
    assert certify_krammer_route({2, 7}).verdict


def test_takeuchi_table():
    rows = load_takeuchi_table()
    assert len(rows) == 13
    assert all(row.base_field_degree == 1 for row in rows)
    assert rational_quaternion_discriminants() == {"(1)", "(2)(3)"}
    cocompact = [row for row in rows if None not in row.orders]
    assert sorted(row.orders for row in cocompact) == [
        (2, 4, 6),
        (2, 6, 6),
        (3, 4, 4),
        (3, 6, 6),
    ]
    assert all(row.discriminant_label == "(2)(3)" for row in cocompact)


def test_singularity_audit():
    report = audit_krammer_singularities()
    assert report.verdict
    assert "82" in report.steps[0].witness


def test_report_serialization():
    report = certify_quadratic_exclusion(7)
    payload = report.to_dict()
    assert payload["verdict"] == "pass"
    assert len(payload["steps"]) == 5
    json.dumps(payload)  # serializable


# enumeration ---------------------------------------------------------------


def brute_force_rows(n_max):
    """Orbit-dedupe oracle: enumerate everything, canonicalize explicitly."""
    seen = set()
    for n in range(1, n_max + 1):
        for j1, j2, j3 in itertools.product(range(n), repeat=3):
            import math

            if math.gcd(math.gcd(j1, j2), math.gcd(j3, n)) != 1 and n > 1:
                continue
            orbit = set()
            for x, y, z in (
                (j1, j2, j3),
                ((j1 - j3) % n, (j2 - j3) % n, -j3 % n),
                (-j1 % n, -j2 % n, -j3 % n),
                ((j3 - j1) % n, (j3 - j2) % n, j3),
            ):
                orbit.add((min(x, y), max(x, y), z, n))
            seen.add(min(orbit))
    return seen


def test_enumeration_matches_brute_force_oracle():
    import math

    for bound in (2, 6, 9):
        rows = list(iter_rank2_rows(bound))
        expected = brute_force_rows(bound)
        produced = set()
        for r in rows:
            n = math.lcm(
                r.a[0].denominator,
                r.a[1].denominator,
                r.b[0].denominator,
            )
            produced.add((int(r.a[0] * n), int(r.a[1] * n), int(r.b[0] * n), n))
        assert produced == expected


def test_enumeration_small_examples():
    rows2 = enumerate_rank2(2)
    assert all(
        r.field is None or r.field.degree == 1 for r in rows2
    )  # all fields are Q at conductor <= 2
    for r in rows2:
        for x in r.a + r.b:
            assert x.denominator in (1, 2)

    rows10 = enumerate_rank2(10)
    hits = [r for r in rows10 if r.signature == (5, 2, 2)]
    assert hits, "the (5,2,2) row must appear by conductor 10"
    for row in hits:
        assert row.field is not None and row.field.degree == 2
        assert quadratic_subfields(row.field) == [5]


def test_enumeration_rows_match_module_classification():
    rng = random.Random(14)
    rows = list(iter_rank2_rows(12))
    sample = rng.sample(rows, 60)
    for row in sample:
        h = HypergeometricDatum.from_fractions(row.a, row.b)
        assert classify_rank2(h) == row.classification
        if row.classification != REDUCIBLE:
            assert adjoint_trace_field_rank2(h) == row.field
            induced = is_kummer_induced(h)
            if row.classification == "infinite-dihedral":
                assert induced == 2


def test_enumeration_no_odd_quadratic_field_up_to_24():
    for row in iter_rank2_rows(24):
        if row.field is not None and row.field.degree == 2:
            quads = quadratic_subfields(row.field)
            assert len(quads) == 1
            assert not (quads[0] % 2 == 1 and quads[0] >= 7)


def test_enumeration_galois_twist_symmetry():
    rng = random.Random(44)
    from hypertrace.ratcore import units_mod

    rows = [r for r in iter_rank2_rows(10) if r.classification != REDUCIBLE]
    for row in rng.sample(rows, 25):
        h = HypergeometricDatum.from_fractions(row.a, row.b)
        n = h.conductor
        for k in units_mod(n):
            twisted = h.twisted(k)
            if set(twisted.a_values()) & set(twisted.b_values()):
                continue
            assert adjoint_trace_field_rank2(twisted) == row.field


def test_enumeration_workers_consistency():
    serial = enumerate_rank2(8)
    parallel = enumerate_rank2(8, workers=2)
    assert sorted((r.a, r.b) for r in serial) == sorted((r.a, r.b) for r in parallel)


def test_enumeration_rejects_tiny_bound():
    with pytest.raises(ValueError):
        list(iter_rank2_rows(1))
