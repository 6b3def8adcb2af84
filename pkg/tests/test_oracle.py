import random

import pytest

from toricglue.codim2 import SimplicialCodim2, compute_alpha, compute_omega, emit_binomials, support_relation
from toricglue.errors import BoundExceededError
from toricglue.oracle import (
    BruteStatus,
    OracleConfig,
    alpha_oracle,
    gluing_brute,
    intersection_generator_oracle,
    omega_oracle,
    random_codim2,
    relation_check,
    run_suite,
)
from toricglue.semigroup import GeneratorSet, Partition, check_p_gluing

FIRST = SimplicialCodim2(2, (2, 0, 3), (0, 2, 5))
CODIM3 = GeneratorSet.of([(3, 0, 3), (0, 4, 2), (3, 2, 1), (6, 0, 0), (0, 6, 0), (0, 0, 6)])


def test_alpha_examples():
    assert alpha_oracle(FIRST) == 1
    t = SimplicialCodim2(6, (2, 0, 1), (0, 3, 1))
    assert alpha_oracle(t) == compute_alpha(t)
    assert alpha_oracle(SimplicialCodim2(1, (2, 3), (5, 0))) == 1


def test_omega_examples():
    assert omega_oracle(FIRST, 1) == 2
    assert omega_oracle(SimplicialCodim2(3, (3, 6, 0), (0, 1, 1)), 1) == 1
    assert omega_oracle(SimplicialCodim2(6, (6, 0, 5), (0, 6, 7)), 1) == 6


def test_bounds_reported():
    with pytest.raises(BoundExceededError):
        omega_oracle(SimplicialCodim2(7, (1, 0), (0, 1)), 1, OracleConfig(lambda_max=3))
    with pytest.raises(ValueError):
        OracleConfig(coeff_bound=0)


def test_intersection_oracle():
    assert intersection_generator_oracle([(3, 0, 3)], [g for g in CODIM3.gens[1:]]) == ("cyclic", (3, 0, 3))
    assert intersection_generator_oracle([(1, 0)], [(0, 1)])[0] == "zero"
    assert intersection_generator_oracle([(1, 0), (0, 1)], [(2, 0), (0, 2)])[0] == "not_cyclic"


@pytest.mark.parametrize("left", [[0], [1], [2]])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_brute_agrees_on_codim3(left, p):
    part = Partition.from_left(left, 6)
    cfg = OracleConfig(k_max=2, coeff_bound=64)
    bv = gluing_brute(CODIM3, part, p, cfg)
    res = check_p_gluing(CODIM3, part, p, 2)
    assert bv.status in (BruteStatus.GLUED, BruteStatus.NOT_GLUED)
    assert (bv.status is BruteStatus.GLUED) == res.glued
    if res.glued:
        assert bv.k == res.certificate.k


def test_truncation_is_not_a_negative():
    gens = GeneratorSet.of([(1, 1), (2, 0), (0, 2)])
    bv = gluing_brute(gens, Partition.from_left([0], 3), 2, OracleConfig(coeff_bound=1, k_max=6))
    assert bv.status in (BruteStatus.GLUED, BruteStatus.BOUND_EXCEEDED)


def test_relation_check_rejects_wrong_shape():
    pair = emit_binomials(FIRST, 2)
    other = SimplicialCodim2(2, (2, 0, 3, 1), (0, 2, 5, 1))
    assert relation_check(pair, FIRST)
    assert not relation_check(pair, other)


def test_random_generator_properties():
    rng = random.Random(11)
    for _ in range(200):
        t = random_codim2(rng)
        assert t.is_normalized and support_relation(t.a, t.b).incomparable
        assert 2 <= t.n <= 4 and t.c <= 12


def test_suite_small_deterministic():
    r1 = run_suite(trials=40, seed=5)
    r2 = run_suite(trials=40, seed=5)
    assert r1.ok
    assert [(c.name, c.passed, c.failed) for c in r1.checks] == [(c.name, c.passed, c.failed) for c in r2.checks]
    assert all(c.passed + c.failed > 0 for c in r1.checks)
