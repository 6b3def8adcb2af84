"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line (also
collected in the terminal summary).  Run alone with ``pytest -m acceptance``."""
import random
import time

import pytest

from toricglue.cli import run_sweep
from toricglue.codim2 import (
    CaseKind,
    SimplicialCodim2,
    classify,
    compute_gT,
    emit_binomials,
    normalize,
    support_relation,
)
from toricglue.errors import ValidationError
from toricglue.lattice import (
    is_unimodular,
    matmul,
    minors_gcd_direct,
    smith_normal_form,
    solvable_by_minors,
    solve_linear_diophantine,
)
from toricglue.oracle import random_codim2, relation_check, run_suite
from toricglue.semigroup import (
    GeneratorSet,
    GluingStatus,
    Partition,
    check_p_gluing,
    completely_p_glued,
    extend_two_primes,
)

PROBES = (2, 3, 5, 7, 11)
SEED = 0
TRIALS = 500

# wall-clock ceilings
PER_INSTANCE_S = 1.0
PQ_TOTAL_S = 5.0
CODIM3_TOTAL_S = 10.0
SUITE_TOTAL_S = 60.0


@pytest.fixture(scope="module")
def suite():
    start = time.perf_counter()
    report = run_suite(trials=TRIALS, seed=SEED, kmax=8)
    return report, time.perf_counter() - start


def tally(report, name):
    return next(c for c in report.checks if c.name == name)


@pytest.mark.acceptance("1")
def test_c1_prime_family(criterion):
    worst = 0.0
    for p, a, b in [(2, 3, 5), (3, 2, 4), (3, 2, 5), (5, 2, 3)]:
        start = time.perf_counter()
        r = classify(SimplicialCodim2(p, (p, 0, a), (0, p, b)))
        f1, f2 = emit_binomials(r.input, p).display()
        worst = max(worst, time.perf_counter() - start)
        assert r.case.kind is CaseKind.EXACTLY_ONE and r.case.prime == p
        assert f1 == f"y1^{p} - x1^{p} x3^{a}"
        assert f2 == f"y2^{p} - x2^{p} x3^{b}"
        assert r.binomials.display() == (f1, f2)
    criterion["detail"] = f"4 instances, slowest {worst:.3f}s (< {PER_INSTANCE_S}s)"
    assert worst < PER_INSTANCE_S


@pytest.mark.acceptance("2")
def test_c2_pq_family(criterion):
    start = time.perf_counter()
    for p, q, a, b in [(2, 3, 5, 7), (2, 5, 3, 7), (3, 5, 2, 7)]:
        c = p * q
        t = SimplicialCodim2(c, (c, 0, a), (0, c, b))
        assert classify(t).case.kind is CaseKind.NO_PRIME
        part = Partition.from_left([0], len(t.generators()))
        for r in PROBES:
            assert not check_p_gluing(t.generators(), part, r, kmax=8).glued
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"3 instances x 5 primes, {elapsed:.2f}s (< {PQ_TOTAL_S}s)"
    assert elapsed < PQ_TOTAL_S


@pytest.mark.acceptance("3")
def test_c3_codim3_example(criterion):
    start = time.perf_counter()
    gens = GeneratorSet.of([(3, 0, 3), (0, 4, 2), (3, 2, 1), (6, 0, 0), (0, 6, 0), (0, 0, 6)])
    expected = {0: {2}, 1: {3}, 2: {2, 3, 5, 7}}
    for left, glued_for in expected.items():
        part = Partition.from_left([left], 6)
        for p in (2, 3, 5, 7):
            res = check_p_gluing(gens, part, p, kmax=8)
            assert res.glued == (p in glued_for), (left, p)
            if res.glued:
                assert res.certificate.verify(gens)
            else:
                assert res.status is GluingStatus.NOT_WITHIN_BOUND
    first = check_p_gluing(gens, Partition.from_left([0], 6), 2, kmax=8).certificate
    assert first.k == 1 and first.w == (3, 0, 3)
    for p in (2, 3, 5, 7):
        tree = completely_p_glued(gens, p, kmax=8)
        assert tree is not None and tree.verify()
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"12 partition verdicts + 4 trees, {elapsed:.2f}s (< {CODIM3_TOTAL_S}s)"
    assert elapsed < CODIM3_TOTAL_S


@pytest.mark.acceptance("4")
def test_c4_formula_oracle(criterion, suite):
    report, elapsed = suite
    names = ("alpha_formula_vs_oracle", "omega_formula_vs_oracle", "omega_equals_gT")
    fails = {n: tally(report, n).failed for n in names}
    criterion["detail"] = f"{TRIALS} inputs, seed {SEED}, failures {fails}, {elapsed:.1f}s (< {SUITE_TOTAL_S}s)"
    assert all(tally(report, n).passed == TRIALS for n in names)
    assert not any(fails.values())
    assert elapsed < SUITE_TOTAL_S


@pytest.mark.acceptance("5")
def test_c5_trichotomy(criterion, suite):
    report, _ = suite
    tri, brute = tally(report, "trichotomy_vs_gluing_probes"), tally(report, "brute_vs_decision")
    criterion["detail"] = f"{tri.failed} disagreements with probes p in {PROBES}, {brute.failed} with brute force"
    assert tri.passed == brute.passed == TRIALS
    assert tri.failed == brute.failed == 0


@pytest.mark.acceptance("6")
def test_c6_divisor_invariants(criterion, suite):
    report, _ = suite
    assert tally(report, "gT_divides_c").failed == 0
    # extra inputs drawn around multiples of each c
    rng = random.Random(SEED)
    checked = 0
    for _ in range(3000):
        c = rng.randint(1, 30)
        n = rng.randint(2, 4)
        pool = [0] + list(range(c, 3 * c + 1, c)) + [rng.randint(1, 3 * c) for _ in range(3)]
        try:
            t, _ = normalize(SimplicialCodim2(c, tuple(rng.choice(pool) for _ in range(n)),
                                              tuple(rng.choice(pool) for _ in range(n))))
        except ValidationError:
            continue
        if support_relation(t.a, t.b).incomparable:
            assert t.c % compute_gT(t) == 0
            checked += 1
    prime_powers = [2, 3, 4, 5, 7, 8, 9, 16, 25]
    rows = run_sweep(prime_powers, 3, 5)
    no_prime = [r for r in rows if r[3] == CaseKind.NO_PRIME.value]
    criterion["detail"] = (f"g(T) | c on {TRIALS + checked} inputs; sweep c in {prime_powers}: "
                           f"{len(rows)} rows, {len(no_prime)} no_prime")
    assert no_prime == []


def _glued_pairs(rng):
    """Random (generators, partition) with certificates for two distinct
    primes, at least one of them needing k > 0."""
    primes = (2, 3, 5, 7)
    while True:
        if rng.random() < 0.5:
            t = random_codim2(rng, n_min=2, n_max=3, c_max=10, entry_max=10, incomparable=False)
            gens = t.generators()
        else:
            dim = rng.randint(2, 3)
            c = rng.randint(2, 8)
            extra = {tuple(rng.randint(0, 2 * c) for _ in range(dim)) for _ in range(rng.randint(1, 2))}
            axes = {tuple(c * (i == j) for j in range(dim)) for i in range(dim)}
            extra = [v for v in extra if any(v) and v not in axes]
            if not extra:
                continue
            gens = GeneratorSet.of(sorted(extra) + sorted(axes, reverse=True))
        size = len(gens)
        left = rng.sample(range(size), rng.randint(1, size - 1))
        part = Partition.from_left(left, size)
        certs = []
        for p in rng.sample(primes, len(primes)):
            res = check_p_gluing(gens, part, p, kmax=6)
            if res.glued:
                certs.append(res.certificate)
            if len(certs) == 2:
                # skip pairs where both sides already glue outright
                if certs[0].k or certs[1].k:
                    yield gens, part, certs
                break


@pytest.mark.acceptance("7")
def test_c7_two_primes_give_a_third(criterion):
    rng = random.Random(SEED)
    source = _glued_pairs(rng)
    failures = 0
    for _ in range(100):
        gens, part, (cp, cq) = next(source)
        third = rng.choice([r for r in (2, 3, 5, 7, 11, 13, 17) if r not in (cp.prime, cq.prime)])
        cert = extend_two_primes(cp, cq, third)
        failures += not (cert.prime == third and cert.verify(gens))
    criterion["detail"] = f"100 partitions glued for two primes (k > 0 on at least one), {failures} failures"
    assert failures == 0


@pytest.mark.acceptance("8")
def test_c8_exact_lattice(criterion):
    rng = random.Random(SEED)
    snf_fail = 0
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 7)
        m = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        snf = smith_normal_form(m)
        d = snf.diagonal
        ok = matmul(matmul(snf.U, m), snf.V) == snf.S
        ok &= is_unimodular(snf.U) and is_unimodular(snf.V)
        ok &= all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
        prod = 1
        for k in range(1, snf.rank + 1):
            prod *= d[k - 1]
            ok &= minors_gcd_direct(m, k) == prod
        snf_fail += not ok
    solve_fail = 0
    solvable = 0
    for _ in range(200):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        if rng.random() < 0.5:
            x = [rng.randint(-5, 5) for _ in range(cols)]
            v = [sum(r[j] * x[j] for j in range(cols)) * rng.choice([1, 1, 2]) for r in m]
        else:
            v = [rng.randint(-20, 20) for _ in range(rows)]
        sol = solve_linear_diophantine(m, v)
        solvable += sol is not None
        solve_fail += (sol is not None) != solvable_by_minors(m, v)
    criterion["detail"] = f"SNF 200 matrices: {snf_fail} failures; 200 systems ({solvable} solvable): {solve_fail} disagreements"
    assert snf_fail == 0 and solve_fail == 0


@pytest.mark.acceptance("9")
def test_c9_relation_soundness(criterion, suite):
    report, _ = suite
    emitted = tally(report, "binomial_relations")
    mutated = tally(report, "binomial_mutations_rejected")
    # fast-path inputs too, for every admissible probe prime
    rng = random.Random(SEED + 1)
    extra = extra_mut = 0
    for _ in range(200):
        t = random_codim2(rng, n_min=1, n_max=4, c_max=10, entry_max=10, incomparable=False)
        r = classify(t)
        pairs = [r.binomials] if r.binomials else []
        pairs += [emit_binomials(t, p) for p in PROBES if r.case.admits(p)][:2]
        for pair in pairs:
            assert relation_check(pair, r.normalized)
            assert not any(relation_check(m, r.normalized) for m in pair.mutations())
            extra += 1
            extra_mut += len(pair.mutations())
    criterion["detail"] = (f"{emitted.passed + extra} pairs sound, {emitted.failed} unsound; "
                           f"{extra_mut} single-exponent mutations plus {mutated.passed} mutation sets, all rejected")
    assert emitted.failed == mutated.failed == 0
