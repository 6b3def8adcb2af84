"""Brute-force oracles used to check the closed formulas and the main
decision procedures.

These are deliberately naive and share no code with the paths they check.
Alpha and omega come from iterating lambda and m.  Semigroup membership is
plain enumeration over a coefficient box.  A bound being hit is reported as such and
never as a negative answer.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Optional, Sequence

from .codim2 import BinomialPair, SimplicialCodim2
from .errors import BoundExceededError
from .lattice import solve_linear_diophantine
from .semigroup import GeneratorSet, Partition


@dataclass(frozen=True)
class OracleConfig:
    lambda_max: int = 10000
    k_max: int = 16
    coeff_bound: int = 64

    def __post_init__(self):
        if self.lambda_max < 1 or self.coeff_bound < 1 or self.k_max < 0:
            raise ValueError("oracle bounds must be positive (k_max nonnegative)")


# --- alpha and omega -----------------------------------------------------------

def alpha_oracle(t: SimplicialCodim2, cfg: OracleConfig = OracleConfig()) -> int:
    """First lambda >= 1 with lambda*a in Z{b, c e_1, ..., c e_n}."""
    rows = [[t.b[i]] + [t.c if j == i else 0 for j in range(t.n)] for i in range(t.n)]
    for lam in range(1, cfg.lambda_max + 1):
        if solve_linear_diophantine(rows, [lam * x for x in t.a]) is not None:
            return lam
    raise BoundExceededError(f"no lambda <= {cfg.lambda_max} puts lambda*a in the lattice")


def omega_oracle(t: SimplicialCodim2, alpha: int, cfg: OracleConfig = OracleConfig()) -> int:
    """First m >= 1 with c dividing every m*alpha*a_i."""
    for m in range(1, cfg.lambda_max + 1):
        if all(m * alpha * x % t.c == 0 for x in t.a):
            return m
    raise BoundExceededError(f"no m <= {cfg.lambda_max} found")


# --- naive lattice tools -------------------------------------------------------

def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def _qrank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return len(_rref([[Fraction(x) for x in v] for v in vectors])[1])


def _det(m: list[list[int]]) -> int:
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, x in enumerate(m[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * x * _det(minor)
    return total


def _minors_gcd(cols: Sequence[Sequence[int]], k: int) -> int:
    dim = len(cols[0])
    g = 0
    for ri in combinations(range(dim), k):
        for ci in combinations(range(len(cols)), k):
            g = gcd(g, _det([[cols[j][i] for j in ci] for i in ri]))
    return g


def _in_lattice(gens: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    r = _qrank(gens)
    if _qrank(list(gens) + [v]) != r:
        return False
    if r == 0:
        return not any(v)
    return _minors_gcd(gens, r) == _minors_gcd(list(gens) + [v], r)


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return tuple(ints) if first > 0 else tuple(-x for x in ints)


def intersection_generator_oracle(
    t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]], cfg: OracleConfig = OracleConfig()
) -> tuple[str, Optional[tuple[int, ...]]]:
    """('zero' | 'not_cyclic' | 'cyclic', generator) for Z t1 ∩ Z t2."""
    dim_int = _qrank(t1) + _qrank(t2) - _qrank(list(t1) + list(t2))
    if dim_int == 0:
        return "zero", None
    if dim_int > 1:
        return "not_cyclic", None
    # rational kernel of [t1 | -t2], mapped through t1
    cols = [list(v) for v in t1] + [[-x for x in v] for v in t2]
    dim = len(cols[0])
    rows = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(dim)]
    red, pivots = _rref(rows)
    for free in range(len(cols)):
        if free in pivots:
            continue
        x = [Fraction(0)] * len(cols)
        x[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][free]
        image = [sum(x[j] * t1[j][i] for j in range(len(t1))) for i in range(dim)]
        if any(image):
            d = _primitive(image)
            break
    else:  # pragma: no cover - rank count above guarantees a nonzero image
        raise AssertionError("no nonzero intersection vector found")
    for m in range(1, cfg.lambda_max + 1):
        w = tuple(m * x for x in d)
        if _in_lattice(t1, w) and _in_lattice(t2, w):
            return "cyclic", w
    raise BoundExceededError(f"no multiple m <= {cfg.lambda_max} of {d} lies in both lattices")


# --- membership by enumeration -------------------------------------------------

def _enumerate_membership(gens: Sequence[Sequence[int]], v: Sequence[int], bound: int) -> tuple[bool, bool]:
    """(found, truncated).  Single-coordinate generators are solved by division,
    the rest enumerated over the full box [0, min(bound, v_j // g_j)]."""
    dim = len(v)
    if any(x < 0 for x in v):
        return False, False
    axis: dict[int, int] = {}
    rest = []
    for g in gens:
        nz = [j for j in range(dim) if g[j]]
        if len(nz) == 1 and nz[0] not in axis:
            axis[nz[0]] = g[nz[0]]
        else:
            rest.append(g)
    truncated = False
    ranges = []
    for g in rest:
        cap = min(v[j] // g[j] for j in range(dim) if g[j])
        if cap > bound:
            truncated = True
            cap = bound
        ranges.append(range(cap + 1))
    for coeffs in product(*ranges):
        r = [v[j] - sum(c * g[j] for c, g in zip(coeffs, rest)) for j in range(dim)]
        if any(x < 0 for x in r):
            continue
        if all((r[j] % axis[j] == 0) if j in axis else r[j] == 0 for j in range(dim)):
            return True, truncated
    return False, truncated


class BruteStatus(enum.Enum):
    GLUED = "glued"
    LATTICE_OBSTRUCTION = "lattice_obstruction"
    NOT_GLUED = "not_glued"
    BOUND_EXCEEDED = "bound_exceeded"


@dataclass(frozen=True)
class BruteVerdict:
    status: BruteStatus
    k: Optional[int] = None
    w: Optional[tuple[int, ...]] = None


def gluing_brute(gens: GeneratorSet, part: Partition, p: int, cfg: OracleConfig = OracleConfig()) -> BruteVerdict:
    """Re-decide p-gluing of a partition by enumeration, k = 0 .. cfg.k_max."""
    part.validate(len(gens))
    t1 = [gens[i] for i in sorted(part.left)]
    t2 = [gens[i] for i in sorted(part.right)]
    kind, w = intersection_generator_oracle(t1, t2, cfg)
    if kind != "cyclic":
        return BruteVerdict(BruteStatus.LATTICE_OBSTRUCTION)
    signs = [s for s in (w, tuple(-x for x in w)) if min(s) >= 0]
    if not signs:
        return BruteVerdict(BruteStatus.LATTICE_OBSTRUCTION, w=w)
    truncated = False
    for k in range(cfg.k_max + 1):
        for s in signs:
            target = [p**k * x for x in s]
            f1, tr1 = _enumerate_membership(t1, target, cfg.coeff_bound)
            f2, tr2 = _enumerate_membership(t2, target, cfg.coeff_bound)
            if f1 and f2:
                if truncated:
                    return BruteVerdict(BruteStatus.BOUND_EXCEEDED, w=w)
                return BruteVerdict(BruteStatus.GLUED, k=k, w=w)
            truncated |= (tr1 and not f1) or (tr2 and not f2)
    if truncated:
        return BruteVerdict(BruteStatus.BOUND_EXCEEDED, w=w)
    return BruteVerdict(BruteStatus.NOT_GLUED, w=w)


# --- relation checker ----------------------------------------------------------

def relation_check(pair: BinomialPair, t: SimplicialCodim2) -> bool:
    """Both binomials correspond to semigroup relations among a, b, c e_i."""
    y1, y2 = (t.b, t.a) if pair.swapped else (t.a, t.b)
    n = t.n
    exps = [pair.y_lead, pair.y_other, pair.gamma, *pair.x_first, *pair.deltas]
    if len(pair.x_first) != n or len(pair.deltas) != n or min(exps) < 0:
        return False
    if pair.y_lead == 0 or pair.gamma == 0:
        return False

    def scale(s, v):
        return [s * x for x in v]

    def add(*vs):
        return [sum(col) for col in zip(*vs)]

    axes = [[t.c if i == j else 0 for j in range(n)] for i in range(n)]
    lhs1 = scale(pair.y_lead, y1)
    rhs1 = add(scale(pair.y_other, y2), *[scale(e, ax) for e, ax in zip(pair.x_first, axes)])
    lhs2 = scale(pair.gamma, y2)
    rhs2 = add([0] * n, *[scale(e, ax) for e, ax in zip(pair.deltas, axes)])
    return lhs1 == rhs1 and lhs2 == rhs2


# --- random instances ----------------------------------------------------------

def random_codim2(
    rng: random.Random,
    n_min: int = 2,
    n_max: int = 4,
    c_max: int = 12,
    entry_max: int = 12,
    incomparable: bool = True,
) -> SimplicialCodim2:
    """A random normalized instance (rejection sampling)."""
    from .codim2 import normalize, support_relation
    from .errors import ValidationError

    while True:
        n = rng.randint(n_min, n_max)
        c = rng.randint(1, c_max)
        # uniform entries almost always give g(T) = 1, so two thirds of the
        # draws favour multiples of c to make the other cases show up
        multiples = [m for m in range(c, entry_max + 1, c)] or [0]
        mode = rng.randrange(3)

        def entry() -> int:
            if mode == 1 and rng.random() < 0.6:
                return rng.choice([0] + multiples)
            return rng.choice((0, rng.randint(1, entry_max)))

        a = [entry() for _ in range(n)]
        b = [entry() for _ in range(n)]
        if mode == 2 and n >= 3:
            # one a-only and one b-only coordinate carrying multiples of c
            a[0], b[0] = rng.choice(multiples), 0
            a[1], b[1] = 0, rng.choice(multiples)
            order = list(range(n))
            rng.shuffle(order)
            a = [a[i] for i in order]
            b = [b[i] for i in order]
        try:
            t, _ = normalize(SimplicialCodim2(c, tuple(a), tuple(b)))
        except ValidationError:
            continue
        if incomparable and not support_relation(t.a, t.b).incomparable:
            continue
        return t


@dataclass
class CheckTally:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: Optional[str] = None

    def record(self, ok: bool, detail: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = detail


@dataclass
class SuiteReport:
    trials: int
    seed: int
    checks: list[CheckTally] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.failed == 0 for c in self.checks)


PROBE_PRIMES = (2, 3, 5, 7, 11)


def run_suite(trials: int = 500, seed: int = 0, kmax: int = 8) -> SuiteReport:
    """Oracle-vs-formula randomized suite over incomparable-support inputs."""
    from .codim2 import (
        CaseKind, classify, compute_alpha, compute_gT, compute_omega, emit_binomials,
    )
    from .semigroup import check_p_gluing

    rng = random.Random(seed)
    names = ["alpha_formula_vs_oracle", "omega_formula_vs_oracle", "omega_equals_gT",
             "gT_divides_c", "trichotomy_vs_gluing_probes", "brute_vs_decision",
             "binomial_relations", "binomial_mutations_rejected"]
    tallies = {n: CheckTally(n) for n in names}
    cfg = OracleConfig(k_max=kmax)
    for _ in range(trials):
        t = random_codim2(rng)
        tag = f"c={t.c} a={list(t.a)} b={list(t.b)}"
        alpha = compute_alpha(t)
        ao = alpha_oracle(t, cfg)
        tallies["alpha_formula_vs_oracle"].record(alpha == ao, f"{tag}: formula {alpha}, oracle {ao}")
        omega = compute_omega(t)
        oo = omega_oracle(t, ao, cfg)
        tallies["omega_formula_vs_oracle"].record(omega == oo, f"{tag}: formula {omega}, oracle {oo}")
        g = compute_gT(t)
        tallies["omega_equals_gT"].record(omega == g, f"{tag}: omega {omega}, g(T) {g}")
        tallies["gT_divides_c"].record(t.c % g == 0, f"{tag}: g(T) {g}")

        report = classify(t)
        gens = t.generators()
        part = Partition.from_left([0], len(gens))
        ok = True
        brute_ok = True
        for p in PROBE_PRIMES:
            res = check_p_gluing(gens, part, p, kmax)
            if report.case.kind is CaseKind.EVERY:
                ok &= res.glued and res.certificate.k == 0
            else:
                ok &= res.glued == report.case.admits(p)
            bv = gluing_brute(gens, part, p, cfg)
            if bv.status is BruteStatus.GLUED:
                brute_ok &= res.glued and res.certificate.k == bv.k
            elif bv.status is BruteStatus.NOT_GLUED:
                brute_ok &= not res.glued and res.status.value == "not_within_bound"
            elif bv.status is BruteStatus.LATTICE_OBSTRUCTION:
                brute_ok &= res.status.value == "lattice_obstruction"
        tallies["trichotomy_vs_gluing_probes"].record(ok, f"{tag}: case {report.case}")
        tallies["brute_vs_decision"].record(brute_ok, tag)

        for p in PROBE_PRIMES:
            if report.case.admits(p):
                pair = emit_binomials(t, p)
                tallies["binomial_relations"].record(relation_check(pair, t), f"{tag} p={p}")
                tallies["binomial_mutations_rejected"].record(
                    not any(relation_check(m, t) for m in pair.mutations()), f"{tag} p={p}"
                )
                break
    return SuiteReport(trials=trials, seed=seed, checks=list(tallies.values()))
