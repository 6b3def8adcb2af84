"""Simplicial codimension-2 sets T = {a, b, c e_1, ..., c e_n}.

Finds the primes p for which T is completely p-glued and produces the two
defining binomials

    F1 = y1^(p^k alpha) - y2^beta x1^beta_1 ... xn^beta_n
    F2 = y2^gamma      - x1^delta_1 ... xn^delta_n

for the variety parametrized by x_i = u_i^c, y1 = u^a, y2 = u^b.

The invariants, for normalized T (gcd(c, a, b) = 1):

    alpha = c gcd_i(c, b_i) / gcd_{i<j}(c, a_i b_j - a_j b_i)
    c'    = gcd_{i<j}(c, a_i b_j - a_j b_i)
    g(T)  = c' / (gcd_i(c', a_i) gcd_i(c', b_i))
    omega = c / gcd(c, alpha gcd_i(a_i))

g(T) (equivalently omega) decides the case when the supports are
incomparable and not complementary.  In all other cases, and whenever
n <= 2, T is completely p-glued for every p.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .arith import factorize, is_prime, valuation
from .errors import BoundExceededError, HypothesisError, InadmissiblePrimeError, ValidationError
from .lattice import IntVector, gcd_list
from .semigroup import (
    DEFAULT_SIZE_LIMIT,
    GeneratorSet,
    GluingCertificate,
    Partition,
    check_gluing,
    check_p_gluing,
    complete_intersection_tree,
    nn_membership,
)

__all__ = [
    "SimplicialCodim2", "SupportRelation", "CaseKind", "Case", "BinomialPair",
    "ClassificationReport", "normalize", "support_relation", "compute_alpha",
    "compute_c_prime", "compute_gT", "compute_omega", "classify", "emit_binomials",
    "factorize", "case_from_invariant", "classify_case", "relations_hold",
]

# upper limit on k when it has to be found by search (comparable supports)
FAST_PATH_KMAX = 64


@dataclass(frozen=True)
class SimplicialCodim2:
    c: int
    a: IntVector
    b: IntVector
    projective: bool = False

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        b = tuple(int(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not isinstance(self.c, int) or self.c < 1:
            raise ValidationError(f"c must be a positive integer, got {self.c!r}")
        if len(a) != len(b) or not a:
            raise ValidationError(f"a and b must have the same positive length, got {len(a)} and {len(b)}")
        if any(x < 0 for x in a + b):
            raise ValidationError("entries of a and b must be nonnegative")
        if not any(a) or not any(b):
            raise ValidationError("a and b must be nonzero")
        for i, (x, y) in enumerate(zip(a, b)):
            if x == 0 and y == 0:
                raise ValidationError(f"coordinate {i + 1} has a_{i + 1} = b_{i + 1} = 0; drop it")
        if a == b:
            raise ValidationError("a and b coincide")
        axes = {tuple(self.c * int(i == j) for j in range(len(a))) for i in range(len(a))}
        for name, v in (("a", a), ("b", b)):
            if v in axes:
                raise ValidationError(f"{name} = {v} duplicates one of the c e_i")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def gcd_all(self) -> int:
        return gcd_list((self.c,) + self.a + self.b)

    @property
    def is_normalized(self) -> bool:
        return self.gcd_all == 1

    def generators(self) -> GeneratorSet:
        """[a, b, c e_1, ..., c e_n] in this order."""
        axes = [tuple(self.c * int(i == j) for j in range(self.n)) for i in range(self.n)]
        return GeneratorSet((self.a, self.b, *axes))

    def swapped(self) -> "SimplicialCodim2":
        return replace(self, a=self.b, b=self.a)

    def is_homogeneous(self) -> bool:
        return sum(self.a) == sum(self.b) == self.c


def normalize(t: SimplicialCodim2) -> tuple[SimplicialCodim2, int]:
    """Divide c, a, b by their common gcd; return (normalized, divisor)."""
    d = t.gcd_all
    if d == 1:
        return t, 1
    return (
        SimplicialCodim2(t.c // d, tuple(x // d for x in t.a), tuple(x // d for x in t.b), t.projective),
        d,
    )


class SupportRelation(enum.Enum):
    B_SUBSET_A = "b_subset_a"
    A_SUBSET_B = "a_subset_b"
    COMPLEMENT = "complement"
    INCOMPARABLE_NONCOMPLEMENT = "incomparable_noncomplement"

    @property
    def incomparable(self) -> bool:
        return self in (SupportRelation.COMPLEMENT, SupportRelation.INCOMPARABLE_NONCOMPLEMENT)


def support_relation(a: Sequence[int], b: Sequence[int]) -> SupportRelation:
    sa = {i for i, x in enumerate(a) if x}
    sb = {i for i, x in enumerate(b) if x}
    if sb <= sa:
        return SupportRelation.B_SUBSET_A
    if sa <= sb:
        return SupportRelation.A_SUBSET_B
    if not sa & sb and sa | sb == set(range(len(a))):
        return SupportRelation.COMPLEMENT
    return SupportRelation.INCOMPARABLE_NONCOMPLEMENT


def _cross_minors(t: SimplicialCodim2) -> list[int]:
    return [t.a[i] * t.b[j] - t.a[j] * t.b[i] for i, j in combinations(range(t.n), 2)]


def _require_normalized(t: SimplicialCodim2) -> None:
    if not t.is_normalized:
        raise HypothesisError(f"input is not normalized (common gcd {t.gcd_all}); call normalize() first")


def compute_alpha(t: SimplicialCodim2) -> int:
    """Smallest positive lambda with lambda*a in the lattice of {b, c e_i}."""
    _require_normalized(t)
    num = t.c * gcd_list((t.c,) + t.b)
    den = gcd_list([t.c] + _cross_minors(t))
    return num // den


def compute_c_prime(t: SimplicialCodim2) -> int:
    _require_normalized(t)
    if t.n < 2:
        raise HypothesisError("c' needs n >= 2 (no 2x2 cross minors for n = 1)")
    return gcd_list([t.c] + _cross_minors(t))


def compute_gT(t: SimplicialCodim2) -> int:
    if not support_relation(t.a, t.b).incomparable:
        raise HypothesisError("g(T) needs incomparable supports; comparable supports take the fast path")
    cp = compute_c_prime(t)
    return cp // (gcd_list((cp,) + t.a) * gcd_list((cp,) + t.b))


def compute_omega(t: SimplicialCodim2) -> int:
    """Smallest m >= 1 with m*alpha*a in N{c e_1, ..., c e_n}."""
    alpha = compute_alpha(t)
    return t.c // gcd(t.c, alpha * gcd_list(t.a))


class CaseKind(enum.Enum):
    EXACTLY_ONE = "exactly_one"
    EVERY = "every"
    NO_PRIME = "no_prime"


@dataclass(frozen=True)
class Case:
    kind: CaseKind
    prime: Optional[int] = None

    def admits(self, p: int) -> bool:
        if self.kind is CaseKind.EVERY:
            return True
        return self.kind is CaseKind.EXACTLY_ONE and p == self.prime

    def __str__(self) -> str:
        if self.kind is CaseKind.EXACTLY_ONE:
            return f"exactly_one({self.prime})"
        return self.kind.value


def case_from_invariant(g: int) -> Case:
    """1 -> every prime; p^e -> exactly p; two or more prime divisors -> none."""
    f = factorize(g)
    if not f:
        return Case(CaseKind.EVERY)
    if len(f) == 1:
        return Case(CaseKind.EXACTLY_ONE, f[0][0])
    return Case(CaseKind.NO_PRIME)


@dataclass(frozen=True)
class BinomialPair:
    """Exponents of F1 and F2.

    With ``swapped`` the roles of a and b (y1 and y2) are exchanged: F1 then
    starts with a power of y2 and F2 with a power of y1.
    """

    y_lead: int
    y_other: int
    x_first: tuple[int, ...]
    gamma: int
    deltas: tuple[int, ...]
    prime: Optional[int] = None
    k: int = 0
    alpha: int = 1
    swapped: bool = False

    def names(self) -> tuple[str, str]:
        return ("y2", "y1") if self.swapped else ("y1", "y2")

    def display(self) -> tuple[str, str]:
        lead, other = self.names()
        f1 = f"{_power(lead, self.y_lead)} - {_monomial([(other, self.y_other)] + _xs(self.x_first))}"
        f2 = f"{_power(other, self.gamma)} - {_monomial(_xs(self.deltas))}"
        return f1, f2

    def mutations(self) -> list["BinomialPair"]:
        """Every pair obtained by moving a single exponent up or down by one."""
        out: list[BinomialPair] = []
        for d in (1, -1):
            for name in ("y_lead", "y_other", "gamma"):
                if getattr(self, name) + d >= 0:
                    out.append(replace(self, **{name: getattr(self, name) + d}))
            for name in ("x_first", "deltas"):
                exps = getattr(self, name)
                for i in range(len(exps)):
                    if exps[i] + d >= 0:
                        bumped = list(exps)
                        bumped[i] += d
                        out.append(replace(self, **{name: tuple(bumped)}))
        return out


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _xs(exps: Sequence[int]) -> list[tuple[str, int]]:
    return [(f"x{i + 1}", e) for i, e in enumerate(exps)]


def _monomial(factors: list[tuple[str, int]]) -> str:
    parts = [_power(n, e) for n, e in factors if e]
    return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class ClassificationReport:
    input: SimplicialCodim2
    normalized: SimplicialCodim2
    delta: int
    support: SupportRelation
    alpha: int
    omega: int
    case: Case
    c_prime: Optional[int] = None
    gT: Optional[int] = None
    fast_path: Optional[SupportRelation] = None
    complete_intersection: Optional[bool] = None
    certificate: Optional[GluingCertificate] = None
    prime_certificates: tuple[GluingCertificate, ...] = field(default=())
    binomials: Optional[BinomialPair] = None


def _canonical(t: SimplicialCodim2, swapped: bool) -> Partition:
    # generator 0 is a, generator 1 is b
    return Partition.from_left([1 if swapped else 0], t.n + 2)


def _oriented(t: SimplicialCodim2) -> bool:
    """Whether the canonical partition isolates b rather than a."""
    return support_relation(t.a, t.b) is SupportRelation.A_SUBSET_B


def classify(t: SimplicialCodim2, size_limit: int = DEFAULT_SIZE_LIMIT) -> ClassificationReport:
    norm, delta = normalize(t)
    rel = support_relation(norm.a, norm.b)
    alpha = compute_alpha(norm)
    omega = compute_omega(norm)
    c_prime = compute_c_prime(norm) if norm.n >= 2 else None
    gT = compute_gT(norm) if rel.incomparable else None
    gens = norm.generators()
    base = dict(input=t, normalized=norm, delta=delta, support=rel, alpha=alpha, omega=omega,
                c_prime=c_prime, gT=gT)

    if norm.n <= 2 or rel is not SupportRelation.INCOMPARABLE_NONCOMPLEMENT:
        swapped = _oriented(norm)
        plain = None
        for part in (_canonical(norm, swapped), _canonical(norm, not swapped)):
            res = check_gluing(gens, part)
            if res.glued:
                plain = res.certificate
                break
        if plain is not None:
            pair = emit_binomials(norm, 2)
            return ClassificationReport(
                **base, case=Case(CaseKind.EVERY), fast_path=rel, complete_intersection=True,
                certificate=plain, binomials=pair if pair.k == 0 else None,
            )
        # two primes generate all others (see semigroup.extend_two_primes)
        part = _canonical(norm, swapped)
        certs = []
        for p in (2, 3):
            res = check_p_gluing(gens, part, p, FAST_PATH_KMAX)
            if not res.glued:
                raise BoundExceededError(f"no {p}-gluing of the canonical partition with k <= {FAST_PATH_KMAX}")
            certs.append(res.certificate)
        ci = None
        if len(gens) <= size_limit:
            ci = complete_intersection_tree(gens, size_limit) is not None
        return ClassificationReport(
            **base, case=Case(CaseKind.EVERY), fast_path=rel, complete_intersection=ci,
            prime_certificates=tuple(certs),
        )

    case = case_from_invariant(gT)
    part = _canonical(norm, False)
    if case.kind is CaseKind.EVERY:
        res = check_gluing(gens, part)
        return ClassificationReport(
            **base, case=case, complete_intersection=True, certificate=res.certificate,
            binomials=emit_binomials(norm, 2),
        )
    if case.kind is CaseKind.EXACTLY_ONE:
        p = case.prime
        res = check_p_gluing(gens, part, p, valuation(omega, p))
        return ClassificationReport(
            **base, case=case, complete_intersection=False, certificate=res.certificate,
            binomials=emit_binomials(norm, p),
        )
    return ClassificationReport(**base, case=case, complete_intersection=False)


def _minimal_k(omega: int, p: int) -> int:
    """Least k with omega | p^k (omega must be 1 or a power of p)."""
    e = valuation(omega, p)
    if omega != p**e:
        raise InadmissiblePrimeError(f"{omega} is not a power of {p}")
    return e


def emit_binomials(t: SimplicialCodim2, p: int) -> BinomialPair:
    """The two binomials cutting out V_T in characteristic p."""
    if not is_prime(p):
        raise InadmissiblePrimeError(f"{p} is not a prime")
    norm, _ = normalize(t)
    rel = support_relation(norm.a, norm.b)
    swapped = rel is SupportRelation.A_SUBSET_B
    lead = norm.swapped() if swapped else norm
    alpha = compute_alpha(lead)
    second = GeneratorSet((lead.b,) + lead.generators().gens[2:])

    if rel.incomparable:
        case = case_from_invariant(compute_gT(norm))
        if not case.admits(p):
            raise InadmissiblePrimeError(f"T is not completely {p}-glued (case {case})")
        k = _minimal_k(compute_omega(lead), p)
        cert = nn_membership(second, tuple(p**k * alpha * x for x in lead.a))
    else:
        for k in range(FAST_PATH_KMAX + 1):
            cert = nn_membership(second, tuple(p**k * alpha * x for x in lead.a))
            if cert is not None:
                break
        else:
            raise BoundExceededError(f"no k <= {FAST_PATH_KMAX} with p^k alpha a in N T2")
    assert cert is not None
    g = gcd_list((lead.c,) + lead.b)
    pair = BinomialPair(
        y_lead=p**k * alpha,
        y_other=cert.coefficients[0],
        x_first=cert.coefficients[1:],
        gamma=lead.c // g,
        deltas=tuple(x // g for x in lead.b),
        prime=p,
        k=k,
        alpha=alpha,
        swapped=swapped,
    )
    if not relations_hold(pair, norm):
        raise AssertionError("emitted binomials violate their semigroup relations")
    return pair


def relations_hold(pair: BinomialPair, t: SimplicialCodim2) -> bool:
    """E a == beta b + c * betas and gamma b == c * deltas, exponents >= 0."""
    a, b = (t.b, t.a) if pair.swapped else (t.a, t.b)
    if len(pair.x_first) != t.n or len(pair.deltas) != t.n:
        return False
    exps = (pair.y_lead, pair.y_other, pair.gamma) + pair.x_first + pair.deltas
    if any(e < 0 for e in exps) or pair.y_lead == 0 or pair.gamma == 0:
        return False
    first = all(
        pair.y_lead * ai == pair.y_other * bi + t.c * xi for ai, bi, xi in zip(a, b, pair.x_first)
    )
    second = all(pair.gamma * bi == t.c * di for bi, di in zip(b, pair.deltas))
    return first and second


def classify_case(t: SimplicialCodim2) -> tuple[Case, Optional[SupportRelation], Optional[int]]:
    """(case, fast path taken, g(T)) without building certificates; for sweeps."""
    norm, _ = normalize(t)
    rel = support_relation(norm.a, norm.b)
    gT = compute_gT(norm) if rel.incomparable else None
    if norm.n <= 2 or rel is not SupportRelation.INCOMPARABLE_NONCOMPLEMENT:
        return Case(CaseKind.EVERY), rel, gT
    return case_from_invariant(gT), None, gT
