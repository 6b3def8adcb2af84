"""Affine semigroups: membership, freeness, gluings and p-gluings.

A generator set T is a finite set of nonzero vectors in N^n.  A partition
T = T1 ⊔ T2 is a p-gluing when Z T1 ∩ Z T2 = Z w for one w and some p^k w
lies in N T1 ∩ N T2; a plain gluing is the k = 0 case with w in N^n.  Every
positive answer carries a certificate that :meth:`GluingCertificate.verify`
re-checks from scratch.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .arith import is_prime
from .errors import DimensionError, PartitionError, SizeLimitError, ValidationError
from .kernels import membership_search
from .lattice import (
    NOT_CYCLIC,
    IntVector,
    columns_to_matrix,
    cyclic_generator,
    lattice_intersection,
    sign_normalize,
    smith_normal_form,
)

DEFAULT_KMAX = 16
DEFAULT_SIZE_LIMIT = 10


@dataclass(frozen=True)
class GeneratorSet:
    """A finite set of nonzero, pairwise distinct vectors in N^dim."""

    gens: tuple[IntVector, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if not gens:
            raise ValidationError("a generator set needs at least one generator")
        dims = {len(g) for g in gens}
        if len(dims) != 1 or 0 in dims:
            raise ValidationError(f"generators must share one positive dimension, got {sorted(dims)}")
        for i, g in enumerate(gens):
            if any(x < 0 for x in g):
                raise ValidationError(f"generator {i} = {g} has a negative entry")
            if not any(g):
                raise ValidationError(f"generator {i} is the zero vector")
        if len(set(gens)) != len(gens):
            raise ValidationError("duplicate generators")

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]]) -> "GeneratorSet":
        return cls(tuple(tuple(g) for g in gens))

    @property
    def dim(self) -> int:
        return len(self.gens[0])

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i: int) -> IntVector:
        return self.gens[i]

    def subset(self, indices: Iterable[int]) -> "GeneratorSet":
        return GeneratorSet(tuple(self.gens[i] for i in sorted(indices)))

    def combine(self, coefficients: Sequence[int]) -> IntVector:
        if len(coefficients) != len(self.gens):
            raise DimensionError(f"{len(coefficients)} coefficients for {len(self.gens)} generators")
        return tuple(
            sum(c * g[j] for c, g in zip(coefficients, self.gens)) for j in range(self.dim)
        )


@dataclass(frozen=True)
class Partition:
    left: frozenset[int]
    right: frozenset[int]

    @classmethod
    def from_left(cls, left: Iterable[int], size: int) -> "Partition":
        left = frozenset(left)
        bad = [i for i in left if not 0 <= i < size]
        if bad:
            raise PartitionError(f"indices {sorted(bad)} out of range for {size} generators")
        return cls(left, frozenset(range(size)) - left)

    def validate(self, size: int) -> None:
        if not self.left or not self.right:
            raise PartitionError("both sides of a partition must be nonempty")
        if self.left & self.right:
            raise PartitionError(f"sides overlap in {sorted(self.left & self.right)}")
        if self.left | self.right != frozenset(range(size)):
            raise PartitionError(f"partition does not cover exactly the indices 0..{size - 1}")


@dataclass(frozen=True)
class MembershipCertificate:
    coefficients: tuple[int, ...]

    def verify(self, gens: GeneratorSet, v: Sequence[int]) -> bool:
        return (
            len(self.coefficients) == len(gens)
            and all(c >= 0 for c in self.coefficients)
            and gens.combine(self.coefficients) == tuple(v)
        )

    def scaled(self, factor: int) -> "MembershipCertificate":
        return MembershipCertificate(tuple(factor * c for c in self.coefficients))


def _plan(gens: Sequence[IntVector], dim: int) -> tuple[list[int], list[int], list[int]]:
    # axis[j]: step of the first single-support generator on coordinate j
    axis = [0] * dim
    axis_owner = [-1] * dim
    general = []
    for i, g in enumerate(gens):
        support = [j for j, x in enumerate(g) if x]
        if len(support) == 1 and axis[support[0]] == 0:
            axis[support[0]] = g[support[0]]
            axis_owner[support[0]] = i
        else:
            general.append(i)
    general.sort(key=lambda i: (-sum(gens[i]), i))
    return general, axis, axis_owner


def nn_membership(gens: GeneratorSet, v: Sequence[int]) -> Optional[MembershipCertificate]:
    """Nonnegative integer coefficients expressing v over gens, or None.

    Exact: every coefficient is bounded by the componentwise quotient, so
    the depth-first search is finite.
    """
    v = tuple(int(x) for x in v)
    if len(v) != gens.dim:
        raise DimensionError(f"vector of dimension {len(v)} against generators of dimension {gens.dim}")
    if any(x < 0 for x in v):
        return None
    general, axis, owner = _plan(gens.gens, gens.dim)
    found = membership_search([gens[i] for i in general], axis, v)
    if found is None:
        return None
    coeffs = [0] * len(gens)
    residual = list(v)
    for i, x in zip(general, found):
        coeffs[i] = x
        for j, gj in enumerate(gens[i]):
            residual[j] -= x * gj
    for j, i in enumerate(owner):
        if i >= 0:
            coeffs[i] = residual[j] // axis[j]
    cert = MembershipCertificate(tuple(coeffs))
    assert cert.verify(gens, v), "membership kernel returned a bad certificate"
    return cert


def integer_rank(gens: GeneratorSet) -> int:
    return smith_normal_form(columns_to_matrix(gens.gens, gens.dim), len(gens)).rank


def is_free(gens: GeneratorSet) -> bool:
    """True iff the generators are linearly independent over Z."""
    return integer_rank(gens) == len(gens)


# --- gluing ------------------------------------------------------------------

@dataclass(frozen=True)
class GluingCertificate:
    """Witness that base**k * w lies in N T1 ∩ N T2 with Z T1 ∩ Z T2 = Z w.

    ``prime`` is None for a plain gluing (then k == 0 and w is in N^n).
    ``w`` is the signed generator actually certified.
    """

    partition: Partition
    w: IntVector
    k: int
    prime: Optional[int]
    left_combo: MembershipCertificate
    right_combo: MembershipCertificate

    @property
    def multiple(self) -> int:
        return (self.prime or 1) ** self.k

    def verify(self, gens: GeneratorSet) -> bool:
        try:
            self.partition.validate(len(gens))
        except PartitionError:
            return False
        if self.k < 0 or (self.prime is None and (self.k != 0 or min(self.w) < 0)):
            return False
        if self.prime is not None and not is_prime(self.prime):
            return False
        t1 = gens.subset(self.partition.left)
        t2 = gens.subset(self.partition.right)
        gen = cyclic_generator(lattice_intersection(t1.gens, t2.gens))
        if gen is None or gen is NOT_CYCLIC or gen != sign_normalize(self.w):
            return False
        target = tuple(self.multiple * x for x in self.w)
        return self.left_combo.verify(t1, target) and self.right_combo.verify(t2, target)


class GluingStatus(enum.Enum):
    GLUED = "glued"
    LATTICE_OBSTRUCTION = "lattice_obstruction"
    NOT_WITHIN_BOUND = "not_within_bound"
    NOT_GLUED = "not_glued"


@dataclass(frozen=True)
class GluingResult:
    status: GluingStatus
    certificate: Optional[GluingCertificate] = None
    w: Optional[IntVector] = None
    reason: str = ""

    @property
    def glued(self) -> bool:
        return self.status is GluingStatus.GLUED


def _split(gens: GeneratorSet, part: Partition) -> tuple[GeneratorSet, GeneratorSet]:
    part.validate(len(gens))
    return gens.subset(part.left), gens.subset(part.right)


def _glue(gens: GeneratorSet, part: Partition, prime: Optional[int], kmax: int) -> GluingResult:
    t1, t2 = _split(gens, part)
    gen = cyclic_generator(lattice_intersection(t1.gens, t2.gens))
    if gen is None:
        return GluingResult(GluingStatus.LATTICE_OBSTRUCTION, reason="Z T1 ∩ Z T2 is zero")
    if gen is NOT_CYCLIC:
        return GluingResult(GluingStatus.LATTICE_OBSTRUCTION, reason="Z T1 ∩ Z T2 is not cyclic")
    if prime is None:
        candidates = [gen] if min(gen) >= 0 else []
    else:
        candidates = [s for s in (gen, tuple(-x for x in gen)) if min(s) >= 0]
    if not candidates:
        # no sign of w is nonnegative, so no multiple can be a nonnegative combination
        return GluingResult(GluingStatus.LATTICE_OBSTRUCTION, w=gen, reason="w has entries of both signs")
    base = prime or 1
    for k in range(kmax + 1):
        mult = base**k
        for s in candidates:
            target = tuple(mult * x for x in s)
            left = nn_membership(t1, target)
            if left is None:
                continue
            right = nn_membership(t2, target)
            if right is None:
                continue
            cert = GluingCertificate(part, s, k, prime, left, right)
            return GluingResult(GluingStatus.GLUED, cert, w=gen)
    if prime is None:
        return GluingResult(GluingStatus.NOT_GLUED, w=gen, reason="w not in N T1 ∩ N T2")
    return GluingResult(
        GluingStatus.NOT_WITHIN_BOUND, w=gen, reason=f"p^k w not in N T1 ∩ N T2 for k <= {kmax}"
    )


def check_p_gluing(gens: GeneratorSet, part: Partition, p: int, kmax: int = DEFAULT_KMAX) -> GluingResult:
    """Decide whether T is the p-gluing of the partition, with minimal k <= kmax."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not a prime")
    if kmax < 0:
        raise ValidationError("kmax must be nonnegative")
    return _glue(gens, part, p, kmax)


def check_gluing(gens: GeneratorSet, part: Partition) -> GluingResult:
    """Plain gluing: k = 0 and the normalized w itself in N^n."""
    return _glue(gens, part, None, 0)


# --- recursive search --------------------------------------------------------

@dataclass(frozen=True)
class FreeLeaf:
    generators: GeneratorSet

    def verify(self) -> bool:
        return is_free(self.generators)


@dataclass(frozen=True)
class GluedNode:
    generators: GeneratorSet
    certificate: GluingCertificate
    left: "GluingTree"
    right: "GluingTree"

    def verify(self) -> bool:
        part = self.certificate.partition
        return (
            self.certificate.verify(self.generators)
            and self.left.generators == self.generators.subset(part.left)
            and self.right.generators == self.generators.subset(part.right)
            and self.left.verify()
            and self.right.verify()
        )


GluingTree = Union[FreeLeaf, GluedNode]


def _partitions(m: int) -> Iterable[Partition]:
    """Unordered splits by ascending bitmask of the smaller side."""
    full = (1 << m) - 1
    for mask in range(1, full):
        comp = full ^ mask
        size, csize = bin(mask).count("1"), bin(comp).count("1")
        if size > csize or (size == csize and mask > comp):
            continue
        yield Partition(
            frozenset(i for i in range(m) if mask >> i & 1),
            frozenset(i for i in range(m) if comp >> i & 1),
        )


def _tree_search(gens: GeneratorSet, prime: Optional[int], kmax: int, limit: int) -> Optional[GluingTree]:
    if len(gens) > limit:
        raise SizeLimitError(f"{len(gens)} generators exceed the search limit of {limit}")
    memo: dict[tuple[IntVector, ...], Optional[GluingTree]] = {}

    def solve(t: GeneratorSet) -> Optional[GluingTree]:
        key = tuple(sorted(t.gens))
        if key in memo:
            return memo[key]
        if is_free(t):
            memo[key] = FreeLeaf(t)
            return memo[key]
        memo[key] = None
        for part in _partitions(len(t)):
            res = _glue(t, part, prime, kmax)
            if not res.glued:
                continue
            left = solve(t.subset(part.left))
            if left is None:
                continue
            right = solve(t.subset(part.right))
            if right is None:
                continue
            memo[key] = GluedNode(t, res.certificate, left, right)
            break
        return memo[key]

    return solve(gens)


def completely_p_glued(
    gens: GeneratorSet, p: int, kmax: int = DEFAULT_KMAX, limit: int = DEFAULT_SIZE_LIMIT
) -> Optional[GluingTree]:
    """A certificate tree showing T is completely p-glued, or None if no
    witness exists with k <= kmax at every node."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not a prime")
    return _tree_search(gens, p, kmax, limit)


def complete_intersection_tree(gens: GeneratorSet, limit: int = DEFAULT_SIZE_LIMIT) -> Optional[GluingTree]:
    """Certificate tree of plain gluings (k = 0, w in N^n) down to free leaves."""
    return _tree_search(gens, None, 0, limit)


# --- two primes give every prime ---------------------------------------------

def two_term_representation(r: int, P: int, Q: int) -> tuple[int, int, int]:
    """Smallest l with r**l = a*P + b*Q for some a, b >= 0; returns (l, a, b).

    P and Q must be coprime.  For each l the smallest admissible a is the
    residue of r**l * P^-1 modulo Q.
    """
    from math import gcd

    if P < 1 or Q < 1 or gcd(P, Q) != 1:
        raise ValidationError(f"{P} and {Q} must be coprime positive integers")
    ell = 0
    while True:
        n = r**ell
        a = n * pow(P, -1, Q) % Q if Q > 1 else 0
        if a * P <= n:
            return ell, a, (n - a * P) // Q
        ell += 1


def extend_two_primes(cert_p: GluingCertificate, cert_q: GluingCertificate, r: int) -> GluingCertificate:
    """Build an r-gluing certificate from p- and q-gluing certificates of the
    same partition, via r**l = a p**k + b q**k'."""
    if not is_prime(r):
        raise ValidationError(f"{r} is not a prime")
    if cert_p.partition != cert_q.partition:
        raise ValidationError("certificates are for different partitions")
    if cert_p.w != cert_q.w:
        raise ValidationError("certificates certify different generators w")
    if cert_p.prime is not None and cert_p.prime == cert_q.prime:
        raise ValidationError(f"both certificates use the prime {cert_p.prime}")
    ell, a, b = two_term_representation(r, cert_p.multiple, cert_q.multiple)

    def mix(x: MembershipCertificate, y: MembershipCertificate) -> MembershipCertificate:
        return MembershipCertificate(tuple(a * s + b * t for s, t in zip(x.coefficients, y.coefficients)))

    return GluingCertificate(
        partition=cert_p.partition,
        w=cert_p.w,
        k=ell,
        prime=r,
        left_combo=mix(cert_p.left_combo, cert_q.left_combo),
        right_combo=mix(cert_p.right_combo, cert_q.right_combo),
    )
