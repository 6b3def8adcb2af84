"""Exact integer linear algebra.

Everything here works on plain Python ints, so there is no overflow no matter
how large minors get.  Matrices are row-major tuples of tuples; vectors are
tuples.  Kernels and particular solutions are read off the
Smith normal form.  A second, independent route
(determinantal minors) decides solvability without touching the SNF code and
is used to cross-check it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DimensionError

IntVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]

# direct minor expansion is used up to this size, SNF above it
MINORS_DIRECT_MAX_K = 3


def as_matrix(rows: Iterable[Iterable[int]], ncols: Optional[int] = None) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise DimensionError(f"ragged matrix: row lengths {sorted(widths)}")
    if ncols is not None and m and len(m[0]) != ncols:
        raise DimensionError(f"expected {ncols} columns, got {len(m[0])}")
    return m


def shape(m: Sequence[Sequence[int]], ncols: int = 0) -> tuple[int, int]:
    """(rows, cols); an empty matrix has shape (0, ncols)."""
    return (len(m), len(m[0]) if m else ncols)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]], ncols: int = 0) -> IntMatrix:
    rows, cols = shape(m, ncols)
    return tuple(tuple(m[i][j] for i in range(rows)) for j in range(cols))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for row in a
    )


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    if m and len(m[0]) != len(v):
        raise DimensionError(f"matrix has {len(m[0])} columns, vector has {len(v)} entries")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def columns_to_matrix(vectors: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """Matrix whose columns are the given vectors (dim x len(vectors))."""
    for v in vectors:
        if len(v) != dim:
            raise DimensionError(f"vector {tuple(v)} does not have dimension {dim}")
    return tuple(tuple(v[i] for v in vectors) for i in range(dim))


# --- gcd helpers -------------------------------------------------------------

def gcd_list(xs: Iterable[int]) -> int:
    """gcd of the absolute values; the empty and all-zero lists give 0."""
    return reduce(math.gcd, (abs(int(x)) for x in xs), 0)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(|a|, |b|) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_x, old_y


# --- determinants and rank ---------------------------------------------------

def determinant(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination (no SNF involved)."""
    a = [list(row) for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f, g = a[r][c], a[i][c]
                a[i] = [f * x - g * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


# --- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == S with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    rank: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        """The nonzero invariant factors d_1 | d_2 | ... | d_rank."""
        return tuple(self.S[i][i] for i in range(self.rank))


def smith_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivots are chosen as the smallest nonzero absolute value in the
    remaining block, scanning rows first and then columns, so the output is
    a deterministic function of the input.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else (ncols or 0)
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # remainders left in row/column t are smaller than the pivot
            rem = None
            for i in range(t + 1, rows):
                x = abs(a[i][t])
                if x and (rem is None or x < rem[0]):
                    rem = (x, i, None)
            for j in range(t + 1, cols):
                x = abs(a[t][j])
                if x and (rem is None or x < rem[0]):
                    rem = (x, None, j)
            if rem is not None:
                if rem[1] is not None:
                    swap_rows(t, rem[1])
                else:
                    swap_cols(t, rem[2])
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return SmithDecomposition(
        U=tuple(map(tuple, u)), S=tuple(map(tuple, a)), V=tuple(map(tuple, v)), rank=t
    )


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return smith_normal_form(m).diagonal


# --- minors ------------------------------------------------------------------

def minors_gcd_direct(m: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all k x k minors by explicit expansion."""
    rows, cols = shape(m)
    _check_minor_order(rows, cols, k)
    g = 0
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            g = math.gcd(g, determinant([[m[i][j] for j in ci] for i in ri]))
            if g == 1:
                return 1
    return g


def minors_gcd_snf(m: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all k x k minors as the product of the first k invariant factors."""
    rows, cols = shape(m)
    _check_minor_order(rows, cols, k)
    d = invariant_factors(m)
    if k > len(d):
        return 0
    return math.prod(d[:k])


def minors_gcd(m: Sequence[Sequence[int]], k: int) -> int:
    if k <= MINORS_DIRECT_MAX_K:
        return minors_gcd_direct(m, k)
    return minors_gcd_snf(m, k)


def _check_minor_order(rows: int, cols: int, k: int) -> None:
    if k < 1 or k > min(rows, cols):
        raise DimensionError(f"minor order {k} out of range for a {rows}x{cols} matrix")


# --- linear diophantine systems ---------------------------------------------

@dataclass(frozen=True)
class DiophantineSolution:
    """All integer solutions: particular + Z-span of kernel_basis."""

    particular: IntVector
    kernel_basis: tuple[IntVector, ...] = field(default=())


def integer_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntVector, ...]:
    """A Z-basis of {x : m x = 0}."""
    snf = smith_normal_form(m, ncols)
    cols = len(snf.V)
    return tuple(tuple(snf.V[i][j] for i in range(cols)) for j in range(snf.rank, cols))


def solve_linear_diophantine(
    m: Sequence[Sequence[int]], v: Sequence[int], ncols: Optional[int] = None
) -> Optional[DiophantineSolution]:
    """Solve m x = v over the integers; None when no integer solution exists."""
    if len(v) != len(m):
        raise DimensionError(f"right-hand side has {len(v)} entries, matrix has {len(m)} rows")
    snf = smith_normal_form(m, ncols)
    cols = len(snf.V)
    uv = matvec(snf.U, v) if m else ()
    y = [0] * cols
    for i, rhs in enumerate(uv):
        if i < snf.rank:
            q, r = divmod(rhs, snf.S[i][i])
            if r:
                return None
            y[i] = q
        elif rhs:
            return None
    particular = matvec(snf.V, y) if cols else ()
    kernel = tuple(tuple(snf.V[i][j] for i in range(cols)) for j in range(snf.rank, cols))
    return DiophantineSolution(particular=particular, kernel_basis=kernel)


def solvable_by_minors(m: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Decide integer solvability of m x = v from determinantal minors alone.

    m x = v has an integer solution iff appending v as a column keeps the
    rank r and keeps the gcd of the r x r minors.  Shares no code with the
    SNF route.
    """
    if len(v) != len(m):
        raise DimensionError(f"right-hand side has {len(v)} entries, matrix has {len(m)} rows")
    aug = [list(row) + [x] for row, x in zip(m, v)]
    r = rank(m)
    if rank(aug) != r:
        return False
    if r == 0:
        return not any(v)
    return minors_gcd_direct(m, r) == minors_gcd_direct(aug, r)


# --- lattices ----------------------------------------------------------------

@dataclass(frozen=True)
class LatticeBasis:
    dim: int
    basis: tuple[IntVector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)


def echelon_basis(vectors: Iterable[Sequence[int]], dim: int) -> tuple[IntVector, ...]:
    """A Z-basis (row echelon, Hermite-like) of the lattice spanned by vectors."""
    rows = [list(v) for v in vectors if any(v)]
    for r in rows:
        if len(r) != dim:
            raise DimensionError(f"vector of length {len(r)} in a dimension-{dim} lattice")
    basis: list[IntVector] = []
    for c in range(dim):
        active = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        basis.append(tuple(piv))
        rows = rest
    return tuple(basis)


def lattice_intersection(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]]) -> LatticeBasis:
    """A basis of Z b1 ∩ Z b2, read off the integer kernel of [b1 | -b2]."""
    dims = {len(v) for v in b1} | {len(v) for v in b2}
    if len(dims) != 1:
        raise DimensionError(f"generators of different dimensions: {sorted(dims)}")
    (dim,) = dims
    cols = [tuple(v) for v in b1] + [tuple(-x for x in v) for v in b2]
    kernel = integer_kernel(columns_to_matrix(cols, dim), len(cols))
    r = len(b1)
    images = (
        tuple(sum(x[i] * b1[i][j] for i in range(r)) for j in range(dim)) for x in kernel
    )
    return LatticeBasis(dim=dim, basis=echelon_basis(images, dim))


def sign_normalize(v: Sequence[int]) -> IntVector:
    """Flip v so its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


class NotCyclic:
    """Marker: the lattice needs two or more generators."""

    def __repr__(self) -> str:
        return "NOT_CYCLIC"

    def __bool__(self) -> bool:
        return False


NOT_CYCLIC = NotCyclic()


def cyclic_generator(lat: LatticeBasis) -> IntVector | None | NotCyclic:
    """The sign-normalized generator of a rank <= 1 lattice.

    Returns None for the zero lattice and NOT_CYCLIC when rank >= 2.
    """
    if lat.rank == 0:
        return None
    if lat.rank > 1:
        return NOT_CYCLIC
    return sign_normalize(lat.basis[0])


def in_lattice(gens: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether v lies in the Z-span of gens."""
    if not gens:
        return not any(v)
    dim = len(v)
    return solve_linear_diophantine(columns_to_matrix(gens, dim), v, len(gens)) is not None


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(m)) == 1
