"""Pure-Python kernel for nonnegative membership search.

The caller splits the generators into "axis" generators (one per coordinate,
each a positive multiple s_j of a unit vector) and "general" generators.
Axis generators never need enumerating: once the general coefficients are
fixed, coordinate j is reachable iff s_j divides the residual.  The last
general generator is also never enumerated; its coefficient is the solution
of a system of linear congruences.  Only the first n-1 general generators are
searched, depth first, with failed (level, residual) states memoized.

``_membership_c.pyx`` implements the same search on int64 and must return
identical coefficients.
"""
from __future__ import annotations

from math import gcd
from typing import Optional, Sequence


def _bound(g: Sequence[int], r: Sequence[int]) -> int:
    return min(rj // gj for gj, rj in zip(g, r) if gj)


def solve_last(g: Sequence[int], r: Sequence[int], axis: Sequence[int]) -> Optional[int]:
    """Largest x in [0, bound] with r - x*g reachable by the axis generators."""
    b = _bound(g, r)
    fixed = None
    x0, mod = 0, 1
    for gj, rj, sj in zip(g, r, axis):
        if sj == 0:
            if gj == 0:
                if rj:
                    return None
                continue
            q, rem = divmod(rj, gj)
            if rem or (fixed is not None and fixed != q):
                return None
            fixed = q
            continue
        d = gcd(gj, sj)
        if rj % d:
            return None
        m = sj // d
        if m == 1:
            continue
        a = (rj // d) * pow(gj // d, -1, m) % m
        # merge x = x0 (mod `mod`) with x = a (mod m)
        e = gcd(mod, m)
        if (a - x0) % e:
            return None
        me = m // e
        t = ((a - x0) // e) * pow(mod // e, -1, me) % me if me > 1 else 0
        x0 += mod * t
        mod *= me
        x0 %= mod
    if fixed is not None:
        return fixed if 0 <= fixed <= b and (fixed - x0) % mod == 0 else None
    x = b - (b - x0) % mod
    return x if x >= 0 else None


def search(general: Sequence[Sequence[int]], axis: Sequence[int], v: Sequence[int]) -> Optional[list[int]]:
    """Coefficients of the general generators, or None if v is unreachable.

    ``axis[j]`` is the step of the axis generator on coordinate j (0 if none).
    Coefficients are tried from the largest feasible value downwards.
    """
    n = len(general)
    v = tuple(v)
    if n == 0:
        if all((rj % sj == 0) if sj else rj == 0 for rj, sj in zip(v, axis)):
            return []
        return None
    coeffs = [0] * n
    failed: set[tuple[int, tuple[int, ...]]] = set()

    def rec(i: int, r: tuple[int, ...]) -> bool:
        g = general[i]
        if i == n - 1:
            x = solve_last(g, r, axis)
            if x is None:
                return False
            coeffs[i] = x
            return True
        key = (i, r)
        if key in failed:
            return False
        top = _bound(g, r)
        cur = [rj - top * gj for rj, gj in zip(r, g)]
        for x in range(top, -1, -1):
            coeffs[i] = x
            if rec(i + 1, tuple(cur)):
                return True
            for j, gj in enumerate(g):
                cur[j] += gj
        failed.add(key)
        return False

    return coeffs if rec(0, v) else None
