"""Small number-theoretic helpers (desk-scale magnitudes only)."""
from __future__ import annotations


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of m >= 1 by trial division, sorted by prime.

    >>> factorize(12)
    [(2, 2), (3, 1)]
    >>> factorize(1)
    []
    """
    if m < 1:
        raise ValueError(f"factorize needs a positive integer, got {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def valuation(m: int, p: int) -> int:
    """Exponent of the prime p in m != 0."""
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]
