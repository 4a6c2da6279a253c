"""Prime enumeration helpers: segmented sieve, primality, next prime."""

from __future__ import annotations

import math

import numpy as np

SEGMENT = 1 << 18

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _base_primes(limit: int) -> np.ndarray:
    """Plain sieve up to ``limit`` (used for the sqrt-sized base)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes ``p`` with ``lo < p <= hi``, ascending."""
    lo = max(lo, 1)
    if hi <= lo:
        return []
    base = _base_primes(math.isqrt(hi))
    out: list[int] = []
    start = lo + 1
    while start <= hi:
        stop = min(start + SEGMENT, hi + 1)
        flags = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start :: p] = False
        if start <= 1:
            flags[: 2 - start] = False
        out.extend((np.flatnonzero(flags) + start).tolist())
        start = stop
    return out


def sieve_primes(limit: int) -> list[int]:
    """All primes ``<= limit``; memory stays O(sqrt(limit) + segment)."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    return primes_between(1, limit)


def is_probable_prime(n: int) -> bool:
    # deterministic below 3.3e24 with these bases; strong probable prime above
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES + (41,):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_probable_prime(c):
        c += 1
    return c
