"""Small prime-sieve helpers used by generators and predicates."""

from __future__ import annotations

import numpy as np


def prime_mask(n: int) -> np.ndarray:
    """Boolean array of length n+1 with mask[k] true iff k is prime."""
    mask = np.ones(max(n + 1, 2), dtype=bool)
    mask[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask[: n + 1]


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n, ascending."""
    return np.flatnonzero(prime_mask(n))


def first_primes(count: int) -> list[int]:
    """The first `count` primes."""
    if count <= 0:
        return []
    # p_k < k (ln k + ln ln k) for k >= 6; small counts padded manually
    bound = 15
    if count >= 6:
        k = float(count)
        bound = int(k * (np.log(k) + np.log(np.log(k)))) + 10
    ps = primes_upto(bound)
    while len(ps) < count:
        bound *= 2
        ps = primes_upto(bound)
    return [int(p) for p in ps[:count]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def distinct_prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n >= 1 by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]
