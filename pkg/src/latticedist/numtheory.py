"""Sum-of-two-squares arithmetic.

r2(d) counts ordered integer pairs (a, b) with a^2 + b^2 = d.  It is evaluated
from the prime factorisation: r2(d) = 4 * prod(g_i + 1) over primes p_i = 1 mod 4
dividing d with exponent g_i, provided every prime q = 3 mod 4 occurs to an even
power (otherwise r2(d) = 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

INT128_MAX = (1 << 127) - 1
INT64_MAX = (1 << 63) - 1
SIEVE_LIMIT = 10**6


class BudgetExhausted(RuntimeError):
    """An enumeration hit its budget before finding an answer."""


class Representation(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class NkBounds:
    k: int
    constructive_upper: int
    simple_upper: int
    primorial_lower: int


def _check_int128(value: int) -> int:
    if value > INT128_MAX:
        raise OverflowError(f"value {value} exceeds the 128-bit integer range")
    return value


@lru_cache(maxsize=None)
def _spf_table(limit: int = SIEVE_LIMIT) -> np.ndarray:
    # smallest prime factor for every n <= limit; built once, read-only afterwards
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    spf.flags.writeable = False
    return spf


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of ``n`` as ascending ``(prime, exponent)`` pairs."""
    if n < 1 or n > INT64_MAX:
        raise ValueError(f"factorize expects 1 <= n <= 2^63 - 1, got {n}")
    out: list[tuple[int, int]] = []
    if n <= SIEVE_LIMIT:
        spf = _spf_table()
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def r2_from_factorization(fac: list[tuple[int, int]]) -> int:
    count = 4
    for p, e in fac:
        if p % 4 == 1:
            count *= e + 1
        elif p % 4 == 3 and e % 2:
            return 0
    return count


def r2(d: int) -> int:
    """Number of ordered pairs (a, b) in Z^2 with a^2 + b^2 = d."""
    if d < 1:
        raise ValueError(f"r2 is defined for d >= 1, got {d}")
    return r2_from_factorization(factorize(d))


@lru_cache(maxsize=8)
def r2_table(limit: int) -> np.ndarray:
    """``r2(d)`` for every ``0 <= d <= limit`` (entry 0 is left as 0).

    Vectorised over the smallest-prime-factor sieve; the table is read-only.
    """
    spf = _spf_table(max(limit, SIEVE_LIMIT))
    rest = np.arange(limit + 1, dtype=np.int64)
    rest[0] = 1
    count = np.full(limit + 1, 4, dtype=np.int64)
    count[0] = 0
    idx = np.flatnonzero(rest > 1)
    while idx.size:
        p = spf[rest[idx]]
        e = np.zeros(idx.size, dtype=np.int64)
        hit = rest[idx] % p == 0
        while hit.any():
            rest[idx[hit]] //= p[hit]
            e[hit] += 1
            hit = rest[idx] % p == 0
        mod4 = p % 4
        count[idx[mod4 == 1]] *= e[mod4 == 1] + 1
        count[idx[(mod4 == 3) & (e % 2 == 1)]] = 0
        idx = idx[rest[idx] > 1]
    count.flags.writeable = False
    return count


def representations(d: int) -> list[Representation]:
    """All (a, b) with a >= 1, b >= 0 and a^2 + b^2 = d, ascending in a.

    The four rotations of these pairs tile Z^2 minus the origin, so
    ``4 * len(representations(d)) == r2(d)``.
    """
    if d < 1:
        raise ValueError(f"representations expects d >= 1, got {d}")
    out = []
    for a in range(1, math.isqrt(d) + 1):
        rest = d - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            out.append(Representation(a, b))
    return out


def primes_1_mod_4(count: int) -> list[int]:
    """The first ``count`` primes congruent to 1 mod 4 (5, 13, 17, ...)."""
    out: list[int] = []
    n = 5
    while len(out) < count:
        if n % 4 == 1 and all(n % q for q in range(3, math.isqrt(n) + 1, 2)):
            out.append(n)
        n += 4
    return out


def n_k(k: int, budget: int = SIEVE_LIMIT) -> int:
    """Smallest d with r2(d) = 4k, by ascending enumeration.

    The search stops at ``min(budget, 5**(k-1))``; 5**(k-1) always qualifies,
    so running out of room can only mean the budget was too small.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    target = 4 * k
    cap = 5 ** (k - 1)
    limit = min(budget, cap)
    if limit <= SIEVE_LIMIT:
        table = r2_table(limit)
        hits = np.flatnonzero(table == target)
        if hits.size:
            return int(hits[0])
    else:
        for d in range(1, limit + 1):
            if r2(d) == target:
                return d
    raise BudgetExhausted(
        f"no d <= {limit} with r2(d) = {target}; raise the budget (answer is <= {cap})"
    )


def _prime_factors_desc(k: int) -> list[tuple[int, int]]:
    return sorted(factorize(k), reverse=True)


def n_k_constructive_upper(k: int) -> int:
    """Upper bound for n_k built from the factorisation of k.

    With k = q1^a1 * ... * qm^am and q1 > ... > qm, the a1 smallest primes
    = 1 mod 4 get exponent q1 - 1, the next a2 get exponent q2 - 1, and so on.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    fac = _prime_factors_desc(k)
    primes = primes_1_mod_4(sum(a for _, a in fac))
    result = 1
    i = 0
    for q, a in fac:
        for p in primes[i : i + a]:
            result = _check_int128(result * p ** (q - 1))
        i += a
    return result


def primorial_lower(k: int) -> int:
    """Product of the first floor(log2 k) primes = 1 mod 4."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _check_int128(math.prod(primes_1_mod_4(k.bit_length() - 1)))


def n_k_bounds(k: int) -> NkBounds:
    return NkBounds(
        k=k,
        constructive_upper=n_k_constructive_upper(k),
        simple_upper=_check_int128(5 ** (k - 1)),
        primorial_lower=primorial_lower(k),
    )
