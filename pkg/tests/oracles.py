"""Brute-force oracles, kept independent of the library code paths they check."""
from __future__ import annotations

import math
from collections import Counter
from itertools import combinations


def r2_brute(d: int) -> int:
    r = math.isqrt(d)
    return sum(1 for a in range(-r, r + 1) for b in range(-r, r + 1) if a * a + b * b == d)


def trial_division(n: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def smallest_with_r2(target: int, limit: int) -> int | None:
    for d in range(1, limit + 1):
        if r2_brute(d) == target:
            return d
    return None


def pair_distances(points) -> Counter:
    """Squared distance -> number of unordered pairs, over all point pairs."""
    return Counter((x1 - x2) ** 2 + (y1 - y2) ** 2 for (x1, y1), (x2, y2) in combinations(points, 2))


def lattice_points(N: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(N) for y in range(N)]


def lattice_distances(N: int) -> Counter:
    return pair_distances(lattice_points(N))


def class_count_brute(points, a: int, b: int) -> int:
    n = 0
    for (x1, y1), (x2, y2) in combinations(points, 2):
        dx, dy = abs(x1 - x2), abs(y1 - y2)
        if (dx, dy) in ((a, b), (b, a)):
            n += 1
    return n


def lattice_class_brute(N: int, a: int, b: int) -> int:
    return class_count_brute(lattice_points(N), a, b)
