"""Exact distance distribution of the N x N integer lattice.

Distances are keyed by their square ``d = a^2 + b^2`` throughout.  A pair of
lattice points with displacement (dx, dy) belongs to the class
``(max(|dx|,|dy|), min(|dx|,|dy|))``; there are (N^2 + N - 2) / 2 classes.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, NamedTuple

import numpy as np

from .numtheory import r2, r2_table, representations

MAX_N = 2000


@dataclass(frozen=True)
class LatticeSpec:
    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 2:
            raise ValueError(f"lattice side N must be an integer >= 2, got {self.N!r}")

    @property
    def num_points(self) -> int:
        return self.N * self.N

    @property
    def num_pairs(self) -> int:
        return math.comb(self.N * self.N, 2)

    @property
    def num_classes(self) -> int:
        return (self.N * self.N + self.N - 2) // 2


class PairClass(NamedTuple):
    a: int
    b: int

    @property
    def d(self) -> int:
        return self.a * self.a + self.b * self.b

    @property
    def is_axis_or_diagonal(self) -> bool:
        return self.b == 0 or self.a == self.b

    @classmethod
    def of(cls, dx: int, dy: int) -> "PairClass":
        dx, dy = abs(dx), abs(dy)
        return cls(dx, dy) if dx >= dy else cls(dy, dx)


def check_class(spec: LatticeSpec, c: PairClass) -> None:
    a, b = c
    if not (0 <= b <= a <= spec.N - 1) or a == 0:
        raise ValueError(f"pair class {tuple(c)} is not valid for N={spec.N}")


def pair_classes(spec: LatticeSpec) -> Iterator[PairClass]:
    for a in range(1, spec.N):
        for b in range(a + 1):
            yield PairClass(a, b)


@dataclass(frozen=True)
class DistanceDistribution:
    """Squared distance -> number of unordered point pairs at that distance."""

    entries: Mapping[int, int]
    total: int = field(default=-1)

    def __post_init__(self):
        ordered = {int(d): int(f) for d, f in sorted(self.entries.items())}
        object.__setattr__(self, "entries", ordered)
        s = sum(ordered.values())
        if self.total == -1:
            object.__setattr__(self, "total", s)
        elif self.total != s:
            raise ValueError(f"total {self.total} does not match frequency sum {s}")

    def __getitem__(self, d: int) -> int:
        return self.entries.get(d, 0)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def support(self) -> list[int]:
        return [d for d, f in self.entries.items() if f]

    def to_csv(self) -> str:
        """CSV text with columns d,sqrt_d,frequency,curve_index."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "sqrt_d", "frequency", "curve_index"])
        if self.entries:
            table = r2_table(max(self.entries))
            for d, f in self.entries.items():
                w.writerow([d, f"{math.sqrt(d):.12g}", f, int(table[d]) // 4])
        return buf.getvalue()


def L_ab(spec: LatticeSpec, c: PairClass) -> int:
    """Lattice pairs realising class (a, b) in either orientation."""
    check_class(spec, c)
    N, (a, b) = spec.N, c
    mult = 2 if b == 0 or a == b else 4
    return mult * (N - a) * (N - b)


def L_sqrt_d(spec: LatticeSpec, d: int) -> int:
    """Frequency of distance sqrt(d) on the lattice, summed over representations."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    N = spec.N
    return sum(2 * (N - a) * (N - b) for a, b in representations(d) if a < N and b < N)


def class_arrays(spec: LatticeSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(a, b, L_ab) for every pair class, ordered by a then b."""
    N = spec.N
    a, b = np.tril_indices(N)
    keep = a > 0
    a, b = a[keep].astype(np.int64), b[keep].astype(np.int64)
    mult = np.where((b == 0) | (a == b), 2, 4)
    return a, b, mult * (N - a) * (N - b)


@lru_cache(maxsize=64)
def full_distribution(spec: LatticeSpec, max_n: int = MAX_N) -> DistanceDistribution:
    if spec.N > max_n:
        raise ValueError(f"N={spec.N} exceeds the configured maximum {max_n}")
    a, b, L = class_arrays(spec)
    d = a * a + b * b
    order = np.argsort(d, kind="stable")
    d, L = d[order], L[order]
    starts = np.flatnonzero(np.r_[True, d[1:] != d[:-1]])
    freq = np.add.reduceat(L, starts)
    dist = DistanceDistribution(dict(zip(d[starts].tolist(), freq.tolist())))
    if dist.total != spec.num_pairs:
        raise AssertionError(f"lattice total {dist.total} != C(N^2, 2) = {spec.num_pairs}")
    return dist


def most_common(spec: LatticeSpec) -> tuple[int, int]:
    """(d, F_N): the most frequent squared distance, smallest d on ties."""
    dist = full_distribution(spec)
    best_d, best_f = 0, -1
    for d, f in dist.items():
        if f > best_f:
            best_d, best_f = d, f
    return best_d, best_f


def curve_index(d: int) -> int:
    """Which curve of the distribution plot sqrt(d) lies on; 0 if not a distance."""
    return r2(d) // 4


def curve_bound(spec: LatticeSpec, d: int) -> float:
    """2 k N (N - sqrt d), the single-curve frequency bound for distance sqrt(d)."""
    N = spec.N
    return 2 * curve_index(d) * N * (N - math.sqrt(d))


def class_averages(spec: LatticeSpec) -> tuple[Fraction, Fraction]:
    """Mean L_ab over axis/diagonal classes and over the remaining classes.

    Closed forms N(5N-1)/6 and N(3N-1)/3, each cross-checked against a direct
    sum over the classes.  For N = 2 there are no generic classes and only the
    closed form is returned for that half.
    """
    N = spec.N
    avg_axis = Fraction(N * (5 * N - 1), 6)
    avg_generic = Fraction(N * (3 * N - 1), 3)
    axis = [L_ab(spec, c) for c in pair_classes(spec) if c.is_axis_or_diagonal]
    generic = [L_ab(spec, c) for c in pair_classes(spec) if not c.is_axis_or_diagonal]
    if Fraction(sum(axis), len(axis)) != avg_axis:
        raise AssertionError(f"axis/diagonal average mismatch at N={N}")
    if generic and Fraction(sum(generic), len(generic)) != avg_generic:
        raise AssertionError(f"generic average mismatch at N={N}")
    return avg_axis, avg_generic


def class_fractions(spec: LatticeSpec) -> tuple[Fraction, Fraction]:
    """Share of pair classes with b = 0 or a = b, and share of the rest."""
    N = spec.N
    frac_axis = Fraction(4, N + 2)
    frac_generic = Fraction(N - 2, N + 2)
    total = spec.num_classes
    n_axis = sum(1 for c in pair_classes(spec) if c.is_axis_or_diagonal)
    if (Fraction(n_axis, total), Fraction(total - n_axis, total)) != (frac_axis, frac_generic):
        raise AssertionError(f"class fraction mismatch at N={N}")
    return frac_axis, frac_generic
