"""Subsets of the lattice, their distance distributions, and the extremal configurations."""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np
from scipy.signal import fftconvolve

from .lattice import DistanceDistribution, LatticeSpec, PairClass, check_class

MAX_POINTS = 4_000_000
# above this many points the displacement histogram comes from an autocorrelation
PAIRWISE_LIMIT = 300

Point = tuple[int, int]


@dataclass(frozen=True)
class PointSet:
    spec: LatticeSpec
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(sorted((int(x), int(y)) for x, y in self.points))
        N = self.spec.N
        for x, y in pts:
            if not (0 <= x < N and 0 <= y < N):
                raise ValueError(f"point {(x, y)} lies outside the {N}x{N} lattice")
        if any(pts[i] == pts[i + 1] for i in range(len(pts) - 1)):
            raise ValueError("duplicate points in subset")
        object.__setattr__(self, "points", pts)

    @property
    def p(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt) -> bool:
        return tuple(pt) in set(self.points)

    @classmethod
    def full(cls, spec: LatticeSpec) -> "PointSet":
        return cls(spec, tuple((x, y) for x in range(spec.N) for y in range(spec.N)))

    def mask(self) -> np.ndarray:
        m = np.zeros((self.spec.N, self.spec.N), dtype=np.int64)
        if self.points:
            xs, ys = zip(*self.points)
            m[list(xs), list(ys)] = 1
        return m

    def to_json(self) -> str:
        return json.dumps({"N": self.spec.N, "points": [list(pt) for pt in self.points]})

    @classmethod
    def from_json(cls, text: str) -> "PointSet":
        raw = json.loads(text)
        try:
            N, pts = raw["N"], raw["points"]
        except (KeyError, TypeError) as e:
            raise ValueError("point set JSON needs 'N' and 'points'") from e
        return cls(LatticeSpec(N), tuple(tuple(pt) for pt in pts))


class ConfigKind(enum.Enum):
    CORNERS = "corners"
    CORNERS_CENTER = "corners-center"
    STRETCHED_3X3 = "stretched-3x3"
    PERIMETER = "perimeter"
    FILLED_PERIMETER = "filled-perimeter"
    CHECKERBOARD = "checkerboard"


def _require_odd(spec: LatticeSpec, kind: ConfigKind) -> int:
    if spec.N % 2 == 0:
        raise ValueError(f"{kind.value} needs an odd lattice side, got N={spec.N}")
    return (spec.N - 1) // 2


def expected_size(spec: LatticeSpec, kind: ConfigKind, depth: int | None = None) -> int:
    """Point count of a configuration as given by its counting formula."""
    N = spec.N
    if kind is ConfigKind.CORNERS:
        return 4
    if kind is ConfigKind.CORNERS_CENTER:
        return 5
    if kind is ConfigKind.STRETCHED_3X3:
        return 9
    if kind is ConfigKind.PERIMETER:
        return 4 * (N - 1)
    if kind is ConfigKind.FILLED_PERIMETER:
        return sum(4 * (N - (2 * i - 1)) for i in range(1, depth + 1))
    return (N * N + 1) // 2


def generate(spec: LatticeSpec, kind: ConfigKind, depth: int | None = None) -> PointSet:
    N = spec.N
    last = N - 1
    if kind is ConfigKind.CORNERS:
        pts = [(0, 0), (last, 0), (0, last), (last, last)]
    elif kind is ConfigKind.CORNERS_CENTER:
        h = _require_odd(spec, kind)
        pts = [(0, 0), (last, 0), (0, last), (last, last), (h, h)]
    elif kind is ConfigKind.STRETCHED_3X3:
        h = _require_odd(spec, kind)
        pts = [(x, y) for x in (0, h, last) for y in (0, h, last)]
    elif kind is ConfigKind.PERIMETER:
        pts = [(x, y) for x in range(N) for y in range(N) if x in (0, last) or y in (0, last)]
    elif kind is ConfigKind.FILLED_PERIMETER:
        if depth is None or not 1 <= depth <= (N + 1) // 2:
            raise ValueError(f"filled-perimeter depth must be in [1, {(N + 1) // 2}], got {depth}")
        pts = [
            (x, y) for x in range(N) for y in range(N)
            if min(x, y, last - x, last - y) <= depth - 1
        ]
    elif kind is ConfigKind.CHECKERBOARD:
        pts = [(x, y) for x in range(N) for y in range(N) if (x + y) % 2 == 0]
    else:
        raise ValueError(f"unknown configuration {kind!r}")
    return PointSet(spec, tuple(pts))


def _pairwise_counts(points: tuple[Point, ...]) -> dict[PairClass, int]:
    counts: dict[PairClass, int] = {}
    for i, (x1, y1) in enumerate(points):
        for x2, y2 in points[i + 1 :]:
            c = PairClass.of(x1 - x2, y1 - y2)
            counts[c] = counts.get(c, 0) + 1
    return counts


def _autocorrelation_counts(S: PointSet) -> dict[PairClass, int]:
    m = S.mask().astype(np.float64)
    N = S.spec.N
    corr = np.rint(fftconvolve(m, m[::-1, ::-1])).astype(np.int64)
    dx, dy = np.nonzero(corr)
    vals = corr[dx, dy]
    dx, dy = np.abs(dx - (N - 1)), np.abs(dy - (N - 1))
    a, b = np.maximum(dx, dy), np.minimum(dx, dy)
    keep = a > 0
    key = a[keep] * N + b[keep]
    uniq, inv = np.unique(key, return_inverse=True)
    sums = np.zeros(uniq.size, dtype=np.int64)
    np.add.at(sums, inv, vals[keep])
    # each unordered pair shows up at +(dx, dy) and -(dx, dy)
    return {PairClass(int(k // N), int(k % N)): int(s) // 2 for k, s in zip(uniq, sums)}


@lru_cache(maxsize=32)
def class_counts(S: PointSet) -> dict[PairClass, int]:
    """S_ab for every class that S realises (absent classes have count 0)."""
    if S.p <= PAIRWISE_LIMIT:
        return _pairwise_counts(S.points)
    return _autocorrelation_counts(S)


def S_ab(S: PointSet, c: PairClass) -> int:
    check_class(S.spec, c)
    return class_counts(S).get(PairClass(*c), 0)


def subset_distribution(S: PointSet, max_points: int = MAX_POINTS) -> DistanceDistribution:
    if S.p > max_points:
        raise ValueError(f"subset has {S.p} points, above the limit {max_points}")
    entries: dict[int, int] = {}
    for c, n in class_counts(S).items():
        entries[c.d] = entries.get(c.d, 0) + n
    dist = DistanceDistribution(entries)
    if dist.total != math.comb(S.p, 2):
        raise AssertionError("subset distribution does not account for every pair")
    return dist


def checkerboard_axis_count(spec: LatticeSpec, a: int) -> int:
    """S_{a,0} on the checkerboard; only even a occur."""
    N = spec.N
    if a % 2:
        raise ValueError(f"odd axis offsets never occur on the checkerboard (a={a})")
    if not 2 <= a <= N - 1:
        raise ValueError(f"a must lie in [2, {N - 1}], got {a}")
    return N * (N - a) + (N % 2)


def checkerboard_diag_count(spec: LatticeSpec, a: int) -> int:
    """S_{a,a} on the checkerboard."""
    N = spec.N
    if not 1 <= a <= N - 1:
        raise ValueError(f"a must lie in [1, {N - 1}], got {a}")
    extra = 1 if N % 2 == 1 and a % 2 == 0 else 0
    return (N - a) ** 2 + extra


def from_points(spec: LatticeSpec, pts: Iterable[Point]) -> PointSet:
    return PointSet(spec, tuple(pts))
