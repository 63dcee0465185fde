"""Exhaustive and randomised searches for subsets that extremise the error.

Subsets are compared through their dihedral orbit: the 8 symmetries of the
square map the lattice onto itself and leave every error value unchanged, so
exhaustive enumeration only scores subsets that are the lexicographically
smallest member of their orbit.
"""
from __future__ import annotations

import enum
import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Callable, Iterable, Sequence

from .error import rational_json, scaled_error_sums
from .lattice import LatticeSpec, PairClass, full_distribution
from .subset import ConfigKind, Point, PointSet, generate

DEFAULT_BUDGET = 10**8
PARTIAL_LIMIT = 10_000
THREADS_ENV = "LATTICE_DIST_THREADS"


class Objective(enum.Enum):
    MAXIMIZE = "max"
    MINIMIZE = "min"


class Metric(enum.Enum):
    EXACT_NORMALIZED = "exact-normalized"
    EXACT_UNNORMALIZED = "exact-unnormalized"
    PAIR_ESTIMATE = "pair-estimate"


@dataclass(frozen=True)
class Exhaustive:
    budget: int = DEFAULT_BUDGET
    partial_limit: int = PARTIAL_LIMIT


@dataclass(frozen=True)
class RandomRestart:
    iterations: int = 20
    seed: int = 0
    steps: int = 200


@dataclass(frozen=True)
class SearchTask:
    spec: LatticeSpec
    p: int
    objective: Objective = Objective.MAXIMIZE
    metric: Metric = Metric.EXACT_UNNORMALIZED
    mode: Exhaustive | RandomRestart = field(default_factory=Exhaustive)

    def __post_init__(self):
        if not 1 <= self.p <= self.spec.num_points:
            raise ValueError(f"p must lie in [1, {self.spec.num_points}], got {self.p}")

    def echo(self) -> dict:
        mode = self.mode
        out = {
            "N": self.spec.N,
            "p": self.p,
            "objective": self.objective.value,
            "metric": self.metric.value,
        }
        if isinstance(mode, Exhaustive):
            out["mode"] = "exhaustive"
            out["budget"] = mode.budget
        else:
            out.update(mode="random", iterations=mode.iterations, seed=mode.seed, steps=mode.steps)
        return out


@dataclass(frozen=True)
class SearchResult:
    best: PointSet
    value: Fraction
    candidates_examined: int
    symmetry_class_size: int
    complete: bool = True

    def to_record(self, task: SearchTask, timestamp: float | None = None) -> dict:
        if timestamp is None:
            timestamp = float(os.environ.get("SOURCE_DATE_EPOCH", time.time()))
        return {
            "task": task.echo(),
            "best": [list(pt) for pt in self.best.points],
            "value": rational_json(self.value),
            "candidates_examined": self.candidates_examined,
            "symmetry_class_size": self.symmetry_class_size,
            "complete": self.complete,
            "seed": task.mode.seed if isinstance(task.mode, RandomRestart) else None,
            "timestamp": timestamp,
        }


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: SearchResult):
        super().__init__(message)
        self.partial = partial


# dihedral symmetry

def _transforms(N: int) -> list[Callable[[int, int], Point]]:
    m = N - 1
    return [
        lambda x, y: (x, y),
        lambda x, y: (m - x, y),
        lambda x, y: (x, m - y),
        lambda x, y: (m - x, m - y),
        lambda x, y: (y, x),
        lambda x, y: (m - y, x),
        lambda x, y: (y, m - x),
        lambda x, y: (m - y, m - x),
    ]


def orbit(S: PointSet) -> list[tuple[Point, ...]]:
    return [tuple(sorted(g(x, y) for x, y in S.points)) for g in _transforms(S.spec.N)]


def canonicalize(S: PointSet) -> PointSet:
    return PointSet(S.spec, min(orbit(S)))


def orbit_size(S: PointSet) -> int:
    return len(set(orbit(S)))


def _is_canonical(points: Sequence[Point], transforms) -> bool:
    pts = tuple(points)
    for g in transforms[1:]:
        if tuple(sorted(g(x, y) for x, y in pts)) < pts:
            return False
    return True


# scoring

class _Scorer:
    """Maps per-class counts to a comparable score (larger is better)."""

    def __init__(self, spec: LatticeSpec, p: int, metric: Metric, objective: Objective):
        self.spec, self.p, self.metric = spec, p, metric
        self.sign = 1 if objective is Objective.MAXIMIZE else -1
        self.n_dist = len(full_distribution(spec))

    def value(self, counts) -> Fraction:
        dist_sum, pair_sum = scaled_error_sums(self.spec, counts, self.p)
        p2 = self.p * self.p
        if self.metric is Metric.EXACT_UNNORMALIZED:
            return Fraction(dist_sum, p2)
        if self.metric is Metric.EXACT_NORMALIZED:
            return Fraction(dist_sum, p2 * self.n_dist)
        return Fraction(pair_sum, p2 * self.spec.num_classes)

    def score(self, value: Fraction) -> Fraction:
        return self.sign * value


def _counts_of(points: Sequence[Point]) -> dict[PairClass, int]:
    counts: dict[PairClass, int] = {}
    for i, (x1, y1) in enumerate(points):
        for x2, y2 in points[i + 1 :]:
            c = PairClass.of(x1 - x2, y1 - y2)
            counts[c] = counts.get(c, 0) + 1
    return counts


def _better(score, pts, best_score, best_pts) -> bool:
    if best_pts is None or score > best_score:
        return True
    return score == best_score and pts < best_pts


def _scan(N: int, p: int, metric: Metric, objective: Objective, combos: Iterable[tuple[int, ...]]):
    spec = LatticeSpec(N)
    scorer = _Scorer(spec, p, metric, objective)
    transforms = _transforms(N)
    best_score, best_pts, examined = None, None, 0
    for combo in combos:
        pts = tuple(divmod(i, N) for i in combo)
        if not _is_canonical(pts, transforms):
            continue
        examined += 1
        score = scorer.score(scorer.value(_counts_of(pts)))
        if _better(score, pts, best_score, best_pts):
            best_score, best_pts = score, pts
    return best_score, best_pts, examined


def _scan_first_range(N: int, p: int, metric: Metric, objective: Objective, lo: int, hi: int):
    def combos():
        for first in range(lo, hi):
            for rest in combinations(range(first + 1, N * N), p - 1):
                yield (first, *rest)

    return _scan(N, p, metric, objective, combos())


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    cpus = os.cpu_count() or 1
    if raw is None:
        return 1
    try:
        return max(1, min(int(raw), cpus))
    except ValueError:
        return 1


def _partitions(n_points: int, p: int, parts: int) -> list[tuple[int, int]]:
    # contiguous ranges of the first index, balanced by the number of combinations each covers
    firsts = n_points - p + 1
    weights = [math.comb(n_points - 1 - f, p - 1) for f in range(firsts)]
    target = sum(weights) / parts
    out, lo, acc = [], 0, 0
    for f, w in enumerate(weights):
        acc += w
        if acc >= target and len(out) < parts - 1:
            out.append((lo, f + 1))
            lo, acc = f + 1, 0
    if lo < firsts:
        out.append((lo, firsts))
    return out


def _exhaustive(task: SearchTask) -> SearchResult:
    spec, p, mode = task.spec, task.p, task.mode
    N = spec.N
    total = math.comb(N * N, p)
    if total > mode.budget:
        combos = islice(combinations(range(N * N), p), mode.partial_limit)
        score, pts, examined = _scan(N, p, task.metric, task.objective, combos)
        best = PointSet(spec, pts) if pts is not None else PointSet(spec, ())
        partial = SearchResult(
            best=best,
            value=score * (1 if task.objective is Objective.MAXIMIZE else -1) if pts else Fraction(0),
            candidates_examined=examined,
            symmetry_class_size=orbit_size(best),
            complete=False,
        )
        raise BudgetExceeded(
            f"C({N * N}, {p}) = {total} candidates exceeds the budget {mode.budget}", partial
        )
    workers = worker_count()
    ranges = _partitions(N * N, p, workers)
    args = [(N, p, task.metric, task.objective, lo, hi) for lo, hi in ranges]
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_first_range, *zip(*args)))
    else:
        parts = [_scan_first_range(*a) for a in args]
    best_score, best_pts, examined = None, None, 0
    for score, pts, n in parts:
        examined += n
        if pts is not None and _better(score, pts, best_score, best_pts):
            best_score, best_pts = score, pts
    best = PointSet(spec, best_pts)
    sign = 1 if task.objective is Objective.MAXIMIZE else -1
    return SearchResult(best, sign * best_score, examined, orbit_size(best))


# incremental counts

class IncrementalCounts:
    """Per-class pair counts of a changing subset, updated in O(p) per move."""

    def __init__(self, spec: LatticeSpec, points: Iterable[Point] = ()):
        self.spec = spec
        self.points: list[Point] = []
        self.counts: dict[PairClass, int] = {}
        for pt in points:
            self.add(pt)

    def _delta(self, pt: Point, sign: int) -> None:
        x1, y1 = pt
        for x2, y2 in self.points:
            c = PairClass.of(x1 - x2, y1 - y2)
            n = self.counts.get(c, 0) + sign
            if n:
                self.counts[c] = n
            else:
                del self.counts[c]

    def add(self, pt: Point) -> None:
        pt = (int(pt[0]), int(pt[1]))
        N = self.spec.N
        if not (0 <= pt[0] < N and 0 <= pt[1] < N):
            raise ValueError(f"point {pt} lies outside the {N}x{N} lattice")
        if pt in self.points:
            raise ValueError(f"point {pt} is already in the subset")
        self._delta(pt, +1)
        self.points.append(pt)

    def remove(self, pt: Point) -> None:
        pt = (int(pt[0]), int(pt[1]))
        self.points.remove(pt)
        self._delta(pt, -1)

    def point_set(self) -> PointSet:
        return PointSet(self.spec, tuple(self.points))

    def value(self, metric: Metric = Metric.EXACT_UNNORMALIZED) -> Fraction:
        return _Scorer(self.spec, len(self.points), metric, Objective.MAXIMIZE).value(self.counts)


def incremental_epsilon(S: PointSet, add: Point) -> IncrementalCounts:
    """Counts of S with ``add`` inserted, built from S's counts by one O(p) update."""
    inc = IncrementalCounts(S.spec, S.points)
    inc.add(add)
    return inc


def _random_restart(task: SearchTask) -> SearchResult:
    spec, p, mode = task.spec, task.p, task.mode
    N = spec.N
    rng = random.Random(mode.seed)
    all_pts = [(x, y) for x in range(N) for y in range(N)]
    best_score, best_pts, examined = None, None, 0
    for _ in range(mode.iterations):
        inc = IncrementalCounts(spec, rng.sample(all_pts, p))
        scorer = _Scorer(spec, p, task.metric, task.objective)
        cur = scorer.score(scorer.value(inc.counts))
        examined += 1
        for _ in range(mode.steps if p < N * N else 0):
            out_pt = inc.points[rng.randrange(p)]
            inside = set(inc.points)
            in_pt = rng.choice([q for q in all_pts if q not in inside])
            inc.remove(out_pt)
            inc.add(in_pt)
            score = scorer.score(scorer.value(inc.counts))
            examined += 1
            if score > cur:
                cur = score
            else:
                inc.remove(in_pt)
                inc.add(out_pt)
        canon = canonicalize(inc.point_set()).points
        if _better(cur, canon, best_score, best_pts):
            best_score, best_pts = cur, canon
    best = PointSet(spec, best_pts)
    sign = 1 if task.objective is Objective.MAXIMIZE else -1
    return SearchResult(best, sign * best_score, examined, orbit_size(best))


def run(task: SearchTask) -> SearchResult:
    if isinstance(task.mode, Exhaustive):
        return _exhaustive(task)
    return _random_restart(task)


def append_jsonl(path, task: SearchTask, result: SearchResult) -> str:
    line = json.dumps(result.to_record(task)) + "\n"
    if path is not None:
        with open(path, "a") as fh:
            fh.write(line)
    return line


def verify_configuration(
    spec: LatticeSpec, p: int, kind: ConfigKind, metrics: Iterable[Metric] = tuple(Metric),
    depth: int | None = None,
) -> dict[Metric, tuple[SearchResult, bool]]:
    """Exhaustively maximise each metric and compare the optimum with a generated configuration."""
    target = canonicalize(generate(spec, kind, depth))
    out = {}
    for metric in metrics:
        res = run(SearchTask(spec, p, Objective.MAXIMIZE, metric, Exhaustive()))
        out[metric] = (res, res.best == target)
    return out
