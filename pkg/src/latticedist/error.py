"""Error between a subset's rescaled distance distribution and the lattice's.

For a subset of p points every subset frequency is scaled by N^4 / p^2 and
compared with the lattice frequency.  Three aggregates are kept apart:

* ``eps_exact_unnormalized``: sum over distinct distances of |scale*S_d - L_d|
* ``eps_exact_normalized``:   the same divided by the number of distinct distances
* ``eps_pair_estimate``:      sum over pair classes of |scale*S_ab - L_ab|,
  divided by the number of classes

The first two agree with the comparisons against the empty subset (whose error
is C(N^2, 2)); the third is the pair-class simplification used by the
closed-form bounds.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .lattice import (
    LatticeSpec,
    PairClass,
    class_arrays,
    full_distribution,
    most_common,
    pair_classes,
)
from .subset import ConfigKind, PointSet, class_counts


@dataclass(frozen=True)
class ErrorReport:
    N: int
    p: int
    scale: Fraction
    eps_exact_normalized: Fraction
    eps_exact_unnormalized: Fraction
    eps_pair_estimate: Fraction
    num_distances: int
    per_class: Mapping[PairClass, Fraction] | None = None

    def to_dict(self) -> dict:
        out = {
            "N": self.N,
            "p": self.p,
            "num_distances": self.num_distances,
            "scale": rational_json(self.scale),
            "eps_exact_normalized": rational_json(self.eps_exact_normalized),
            "eps_exact_unnormalized": rational_json(self.eps_exact_unnormalized),
            "eps_pair_estimate": rational_json(self.eps_pair_estimate),
        }
        if self.per_class is not None:
            out["per_class"] = [
                {"a": c.a, "b": c.b, "eps": rational_json(v)} for c, v in self.per_class.items()
            ]
        return out


def rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _lattice_class_count(N: int, c: PairClass) -> int:
    a, b = c
    return (2 if b == 0 or a == b else 4) * (N - a) * (N - b)


def scaled_error_sums(spec: LatticeSpec, counts: Mapping[PairClass, int], p: int) -> tuple[int, int]:
    """p^2 times the unnormalized distance error and p^2 times the pair-class error sum.

    Only classes/distances the subset realises need visiting: everywhere else
    the contribution is the lattice frequency itself, and those sum to C(N^2, 2).
    """
    N = spec.N
    n4, p2 = N**4, p * p
    base = p2 * spec.num_pairs
    lattice = full_distribution(spec)
    by_d: dict[int, int] = {}
    pair_sum = base
    for c, s in counts.items():
        if not s:
            continue
        L = _lattice_class_count(N, c)
        pair_sum += abs(n4 * s - p2 * L) - p2 * L
        by_d[c.d] = by_d.get(c.d, 0) + s
    dist_sum = base
    for d, s in by_d.items():
        L = lattice[d]
        dist_sum += abs(n4 * s - p2 * L) - p2 * L
    return dist_sum, pair_sum


def epsilon(S: PointSet, per_class: bool = False) -> ErrorReport:
    spec, p = S.spec, S.p
    if p == 0:
        raise ValueError("the error of the empty subset is empty_subset_error(spec)")
    N = spec.N
    counts = class_counts(S)
    dist_sum, pair_sum = scaled_error_sums(spec, counts, p)
    n_dist = len(full_distribution(spec))
    unnorm = Fraction(dist_sum, p * p)
    classes = None
    if per_class:
        scale = Fraction(N**4, p * p)
        classes = {
            c: abs(scale * counts.get(c, 0) - _lattice_class_count(N, c)) for c in pair_classes(spec)
        }
    return ErrorReport(
        N=N,
        p=p,
        scale=Fraction(N**4, p * p),
        eps_exact_normalized=unnorm / n_dist,
        eps_exact_unnormalized=unnorm,
        eps_pair_estimate=Fraction(pair_sum, p * p * spec.num_classes),
        num_distances=n_dist,
        per_class=classes,
    )


def empty_subset_error(spec: LatticeSpec) -> int:
    return spec.num_pairs


# closed forms as printed, and the expressions they were simplified from

def closed_form_bound(kind: ConfigKind, spec: LatticeSpec) -> Fraction:
    """Final closed-form error bound for one of the four worked configurations."""
    N = Fraction(spec.N)
    if kind is ConfigKind.CORNERS:
        return 5 * N**2 / 2 - 5 * N / 2 - 15 / (2 * (N - 1)) - 16 / (N + 2) + Fraction(13, 2)
    if kind is ConfigKind.CORNERS_CENTER:
        _odd(spec, kind)
        return (
            17 * N**2 / 5 - 17 * N / 5 - 6 / (N - 2) - 56 / (5 * (N - 1))
            - 124 / (5 * (N + 2)) - 31 / (3 * (2 * N - 5)) + Fraction(113, 15)
        )
    if kind is ConfigKind.STRETCHED_3X3:
        _odd(spec, kind)
        return (
            32 * N**4 / 243 - 52 * N**3 / 243 + 4 * N**2 / 9 - 220 * N / 243
            - Fraction(23044, 2187) / (N - 1) - Fraction(14000, 2187) / (N + 2)
            - Fraction(6200, 729) / (N - 1) ** 2 + Fraction(112, 27) / (N - 1) ** 3
            + Fraction(32, 9) / (N - 1) ** 4 + Fraction(428, 243)
        )
    if kind is ConfigKind.CHECKERBOARD:
        return 2 * N**2 - N / 3 - 2 / (3 * (N + 2)) + Fraction(1, 3)
    raise ValueError(f"no closed-form bound for {kind.value}")


def bound_expression(kind: ConfigKind, spec: LatticeSpec) -> Fraction:
    """The weighted class-average expression each closed form simplifies.

    Built from the class averages and fractions with the per-configuration
    adjustments (removed special classes for corners, "S = L wherever S is
    nonzero" for the stretched 3x3 and the checkerboard).
    """
    N = Fraction(spec.N)
    axis_avg = N * (5 * N - 1) / 6
    gen_avg = N * (3 * N - 1) / 3
    frac_axis = 4 / (N + 2)
    frac_gen = (N - 2) / (N + 2)
    n4 = N**4
    if kind is ConfigKind.CORNERS:
        classes = N**2 + N - 2
        special = (n4 / 8 - 2) + (n4 / 4 - 2 * N)
        return (
            4 / classes * special
            + (4 * N - 8) / classes * (5 * N**2 + 4 * N + 3) / 6
            + frac_gen * gen_avg
        )
    if kind is ConfigKind.CORNERS_CENTER:
        _odd(spec, kind)
        special = (4 * n4 / 25 - 2 * N) + (2 * n4 / 25 - 2) + (4 * n4 / 25 - (N + 1))
        return (
            (2 / (N - 1) - 2 / (N + 2)) * special
            + (6 / (N + 2) - 2 / (N - 1)) * (5 * N**3 - 6 * N**2 - 8 * N - 9) / (3 * (2 * N - 5))
            + frac_gen * gen_avg
        )
    if kind is ConfigKind.STRETCHED_3X3:
        _odd(spec, kind)
        s = n4 / 81
        f_axis, f_gen = 2 / (N - 1), 4 / (N - 1) ** 2
        return (
            frac_axis * (f_axis * (s * axis_avg - axis_avg) + (1 - f_axis) * axis_avg)
            + frac_gen * (f_gen * (s * gen_avg - gen_avg) + (1 - f_gen) * gen_avg)
        )
    if kind is ConfigKind.CHECKERBOARD:
        return (
            frac_axis * (Fraction(3, 4) * (4 * axis_avg - axis_avg) + axis_avg / 4)
            + frac_gen * (Fraction(1, 2) * (4 * gen_avg - gen_avg) + gen_avg / 2)
        )
    raise ValueError(f"no bound expression for {kind.value}")


def eps_pair_assuming_match(S: PointSet) -> Fraction:
    """Pair-class error if every class S realises had S_ab = L_ab.

    Realised classes then contribute (scale - 1) L_ab and absent ones L_ab.
    This is the simplifying assumption behind the stretched 3x3 and
    checkerboard bounds, applied to the classes the subset actually hits.
    """
    spec, p = S.spec, S.p
    if p == 0:
        raise ValueError("empty subset")
    scale = Fraction(spec.N**4, p * p)
    hit = {c for c, s in class_counts(S).items() if s}
    total = Fraction(0)
    for c in pair_classes(spec):
        L = _lattice_class_count(spec.N, c)
        total += abs(scale - 1) * L if c in hit else L
    return total / spec.num_classes


def _odd(spec: LatticeSpec, kind: ConfigKind) -> None:
    if spec.N % 2 == 0:
        raise ValueError(f"{kind.value} needs an odd lattice side, got N={spec.N}")


# optimal distributions

@dataclass(frozen=True)
class OptimalDistribution:
    spec: LatticeSpec
    p: int
    entries: Mapping[PairClass, int]


@dataclass(frozen=True)
class OptimalError:
    p: int
    eps_unnormalized: Fraction
    eps_normalized: Fraction
    eps_pair_estimate: Fraction


def _round_scaled(L: int, p: int, N: int) -> int:
    # nearest integer to L * p^2 / N^4, halves rounded away from zero
    n4 = N**4
    return (2 * L * p * p + n4) // (2 * n4)


def optimal_distribution(spec: LatticeSpec, p: int) -> OptimalDistribution:
    if not 1 <= p <= spec.num_points:
        raise ValueError(f"p must lie in [1, {spec.num_points}], got {p}")
    a, b, L = class_arrays(spec)
    N = spec.N
    entries = {
        PairClass(ai, bi): _round_scaled(Li, p, N)
        for ai, bi, Li in zip(a.tolist(), b.tolist(), L.tolist())
    }
    return OptimalDistribution(spec, p, entries)


def epsilon_optimal(spec: LatticeSpec, p: int) -> OptimalError:
    """Error of the optimal distribution, summed per pair class."""
    if not 1 <= p <= spec.num_points:
        raise ValueError(f"p must lie in [1, {spec.num_points}], got {p}")
    N = spec.N
    n4, p2 = N**4, p * p
    _, _, L = class_arrays(spec)
    total = 0
    for Li in L.tolist():
        total += abs(n4 * _round_scaled(Li, p, N) - p2 * Li)
    unnorm = Fraction(total, p2)
    return OptimalError(
        p=p,
        eps_unnormalized=unnorm,
        eps_normalized=unnorm / len(full_distribution(spec)),
        eps_pair_estimate=unnorm / spec.num_classes,
    )


def optimal_sweep(spec: LatticeSpec, ps: Iterable[int]) -> list[OptimalError]:
    return [epsilon_optimal(spec, p) for p in ps]


def sweep_csv(rows: Iterable[OptimalError]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "eps_unnormalized", "eps_normalized", "eps_pair_estimate"])
    for r in rows:
        w.writerow([
            r.p,
            rational_str(r.eps_unnormalized),
            rational_str(r.eps_normalized),
            rational_str(r.eps_pair_estimate),
        ])
    return buf.getvalue()


@dataclass(frozen=True)
class SmallPThreshold:
    value: float
    floor: int
    F_N: int


def small_p_threshold(spec: LatticeSpec) -> SmallPThreshold:
    """N^2 / sqrt(2 F_N); below it no subset beats the empty subset."""
    _, F = most_common(spec)
    n4 = spec.N**4
    return SmallPThreshold(
        value=spec.N**2 / math.sqrt(2 * F),
        floor=math.isqrt(n4 // (2 * F)),
        F_N=F,
    )


def report_json(report: ErrorReport, bound: Fraction | None = None) -> str:
    out = report.to_dict()
    if bound is not None:
        out["closed_form_bound"] = rational_json(bound)
    return json.dumps(out, indent=2, sort_keys=False) + "\n"
