"""Command-line entry point: ``latticedist <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage/validation error,
3 budget exhausted or integer overflow.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .error import (
    closed_form_bound,
    epsilon,
    optimal_sweep,
    report_json,
    sweep_csv,
)
from .lattice import MAX_N, LatticeSpec, full_distribution
from .numtheory import BudgetExhausted, n_k, n_k_bounds
from .search import (
    BudgetExceeded,
    Exhaustive,
    Metric,
    Objective,
    RandomRestart,
    SearchTask,
    append_jsonl,
    canonicalize,
    run,
)
from .subset import ConfigKind, PointSet, generate, subset_distribution

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
NK_MAX = 10


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _spec(n: int) -> LatticeSpec:
    if n > MAX_N:
        raise ValueError(f"--n must be at most {MAX_N}, got {n}")
    return LatticeSpec(n)


def _load_subset(spec: LatticeSpec, config: str, depth: int | None) -> tuple[PointSet, ConfigKind | None]:
    if config == "full":
        return PointSet.full(spec), None
    try:
        kind = ConfigKind(config)
    except ValueError:
        path = Path(config)
        if not path.exists():
            names = ", ".join(["full", *(k.value for k in ConfigKind)])
            raise ValueError(f"--config must be one of {names} or a point-set JSON file")
        S = PointSet.from_json(path.read_text())
        if S.spec != spec:
            raise ValueError(f"point set is for N={S.spec.N}, but --n is {spec.N}")
        return S, None
    return generate(spec, kind, depth), kind


def parse_grid(text: str, upper: int) -> list[int]:
    """``a:b:s`` (inclusive of b), ``a:b``, a comma list, or a single integer."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
            raise ValueError(f"bad grid {text!r}; expected start:stop[:step] with step > 0")
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1
        ps = list(range(start, stop + 1, step))
    else:
        ps = [int(x) for x in text.split(",") if x.strip()]
    bad = [p for p in ps if not 1 <= p <= upper]
    if bad:
        raise ValueError(f"grid values must lie in [1, {upper}]; got {bad[:5]}")
    return ps


def cmd_lattice(args) -> int:
    dist = full_distribution(_spec(args.n))
    if args.format == "json":
        text = json.dumps({"N": args.n, "total": dist.total,
                           "entries": [[d, f] for d, f in dist.items()]}) + "\n"
    else:
        text = dist.to_csv()
    _emit(text, args.out)
    return 0


def cmd_subset_dist(args) -> int:
    spec = _spec(args.n)
    S, _ = _load_subset(spec, args.config, args.depth)
    dist = subset_distribution(S)
    if args.format == "json":
        text = json.dumps({"N": args.n, "p": S.p, "total": dist.total,
                           "entries": [[d, f] for d, f in dist.items()]}) + "\n"
    else:
        text = dist.to_csv()
    _emit(text, args.out)
    return 0


def cmd_error(args) -> int:
    spec = _spec(args.n)
    S, kind = _load_subset(spec, args.config, args.depth)
    if S.p == 0:
        raise ValueError("the subset is empty; its error is C(N^2, 2)")
    bound = None
    if kind in (ConfigKind.CORNERS, ConfigKind.CORNERS_CENTER,
                ConfigKind.STRETCHED_3X3, ConfigKind.CHECKERBOARD):
        bound = closed_form_bound(kind, spec)
    report = epsilon(S, per_class=args.per_class)
    _emit(report_json(report, bound), args.out)
    return 0


def cmd_optimal_curve(args) -> int:
    spec = _spec(args.n)
    ps = parse_grid(args.p, spec.num_points)
    _emit(sweep_csv(optimal_sweep(spec, ps)), args.out)
    return 0


def cmd_search(args) -> int:
    spec = _spec(args.n)
    if args.mode == "exhaustive":
        mode = Exhaustive(budget=args.budget if args.budget is not None else Exhaustive().budget)
    else:
        mode = RandomRestart(iterations=args.iterations, seed=args.seed or 0, steps=args.steps)
    task = SearchTask(spec, args.p, Objective(args.objective), Metric(args.metric), mode)
    try:
        result = run(task)
    except BudgetExceeded as e:
        line = append_jsonl(args.out, task, e.partial)
        if args.out is None:
            sys.stdout.write(line)
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    line = append_jsonl(args.out, task, result)
    if args.out is None:
        sys.stdout.write(line)
    if args.verify_config:
        target = canonicalize(generate(spec, ConfigKind(args.verify_config), args.depth))
        if result.best != target:
            print(f"optimum {list(result.best.points)} differs from {args.verify_config} "
                  f"{list(target.points)}", file=sys.stderr)
            return EXIT_MISMATCH
    return 0


def nk_rows(kmax: int) -> list[list]:
    rows = []
    for k in range(1, kmax + 1):
        try:
            b = n_k_bounds(k)
            nk = n_k(k)
            rows.append([k, nk, b.constructive_upper, b.primorial_lower, b.simple_upper,
                         int(nk == b.constructive_upper)])
        except (OverflowError, BudgetExhausted) as e:
            rows.append([k, "overflow", "", "", "", str(e)])
    return rows


def cmd_nk(args) -> int:
    if not 1 <= args.kmax <= NK_MAX:
        raise ValueError(f"--kmax must lie in [1, {NK_MAX}], got {args.kmax}")
    rows = nk_rows(args.kmax)
    header = ["k", "n_k", "n_k_prime", "primorial_lower", "simple_upper", "agree"]
    if args.format == "json":
        text = json.dumps([dict(zip(header, r)) for r in rows]) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    return 0 if all(r[1] != "overflow" for r in rows) else EXIT_BUDGET


def cmd_config(args) -> int:
    spec = _spec(args.n)
    S = generate(spec, ConfigKind(args.config), args.depth)
    _emit(S.to_json() + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latticedist",
                                 description="Exact distance distributions of the integer lattice.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=("csv", "json")):
        p.add_argument("--n", type=int, required=True, help="lattice side length N")
        p.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=fmt, default=fmt[0])

    p = sub.add_parser("lattice", help="full lattice distance distribution")
    common(p)
    p.set_defaults(func=cmd_lattice)

    kinds = ["full", *(k.value for k in ConfigKind)]
    p = sub.add_parser("subset-dist", help="distance distribution of a subset")
    common(p)
    p.add_argument("--config", required=True, help=f"one of {kinds} or a point-set JSON file")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=cmd_subset_dist)

    p = sub.add_parser("error", help="error report for a subset")
    common(p, fmt=("json",))
    p.add_argument("--config", required=True, help=f"one of {kinds} or a point-set JSON file")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--per-class", action="store_true", help="include every per-class error")
    p.set_defaults(func=cmd_error)

    p = sub.add_parser("optimal-curve", help="error of the optimal distribution over a p grid")
    common(p, fmt=("csv",))
    p.add_argument("--p", default="", help="grid start:stop[:step] (stop inclusive) or a,b,c")
    p.set_defaults(func=cmd_optimal_curve)

    p = sub.add_parser("search", help="search for error-extremal subsets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--metric", choices=[m.value for m in Metric], default=Metric.EXACT_UNNORMALIZED.value)
    p.add_argument("--objective", choices=[o.value for o in Objective], default="max")
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--iterations", type=int, default=20)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--verify-config", choices=[k.value for k in ConfigKind], default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--out", type=Path, default=None, help="JSON-lines log to append to")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("nk", help="n_k table with its bounds")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_nk)

    p = sub.add_parser("config", help="emit a generated configuration as point-set JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--config", required=True, choices=[k.value for k in ConfigKind])
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_config)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExhausted, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
