"""Distance distribution of the N x N lattice, with each distance's curve index."""
import argparse
from pathlib import Path

from latticedist.lattice import LatticeSpec, full_distribution, most_common


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--out", type=Path, default=Path("lattice_distribution.csv"))
    args = ap.parse_args()

    spec = LatticeSpec(args.n)
    dist = full_distribution(spec)
    args.out.write_text(dist.to_csv())
    d, F = most_common(spec)
    print(f"N={args.n}: {len(dist)} distinct distances, {dist.total} pairs")
    print(f"most common: sqrt({d}) with frequency {F}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
