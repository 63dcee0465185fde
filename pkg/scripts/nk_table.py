"""n_k next to its constructive, primorial and 5^(k-1) bounds."""
import argparse

from latticedist.numtheory import n_k, n_k_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=10)
    args = ap.parse_args()

    print(f"{'k':>3} {'n_k':>8} {'n_k_prime':>10} {'lower':>8} {'5^(k-1)':>12}")
    for k in range(1, args.kmax + 1):
        b = n_k_bounds(k)
        print(f"{k:>3} {n_k(k):>8} {b.constructive_upper:>10} {b.primorial_lower:>8} {b.simple_upper:>12}")


if __name__ == "__main__":
    main()
