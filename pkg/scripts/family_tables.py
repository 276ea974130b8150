"""Rooted 4-regular and 3-regular planar maps: closed form, planar solver and brute force side by side."""

import argparse

from mapenum import oracle, solver
from mapenum.oracle import OracleConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--brute-edges", type=int, default=6, help="largest m checked by brute force")
    args = ap.parse_args()
    cfg = OracleConfig(max_profile_edges=max(8, args.brute_edges))

    for name, closed_fn, V, step, degree in (
        ("4-regular", solver.tetravalent_counts, solver.quartic(), 2, 4),
        ("3-regular", solver.trivalent_counts, solver.cubic(), 3, 3),
    ):
        E = solver.rooted_map_gf(V, step * args.k_max).numbers()
        closed = closed_fn(args.k_max)
        print(f"\n{name}\n{'k':>3} {'vertices':>9} {'closed form':>12} {'solver':>7}  brute force")
        for k in range(args.k_max + 1):
            nv = k if degree == 4 else 2 * k
            edges = degree * nv // 2
            brute = "-"
            if nv == 0:
                brute = "1"
            elif edges <= args.brute_edges:
                brute = str(oracle.rooted_count_profile({degree: nv}, 0, cfg))
            print(f"{k:>3} {nv:>9} {closed[k]:>12} {str(E[step * k]):>7}  {brute}")


if __name__ == "__main__":
    main()
