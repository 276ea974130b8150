"""Two-point functions R_l of quartic maps, checked against well-labeled tree counts."""

import argparse

from mapenum import bijections, solver


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", type=int, default=6)
    ap.add_argument("--order", type=int, default=11)
    args = ap.parse_args()

    R = solver.two_point_r(args.ell, args.order)
    limit, _ = solver.solve_rs(solver.quartic(), args.order)
    odd = range(1, args.order + 1, 2)
    print("l   " + "  ".join(f"t^{k:<4}" for k in odd))
    for ell in range(1, args.ell + 1):
        cs = R[ell].numbers()
        print(f"{ell:<3} " + "  ".join(f"{str(cs[k]):<6}" for k in odd))
    print("inf " + "  ".join(f"{str(limit.numbers()[k]):<6}" for k in odd))

    cap = min(args.order, bijections.MAX_LABELED_ORDER)
    same = all(
        bijections.enumerate_well_labeled(ell, cap)[0] == R[ell].truncate(cap) for ell in range(1, args.ell + 1)
    )
    print(f"well-labeled tree counts agree to t^{cap}: {same}")


if __name__ == "__main__":
    main()
