"""Rooted maps by genus and edge count from exhaustive enumeration, with iso-class statistics."""

import argparse
import time

from mapenum import oracle
from mapenum.oracle import OracleConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--workers", type=int, default=oracle.default_workers())
    ap.add_argument("--classes", action="store_true", help="also count isomorphism classes (slow beyond m=4)")
    args = ap.parse_args()
    cfg = OracleConfig(max_edges=args.m_max, workers=args.workers)

    t0 = time.perf_counter()
    rc = oracle.rooted_counts(args.m_max, config=cfg)
    one = {n: 1 for n in range(1, 2 * args.m_max + 1)}
    for g in rc.genera():
        print(f"genus {g}: {[str(x) for x in rc[g].evaluate_weights(one)]}")
    print(f"({time.perf_counter() - t0:.1f}s)")

    if args.classes:
        for m in range(1, args.m_max + 1):
            cl = oracle.symmetry_census(m, config=cfg)
            trivial = sum(c.gamma == 1 for c in cl)
            print(f"m={m}: {len(cl)} classes, {trivial} without symmetry, max Gamma {max(c.gamma for c in cl)}")


if __name__ == "__main__":
    main()
