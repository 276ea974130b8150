"""Close every blossom tree of a given order and report how the closed maps distribute."""

import argparse
from collections import Counter

from mapenum import bijections as bij
from mapenum.combmap import degree_profile, genus, rooted_code
from mapenum.solver import WeightSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=5)
    ap.add_argument("--degrees", default="1,2,3,4,5", help="allowed vertex degrees")
    ap.add_argument("--show", type=int, default=5, help="print the first few closures")
    args = ap.parse_args()
    V = WeightSpec.formal([int(x) for x in args.degrees.split(",")])

    for kind, close in (("S", bij.closure), ("R", bij.closure_r)):
        trees, _ = bij.enumerate_blossom(kind, args.order, V)
        results = [close(tr) for tr in trees]
        marked = {bij.marked_key(r) for r in results}
        plain = Counter(rooted_code(r.cmap, r.leg) for r in results)
        genera = Counter(genus(r.cmap) for r in results)
        print(f"{kind}-trees up to order {args.order}: {len(trees)}")
        print(f"  distinct marked maps {len(marked)}, distinct rooted maps {len(plain)}, genera {dict(genera)}")
        print(f"  largest fibre of the unmarked closure: {max(plain.values(), default=0)}")
        for tr, r in list(zip(trees, results))[: args.show]:
            print(f"  {tr!r:<40} -> sigma={r.cmap.sigma} alpha={r.cmap.alpha}  degrees {degree_profile(r.cmap)}")


if __name__ == "__main__":
    main()
