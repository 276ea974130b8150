"""Command-line front end.

Every number in the output is an exact rational written as a string
("3", "1/6"). JSON is the default; ``--format csv`` prints the same strings
as a table.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import bijections as bij
from . import checks, oracle, solver
from .combmap import DegreeProfile, Permutation, genus
from .oracle import OracleConfig
from .series import TSeries, frac_str
from .solver import WeightSpec


class CliError(Exception):
    """Bad input; reported on stderr with exit status 2."""


@dataclass(frozen=True)
class WeightFile:
    weights: dict[int, Fraction]
    order: int | None = None

    def spec(self) -> WeightSpec:
        return WeightSpec(self.weights)


WEIGHT_FILE_KEYS = {"order", "weights"}


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise CliError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"{where}: {exc}") from None


def parse_weight_file(data) -> WeightFile:
    """Validate the decoded JSON of a weight file."""
    if not isinstance(data, dict):
        raise CliError("weight file must hold a JSON object")
    unknown = set(data) - WEIGHT_FILE_KEYS
    if unknown:
        raise CliError(f"unknown keys in weight file: {sorted(unknown)}")
    if "weights" not in data or not isinstance(data["weights"], dict):
        raise CliError("weight file needs a 'weights' object")
    weights = {}
    for key, value in data["weights"].items():
        try:
            n = int(key)
        except ValueError:
            raise CliError(f"weight index {key!r} is not an integer") from None
        if n < 1:
            raise CliError(f"weight index must be >= 1, got {n}")
        weights[n] = _rational(value, f"weight {key}")
    order = data.get("order")
    if order is not None and (isinstance(order, bool) or not isinstance(order, int) or order < 0):
        raise CliError(f"order must be a nonnegative integer, got {order!r}")
    return WeightFile(weights, order)


def load_weight_file(path: str) -> WeightFile:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from None
    return parse_weight_file(data)


def parse_profile(text: str) -> DegreeProfile:
    """``"4:2,3:1"`` -> two degree-4 and one degree-3 vertex."""
    counts = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            n, k = part.split(":")
            counts[int(n)] = counts.get(int(n), 0) + int(k)
        except ValueError:
            raise CliError(f"bad profile entry {part!r}; use degree:count") from None
    try:
        return DegreeProfile(counts)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _strs(series: TSeries) -> list[str]:
    return [frac_str(x) for x in series.numbers()]


def _code_str(code) -> str:
    sig, alp = code
    return f"sigma={Permutation(sig)} alpha={Permutation(alp)}"


# -- commands -----------------------------------------------------------------

# each command returns (json_object, csv_header, csv_rows)


def cmd_count(args, config: OracleConfig):
    m = args.edges
    profile = parse_profile(args.profile) if args.profile else None
    if profile is not None and profile.total_degree() != 2 * m:
        raise CliError(f"profile {profile} has total degree {profile.total_degree()}, not {2 * m}")
    labelled = oracle.labelled_count(m, args.genus, profile, config)
    rooted = Fraction(2 * m * labelled, math.factorial(2 * m))
    report = {
        "edges": str(m),
        "genus": None if args.genus is None else str(args.genus),
        "profile": str(profile) if profile else None,
        "labelled": str(labelled),
        "rooted": frac_str(rooted),
    }
    want_classes = args.classes if args.classes is not None else m <= 4
    rows = []
    if want_classes:
        classes = []
        for c in oracle.symmetry_census(m, genus=args.genus, config=config):
            if profile is not None and c.profile != profile:
                continue
            item = {"code": _code_str(c.code), "gamma": str(c.gamma), "count": str(c.count),
                    "genus": str(c.genus), "profile": str(c.profile)}
            classes.append(item)
            rows.append([item[k] for k in ("code", "gamma", "count", "genus", "profile")])
        report["iso_classes"] = classes
        return report, ["code", "gamma", "count", "genus", "profile"], rows
    report["iso_classes"] = None
    return report, ["labelled", "rooted"], [[report["labelled"], report["rooted"]]]


def parse_target(text: str) -> tuple[str, int | None]:
    if text in ("e0", "R", "S"):
        return text, None
    for prefix in ("W", "twopoint"):
        if text.startswith(prefix + ":"):
            try:
                k = int(text.split(":", 1)[1])
            except ValueError:
                break
            if k < (0 if prefix == "W" else 1):
                break
            return prefix, k
    raise CliError(f"bad target {text!r}; expected e0, R, S, W:n or twopoint:l")


def cmd_series(args, config: OracleConfig):
    wf = load_weight_file(args.weightfile)
    T = args.order if args.order is not None else wf.order
    if T is None:
        raise CliError("no truncation order: pass --order or put 'order' in the weight file")
    kind, k = parse_target(args.target)
    V = wf.spec()
    if kind == "e0":
        s = solver.rooted_map_gf(V, T)
    elif kind in ("R", "S"):
        R, S = solver.solve_rs(V, T)
        s = R if kind == "R" else S
    elif kind == "W":
        s = solver.resolvent_w(V, T, max(k, 1)).W[k]
    else:
        if V != solver.quartic():
            raise CliError("twopoint targets need the quartic weight file {\"4\": \"1\"}")
        if T < 1:
            raise CliError("twopoint targets need order >= 1")
        s = solver.two_point_r(k, T)[k]
    coeffs = _strs(s)
    return coeffs, [f"t^{i}" for i in range(len(coeffs))], [coeffs]


FAMILIES = {
    "tetravalent": (solver.tetravalent_counts, solver.quartic, 2, 4),
    "trivalent": (solver.trivalent_counts, solver.cubic, 3, 3),
}


def cmd_families(args, config: OracleConfig):
    closed_fn, weights, step, degree = FAMILIES[args.kind]
    K = args.k_max
    closed = closed_fn(K)
    E = solver.rooted_map_gf(weights(), step * K).numbers()
    rows = []
    for k in range(K + 1):
        vertices = k if degree == 4 else 2 * k
        row = {"k": str(k), "vertices": str(vertices), "closed_form": str(closed[k]),
               "solver": frac_str(E[step * k])}
        if args.oracle:
            edges = degree * vertices // 2
            if vertices == 0:
                row["oracle"] = "1"
            elif edges <= config.max_profile_edges:
                row["oracle"] = frac_str(oracle.rooted_count_profile({degree: vertices}, 0, config))
            else:
                row["oracle"] = None
        rows.append(row)
    header = list(rows[0])
    return {"kind": args.kind, "rows": rows}, header, [[r[h] or "" for h in header] for r in rows]


def cmd_trees(args, config: OracleConfig):
    V = load_weight_file(args.weights).spec() if args.weights else solver.cubic()
    trees, series = bij.enumerate_blossom(args.tree_class, args.order, V)
    report = {"class": args.tree_class, "order": str(args.order), "count": str(len(trees)),
              "series": _strs(series)}
    rows = []
    if args.list:
        items = []
        for tree in trees:
            res = bij.closure(tree) if args.tree_class == "S" else bij.closure_r(tree)
            cm = res.cmap
            item = {"tree": repr(tree), "weight": str(bij.tree_weight(tree)),
                    "map": f"sigma={cm.sigma} alpha={cm.alpha}",
                    "vertices": str(cm.sigma.num_cycles()), "faces": str(cm.phi.num_cycles()),
                    "genus": str(genus(cm))}
            items.append(item)
            rows.append(list(item.values()))
        report["trees"] = items
        return report, ["tree", "weight", "map", "vertices", "faces", "genus"], rows
    return report, [f"t^{i}" for i in range(len(series.coeffs))], [report["series"]]


def cmd_twopoint(args, config: OracleConfig):
    Rs = solver.two_point_r(args.ell, args.order)
    table = {str(ell): _strs(Rs[ell]) for ell in range(1, args.ell + 1)}
    header = ["ell"] + [f"t^{i}" for i in range(args.order + 1)]
    return table, header, [[ell] + cs for ell, cs in table.items()]


def cmd_verify(args, config: OracleConfig):
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    results = checks.run_suites(names, checks.VerifyOptions(oracle=config))
    items = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in results]
    report = {"passed": all(c.ok for c in results), "checks": items}
    rows = [[c.name, "pass" if c.ok else "fail", c.detail] for c in results]
    return report, ["name", "status", "detail"], rows


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, defaults: bool):
        # accepted before or after the subcommand; only the top level sets defaults
        d = (lambda x: x) if defaults else (lambda x: argparse.SUPPRESS)
        parser.add_argument("--format", choices=("json", "csv"), default=d("json"))
        parser.add_argument("--threads", type=int, default=d(None),
                            help="worker processes for brute-force enumeration (default: CPU count)")
        parser.add_argument("--max-edges", type=int, default=d(None),
                            help="cap on edges for unrestricted brute-force enumeration")

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, defaults=False)
    p = argparse.ArgumentParser(prog="mapenum", description="Exact enumeration of maps and matrix-model series.")
    global_flags(p, defaults=True)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add("count", help="brute-force census of labelled and rooted maps")
    c.add_argument("--edges", type=int, required=True)
    c.add_argument("--genus", type=int, default=None)
    c.add_argument("--profile", default=None, help='vertex degrees, e.g. "4:2" or "3:2,1:2"')
    c.add_argument("--classes", action=argparse.BooleanOptionalAction, default=None,
                   help="list isomorphism classes (default: only when edges <= 4)")
    c.set_defaults(func=cmd_count)

    s = add("series", help="planar generating functions from a weight file")
    s.add_argument("weightfile")
    s.add_argument("--target", default="e0", help="e0, R, S, W:n or twopoint:l")
    s.add_argument("--order", type=int, default=None)
    s.set_defaults(func=cmd_series)

    f = add("families", help="closed-form counts against the solver")
    f.add_argument("--kind", choices=sorted(FAMILIES), default="tetravalent")
    f.add_argument("--k-max", type=int, default=5)
    f.add_argument("--oracle", action="store_true", help="add brute-force counts where feasible")
    f.set_defaults(func=cmd_families)

    t = add("trees", help="blossom trees and their closures")
    t.add_argument("--class", dest="tree_class", choices=("R", "S"), default="S")
    t.add_argument("--order", type=int, default=4)
    t.add_argument("--weights", default=None, help="weight file (default: v3 = 1)")
    t.add_argument("--list", action="store_true", help="list every tree with its closed map")
    t.set_defaults(func=cmd_trees)

    w = add("twopoint", help="distance-dependent two-point functions R_l")
    w.add_argument("--ell", type=int, default=3)
    w.add_argument("--order", type=int, default=9)
    w.set_defaults(func=cmd_twopoint)

    v = add("verify", help="run the verification suites")
    v.add_argument("--suite", choices=["all", *checks.SUITES], default="all")
    v.set_defaults(func=cmd_verify)
    return p


def oracle_config(args) -> OracleConfig:
    cfg = OracleConfig(workers=args.threads if args.threads is not None else oracle.default_workers())
    if cfg.workers < 1:
        raise CliError("--threads must be positive")
    if args.max_edges is not None:
        if not 1 <= args.max_edges <= cfg.hard_max_edges:
            raise CliError(f"--max-edges must lie in 1..{cfg.hard_max_edges}")
        cfg = replace(cfg, max_edges=args.max_edges)
    return cfg


def render(report, header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = oracle_config(args)
        report, header, rows = args.func(args, config)
    except (CliError, oracle.TooLargeError, bij.TooLargeError, solver.InvalidProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, header, rows, args.format))
    if args.command == "verify" and not report["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
