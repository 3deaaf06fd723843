"""Command-line front end: build, color, solve, bounds, audit.

Exit status: 0 success, 1 audit or verification failure, 2 usage error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import export
from .audits import CHECKS, run_audit
from .bounds import FAMILIES, bound_table, table_to_csv, table_to_json
from .constructions import CONSTRUCTIONS, contest_triple_coloring
from .errors import BudgetExceededError, InvalidInputError, InvalidSpecError
from .graph_core import DEFAULT_EDGE_CAP, DEFAULT_VERTEX_CAP, GraphSpec
from .solvers import SolveBudget, contest_exhaustive_optimum, exact_chromatic, max_independent_set
from .verify import check_contest_coloring, check_independent, check_proper

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def out_dir(args) -> Path:
    path = Path(args.out or os.environ.get("JCHROMA_OUT") or "out")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _tag(n, k=None, t=None, extra=None) -> str:
    parts = [f"n{n}"]
    if k is not None:
        parts.append(f"k{k}")
    if t is not None:
        parts.append(f"t{t}")
    if extra:
        parts.append(extra)
    return "jpm_" + "_".join(parts)


def _spec(parser, args) -> GraphSpec:
    if args.k is None or args.t is None:
        parser.error("--k and --t are required")
    try:
        return GraphSpec(args.n, args.k, args.t)
    except InvalidSpecError as exc:
        parser.error(f"invalid spec: {exc}")


def _budget(args) -> SolveBudget:
    return SolveBudget(
        max_vertices=args.max_vertices,
        time_limit=args.time_limit,
        seed=args.seed,
        max_nodes=args.max_nodes,
    )


def cmd_build(parser, args) -> int:
    spec = _spec(parser, args)
    print(f"vertices={spec.vertex_count} edges={spec.edge_count}")
    if spec.edge_count > args.max_edges:
        print(
            f"error: {spec} has {spec.vertex_count} vertices and {spec.edge_count} edges; "
            f"raise --max-edges above {args.max_edges} to export it",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    base = out_dir(args) / _tag(spec.n, spec.k, spec.t)
    if args.format == "dimacs":
        text = export.dimacs_text(spec, args.max_edges)
        base.with_suffix(".col").write_text(text)
        base.with_suffix(".manifest.json").write_text(export.dumps(export.manifest(spec)))
        print(text.splitlines()[1])
    else:
        base.with_suffix(".json").write_text(export.dumps(export.graph_json(spec, args.max_edges)))
    return EXIT_OK


def cmd_color(parser, args) -> int:
    name = args.construction
    if name == "contest":
        try:
            colors = contest_triple_coloring(args.n)
        except InvalidSpecError as exc:
            parser.error(str(exc))
        proper = bool(check_contest_coloring(args.n, colors))
        payload = export.contest_coloring_json(args.n, colors)
        path = out_dir(args) / (_tag(args.n, extra="contest") + ".json")
        path.write_text(export.dumps(payload))
        print(f"colors={payload['num_colors']} proper={str(proper).lower()}")
        return EXIT_OK if proper else EXIT_FAIL
    spec = _spec(parser, args)
    family, build = CONSTRUCTIONS[name]
    if (spec.k, spec.t) != family:
        parser.error(f"construction {name} colours J±(n,{family[0]},{family[1]}), not {spec}")
    try:
        coloring = build(spec.n)
    except InvalidSpecError as exc:
        parser.error(str(exc))
    proper = bool(check_proper(spec, coloring))
    base = out_dir(args) / _tag(spec.n, spec.k, spec.t, name)
    if args.format == "csv":
        base.with_suffix(".csv").write_text(export.coloring_csv(coloring))
    else:
        base.with_suffix(".json").write_text(export.dumps(export.coloring_json(coloring)))
    print(f"colors={coloring.num_colors} proper={str(proper).lower()}")
    return EXIT_OK if proper else EXIT_FAIL


def cmd_solve(parser, args) -> int:
    budget = _budget(args)
    if args.what == "contest-opt":
        result = {"spec": {"n": args.n, "problem": "contest"}, "witness": None}
        try:
            value = contest_exhaustive_optimum(args.n, budget=budget)
            result.update(chi=value, exact=True, lower=value, upper=value)
            status = EXIT_OK
        except InvalidInputError as exc:
            parser.error(str(exc))
        except BudgetExceededError as exc:
            result.update(chi=None, exact=False, lower=exc.lower, upper=exc.upper)
            status = EXIT_BUDGET
        tag = _tag(args.n, extra="contest-opt")
    else:
        spec = _spec(parser, args)
        try:
            if args.what == "alpha":
                res = max_independent_set(spec, budget)
                verified = bool(check_independent(spec, res.witness))
                result = {
                    "alpha": res.alpha,
                    "exact": res.exact,
                    "lower": res.alpha,
                    "upper": res.upper,
                    "witness": [[list(v.support), list(v.signs)] for v in res.witness],
                }
            else:
                res = exact_chromatic(spec, budget)
                verified = bool(check_proper(spec, res.witness))
                result = {
                    "chi": res.chi,
                    "exact": res.exact,
                    "lower": res.lower,
                    "upper": res.upper,
                    "witness": export.coloring_json(res.witness)["assignment"],
                }
        except BudgetExceededError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        result.update(
            spec={"n": spec.n, "k": spec.k, "t": spec.t},
            witness_verified=verified,
            nodes_explored=res.nodes_explored,
            elapsed_seconds=round(res.elapsed_seconds, 6),
        )
        status = EXIT_OK if result["exact"] else EXIT_BUDGET
        if not verified:
            status = EXIT_FAIL
        tag = _tag(spec.n, spec.k, spec.t, args.what)
    text = export.dumps(result)
    (out_dir(args) / f"{tag}.json").write_text(text)
    summary = {k: v for k, v in result.items() if k != "witness"}
    print(export.dumps(summary), end="")
    return status


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        lo = hi = text
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_family(text: str) -> tuple[int, int]:
    k, t = (int(x) for x in text.split(","))
    if (k, t) not in FAMILIES:
        raise ValueError(f"family must be one of {sorted(FAMILIES)}")
    return k, t


def cmd_bounds(parser, args) -> int:
    try:
        k, t = parse_family(args.family)
        ns = parse_range(args.n)
    except ValueError as exc:
        parser.error(str(exc))
    specs = []
    for n in ns:
        try:
            specs.append(GraphSpec(n, k, t))
        except InvalidSpecError as exc:
            parser.error(f"n={n}: {exc}")
    rows = bound_table(specs, args.mode, _budget(args) if args.mode == "exact" else None)
    text = table_to_csv(rows) if args.format == "csv" else table_to_json(rows)
    suffix = "csv" if args.format == "csv" else "json"
    name = f"bounds_k{k}_t{t}_n{ns.start}-{ns.stop - 1}_{args.mode}.{suffix}"
    (out_dir(args) / name).write_text(text)
    print(text, end="" if text.endswith("\n") else "\n")
    return EXIT_OK


def cmd_audit(parser, args) -> int:
    try:
        report = run_audit(args.check, args.n, args.samples, args.seed, args.threads)
    except (InvalidInputError, InvalidSpecError) as exc:
        parser.error(str(exc))
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = export.dumps(report.to_dict())
    (out_dir(args) / f"audit_{args.check}_n{args.n}_seed{args.seed}.json").write_text(text)
    print(f"check={report.check} n={report.n} samples={report.samples} failures={len(report.failures)}")
    if report.failures:
        print(text, end="")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jchroma", description="Colorings and bounds for Johnson-type graphs J±(n,k,t).")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--t", type=int, default=None)
        p.add_argument("--out", default=None, help="output directory (default $JCHROMA_OUT or ./out)")

    def budget_args(p):
        p.add_argument("--max-vertices", type=int, default=DEFAULT_VERTEX_CAP)
        p.add_argument("--time-limit", type=float, default=60.0)
        p.add_argument("--max-nodes", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("build", help="export J±(n,k,t) as DIMACS or JSON")
    graph_args(p)
    p.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
    p.add_argument("--max-edges", type=int, default=DEFAULT_EDGE_CAP)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("color", help="run an explicit coloring and verify it")
    graph_args(p)
    p.add_argument("--construction", choices=(*CONSTRUCTIONS, "contest"), required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("solve", help="exact alpha, chi or contest optimum")
    graph_args(p)
    p.add_argument("--what", choices=("alpha", "chi", "contest-opt"), required=True)
    budget_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="tabulate bounds for a family")
    p.add_argument("--family", required=True, help="k,t e.g. 2,-1")
    p.add_argument("--n", required=True, help="range lo..hi")
    p.add_argument("--mode", choices=("formulas", "exact"), default="formulas")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    budget_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("audit", help="randomized / exhaustive proof audits")
    p.add_argument("--check", choices=CHECKS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
