"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 cap/precondition exceeded, 4 oracle inconsistency.  Every count in JSON
output is a decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .counters import count_k_forests, count_k_matchings, count_k_trees, weighted_tree_sum
from .errors import CapExceededError, OracleInconsistencyError
from .gf2 import MatrixFormatError
from .graphs import ApexWeightedGraph, GraphFormatError, parse_graph
from .matroid import (
    LinearMatroid,
    TruncationRankError,
    count_bases,
    count_json,
    dualize,
    format_matroid,
    from_incidence,
    normalize,
    parse_matroid,
    rank,
    truncate,
)
from .pipelines import (
    forests_via_bases,
    matchings_via_forest_prefix,
    matchings_via_wtrees,
    wtrees_via_ktrees,
)
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INCONSISTENT = 4


def _read(path: str) -> str:
    return Path(path).read_text()


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_plain_graph(path: str):
    g = parse_graph(_read(path))
    if isinstance(g, ApexWeightedGraph):
        raise GraphFormatError("expected a plain graph file without an apex line")
    return g


def cmd_count(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph))
    if args.problem == "wtrees":
        if not isinstance(g, ApexWeightedGraph):
            raise GraphFormatError("wtrees needs an apex line in the graph file")
        z = args.z if args.z is not None else g.z
        if z is None:
            raise ValueError("wtrees needs --z or a weight in the apex line")
        count = weighted_tree_sum(g, args.k, z)
    else:
        if isinstance(g, ApexWeightedGraph):
            g = g.graph
        fn = {
            "matchings": count_k_matchings,
            "trees": count_k_trees,
            "forests": count_k_forests,
        }[args.problem]
        count = fn(g, args.k)
    print(json.dumps({"problem": args.problem, "k": args.k, "count": str(count)}))
    return EXIT_OK


def _load_matroid(path: str) -> LinearMatroid:
    text = _read(path)
    stripped = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    if any(ln.startswith("graph") for ln in stripped):
        return from_incidence(_load_plain_graph(path))
    return parse_matroid(text)


def cmd_matroid(args: argparse.Namespace) -> int:
    if args.action == "from-graph":
        m = from_incidence(_load_plain_graph(args.input))
        _write_or_print(format_matroid(m), args.out)
        return EXIT_OK
    m = _load_matroid(args.input)
    if args.action == "rref":
        _write_or_print(format_matroid(normalize(m)), args.out)
        return EXIT_OK
    if args.action == "dual":
        _write_or_print(format_matroid(dualize(normalize(m))), args.out)
        return EXIT_OK
    if args.action == "truncate":
        t = truncate(normalize(m), args.k, sigma=args.sigma, seed=args.seed)
        _write_or_print(format_matroid(t), args.out)
        return EXIT_OK
    if args.action == "count-bases":
        # normalization never changes the matroid, but the duplicate-collapsing
        # counter requires it
        bases = count_bases(normalize(m), method=args.method)
        print(count_json(m, bases))
        return EXIT_OK
    raise AssertionError(f"unhandled action {args.action}")


def cmd_reduce(args: argparse.Namespace) -> int:
    g = _load_plain_graph(args.graph) if args.pipeline != "wtrees-via-trees" else None
    if args.pipeline == "matchings-via-wtrees":
        count, trace = matchings_via_wtrees(g, args.k)
    elif args.pipeline == "matchings-via-forest-prefix":
        count, trace = matchings_via_forest_prefix(g, args.k)
    elif args.pipeline == "forests-via-bases":
        count, trace = forests_via_bases(
            g, args.k, param=args.param, sigma=args.sigma, seed=args.seed
        )
    elif args.pipeline == "wtrees-via-trees":
        awg = parse_graph(_read(args.graph))
        if not isinstance(awg, ApexWeightedGraph):
            raise GraphFormatError("wtrees-via-trees needs an apex line in the graph file")
        z = args.z if args.z is not None else awg.z
        if z is None:
            raise ValueError("wtrees-via-trees needs --z or a weight in the apex line")
        count, trace = wtrees_via_ktrees(awg, args.k, z)
    else:
        raise AssertionError(f"unhandled pipeline {args.pipeline}")
    if args.trace:
        Path(args.trace).write_text(trace.to_json() + "\n")
    print(
        json.dumps(
            {
                "pipeline": args.pipeline,
                "k": args.k,
                "seed": args.seed,
                "sigma": args.sigma,
                "count": str(count),
            }
        )
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suites(
        args.suite,
        max_n=args.max_n,
        trials=args.trials,
        seed=args.seed,
    )
    all_ok = True
    for r in results:
        status = "pass" if r.ok else "FAIL"
        print(f"[{status}] {r.suite}: {r.name} ({r.passed} passed, {r.failed} failed)")
        all_ok = all_ok and r.ok
    return EXIT_OK if all_ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="forestlab",
        description="Exact counting oracles, reduction pipelines, and linear matroids.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count matchings/trees/forests/weighted trees")
    c.add_argument("graph", help="graph file")
    c.add_argument("--problem", required=True, choices=("matchings", "trees", "forests", "wtrees"))
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--z", type=int, default=None, help="apex weight (wtrees)")
    c.set_defaults(fn=cmd_count)

    m = sub.add_parser("matroid", help="matroid construction and base counting")
    m.add_argument("action", choices=("from-graph", "rref", "dual", "truncate", "count-bases"))
    m.add_argument("input", help="graph or matroid file")
    m.add_argument("--k", type=int, default=None)
    m.add_argument("--sigma", type=int, default=40)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--method", choices=("fpt", "brute", "auto"), default="auto")
    m.add_argument("--out", default=None, help="output file (default stdout)")
    m.set_defaults(fn=cmd_matroid)

    r = sub.add_parser("reduce", help="run an oracle-reduction pipeline")
    r.add_argument(
        "pipeline",
        choices=(
            "matchings-via-wtrees",
            "wtrees-via-trees",
            "matchings-via-forest-prefix",
            "forests-via-bases",
        ),
    )
    r.add_argument("graph", help="graph file")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--z", type=int, default=None)
    r.add_argument("--param", choices=("rank", "nullity"), default="rank")
    r.add_argument("--sigma", type=int, default=40)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trace", default=None, help="write the pipeline trace JSON here")
    r.set_defaults(fn=cmd_reduce)

    v = sub.add_parser("verify", help="run self-verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--max-n", type=int, default=5)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "matroid" and args.action == "truncate" and args.k is None:
        parser.error("truncate requires --k")
    try:
        return args.fn(args)
    except (GraphFormatError, MatrixFormatError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceededError, TruncationRankError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except OracleInconsistencyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
