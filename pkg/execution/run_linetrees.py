"""run_linetrees.py — Command-line front end for the linetrees toolkit.

Counts spanning trees, applies graph transforms, verifies the closed-form
line-graph identities against exact oracles and runs seeded fuzz batches.

Exit codes: 0 success, 1 verification failure, 2 usage, 3 parse error,
4 domain precondition or resource limit.

Directive: Formula Verification.md
"""

import argparse
import logging
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from dotenv import load_dotenv

load_dotenv(PROJECT_ROOT / ".env")

from execution.linetrees.checks import (
    GRAPH_CLASSES,
    check_bipartite,
    check_binomial,
    check_clique_forest,
    check_gen_result,
    check_main,
    check_partition,
    check_pendant,
    check_regular,
    check_subdivision_expansion,
    describe,
    describe_file,
    run_fuzz,
    save_fuzz_table,
)
from execution.linetrees.config import load_verify_config
from execution.linetrees.errors import GraphArgumentError, LineTreeError
from execution.linetrees.graph_io import emit_graph, read_graph_file, read_matching_hint
from execution.linetrees.transforms import (
    clique_insert,
    insert_vertex_on_edge,
    line_graph,
    pendant_split,
    subdivide,
)
from execution.linetrees.treecount import count_matrix_tree

LOGS_DIR = PROJECT_ROOT / ".tmp" / "logs"

logger = logging.getLogger("linetrees")


def _setup_logging(level: str, log_file: str | None = None) -> None:
    """Diagnostics go to stderr (and optionally .tmp/logs/); stdout carries results."""
    logger.handlers.clear()
    logger.setLevel(level)
    logger.propagate = False
    fmt = logging.Formatter("%(asctime)s | %(levelname)s | %(message)s")
    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(fmt)
    logger.addHandler(console)
    if log_file:
        LOGS_DIR.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(LOGS_DIR / log_file)
        handler.setFormatter(fmt)
        logger.addHandler(handler)


def _int_list(text: str) -> list[int]:
    """Parse "0,2,5" (an empty string is the empty list)."""
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linetrees",
        description="Exact spanning-tree counts of line graphs, subdivisions and clique insertions",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default: config)")
    parser.add_argument("--log-file", default=None, help="Also log to .tmp/logs/<name>")
    sub = parser.add_subparsers(dest="command", required=True)

    timing = argparse.ArgumentParser(add_help=False)
    timing.add_argument("--no-timing", action="store_true", help="Write elapsed = 0 in reports")

    p_count = sub.add_parser("count", help="Print t(G)")
    p_count.add_argument("file")

    p_transform = sub.add_parser("transform", help="Emit a transformed GraphFile")
    kinds = p_transform.add_subparsers(dest="kind", required=True)
    kinds.add_parser("line").add_argument("file")
    p = kinds.add_parser("subdivide")
    p.add_argument("--r", type=_non_negative, required=True)
    p.add_argument("file")
    kinds.add_parser("clique-insert").add_argument("file")
    p = kinds.add_parser("pendant-split")
    p.add_argument("--edges", type=_int_list, required=True)
    p.add_argument("file")
    p = kinds.add_parser("vertex-insert")
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("file")

    p_verify = sub.add_parser("verify", help="Check an identity and print a JSON report")
    checks = p_verify.add_subparsers(dest="kind", required=True)
    p = checks.add_parser("main", parents=[timing])
    p.add_argument("--r", type=_non_negative, required=True)
    p.add_argument("file")
    checks.add_parser("regular", parents=[timing]).add_argument("file")
    p = checks.add_parser("pendant", parents=[timing])
    p.add_argument("--r", type=_non_negative, required=True)
    p.add_argument("file")
    p = checks.add_parser("bipartite", parents=[timing])
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("file")
    for name in ("gen-result", "partition"):
        p = checks.add_parser(name, parents=[timing])
        source = p.add_mutually_exclusive_group()
        source.add_argument("--matching", type=_int_list, help="Edge ids of M in FILE")
        source.add_argument(
            "--clique-insert", action="store_true", help="FILE is G; check (C(G), M)"
        )
        p.add_argument("file")
    p = checks.add_parser("binomial", parents=[timing])
    p.add_argument("--i", type=_non_negative, default=None, help="Default: every valid i")
    p.add_argument("file")
    p = checks.add_parser("subdivision-expansion", parents=[timing])
    p.add_argument("--r", type=_non_negative, required=True)
    p.add_argument("--edges", type=_int_list, default=None, help="F (default: all edges)")
    p.add_argument("file")
    p = checks.add_parser("clique-forest", parents=[timing])
    p.add_argument("--clique", type=_int_list, required=True)
    p.add_argument("--anchor", type=int, required=True)
    p.add_argument("file")

    p_fuzz = sub.add_parser("fuzz", parents=[timing], help="Verify a seeded batch of instances")
    p_fuzz.add_argument("--class", dest="graph_class", choices=GRAPH_CLASSES, required=True)
    p_fuzz.add_argument("--count", type=_non_negative, required=True)
    p_fuzz.add_argument("--seed", type=int, required=True)
    p_fuzz.add_argument("--max-n", type=int, default=None)
    p_fuzz.add_argument("--n-jobs", type=int, default=None)
    p_fuzz.add_argument("--save", action="store_true", help="Write .tmp/reports/*.parquet")
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _transform(args: argparse.Namespace) -> int:
    g = read_graph_file(args.file)
    if args.kind == "line":
        sys.stdout.write(emit_graph(line_graph(g).graph))
    elif args.kind == "subdivide":
        sys.stdout.write(emit_graph(subdivide(g, args.r).graph))
    elif args.kind == "clique-insert":
        result = clique_insert(g)
        sys.stdout.write(f"# M = edge lines {sorted(result.matching_M)}\n")
        sys.stdout.write(emit_graph(result.graph))
    elif args.kind == "pendant-split":
        sys.stdout.write(emit_graph(pendant_split(g, args.edges)))
    else:
        sys.stdout.write(emit_graph(insert_vertex_on_edge(g, args.edge)))
    return 0


def _verify(args: argparse.Namespace, timing: bool) -> int:
    g = read_graph_file(args.file)
    instance = describe_file(g, args.file)
    kind = args.kind
    if kind == "main":
        report = check_main(g, [args.r], instance, timing)
    elif kind == "regular":
        report = check_regular(g, instance, timing)
    elif kind == "pendant":
        report = check_pendant(g, [args.r], instance, timing)
    elif kind == "bipartite":
        report = check_bipartite(g, args.a, args.b, instance, timing)
    elif kind in ("gen-result", "partition"):
        base = None
        q, matching = g, args.matching
        if args.clique_insert:
            result = clique_insert(g)
            base, q, matching = g, result.graph, result.matching_M
            instance = describe(q, f"clique_insert:{Path(args.file).name}", "clique-inserted")
        elif matching is None:
            matching = read_matching_hint(args.file)
            if matching is None:
                raise GraphArgumentError(
                    "give --matching, --clique-insert or a \"# M = [...]\" line in the file"
                )
        if kind == "gen-result":
            report = check_gen_result(q, matching, instance, base=base, timing=timing)
        else:
            report = check_partition(q, matching, instance, timing)
    elif kind == "binomial":
        report = check_binomial(g, args.i, instance, timing)
    elif kind == "subdivision-expansion":
        report = check_subdivision_expansion(g, args.edges, args.r, instance, timing)
    else:
        report = check_clique_forest(g, args.clique, args.anchor, instance, timing)

    sys.stdout.write(report.to_json() + "\n")
    if not report.passed:
        logger.error("Verification failed: %s", [r.check for r in report.records if not r.agree])
        return 1
    return 0


def _fuzz(args: argparse.Namespace, timing: bool) -> int:
    batch = run_fuzz(
        args.graph_class,
        args.count,
        args.seed,
        max_n=args.max_n,
        n_jobs=args.n_jobs,
        timing=timing,
    )
    if args.save:
        save_fuzz_table(batch)
    sys.stdout.write(batch.to_json() + "\n")
    if not batch.passed:
        logger.error("%d of %d fuzz instance(s) failed", batch.failures, batch.count)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    cfg = load_verify_config()
    _setup_logging(args.log_level or cfg.log_level, args.log_file)
    timing = cfg.include_timing and not getattr(args, "no_timing", False)

    try:
        if args.command == "count":
            print(count_matrix_tree(read_graph_file(args.file)))
            return 0
        if args.command == "transform":
            return _transform(args)
        if args.command == "verify":
            return _verify(args, timing)
        return _fuzz(args, timing)
    except LineTreeError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
