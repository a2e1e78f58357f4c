#!/usr/bin/env python3
"""
eogx command line tool

Subcommands: classify, contain, turan, table1, matrix {classify, eex,
staircase}, verify, bipartitions, reverse, peel.

Exit codes: 0 success, 1 negative answer or failed verification, 2 usage
error, 3 search budget exhausted, 130 interrupted.
"""

import argparse
import csv
import io
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional

from eogx.classify import (
    KNOWN_PATH_BOUNDS,
    classify_connected,
    classify_path,
    peel_extensions,
)
from eogx.config import (
    REPORT_FORMATS,
    apply_config_overrides,
    load_config,
    resolve_threads,
)
from eogx.containment import enumerate_embeddings, find_embedding
from eogx.graph import (
    AnyGraph,
    EdgeOrderedBigraph,
    bipartitions,
    format_graph,
    load_graph,
    reverse,
)
from eogx.matrix01 import (
    classify_matrix,
    eex_exact,
    is_connected_matrix,
    is_light,
    load_matrix,
    reach_from_unit,
    staircase_certificate,
)
from eogx.oracle import Budget, Table1Row, exact_ex, table1_report
from eogx.verify import SUITES, VerifySettings, reports_to_csv, reports_to_json, run_suites

logger = logging.getLogger("eogx")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERRUPTED = 130


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print structured JSON output")
    common.add_argument("--out", metavar="FILE", help="write the result or report to FILE")
    common.add_argument("--config", metavar="FILE", help="config file, defaults to ~/.config/eogx/config.json")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--samples", type=int, help="random samples per suite")
    common.add_argument("--budget-nodes", type=int, help="search node budget per exact computation")
    common.add_argument("--budget-secs", type=float, help="time budget per exact computation or sweep, in seconds")
    common.add_argument("--threads", type=int, help="worker processes, 0 for one per CPU")
    common.add_argument("--max-edges", type=int, help="largest trees in exhaustive sweeps")
    common.add_argument("--max-bigraph-edges", type=int, help="largest bigraphs in exhaustive sweeps")
    common.add_argument("--max-n", type=int, help="largest n for table1 and the oracle suite")
    common.add_argument("--format", choices=REPORT_FORMATS, help="report format")
    common.add_argument("--debug", action="store_true", help="debug logging and full tracebacks")
    return common


def setup_argument_parser() -> argparse.ArgumentParser:
    """Set up command line argument parser"""
    common = _common_options()
    parser = argparse.ArgumentParser(
        description="Edge-ordered graph extremal toolkit",
        prog="eogx",
        allow_abbrev=False,
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    classify = commands.add_parser("classify", parents=[common], help="linear or n log n verdict for a connected graph")
    classify.add_argument("graph", help="graph file or P: path spec, e.g. P:12345")

    contain = commands.add_parser("contain", parents=[common], help="does HOST contain PATTERN")
    contain.add_argument("host", help="host graph file or P: spec")
    contain.add_argument("pattern", help="pattern graph file or P: spec")
    contain.add_argument("--sided", action="store_true", help="respect left/right sides of two bigraphs")
    contain.add_argument("--all", action="store_true", help="list every copy instead of the first")

    turan = commands.add_parser("turan", parents=[common], help="exact ex_<(n, H) with a witness")
    turan.add_argument("--n", type=int, required=True, help="number of vertices")
    turan.add_argument("pattern", help="forbidden graph file or P: spec")
    turan.add_argument("--witness-only", action="store_true", help="only look for an H-free ordering of K_n")

    table1 = commands.add_parser("table1", parents=[common], help="class and small exact values of every 5-edge path")
    table1.add_argument("labelings", nargs="*", help="restrict to these labelings, e.g. 13524")

    matrix = commands.add_parser("matrix", help="0-1 matrix patterns")
    matrix_commands = matrix.add_subparsers(dest="matrix_command", metavar="MATRIX_COMMAND")
    matrix_commands.required = True
    m_classify = matrix_commands.add_parser("classify", parents=[common], help="linear or n log n verdict")
    m_classify.add_argument("matrix", help="matrix file (rows of 0/1) or M:11;01")
    m_eex = matrix_commands.add_parser("eex", parents=[common], help="exact extremal function of a pattern")
    m_eex.add_argument("--n", type=int, required=True, help="matrix size")
    m_eex.add_argument("matrix", help="pattern file or M: spec")
    m_stair = matrix_commands.add_parser("staircase", parents=[common], help="staircase certificate")
    m_stair.add_argument("matrix", help="matrix file or M: spec")
    m_stair.add_argument("--ops", action="store_true", help="also print elementary operations from (1)")

    verify = commands.add_parser("verify", parents=[common], help="run conformance suites")
    verify.add_argument("--suite", action="append", metavar="NAME", help="suite to run, repeatable, defaults to all")
    verify.add_argument("--list", action="store_true", help="list the suites and exit")

    bip = commands.add_parser("bipartitions", parents=[common], help="both bipartitions of a connected bipartite graph")
    bip.add_argument("graph", help="graph file or P: spec")

    rev = commands.add_parser("reverse", parents=[common], help="reverse the edge order")
    rev.add_argument("graph", help="graph file or P: spec")

    peel = commands.add_parser("peel", parents=[common], help="extension sequence of a right caterpillar")
    peel.add_argument("graph", help="bigraph file (with L/R lines) or P:+/P:- spec")

    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
        print(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _emit_json(data: Any, out: Optional[str]) -> None:
    _emit(json.dumps(data, indent=2) + "\n", out)


def _known_bound(graph: AnyGraph) -> Optional[str]:
    base = graph.underlying()
    if not base.is_path() or base.m > 9:
        return None
    sequence = base.path_sequence()
    for reading in (sequence, tuple(reversed(sequence))):
        key = "".join(str(r) for r in reading)
        if key in KNOWN_PATH_BOUNDS:
            chi, bound = KNOWN_PATH_BOUNDS[key]
            return f"known bound {bound}, order chromatic number {chi}"
    return None


def cmd_classify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    graph = load_graph(args.graph)
    base = graph.underlying()
    verdict = classify_path(base) if base.is_path() and base.m >= 2 else classify_connected(base)
    known = _known_bound(base)
    if args.json:
        result = verdict.to_json()
        if known:
            result["known"] = known
        _emit_json(result, args.out)
        return EXIT_OK

    lines = [verdict.describe()]
    if verdict.extensions is not None:
        lines.append(f"  recursive depth {verdict.extensions.depth} ({verdict.orientation} order)")
    if verdict.coloring is not None:
        lines.append("  close class: " + " ".join(str(x) for x in verdict.coloring.right_vertices))
    if verdict.cycle:
        lines.append("  cycle: " + " ".join(f"{u}-{v}" for u, v in verdict.cycle))
    for witness in verdict.witnesses:
        lines.append(f"  {witness.orientation}: {witness.pattern} at {witness.embedding.describe()}")
    if known:
        lines.append("  " + known)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_contain(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    host = load_graph(args.host)
    pattern = load_graph(args.pattern)
    if args.all:
        embeddings = list(enumerate_embeddings(host, pattern, sided=args.sided))
    else:
        first = find_embedding(host, pattern, sided=args.sided)
        embeddings = [first] if first is not None else []

    if args.json:
        _emit_json({"contains": bool(embeddings), "copies": [e.to_json() for e in embeddings]}, args.out)
    elif embeddings:
        _emit("".join(f"Contained: {e.describe()}\n" for e in embeddings), args.out)
    else:
        _emit("Not contained\n", args.out)
    return EXIT_OK if embeddings else EXIT_NEGATIVE


def cmd_turan(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    pattern = load_graph(args.pattern)
    result = exact_ex(
        args.n,
        pattern,
        Budget.from_config(config),
        resolve_threads(config),
        witness_only=args.witness_only,
    )
    if args.json:
        print(json.dumps(result.to_json(), indent=2))
    else:
        print("%d (%s)" % (result.value, result.status.value))
    if args.out:
        Path(args.out).write_text(format_graph(result.witness))
        print(f"Witness written to {args.out}")
    return EXIT_OK if result.is_exact else EXIT_BUDGET


def _table1_csv(rows: List[Table1Row], max_n: int) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["labeling", "chi", "stated_bound", "class", "ocn2"]
    for n in range(1, max_n + 1):
        header += [f"ex_{n}", f"status_{n}"]
    writer.writerow(header)
    for row in rows:
        line: List[Any] = [row.labeling, row.chi, row.stated_bound, row.growth, row.ocn2]
        for _, value, status in row.values:
            line += [value, status]
        writer.writerow(line)
    return buffer.getvalue()


def cmd_table1(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    max_n = int(config["max_n"])
    rows = table1_report(max_n, Budget.from_config(config), resolve_threads(config), args.labelings or None)
    if args.json or config["report_format"] == "json":
        _emit_json([row.to_json() for row in rows], args.out)
    else:
        _emit(_table1_csv(rows, max_n), args.out)
    exhausted = any(status != "Exact" for row in rows for _, _, status in row.values)
    return EXIT_BUDGET if exhausted else EXIT_OK


def cmd_matrix(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    matrix = load_matrix(args.matrix)

    if args.matrix_command == "classify":
        if matrix.is_zero or not is_connected_matrix(matrix):
            light = " (light)" if is_light(matrix) else ""
            print(f"Out of scope: the matrix is not connected{light}")
            return EXIT_NEGATIVE
        verdict = classify_matrix(matrix)
        if args.json:
            _emit_json(verdict.to_json(), args.out)
        else:
            _emit(verdict.describe() + "\n", args.out)
        return EXIT_OK

    if args.matrix_command == "eex":
        result = eex_exact(args.n, matrix, Budget.from_config(config))
        if args.json:
            print(json.dumps(result.to_json(), indent=2))
        else:
            print("%d (%s)" % (result.value, result.status.value))
        if args.out:
            Path(args.out).write_text(result.witness.to_text())
            print(f"Witness written to {args.out}")
        return EXIT_OK if result.status.value == "Exact" else EXIT_BUDGET

    certificate = staircase_certificate(matrix)
    if certificate is None:
        print("Not a staircase")
        return EXIT_NEGATIVE
    data: Dict[str, Any] = certificate.to_json()
    if args.ops:
        ops = reach_from_unit(matrix)
        data["operations"] = [op.describe() for op in ops] if ops is not None else None
    if args.json:
        _emit_json(data, args.out)
    else:
        lines = ["Staircase " + " ".join(f"({i},{j})" for i, j in certificate.staircase.positions)]
        if certificate.columns_reversed:
            lines.append("  columns reversed")
        if args.ops:
            ops_text = data["operations"]
            lines.append("  from (1): " + (" ".join(ops_text) if ops_text is not None else "unreachable"))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    if args.list:
        for name in SUITES:
            print(name)
        return EXIT_OK
    settings = VerifySettings.from_config(config, resolve_threads(config))
    reports = run_suites(args.suite or ["all"], settings)
    report_format = "json" if args.json else config["report_format"]
    text = reports_to_json(reports) if report_format == "json" else reports_to_csv(reports)
    if args.out:
        Path(args.out).write_text(text)
        for report in reports:
            print(
                "%s: %d instances, %d failures"
                % (report.suite, report.instances, report.failure_count)
            )
        print(f"Report written to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NEGATIVE


def cmd_bipartitions(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    found = bipartitions(load_graph(args.graph))
    if not found:
        print("Not bipartite")
        return EXIT_NEGATIVE
    _emit("\n".join(format_graph(b) for b in found), args.out)
    return EXIT_OK


def cmd_reverse(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    _emit(format_graph(reverse(load_graph(args.graph))), args.out)
    return EXIT_OK


def cmd_peel(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    graph = load_graph(args.graph)
    if not isinstance(graph, EdgeOrderedBigraph):
        raise ValueError("peel needs a bigraph: give L/R side lines or a P:+/P:- spec")
    sequence = peel_extensions(graph)
    if sequence is None:
        print("Not a right caterpillar")
        return EXIT_NEGATIVE
    if args.json:
        _emit_json({"depth": sequence.depth, **sequence.to_json()}, args.out)
        return EXIT_OK
    lines = [f"Depth {sequence.depth}, root {sequence.root[0]}-{sequence.root[1]}"]
    for number, step in enumerate(sequence.steps, 1):
        lines.append(
            "  %d. at %s-%s: left %s, right %s"
            % (
                number,
                step.base[0],
                step.base[1],
                " ".join(str(x) for x in step.left_leaves) or "-",
                " ".join(str(x) for x in step.right_leaves) or "-",
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "contain": cmd_contain,
    "turan": cmd_turan,
    "table1": cmd_table1,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "bipartitions": cmd_bipartitions,
    "reverse": cmd_reverse,
    "peel": cmd_peel,
}


def process_arguments(args: argparse.Namespace) -> int:
    debug = getattr(args, "debug", False)
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(Path(args.config) if getattr(args, "config", None) else None)
        overrides = apply_config_overrides(config, args)
        for override in overrides:
            logger.debug("Override %s", override)
        return COMMANDS[args.command](args, config)
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return EXIT_INTERRUPTED
    except ValueError as e:
        if debug:
            traceback.print_exc()
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    parser = setup_argument_parser()
    args = parser.parse_args(argv)
    code = process_arguments(args)
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
