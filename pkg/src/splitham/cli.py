"""Command-line entry point: ``splitham <verb> [flags] [graph]``.

Graph arguments are a file path, ``-`` for standard input, or an inline
graph6 string; file contents may be graph6 lines or one JSON object
``{"n": ..., "edges": [[u, v], ...]}``. Structured output is JSON on
standard output. Exit codes: 0 ok, 1 counterexample or construction
failure, 2 bad input or usage, 3 every input missed the hypotheses.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .cover import cover_stats
from .errors import (
    ConstructionFailure,
    ExistenceFailure,
    InvalidSpec,
    MalformedGraph6,
    MalformedGraphInput,
    OrderCapExceeded,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .generate import GenSpec
from .graph import Graph
from .graph6 import parse_graph6, to_graph6
from .harness import (
    CHECKS,
    VerifyOptions,
    campaign,
    check_hypotheses,
    exit_code_for,
    generate,
    run_reports,
)
from .hamilton import (
    DEFAULT_ORACLE_CAP,
    build_icover_avoiding,
    ham_path_from_icover,
    hamilton_connected_oracle,
    verify_certificate,
)
from .split import split_partition
from .surgery import bound_lengths, build_icover, build_pseudo_icover, min_cycle_pseudo_icover

log = logging.getLogger("splitham")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNMET = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- input -------------------------------------------------------------------


def read_graphs(arg: str) -> list[Graph]:
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    text = text.strip()
    if not text:
        raise InputError("no graph given")
    if text.startswith("{"):
        return [Graph.from_json(text)]
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def read_one(arg: str) -> Graph:
    graphs = read_graphs(arg)
    if len(graphs) != 1:
        raise InputError(f"expected one graph, got {len(graphs)}")
    return graphs[0]


def parse_range(text: str) -> tuple[int, int]:
    """``13`` or ``13-16`` (also ``13:16``), inclusive."""
    lo, hi = text, text
    for sep in ("-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    try:
        return int(lo), int(hi)
    except ValueError:
        raise InvalidSpec(f"bad range {text!r}") from None


def parse_float_range(text: str) -> tuple[float, float]:
    lo, _, hi = text.partition(":")
    try:
        return float(lo), float(hi or lo)
    except ValueError:
        raise InvalidSpec(f"bad probability range {text!r}") from None


def emit(obj) -> None:
    print(json.dumps(obj))


# -- verbs -------------------------------------------------------------------


def cmd_check(args) -> int:
    g = read_one(args.graph)
    hyp, _ = check_hypotheses(g, args.r, 2 * args.r + 7)
    vals = list(hyp.values())
    r = args.r
    emit({
        "split": vals[0],
        f"connectivity{r}": vals[1],
        f"k1{r + 1}_free": vals[2],
        f"k1{r + 1}e_free": vals[3],
        "order": g.order,
    })
    return EXIT_OK


def cmd_partition(args) -> int:
    g = read_one(args.graph)
    p = split_partition(g)
    emit({"split": p is not None, "partition": None if p is None else p.to_json_obj()})
    return EXIT_OK


def _partition_or_fail(g: Graph):
    p = split_partition(g)
    if p is None:
        emit({"error": "graph is not split"})
    return p


def cmd_icover(args) -> int:
    g = read_one(args.graph)
    p = _partition_or_fail(g)
    if p is None:
        return EXIT_FAIL
    try:
        if args.pseudo:
            c = min_cycle_pseudo_icover(g, p) if args.min_cycles else build_pseudo_icover(g, p)
        else:
            c = build_icover(g, p)
            if args.bounded:
                c = bound_lengths(g, p, c)
    except (ExistenceFailure, SearchBudgetExceeded) as exc:
        emit({"error": str(exc)})
        return EXIT_FAIL
    emit({"partition": p.to_json_obj(), "cover": c.to_json_obj(), "stats": cover_stats(c)})
    return EXIT_OK


def cmd_hampath(args) -> int:
    g = read_one(args.graph)
    p = _partition_or_fail(g)
    if p is None:
        return EXIT_FAIL
    try:
        c = build_icover_avoiding(g, p, args.u, args.v)
        cert = ham_path_from_icover(g, p, c, args.u, args.v)
    except (ExistenceFailure, SearchBudgetExceeded, ConstructionFailure) as exc:
        emit({"error": str(exc)})
        return EXIT_FAIL
    if not verify_certificate(g, cert, args.u, args.v):
        emit({"error": "certificate failed verification"})
        return EXIT_FAIL
    emit(list(cert.sequence))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_one(args.graph)
    emit(hamilton_connected_oracle(g, args.oracle_cap))
    return EXIT_OK


def _verify_options(args, check: str = "theorem") -> VerifyOptions:
    return VerifyOptions(
        check=check,
        r=args.r,
        oracle_cap=args.oracle_cap,
        oracle_pairs=args.pairs,
    )


def cmd_verify(args) -> int:
    graphs = read_graphs(args.graph)
    opts = _verify_options(args, args.check)
    opts.validate()
    if args.report and args.report != "-":
        with open(args.report, "w", encoding="utf-8") as fh:
            summary = run_reports(graphs, opts, fh)
        code = exit_code_for(summary)
        emit({**summary, "exit_code": code})
    else:
        summary = run_reports(graphs, opts, sys.stdout)
        code = exit_code_for(summary)
    if args.verbose:
        print(f"{summary['total']} graph(s): {summary['verified']} verified, "
              f"{summary['hypothesis_unmet']} unmet, {summary['counterexample']} counterexample(s), "
              f"{summary['inconclusive']} inconclusive", file=sys.stderr)
    return code


def _gen_spec(args) -> GenSpec:
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidSpec(f"spec file is not JSON: {exc}") from exc
        return GenSpec.from_json_obj(obj)
    spec = GenSpec(
        mode=args.mode,
        n_range=parse_range(args.n),
        s_range=parse_range(args.s) if args.s else None,
        i_range=parse_range(args.i) if args.i else None,
        p=args.p,
        p_range=parse_float_range(args.p_range) if args.p_range else None,
        seed=args.seed,
        r=args.r,
        count=args.count,
        min_order=args.min_order,
        filters=tuple(f for f in args.filters.split(",") if f),
    )
    spec.validate()
    return spec


def cmd_campaign(args) -> int:
    spec = _gen_spec(args)
    summary = campaign(
        spec,
        _verify_options(args, args.check),
        report_path=args.report,
        jobs=args.jobs,
        qualifying_target=args.qualifying,
    )
    if args.report == "-":
        print(json.dumps(summary), file=sys.stderr)
    else:
        emit(summary)
    if args.verbose:
        print(f"{summary['total']} graph(s), {summary['qualifying']} qualifying: "
              f"{summary['verified']} verified, {summary['counterexample']} counterexample(s), "
              f"{summary['inconclusive']} inconclusive, {summary['findings']} finding(s)",
              file=sys.stderr)
    return summary["exit_code"]


def cmd_gen(args) -> int:
    spec = _gen_spec(args)
    for g in generate(spec):
        print(to_graph6(g))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitham",
        description="Hamilton-connectedness of 3-connected {K_{1,4}, K_{1,4}+e}-free split graphs.",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    def graph_verb(name: str, help: str):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("graph", help="graph file, '-' for stdin, or inline graph6")
        sp.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = graph_verb("check", "hypothesis checks as JSON")
    sp.add_argument("--r", type=int, default=3)
    sp.set_defaults(func=cmd_check)

    sp = graph_verb("partition", "split partition (S, I) with S a maximum clique")
    sp.set_defaults(func=cmd_partition)

    sp = graph_verb("icover", "an I-cover (or pseudo I-cover)")
    sp.add_argument("--pseudo", action="store_true", help="allow alternating cycles")
    sp.add_argument("--min-cycles", action="store_true", help="with --pseudo: fewest cycles")
    sp.add_argument("--bounded", action="store_true", help="path lengths at most 6")
    sp.set_defaults(func=cmd_icover)

    sp = graph_verb("hampath", "a verified Hamiltonian (u,v)-path")
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.set_defaults(func=cmd_hampath)

    sp = graph_verb("oracle", "exact Hamilton-connectedness by subset DP")
    sp.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    sp.set_defaults(func=cmd_oracle)

    def verify_flags(sp):
        sp.add_argument("--r", type=int, default=3)
        sp.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
        sp.add_argument("--pairs", choices=["all", "sample", "none"], default="sample")
        sp.add_argument("--check", choices=CHECKS, default="theorem")
        sp.add_argument("--report", metavar="PATH", help="JSON-lines report file ('-' for stdout)")

    sp = graph_verb("verify", "verification report(s) for the given graph(s)")
    verify_flags(sp)
    sp.set_defaults(func=cmd_verify)

    def gen_flags(sp):
        sp.add_argument("--mode", choices=["random", "exhaustive", "family"], default="random")
        sp.add_argument("--n", default="13-16", help="order or inclusive range, e.g. 13-16")
        sp.add_argument("--s", help="clique-size range")
        sp.add_argument("--i", help="independent-side size range")
        sp.add_argument("--p", type=float, default=0.5, help="I-S edge probability")
        sp.add_argument("--p-range", help="per-vertex edge probability range LO:HI")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--count", type=int, default=100)
        sp.add_argument("--min-order", type=int)
        sp.add_argument("--filters", default="connectivity,freeness,min-order")
        sp.add_argument("--spec", metavar="JSON", help="read the generation spec from a JSON file")
        sp.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("campaign", help="generate, verify and summarise")
    gen_flags(sp)
    verify_flags(sp)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--qualifying", type=int, help="stop after this many qualifying graphs")
    sp.set_defaults(func=cmd_campaign)

    sp = sub.add_parser("gen", help="write generated graphs as graph6 lines")
    gen_flags(sp)
    sp.add_argument("--r", type=int, default=3)
    sp.set_defaults(func=cmd_gen)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (InputError, MalformedGraph6, MalformedGraphInput, InvalidSpec, OrderCapExceeded,
            PreconditionViolated) as exc:
        print(f"splitham: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"splitham: I/O error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
