"""Verification of the Hamilton-connectedness theorem on concrete graphs, and campaigns.

Every graph gets one JSON report (schema "v1") with the hypothesis checks,
what the constructive pipeline produced, how much of it the exact oracle
confirmed, and a verdict:

    VERIFIED          hypotheses hold and every check passed
    HYPOTHESIS_UNMET  some required hypothesis fails
    COUNTEREXAMPLE    a certified failure: the oracle confirms a missing
                      Hamiltonian path, or a construction proven to exist
                      does not, after the hypotheses were re-checked by
                      independent routes
    INCONCLUSIVE      search budget exhausted, oracle out of reach, or an
                      internal disagreement that needs a human
"""

from __future__ import annotations

import json
import logging
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import comb
from typing import IO, Iterable, Iterator

from .configs import find_config_A, find_config_B
from .connectivity import CUT_ENUMERATION_LIMIT, is_k_connected
from .cover import cover_stats
from .errors import (
    ConstructionFailure,
    ExistenceFailure,
    InvalidSpec,
    SearchBudgetExceeded,
)
from .generate import (
    GenSpec,
    enumerate_split_labeled,
    gen_family_complete_split,
    gen_random_split,
    star_free_rows,
)
from .graph import Graph
from .graph6 import parse_graph6, to_graph6
from .hamilton import (
    DEFAULT_ORACLE_CAP,
    build_icover_avoiding,
    ham_endpoint_table,
    ham_path_from_icover,
    verify_certificate,
)
from .patterns import Pattern, find_induced, find_star
from .search import DEFAULT_NODE_CAP
from .split import SplitPartition, check_partition, split_partition
from .surgery import MAX_PATH_LENGTH, bound_lengths, build_icover, min_cycle_pseudo_icover

log = logging.getLogger(__name__)

SCHEMA = "v1"
VERDICTS = ("VERIFIED", "HYPOTHESIS_UNMET", "COUNTEREXAMPLE", "INCONCLUSIVE")
CHECKS = ("theorem", "icover", "bounded", "pseudo", "configs")
# smallest order each check needs by default (theorem: 2r + 7)
DEFAULT_MIN_ORDER = {"icover": 9, "bounded": 11, "pseudo": 0, "configs": 0}
# order from which each cover stage is guaranteed on qualifying graphs
STAGE_MIN_ORDER = {"pseudo_icover": 0, "icover": 9, "bound_lengths": 11}
FULL_ORACLE_MAX_ORDER = 14
SAMPLE_RATE = 0.05


@dataclass(frozen=True)
class VerifyOptions:
    """Knobs for verify_graph.

    check          theorem (all pairs), icover, bounded (lengths <= 6),
                   pseudo (at most two cycles), configs (witness soundness)
    require        hypothesis families that must hold: connectivity,
                   freeness, min-order (split is always required)
    oracle_pairs   sample (every pair up to order 14, 5% above), all, none
    explore_below  run the oracle on graphs that miss only the order bound
    """

    check: str = "theorem"
    r: int = 3
    min_order: int | None = None
    require: tuple[str, ...] = ("connectivity", "freeness", "min-order")
    oracle_cap: int = DEFAULT_ORACLE_CAP
    oracle_pairs: str = "sample"
    node_cap: int = DEFAULT_NODE_CAP
    explore_below: bool = True
    detail: bool = True

    def threshold(self) -> int:
        if self.min_order is not None:
            return self.min_order
        if self.check == "theorem":
            return 2 * self.r + 7
        return DEFAULT_MIN_ORDER[self.check]

    def validate(self) -> None:
        if self.check not in CHECKS:
            raise InvalidSpec(f"unknown check {self.check!r}")
        if self.check not in ("theorem", "configs") and self.r != 3:
            raise InvalidSpec(f"check {self.check!r} is only defined for r = 3")
        if self.oracle_pairs not in ("sample", "all", "none"):
            raise InvalidSpec(f"unknown oracle pair policy {self.oracle_pairs!r}")
        unknown = set(self.require) - {"connectivity", "freeness", "min-order"}
        if unknown:
            raise InvalidSpec(f"unknown hypothesis families {sorted(unknown)}")


# -- hypotheses --------------------------------------------------------------


def hypothesis_names(r: int, min_order: int) -> dict[str, str]:
    return {
        "split": "split",
        "connectivity": f"{r}-connected",
        "star": f"K1,{r + 1}-free",
        "star_e": f"K1,{r + 1}+e-free",
        "order": f"n>={min_order}",
    }


def check_hypotheses(g: Graph, r: int = 3, min_order: int = 13) -> tuple[dict, SplitPartition | None]:
    """Hypothesis booleans keyed by readable names, and the split partition (or None)."""
    names = hypothesis_names(r, min_order)
    p = split_partition(g)
    if r == 3:
        star = find_induced(g, Pattern.K14) is None
        star_e = find_induced(g, Pattern.K14E) is None
    else:
        star = find_star(g, r + 1, 0) is None
        star_e = find_star(g, r + 1, 1) is None
    hyp = {
        names["split"]: p is not None,
        names["connectivity"]: is_k_connected(g, r),
        names["star"]: star,
        names["star_e"]: star_e,
        names["order"]: g.order >= min_order,
    }
    return hyp, p


def _met(hyp: dict, r: int, min_order: int, require: Iterable[str]) -> tuple[bool, bool]:
    """(all required hypotheses hold, all but the order bound hold)."""
    names = hypothesis_names(r, min_order)
    keys = [names["split"]]
    if "connectivity" in require:
        keys.append(names["connectivity"])
    if "freeness" in require:
        keys += [names["star"], names["star_e"]]
    rest = all(hyp[k] for k in keys)
    order_ok = hyp[names["order"]] or "min-order" not in require
    return rest and order_ok, rest


def reverify_hypotheses(g: Graph, r: int = 3) -> bool:
    """Re-derive split, r-connectivity and freeness by routes other than check_hypotheses.

    Connectivity goes through max-flow (and cut enumeration when cheap);
    for r = 3 freeness goes through the split-structure characterisation
    of K_{1,4} and K_{1,4}+e.
    """
    p = split_partition(g)
    if p is None or check_partition(g, p):
        return False
    if not is_k_connected(g, r, method="flow"):
        return False
    if comb(g.order, r - 1) <= CUT_ENUMERATION_LIMIT and not is_k_connected(g, r, method="cuts"):
        return False
    if r == 3:
        index = {v: k for k, v in enumerate(p.S)}
        rows = [sum(1 << index[w] for w in g.neighbors(b)) for b in p.I]
        return star_free_rows(len(p.S), rows)
    return find_star(g, r + 1, 0) is None and find_star(g, r + 1, 1) is None


# -- oracle helpers ----------------------------------------------------------


def _sample_pairs(g6: str, pairs: list[tuple[int, int]], n: int, policy: str) -> set[tuple[int, int]]:
    if policy == "none":
        return set()
    if policy == "all" or n <= FULL_ORACLE_MAX_ORDER:
        return set(pairs)
    rng = random.Random(g6)
    chosen = {pq for pq in pairs if rng.random() < SAMPLE_RATE}
    if not chosen and pairs:
        chosen.add(pairs[rng.randrange(len(pairs))])
    return chosen


class _Oracle:
    """Lazily computed endpoint table with time accounting."""

    def __init__(self, g: Graph, cap: int):
        self.g, self.cap = g, cap
        self.table: list[int] | None = None
        self.seconds = 0.0

    @property
    def available(self) -> bool:
        return self.g.order <= self.cap

    def has_path(self, u: int, v: int) -> bool:
        if self.table is None:
            t = time.perf_counter()
            self.table = ham_endpoint_table(self.g, self.cap)
            self.seconds += time.perf_counter() - t
        return bool((self.table[v] >> u) & 1)

    def failing_pairs(self) -> list[list[int]]:
        n = self.g.order
        return [[u, v] for u in range(n) for v in range(u + 1, n) if not self.has_path(u, v)]


# -- per-graph verification -------------------------------------------------


def _base_report(g: Graph, g6: str, opts: VerifyOptions, hyp: dict, p: SplitPartition | None) -> dict:
    return {
        "schema": SCHEMA,
        "check": opts.check,
        "graph6": g6,
        "n": g.order,
        "r": opts.r,
        "hypotheses": hyp,
        "partition": None if p is None else p.to_json_obj(),
        "pipeline": None,
        "verdict": None,
        "findings": [],
    }


def _theorem_pipeline(g: Graph, p: SplitPartition, g6: str, opts: VerifyOptions, oracle: _Oracle) -> tuple[dict, str]:
    n = g.order
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    sampled = _sample_pairs(g6, pairs, n, opts.oracle_pairs) if oracle.available else set()
    pipe = {
        "mode": "constructive",
        "pairs_total": len(pairs),
        "constructed": 0,
        "certified": 0,
        "oracle_checked": 0,
        "cover": None,
        "failures": [],
    }
    rows = []
    try:
        base = bound_lengths(g, p, build_icover(g, p, opts.node_cap), opts.node_cap)
    except SearchBudgetExceeded as exc:
        pipe["failures"].append({"stage": "icover", "kind": "budget", "message": str(exc)})
        return pipe, "INCONCLUSIVE"
    except ExistenceFailure as exc:
        failure = {"stage": exc.stage, "kind": "existence", "message": str(exc)}
        pipe["failures"].append(failure)
        if oracle.available:
            failure["oracle_failing_pairs"] = oracle.failing_pairs()
            pipe["oracle_checked"] = len(pairs)
        if n < STAGE_MIN_ORDER.get(exc.stage, 0) and oracle.available:
            # the cover is not guaranteed at this order, so only a missing path counts
            return pipe, "COUNTEREXAMPLE" if failure["oracle_failing_pairs"] else "INCONCLUSIVE"
        return pipe, "COUNTEREXAMPLE" if reverify_hypotheses(g, opts.r) else "INCONCLUSIVE"
    pipe["cover"] = {"h": len(base.paths), "lengths": cover_stats(base)["lengths"]}
    pool = [base]
    verdict = "VERIFIED"

    def worse(a: str, b: str) -> str:
        rank = {"VERIFIED": 0, "INCONCLUSIVE": 1, "COUNTEREXAMPLE": 2}
        return a if rank[a] >= rank[b] else b

    for u, v in pairs:
        constructed = certified = False
        failure = None
        try:
            c = build_icover_avoiding(g, p, u, v, covers=pool, node_cap=opts.node_cap)
            if c not in pool:
                pool.append(c)
            constructed = True
            cert = ham_path_from_icover(g, p, c, u, v)
            certified = verify_certificate(g, cert, u, v)
            if not certified:
                failure = {"kind": "uncertified", "sequence": list(cert.sequence)}
        except SearchBudgetExceeded as exc:
            failure = {"kind": "budget", "message": str(exc)}
        except ExistenceFailure as exc:
            failure = {"kind": "existence", "stage": exc.stage, "message": str(exc)}
        except ConstructionFailure as exc:
            failure = {"kind": "construction", "message": str(exc), "state": exc.state}
        oracle_says = None
        if (u, v) in sampled or (failure is not None and oracle.available):
            oracle_says = oracle.has_path(u, v)
            pipe["oracle_checked"] += 1
        pipe["constructed"] += constructed
        pipe["certified"] += certified
        if opts.detail:
            rows.append([u, v, int(constructed), int(certified), oracle_says])
        if certified and oracle_says is False:
            failure = {"kind": "oracle-disagreement"}
        if failure is None:
            continue
        failure.update({"u": u, "v": v, "oracle": oracle_says})
        pipe["failures"].append(failure)
        if oracle_says is False:
            if failure["kind"] == "oracle-disagreement":
                verdict = worse(verdict, "INCONCLUSIVE")
            else:
                verdict = worse(verdict, "COUNTEREXAMPLE")
        elif failure["kind"] == "existence" and oracle_says is None:
            certain = reverify_hypotheses(g, opts.r)
            verdict = worse(verdict, "COUNTEREXAMPLE" if certain else "INCONCLUSIVE")
        else:
            # a path exists (or could not be ruled out): the construction, not the claim, failed
            verdict = worse(verdict, "INCONCLUSIVE")
    if opts.detail:
        pipe["pairs"] = rows
    return pipe, verdict


def _oracle_only(g: Graph, oracle: _Oracle) -> tuple[dict, str]:
    pipe = {"mode": "oracle-only", "pairs_total": g.order * (g.order - 1) // 2}
    if not oracle.available:
        pipe["failing_pairs"] = None
        return pipe, "INCONCLUSIVE"
    failing = oracle.failing_pairs()
    pipe["failing_pairs"] = failing
    return pipe, "COUNTEREXAMPLE" if failing else "VERIFIED"


def _cover_pipeline(g: Graph, p: SplitPartition, opts: VerifyOptions) -> tuple[dict, str]:
    pipe: dict = {"mode": opts.check, "failures": []}
    try:
        if opts.check == "pseudo":
            q = min_cycle_pseudo_icover(g, p, opts.node_cap)
            stats = cover_stats(q)
            pipe["h1"], pipe["h2"] = stats["h1"], stats["h2"]
            if stats["h2"] > 2:
                pipe["failures"].append({"kind": "too-many-cycles", "h2": stats["h2"]})
                return pipe, "COUNTEREXAMPLE"
            return pipe, "VERIFIED"
        c = build_icover(g, p, opts.node_cap)
        if opts.check == "bounded":
            c = bound_lengths(g, p, c, opts.node_cap)
        lengths = cover_stats(c)["lengths"]
        pipe["h"], pipe["lengths"] = len(c.paths), lengths
        if opts.check == "bounded":
            bad = [t for t in lengths if t % 2 or not 2 <= t <= MAX_PATH_LENGTH]
            if bad:
                pipe["failures"].append({"kind": "length", "lengths": bad})
                return pipe, "COUNTEREXAMPLE"
        return pipe, "VERIFIED"
    except SearchBudgetExceeded as exc:
        pipe["failures"].append({"kind": "budget", "message": str(exc)})
        return pipe, "INCONCLUSIVE"
    except ExistenceFailure as exc:
        pipe["failures"].append({"kind": "existence", "stage": exc.stage, "message": str(exc)})
        return pipe, "COUNTEREXAMPLE" if reverify_hypotheses(g, opts.r) else "INCONCLUSIVE"


def _configs_pipeline(g: Graph, p: SplitPartition) -> tuple[dict, str]:
    """Any configuration witness must come with an induced K14 or K14E."""
    found = {}
    for name, finder in (("A", find_config_A), ("B", find_config_B)):
        w = finder(g, p)
        found[name] = None if w is None else w.to_json_obj()
    star = find_induced(g, Pattern.K14) is not None or find_induced(g, Pattern.K14E) is not None
    pipe = {"mode": "configs", "config_A": found["A"], "config_B": found["B"], "star_found": star}
    if (found["A"] or found["B"]) and not star:
        return pipe, "COUNTEREXAMPLE"
    return pipe, "VERIFIED"


def verify_graph(g: Graph, opts: VerifyOptions | None = None) -> dict:
    """One report for one graph; never raises for mathematical failures."""
    opts = opts or VerifyOptions()
    opts.validate()
    t0 = time.perf_counter()
    g6 = to_graph6(g)
    threshold = opts.threshold()
    if opts.check == "configs":
        p = split_partition(g)
        hyp = {"split": p is not None}
        rep = _base_report(g, g6, opts, hyp, p)
        if p is None:
            rep["verdict"] = "HYPOTHESIS_UNMET"
        else:
            rep["pipeline"], rep["verdict"] = _configs_pipeline(g, p)
        rep["timings"] = {"total_s": round(time.perf_counter() - t0, 6)}
        return rep
    hyp, p = check_hypotheses(g, opts.r, threshold)
    rep = _base_report(g, g6, opts, hyp, p)
    met, met_but_order = _met(hyp, opts.r, threshold, opts.require)
    oracle = _Oracle(g, opts.oracle_cap)
    t1 = time.perf_counter()
    if not met:
        rep["verdict"] = "HYPOTHESIS_UNMET"
        if met_but_order and opts.explore_below and opts.check == "theorem" and oracle.available:
            failing = oracle.failing_pairs()
            rep["findings"].append({
                "kind": "below-threshold",
                "hamilton_connected": not failing,
                "failing_pairs": failing,
            })
    elif opts.check == "theorem" and opts.r != 3:
        rep["pipeline"], rep["verdict"] = _oracle_only(g, oracle)
        if rep["pipeline"]["failing_pairs"]:
            rep["findings"].append({"kind": "oracle", "failing_pairs": rep["pipeline"]["failing_pairs"]})
    elif opts.check == "theorem":
        rep["pipeline"], rep["verdict"] = _theorem_pipeline(g, p, g6, opts, oracle)
    else:
        rep["pipeline"], rep["verdict"] = _cover_pipeline(g, p, opts)
    t2 = time.perf_counter()
    rep["timings"] = {
        "hypotheses_s": round(t1 - t0, 6),
        "pipeline_s": round(t2 - t1 - oracle.seconds, 6),
        "oracle_s": round(oracle.seconds, 6),
        "total_s": round(t2 - t0, 6),
    }
    return rep


def verify_theorem(g: Graph, opts: VerifyOptions | None = None) -> dict:
    """verify_graph with the theorem check (any other ``check`` in opts is overridden)."""
    opts = opts or VerifyOptions()
    if opts.check != "theorem":
        opts = VerifyOptions(**{**asdict(opts), "check": "theorem"})
    return verify_graph(g, opts)


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}


# -- campaigns ----------------------------------------------------------------


def generate(spec: GenSpec) -> Iterator[Graph]:
    """The graph stream described by ``spec``.

    Exhaustive mode skips incidence rows and columns that already violate
    a required hypothesis (I-vertex degree < r needs the connectivity
    filter; clique vertices with > r independent neighbours or, for r = 3,
    a star-containing prefix need the freeness filter). ``count`` only
    applies to random mode.
    """
    spec.validate()
    lo, hi = spec.n_range
    if spec.mode == "random":
        yield from gen_random_split(spec)
    elif spec.mode == "exhaustive":
        filters = set(spec.filters)
        free = "freeness" in filters
        prune = (lambda s, rows: not star_free_rows(s, rows)) if free and spec.r == 3 else None
        for n in range(lo, hi + 1):
            s_lo, s_hi = spec.s_range or (1, n)
            if spec.i_range is not None:
                s_lo, s_hi = max(s_lo, n - spec.i_range[1]), min(s_hi, n - spec.i_range[0])
            for s in range(max(s_lo, 1), min(s_hi, n) + 1):
                yield from enumerate_split_labeled(
                    n,
                    s,
                    min_row_degree=min(spec.r, s) if "connectivity" in filters else 0,
                    max_col_degree=spec.r if free else None,
                    prune=prune,
                )
    else:
        s_lo, s_hi = spec.s_range or (4, hi)
        i_lo, i_hi = spec.i_range or (0, 3)
        for s in range(max(s_lo, 4), s_hi + 1):
            for i in range(max(i_lo, 0), min(i_hi, 3) + 1):
                if lo <= s + i <= hi:
                    yield gen_family_complete_split(s, i)


def _options_for(spec: GenSpec, opts: VerifyOptions | None) -> VerifyOptions:
    base = asdict(opts) if opts is not None else asdict(VerifyOptions())
    base["r"] = spec.r
    base["require"] = tuple(spec.filters)
    if spec.min_order is not None:
        base["min_order"] = spec.min_order
    out = VerifyOptions(**base)
    out.validate()
    return out


def _work(item: tuple[int, str, dict]) -> dict:
    seq, g6, opts = item
    rep = verify_graph(parse_graph6(g6), VerifyOptions(**opts))
    return {"seq": seq, **rep}


def _summary_template() -> dict:
    return {
        "total": 0,
        "verified": 0,
        "hypothesis_unmet": 0,
        "counterexample": 0,
        "inconclusive": 0,
        "findings": 0,
        "construction_failures": 0,
    }


def _tally(summary: dict, rep: dict) -> None:
    summary["total"] += 1
    summary[rep["verdict"].lower()] += 1
    summary["findings"] += sum(
        1 for f in rep["findings"] if f.get("kind") != "below-threshold" or not f["hamilton_connected"]
    )
    pipe = rep.get("pipeline") or {}
    summary["construction_failures"] += sum(
        1 for f in pipe.get("failures", ()) if f.get("kind") in ("construction", "uncertified")
    )


def exit_code_for(summary: dict) -> int:
    if summary["counterexample"]:
        return 1
    if summary["total"] and summary["hypothesis_unmet"] == summary["total"]:
        return 3
    return 0


def run_reports(
    graphs: Iterable[Graph],
    opts: VerifyOptions,
    out: IO[str] | None = None,
    jobs: int = 1,
    qualifying_target: int | None = None,
) -> dict:
    """Verify a graph stream, writing one JSON line per graph in stream order.

    With ``qualifying_target`` the run stops once that many graphs met the
    hypotheses. Workers only see graph6 strings, so the report stream is the
    same for every ``jobs``.
    """
    summary = _summary_template()
    opt_dict = asdict(opts)
    items = ((seq, to_graph6(g), opt_dict) for seq, g in enumerate(graphs))
    qualifying = 0

    def consume(reports: Iterable[dict]) -> None:
        nonlocal qualifying
        for rep in reports:
            _tally(summary, rep)
            if out is not None:
                out.write(json.dumps(rep, separators=(",", ":")) + "\n")
            if rep["verdict"] != "HYPOTHESIS_UNMET":
                qualifying += 1
                if qualifying_target is not None and qualifying >= qualifying_target:
                    return
            if rep["verdict"] == "COUNTEREXAMPLE":
                log.warning("counterexample: %s", rep["graph6"])

    if jobs <= 1:
        consume(_work(item) for item in items)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # bounded look-ahead keeps memory flat and still preserves order
            window = max(4 * jobs, 16)
            pending = []
            stream = iter(items)

            def reports() -> Iterator[dict]:
                for item in stream:
                    pending.append(pool.submit(_work, item))
                    if len(pending) >= window:
                        yield pending.pop(0).result()
                while pending:
                    yield pending.pop(0).result()

            consume(reports())
            for f in pending:
                f.cancel()
    summary["qualifying"] = qualifying
    return summary


def campaign(
    spec: GenSpec,
    opts: VerifyOptions | None = None,
    report_path: str | None = None,
    jobs: int = 1,
    qualifying_target: int | None = None,
) -> dict:
    """Generate, verify and summarise; the summary carries the process exit code.

    OSError from the report file propagates (the CLI maps it to exit 2).
    """
    spec.validate()
    vopts = _options_for(spec, opts)
    t0 = time.perf_counter()
    if report_path is None:
        summary = run_reports(generate(spec), vopts, None, jobs, qualifying_target)
    elif report_path == "-":
        summary = run_reports(generate(spec), vopts, sys.stdout, jobs, qualifying_target)
    else:
        with open(report_path, "w", encoding="utf-8") as fh:
            summary = run_reports(generate(spec), vopts, fh, jobs, qualifying_target)
    summary = {
        "schema": SCHEMA,
        "spec": spec.to_json_obj(),
        "check": vopts.check,
        **summary,
        "exit_code": exit_code_for(summary),
        "timings": {"total_s": round(time.perf_counter() - t0, 3)},
    }
    return summary
