"""Batch verification engine: drive checks over graph sources.

Sources are labeled enumerations (vectorized kernel), graph6 streams
(per-graph path) and seeded G(n, p) trial sets.  Aggregation is
merge-associative per check: counts add, minima combine with a
(slack, graph6) tie-break, and top-k lists merge by sort-and-trim, so any
partition of the input over workers reproduces the single-worker report
byte for byte.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from . import batch as bt
from .cliques import EXACT_ORDER_CAP
from .graph import (
    ENUMERATION_MAX_ORDER,
    Graph,
    Graph6ParseError,
    from_edge_mask,
    from_graph6,
    is_connected,
    random_gnp,
    to_graph6,
)
from .inequalities import (
    DEFAULT_TOL,
    DEFAULT_WALK_RS,
    GraphContext,
    Tolerances,
    evaluate_entry,
    expand_check_ids,
    parse_check_id,
)
from .util import json_bytes, round12

CHUNK = 1 << 14


# ---------------------------------------------------------------------------
# Sources
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationSource:
    """All labeled graphs on n vertices, indexed by edge mask."""

    n: int

    def descriptor(self) -> dict:
        return {"kind": "labeled-enumeration", "n": self.n}


@dataclass(frozen=True)
class Graph6Source:
    """Newline-delimited graph6 text (path, '-' for stdin, or lines)."""

    path: str | None = None
    lines: tuple[str, ...] | None = None

    def descriptor(self) -> dict:
        return {"kind": "graph6-stream", "path": self.path or "<lines>"}

    def iter_lines(self) -> Iterable[str]:
        if self.lines is not None:
            return self.lines
        if self.path in (None, "-"):
            return sys.stdin
        return open(self.path, "r", encoding="ascii")


@dataclass(frozen=True)
class RandomSource:
    """G(n, p) trial set; trial i uses the (seed, i) substream."""

    n: int
    p: float
    trials: int
    seed: int

    def descriptor(self) -> dict:
        return {"kind": "random", "n": self.n, "p": self.p,
                "trials": self.trials, "seed": self.seed}


GraphSource = EnumerationSource | Graph6Source | RandomSource


@dataclass(frozen=True)
class ScanOptions:
    connected_only: bool = False
    stop_on_violation: bool = False
    top_k: int = 3
    tol: Tolerances = DEFAULT_TOL
    workers: int = 1
    index_range: tuple[int, int] | None = None
    walk_rs: tuple[int, ...] = DEFAULT_WALK_RS
    time_budget_s: float | None = None
    strict_parse: bool = False

    def descriptor(self) -> dict:
        return {
            "connected_only": self.connected_only,
            "stop_on_violation": self.stop_on_violation,
            "top_k": self.top_k,
            "holds_rtol": self.tol.holds_rtol,
            "equality_rtol": self.tol.equality_rtol,
            "index_range": list(self.index_range) if self.index_range else None,
            "walk_rs": list(self.walk_rs),
        }


class ScanError(RuntimeError):
    """Operational scan failure (unreadable source, malformed input)."""


# ---------------------------------------------------------------------------
# Aggregates
# ---------------------------------------------------------------------------


def _new_check_agg() -> dict:
    return {
        "checked": 0,
        "applicable": 0,
        "violations": 0,
        "equalities": 0,
        "min_slack": None,
        "argmin_graph6": None,
        "top": [],  # (slack, graph6)
    }


def _merge_check_aggs(a: dict, b: dict, top_k: int) -> dict:
    out = {
        "checked": a["checked"] + b["checked"],
        "applicable": a["applicable"] + b["applicable"],
        "violations": a["violations"] + b["violations"],
        "equalities": a["equalities"] + b["equalities"],
    }
    best = [(s, g) for s, g in (
        (a["min_slack"], a["argmin_graph6"]),
        (b["min_slack"], b["argmin_graph6"]),
    ) if s is not None]
    out["min_slack"], out["argmin_graph6"] = min(best) if best else (None, None)
    out["top"] = sorted(a["top"] + b["top"])[:top_k]
    return out


def _observe_scalar(agg: dict, res, g6: str, top_k: int, eq: bool):
    agg["checked"] += 1
    if not res.applicable:
        return
    agg["applicable"] += 1
    if not res.holds:
        agg["violations"] += 1
    if eq:
        agg["equalities"] += 1
    key = (res.slack, g6)
    if agg["min_slack"] is None or key < (agg["min_slack"], agg["argmin_graph6"]):
        agg["min_slack"], agg["argmin_graph6"] = key
    agg["top"] = sorted(agg["top"] + [key])[:top_k]


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@dataclass
class ScanReport:
    source: dict
    options: dict
    check_ids: list[str]
    graphs_processed: int = 0
    parse_errors: list[dict] = field(default_factory=list)
    partial: bool = False
    checks: dict[str, dict] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def binding_violations(self) -> int:
        return len(self.violations)

    def to_dict(self) -> dict:
        checks = {}
        for cid in self.check_ids:
            agg = self.checks[cid]
            checks[cid] = {
                "checked": agg["checked"],
                "applicable": agg["applicable"],
                "violations": agg["violations"],
                "equalities": agg["equalities"],
                "min_slack": agg["min_slack"],
                "argmin_graph6": agg["argmin_graph6"],
                "top_k": [{"slack": s, "graph6": g} for s, g in agg["top"]],
            }
        return {
            "source": self.source,
            "options": self.options,
            "graphs_processed": self.graphs_processed,
            "parse_errors": self.parse_errors,
            "partial": self.partial,
            "binding_violations": self.binding_violations,
            "checks": checks,
            "violations": self.violations,
        }

    def to_json_bytes(self) -> bytes:
        return json_bytes(self.to_dict())

    def to_csv(self) -> str:
        rows = ["check,checked,applicable,violations,equalities,min_slack,argmin_graph6"]
        for cid in self.check_ids:
            agg = self.checks[cid]
            ms = "" if agg["min_slack"] is None else f"{round12(agg['min_slack']):.12g}"
            am = agg["argmin_graph6"] or ""
            rows.append(
                f"{cid},{agg['checked']},{agg['applicable']},{agg['violations']},"
                f"{agg['equalities']},{ms},{am}"
            )
        return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Enumeration path (vectorized kernel)
# ---------------------------------------------------------------------------


def _walk_rs_for(ids: Sequence[str]) -> tuple[int, ...]:
    rs = sorted({r for cid in ids for _, r in [parse_check_id(cid)] if r is not None})
    return tuple(rs)


def _enum_chunk(args) -> dict:
    (n, lo, hi, ids, connected_only, stop_on_violation, top_k,
     holds_rtol, equality_rtol) = args
    tol = Tolerances(holds_rtol, equality_rtol)
    masks = np.arange(lo, hi, dtype=np.int64)
    ctx = bt.BatchContext(n, masks, walk_rs=_walk_rs_for(ids))
    keep = ctx.connected if connected_only else np.ones(len(masks), dtype=bool)

    g6_cache: dict[int, str] = {}

    def g6(mask: int) -> str:
        if mask not in g6_cache:
            g6_cache[mask] = to_graph6(from_edge_mask(n, mask))
        return g6_cache[mask]

    evals = {}
    first_bad = None
    for cid in ids:
        entry, r = parse_check_id(cid)
        lhs = np.broadcast_to(np.asarray(entry.lhs(ctx, r), dtype=np.float64), (len(masks),))
        rhs = np.broadcast_to(np.asarray(entry.rhs(ctx, r), dtype=np.float64), (len(masks),))
        app = np.broadcast_to(np.asarray(entry.applicable(ctx, r), dtype=bool), (len(masks),))
        slack = rhs - lhs
        htol = tol.holds_tol(lhs, rhs)
        holds = slack > -htol if entry.strict else slack >= -htol
        eq = np.abs(slack) <= tol.equality_tol(lhs, rhs)
        viol = keep & app & ~holds
        evals[cid] = (lhs, rhs, app & keep, slack, eq, viol)
        bad = np.flatnonzero(viol)
        if len(bad) and (first_bad is None or bad[0] < first_bad):
            first_bad = int(bad[0])

    if stop_on_violation and first_bad is not None:
        keep = keep & (np.arange(len(masks)) <= first_bad)

    agg: dict = {"_processed": int(keep.sum()), "_stopped": stop_on_violation and first_bad is not None}
    violations = []
    for cid in ids:
        lhs, rhs, app, slack, eq, viol = evals[cid]
        if stop_on_violation and first_bad is not None:
            app = app & (np.arange(len(masks)) <= first_bad)
            viol = viol & (np.arange(len(masks)) <= first_bad)
        c = _new_check_agg()
        c["checked"] = int(keep.sum())
        c["applicable"] = int(app.sum())
        c["violations"] = int(viol.sum())
        c["equalities"] = int((eq & app).sum())
        idx = np.flatnonzero(app)
        if len(idx):
            s = slack[idx]
            # Candidates for min/top-k: ties on the boundary slack are
            # broken by graph6 string, so pull the whole tie group.
            kth = np.partition(s, min(top_k, len(s)) - 1)[min(top_k, len(s)) - 1]
            cand = idx[s <= kth]
            ranked = sorted((float(slack[i]), g6(int(masks[i]))) for i in cand)
            c["top"] = ranked[:top_k]
            c["min_slack"], c["argmin_graph6"] = ranked[0]
        for i in np.flatnonzero(viol):
            violations.append({
                "graph6": g6(int(masks[i])),
                "check": cid,
                "lhs": float(lhs[i]),
                "rhs": float(rhs[i]),
                "slack": float(slack[i]),
            })
        agg[cid] = c
    agg["_violations"] = violations
    return agg


def _chunk_ranges(lo: int, hi: int) -> list[tuple[int, int]]:
    # Chunk boundaries are absolute so reports do not depend on the worker
    # count or on how an index range was split.
    out = []
    start = lo
    while start < hi:
        end = min(hi, (start // CHUNK + 1) * CHUNK)
        out.append((start, end))
        start = end
    return out


def _scan_enumeration(source: EnumerationSource, ids: list[str], options: ScanOptions,
                      report: ScanReport, on_violation) -> ScanReport:
    n = source.n
    if not 1 <= n <= ENUMERATION_MAX_ORDER:
        raise ScanError(
            f"built-in enumeration covers n <= {ENUMERATION_MAX_ORDER}; "
            "use a graph6 stream for larger orders"
        )
    total = 1 << (n * (n - 1) // 2)
    lo, hi = options.index_range or (0, total)
    if not (0 <= lo <= hi <= total):
        raise ScanError(f"index range [{lo}, {hi}) outside [0, {total})")
    tasks = [
        (n, clo, chi, tuple(ids), options.connected_only, options.stop_on_violation,
         options.top_k, options.tol.holds_rtol, options.tol.equality_rtol)
        for clo, chi in _chunk_ranges(lo, hi)
    ]
    start_time = time.monotonic()

    def results():
        if options.workers > 1 and not options.stop_on_violation and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=options.workers) as pool:
                yield from pool.map(_enum_chunk, tasks)
        else:
            for t in tasks:
                yield _enum_chunk(t)

    for agg in results():
        report.graphs_processed += agg["_processed"]
        for cid in ids:
            report.checks[cid] = _merge_check_aggs(report.checks[cid], agg[cid], options.top_k)
        for v in agg["_violations"]:
            report.violations.append(v)
            if on_violation:
                on_violation(v)
        if agg["_stopped"]:
            report.partial = True
            break
        if options.time_budget_s is not None and time.monotonic() - start_time > options.time_budget_s:
            report.partial = True
            break
    return report


# ---------------------------------------------------------------------------
# Per-graph paths (graph6 streams, random trials)
# ---------------------------------------------------------------------------


def _observe_graph(report: ScanReport, ids: list[str], g: Graph, label: str,
                   options: ScanOptions, on_violation, exact_cliques: bool | None = None) -> bool:
    """Evaluate all checks on one graph; returns True when scanning stops."""
    ctx = GraphContext(g, exact_cliques=exact_cliques)
    report.graphs_processed += 1
    stop = False
    for cid in ids:
        entry, r = parse_check_id(cid)
        res = evaluate_entry(entry, ctx, r, options.tol)
        _observe_scalar(report.checks[cid], res, label, options.top_k, res.equality)
        if res.applicable and not res.holds:
            v = {"graph6": label, "check": cid, "lhs": res.lhs, "rhs": res.rhs,
                 "slack": res.slack}
            if res.notes:
                v["notes"] = res.notes
            report.violations.append(v)
            if on_violation:
                on_violation(v)
            if options.stop_on_violation:
                stop = True
    return stop


def _scan_graph6(source: Graph6Source, ids: list[str], options: ScanOptions,
                 report: ScanReport, on_violation) -> ScanReport:
    start_time = time.monotonic()
    try:
        lines = source.iter_lines()
    except OSError as exc:
        raise ScanError(f"unreadable source: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            g = from_graph6(line)
        except Graph6ParseError as exc:
            if options.strict_parse:
                raise ScanError(f"line {lineno}: {exc}") from exc
            report.parse_errors.append({"line": lineno, "error": str(exc)})
            continue
        if options.connected_only and not is_connected(g):
            continue
        if _observe_graph(report, ids, g, to_graph6(g), options, on_violation):
            report.partial = True
            break
        if options.time_budget_s is not None and time.monotonic() - start_time > options.time_budget_s:
            report.partial = True
            break
    return report


def _scan_random(source: RandomSource, ids: list[str], options: ScanOptions,
                 report: ScanReport, on_violation) -> ScanReport:
    start_time = time.monotonic()
    for trial in range(source.trials):
        g = random_gnp(source.n, source.p, source.seed, index=trial)
        if options.connected_only and not is_connected(g):
            continue
        label = to_graph6(g) if g.n <= 64 else f"trial:{trial}"
        if _observe_graph(report, ids, g, label, options, on_violation):
            report.partial = True
            break
        if options.time_budget_s is not None and time.monotonic() - start_time > options.time_budget_s:
            report.partial = True
            break
    return report


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def scan(
    source: GraphSource,
    checks: str | Sequence[str],
    options: ScanOptions = ScanOptions(),
    on_violation: Callable[[dict], None] | None = None,
) -> ScanReport:
    """Run every selected check over every graph from the source."""
    ids = expand_check_ids(checks, options.walk_rs)
    if not ids:
        raise ScanError("no checks selected")
    report = ScanReport(
        source=source.descriptor(),
        options=options.descriptor(),
        check_ids=ids,
        checks={cid: _new_check_agg() for cid in ids},
    )
    if isinstance(source, EnumerationSource):
        return _scan_enumeration(source, ids, options, report, on_violation)
    if isinstance(source, Graph6Source):
        return _scan_graph6(source, ids, options, report, on_violation)
    if isinstance(source, RandomSource):
        return _scan_random(source, ids, options, report, on_violation)
    raise ScanError(f"unknown source type {type(source)!r}")


def extremal_search(
    source: GraphSource,
    check_id: str,
    k: int,
    options: ScanOptions = ScanOptions(),
) -> list[dict]:
    """The k graphs of smallest slack for one check, deterministic order."""
    if k < 1:
        raise ScanError("k >= 1 required")
    options = replace(options, top_k=k)
    report = scan(source, [check_id], options)
    cid = expand_check_ids([check_id], options.walk_rs)[0]
    return [{"slack": s, "graph6": g} for s, g in report.checks[cid]["top"]]


# ---------------------------------------------------------------------------
# Random-graph experiments
# ---------------------------------------------------------------------------

EXPERIMENT_CHECKS = ("splus_wilf", "vertex_local_splus_wilf", "local_bn")


@dataclass
class RandomExperiment:
    n: int
    p: float
    trials: int
    seed: int
    stats: dict[str, dict[str, float]]
    violations: dict[str, int]
    clique_exact: bool
    partial: bool = False

    def to_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "trials": self.trials, "seed": self.seed,
            "stats": self.stats, "violations": self.violations,
            "clique_exact": self.clique_exact, "partial": self.partial,
        }

    def to_json_bytes(self) -> bytes:
        return json_bytes(self.to_dict())


def random_experiment(
    n: int,
    p: float,
    trials: int,
    seed: int,
    checks: Sequence[str] = EXPERIMENT_CHECKS,
    tol: Tolerances = DEFAULT_TOL,
    time_budget_s: float | None = None,
) -> RandomExperiment:
    """Spectral and clique statistics of G(n, p) over seeded trials.

    Statistics: lambda1/n, lambda2/sqrt(n), s+/n^2, s-/n^2, omega, mean c(v),
    mean c(e).  Above the exact-clique cap the clique quantities are greedy
    lower bounds (flagged by ``clique_exact``); the evaluated checks are
    monotone in them, so reported non-violations are certified.
    """
    if trials < 1:
        raise ScanError("trials >= 1 required")
    exact = n <= EXACT_ORDER_CAP
    samples: dict[str, list[float]] = {
        k: [] for k in ("lambda1_over_n", "lambda2_over_sqrt_n",
                        "s_plus_over_n2", "s_minus_over_n2",
                        "omega", "mean_c_v", "mean_c_e")
    }
    violations = {cid: 0 for cid in checks}
    start_time = time.monotonic()
    partial = False
    done = 0
    for trial in range(trials):
        g = random_gnp(n, p, seed, index=trial)
        ctx = GraphContext(g, exact_cliques=exact)
        samples["lambda1_over_n"].append(float(ctx.lam1) / n)
        samples["lambda2_over_sqrt_n"].append(float(ctx.lam2) / np.sqrt(n))
        samples["s_plus_over_n2"].append(float(ctx.s_plus) / n**2)
        samples["s_minus_over_n2"].append(float(ctx.s_minus) / n**2)
        samples["omega"].append(float(ctx.omega))
        samples["mean_c_v"].append(float(np.mean(ctx.profile.c_v)))
        samples["mean_c_e"].append(float(np.mean(ctx.profile.c_e)) if ctx.profile.c_e else 0.0)
        for cid in checks:
            entry, r = parse_check_id(cid)
            from .inequalities import evaluate_entry

            res = evaluate_entry(entry, ctx, r, tol)
            if res.applicable and not res.holds:
                violations[cid] += 1
        done = trial + 1
        if time_budget_s is not None and time.monotonic() - start_time > time_budget_s:
            partial = done < trials
            break
    stats = {
        name: {
            "mean": float(np.mean(vals)),
            "stddev": float(np.std(vals)),
        }
        for name, vals in samples.items()
    }
    return RandomExperiment(
        n=n, p=p, trials=done, seed=seed, stats=stats,
        violations=violations, clique_exact=exact, partial=partial,
    )
