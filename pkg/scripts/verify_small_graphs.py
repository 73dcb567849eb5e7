#!/usr/bin/env python3
"""Exhaustive verification sweep over all connected labeled graphs n <= N.

Runs every theorem and conjecture in the catalogue and prints a per-check
summary (violations, minimum slack, equality count).  Exit code 1 on any
binding violation.

Usage: python scripts/verify_small_graphs.py [--max-n 7] [--workers 1]
       [--checks all|theorems|conjectures] [--connected/--all-graphs]
"""

import argparse
import sys
import time

from turanlab import EnumerationSource, ScanOptions, scan


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--checks", default="all")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--all-graphs", action="store_true",
                    help="include disconnected graphs")
    args = ap.parse_args()

    any_violation = False
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        report = scan(
            EnumerationSource(n),
            args.checks,
            ScanOptions(connected_only=not args.all_graphs, workers=args.workers),
        )
        dt = time.perf_counter() - t0
        print(f"\nn={n}: {report.graphs_processed} graphs, "
              f"{report.binding_violations} violations, {dt:.1f}s")
        print(f"  {'check':28s} {'applicable':>10s} {'viol':>6s} {'equal':>7s} {'min slack':>12s}")
        for cid in report.check_ids:
            agg = report.checks[cid]
            ms = "-" if agg["min_slack"] is None else f"{agg['min_slack']:.3e}"
            print(f"  {cid:28s} {agg['applicable']:>10d} {agg['violations']:>6d} "
                  f"{agg['equalities']:>7d} {ms:>12s}")
        for v in report.violations[:10]:
            print(f"  VIOLATION {v['check']} at {v['graph6']}: "
                  f"lhs={v['lhs']:.12g} rhs={v['rhs']:.12g}")
        any_violation |= report.binding_violations > 0
    return 1 if any_violation else 0


if __name__ == "__main__":
    sys.exit(main())
