"""``bench`` command line: run trial matrices, query the oracle, verify.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
Log verbosity comes from ``EPASE_LOG_LEVEL`` (default ``WARNING``).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from typing import Optional, Sequence

from ..domains.delay import parse_delay
from ..domains.grid import make_grid
from ..domains.mapfile import MapFormatError, load_map
from ..oracle import oracle_shortest_paths
from ..planners.types import ThreadMgt
from .config import BenchSettings, DomainSpec, load_config, parse_algorithms, parse_ints
from .matrix import TrialMatrix, run_matrix, summarize
from .report import emit_csv, emit_plots, emit_summary_csv, format_table
from .verify import run_property_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2

log = logging.getLogger("epase.bench")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _xy(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None
    return x, y


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bench", description="Benchmark runner for the planner family.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run a trial matrix and write CSV/SVG reports")
    r.add_argument("--config", help="INI file with [domain] and [bench] sections")
    r.add_argument("--algo", help="comma separated, e.g. WASTAR,EPASE")
    r.add_argument("--threads", help="comma separated thread counts")
    r.add_argument("--w", type=float)
    r.add_argument("--eps", type=float)
    r.add_argument("--trials", type=int)
    r.add_argument("--seed", type=int)
    r.add_argument("--map", help="fixed map file; start and goal are still sampled per trial")
    r.add_argument("--delay", help="none | fixed:10ms | per-action:FILE | lognormal:MU,SIGMA")
    r.add_argument("--time-limit", type=float)
    r.add_argument("--thread-mgt", choices=[t.value for t in ThreadMgt])
    r.add_argument("--no-warmup", action="store_true")
    r.add_argument("--out", help="output directory (default from config, else ./results)")

    o = sub.add_parser("oracle", help="print the optimal cost between two cells of a map")
    o.add_argument("--map", required=True)
    o.add_argument("--start", type=_xy, required=True)
    o.add_argument("--goal", type=_xy, required=True)
    o.add_argument("--primitives", default="eight", choices=["four", "eight", "lattice18"])

    v = sub.add_parser("verify", help="run the property suite on small instances")
    v.add_argument("--instances", type=int, default=8)
    v.add_argument("--seed", type=int, default=0)
    return p


def _settings(args: argparse.Namespace) -> tuple[DomainSpec, BenchSettings]:
    if args.config:
        dom, s = load_config(args.config)
    else:
        dom, s = DomainSpec(), BenchSettings()
    if args.algo:
        s.algorithms = parse_algorithms(args.algo)
    if args.threads:
        s.threads = parse_ints(args.threads)
    if args.w is not None or args.eps is not None:
        w = args.w if args.w is not None else args.eps
        s.pairs = [(w, args.eps if args.eps is not None else w)]
    if args.trials is not None:
        s.trials = args.trials
    if args.seed is not None:
        s.seed = args.seed
    if args.time_limit is not None:
        s.time_limit = args.time_limit
    if args.thread_mgt:
        s.thread_mgt = ThreadMgt(args.thread_mgt)
    if args.no_warmup:
        s.warmup = False
    if args.out:
        s.out = args.out
    if args.map:
        dom = replace(dom, map_path=args.map)
    if args.delay:
        dom = replace(dom, delay=parse_delay(args.delay))
    if s.trials < 1 or any(n < 1 for n in s.threads) or not s.algorithms:
        raise UsageError("trials, thread counts and algorithms must be non-empty and positive")
    return dom, s


def cmd_run(args: argparse.Namespace) -> int:
    dom, s = _settings(args)
    if dom.map_path is not None:
        load_map(dom.map_path)  # fail early on a bad map
    out = s.out
    try:
        os.makedirs(out, exist_ok=True)
        probe = os.path.join(out, ".write-test")
        with open(probe, "w"):
            pass
        os.remove(probe)
    except OSError as exc:
        raise UsageError(f"cannot write to output directory {out!r}: {exc}") from None
    matrix = TrialMatrix.from_settings(dom, s)

    def progress(cell, rows):
        alg, n, w, eps = cell
        solved = sum(r.outcome == "SOLVED" for r in rows)
        log.info("%s N_t=%d w=%g eps=%g: %d/%d solved", alg.value, n, w, eps, solved, len(rows))

    records = run_matrix(matrix, progress)
    emit_csv(records, os.path.join(out, "records.csv"))
    emit_summary_csv(records, os.path.join(out, "summary.csv"))
    emit_plots(records, out)
    print(format_table(summarize(records)))
    print(f"wrote {len(records)} records to {out}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    occ = load_map(args.map)
    h, w = occ.shape
    for name, (x, y) in (("start", args.start), ("goal", args.goal)):
        if not (0 <= x < w and 0 <= y < h):
            raise UsageError(f"{name} {x},{y} is outside the {w}x{h} map")
        if occ[y, x]:
            raise UsageError(f"{name} {x},{y} is an obstacle cell")
    space = make_grid(occ, args.goal, args.primitives)
    res = oracle_shortest_paths(space, space.state(*args.start, 0), exhaustive=False)
    print("unreachable" if res.optimal_cost is None else repr(res.optimal_cost))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_property_suite(args.instances, args.seed)
    for msg in report.failures:
        print(f"FAIL {msg}")
    print(f"{report.checks - len(report.failures)}/{report.checks} checks passed")
    return EXIT_OK if report.ok else EXIT_VERIFY


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=os.environ.get("EPASE_LOG_LEVEL", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "oracle": cmd_oracle, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except (UsageError, MapFormatError, FileNotFoundError, ValueError) as exc:
        print(f"bench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
