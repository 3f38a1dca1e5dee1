"""Property checks against the oracle, usable from tests and ``bench verify``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Optional

from ..domains.generators import Problem, random_explicit_graph, random_grid, walled_goal_grid
from ..domains.graph import walkthrough_graph
from ..oracle import OracleResult, oracle_shortest_paths
from ..planners import plan
from ..planners.types import Algorithm, Outcome, PlannerConfig, SearchResult, SearchTrace

log = logging.getLogger(__name__)

#: (algorithm, N_t) combinations exercised by the optimality checks
OPTIMALITY_MATRIX: tuple[tuple[Algorithm, int], ...] = (
    (Algorithm.ASTAR, 1),
    (Algorithm.EASTAR, 1),
    (Algorithm.PWASTAR, 1),
    (Algorithm.PWASTAR, 4),
    *((Algorithm.WPASE, n) for n in (1, 2, 4, 8)),
    *((Algorithm.EPASE, n) for n in (1, 2, 4, 8)),
)


def exact(x: float) -> Fraction:
    return Fraction(x)


def within_factor(cost: float, optimal: float, factor: float) -> bool:
    """``cost <= factor * optimal`` in exact rational arithmetic."""
    return exact(cost) <= exact(factor) * exact(optimal)


def selection_bound_violations(
    trace: SearchTrace, g_star: dict[Hashable, float], lam: float
) -> list[tuple[Hashable, float, float]]:
    """Selections whose source had ``g > lam * g*`` at selection time."""
    bad = []
    lam_q = exact(lam)
    for key, g, _action in trace.selections:
        gs = g_star[key]
        if exact(g) > lam_q * exact(gs):
            bad.append((key, g, gs))
    return bad


def evaluated_edges(trace: SearchTrace) -> set[tuple[Hashable, int]]:
    return set(trace.edge_evaluations)


def instance_set(n: int, seed: int = 0) -> list[Problem]:
    """Mixed solvable instances: 50x50 grids at 0/10/25% density and
    200-state graphs, in equal rotation."""
    out: list[Problem] = []
    densities = (0.0, 0.10, 0.25)
    for i in range(n):
        s = seed + i
        kind = i % 4
        if kind < 3:
            out.append(random_grid(s, 50, 50, densities[kind], primitives="eight"))
        else:
            out.append(random_explicit_graph(s, 200))
    return out


@dataclass
class VerifyReport:
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, msg: str) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(msg)
            log.error("FAIL %s", msg)


def _run(p: Problem, cfg: PlannerConfig) -> SearchResult:
    return plan(p.space, p.start, cfg)


def verify_instance(
    p: Problem,
    report: VerifyReport,
    oracle: Optional[OracleResult] = None,
    pairs: Iterable[tuple[float, float]] = ((1.5, 1.5), (5.0, 5.0), (1.5, 3.0)),
) -> None:
    oracle = oracle or oracle_shortest_paths(p.space, p.start)
    tag = f"seed {p.seed}"
    for alg, n in OPTIMALITY_MATRIX:
        res = _run(p, PlannerConfig(algorithm=alg, num_threads=n, debug=n > 1))
        report.expect(res.solved, f"{tag}: {alg.value} N_t={n} unsolved ({res.outcome.value})")
        if res.solved:
            report.expect(
                exact(res.cost) == exact(oracle.optimal_cost),
                f"{tag}: {alg.value} N_t={n} cost {res.cost} != optimal {oracle.optimal_cost}",
            )
        if res.trace is not None:
            report.expect(not res.trace.duplicate_evaluations(), f"{tag}: {alg.value} duplicate evaluations")
            report.expect(not res.trace.duplicate_closings(), f"{tag}: {alg.value} duplicate closings")
    for w, eps in pairs:
        for alg in (Algorithm.WASTAR, Algorithm.EASTAR, Algorithm.WPASE, Algorithm.EPASE):
            n = 1 if alg.serial else 4
            res = _run(p, PlannerConfig(algorithm=alg, weight=w, epsilon=eps, num_threads=n))
            report.expect(res.solved, f"{tag}: {alg.value} w={w} eps={eps} unsolved")
            if res.solved:
                report.expect(
                    within_factor(res.cost, oracle.optimal_cost, max(w, eps)),
                    f"{tag}: {alg.value} w={w} eps={eps} cost {res.cost} exceeds bound",
                )


def walkthrough_evaluations(algorithm: Algorithm, weight: float = 1.0) -> tuple[SearchResult, set[str]]:
    """Names of the real edges evaluated on the walkthrough graph."""
    graph, start, labels = walkthrough_graph()
    res = plan(graph, start, PlannerConfig(algorithm=algorithm, weight=weight, epsilon=weight, debug=True))
    return res, {labels[e] for e in evaluated_edges(res.trace)}


def verify_walkthrough(report: VerifyReport) -> None:
    res, names = walkthrough_evaluations(Algorithm.EASTAR)
    report.expect(res.solved and res.cost == 2.0, "walkthrough: eA* did not find cost 2")
    report.expect(names == {"e0->1", "e1->4"}, f"walkthrough: eA* evaluated {sorted(names)}")
    res, names = walkthrough_evaluations(Algorithm.WASTAR)
    report.expect(
        names == {"e0->1", "e0->2", "e0->3", "e1->4", "e1->5"},
        f"walkthrough: wA* evaluated {sorted(names)}",
    )


def verify_no_solution(report: VerifyReport, seeds: Iterable[int]) -> None:
    for s in seeds:
        p = walled_goal_grid(s, 20, 20)
        for alg in (Algorithm.WASTAR, Algorithm.EASTAR, Algorithm.WPASE, Algorithm.EPASE):
            res = _run(p, PlannerConfig(algorithm=alg, num_threads=1 if alg.serial else 4, time_limit=30))
            report.expect(res.outcome is Outcome.NO_SOLUTION,
                          f"walled seed {s}: {alg.value} returned {res.outcome.value}")


def run_property_suite(n_instances: int = 8, seed: int = 0) -> VerifyReport:
    """Optimality, suboptimality bounds, no re-expansion, termination and
    the walkthrough conformance check on small instances."""
    report = VerifyReport()
    for i in range(n_instances):
        s = seed + i
        p = random_grid(s, 20, 20, (0.0, 0.1, 0.25)[i % 3]) if i % 4 != 3 else random_explicit_graph(s, 60)
        verify_instance(p, report)
    verify_no_solution(report, range(seed, seed + 3))
    verify_walkthrough(report)
    return report


__all__ = [
    "OPTIMALITY_MATRIX",
    "VerifyReport",
    "evaluated_edges",
    "exact",
    "instance_set",
    "run_property_suite",
    "selection_bound_violations",
    "verify_instance",
    "walkthrough_evaluations",
    "within_factor",
]

