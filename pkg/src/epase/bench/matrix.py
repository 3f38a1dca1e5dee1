"""Trial matrices: algorithms x thread counts x (w, eps) pairs x trials."""
from __future__ import annotations

import logging
import math
import statistics
import time
from dataclasses import dataclass, field, fields
from typing import Callable, Iterable, Optional

from ..domains.generators import Problem
from ..planners import plan
from ..planners.types import Algorithm, PlannerConfig, ThreadMgt
from .config import BenchSettings, DomainSpec

log = logging.getLogger(__name__)

#: outcomes beyond the planner's own SOLVED / NO_SOLUTION / TIMEOUT
ERROR = "ERROR"
SKIPPED = "SKIPPED"
MAX_CONSECUTIVE_FAILURES = 3


@dataclass(frozen=True)
class BenchRecord:
    trial_id: int
    algorithm: str
    N_t: int
    w: float
    eps: float
    outcome: str
    cost: float
    wall_time: float
    edges_evaluated: int
    states_expanded: int
    threads_spawned: int


FIELDS = tuple(f.name for f in fields(BenchRecord))


@dataclass
class TrialMatrix:
    algorithms: list[Algorithm]
    thread_counts: list[int]
    pairs: list[tuple[float, float]]
    num_trials: int
    seed: int = 0
    domain: DomainSpec = field(default_factory=DomainSpec)
    time_limit: float = 120.0
    thread_mgt: ThreadMgt = ThreadMgt.SPAWN_ON_DEMAND
    warmup: bool = True

    @classmethod
    def from_settings(cls, domain: DomainSpec, s: BenchSettings) -> "TrialMatrix":
        return cls(
            algorithms=list(s.algorithms),
            thread_counts=list(s.threads),
            pairs=list(s.pairs),
            num_trials=s.trials,
            seed=s.seed,
            domain=domain,
            time_limit=s.time_limit,
            thread_mgt=s.thread_mgt,
            warmup=s.warmup,
        )

    def cells(self) -> list[tuple[Algorithm, int, float, float]]:
        """Distinct ``(algorithm, N_t, w, eps)`` cells in run order.

        Serial algorithms get a single ``N_t = 1`` cell, and A* ignores the
        pairs and always runs with ``w = eps = 1``.
        """
        out: list[tuple[Algorithm, int, float, float]] = []
        for w, eps in self.pairs:
            for alg in self.algorithms:
                alg = Algorithm(alg)
                if alg is Algorithm.ASTAR:
                    cell_pairs = [(1.0, 1.0)]
                else:
                    cell_pairs = [(w, eps)]
                threads = [1] if alg.serial else self.thread_counts
                for n in threads:
                    for cw, ce in cell_pairs:
                        c = (alg, n, float(cw), float(ce))
                        if c not in out:
                            out.append(c)
        return out


class InstanceCache:
    """Trial ``i`` is the instance generated from ``seed + i``, shared by all cells."""

    def __init__(self, matrix: TrialMatrix) -> None:
        self.matrix = matrix
        self._cache: dict[int, Problem] = {}
        self.fingerprints: dict[int, str] = {}

    def __getitem__(self, trial: int) -> Problem:
        p = self._cache.get(trial)
        if p is None:
            p = self.matrix.domain.instance(self.matrix.seed + trial)
            self._cache[trial] = p
            self.fingerprints[trial] = p.fingerprint()
        return p

    def check_parity(self) -> None:
        """Regenerate every cached instance and compare fingerprints."""
        for trial, fp in self.fingerprints.items():
            again = self.matrix.domain.instance(self.matrix.seed + trial).fingerprint()
            if again != fp:
                raise AssertionError(f"trial {trial} is not reproducible from its seed")


def _config(m: TrialMatrix, alg: Algorithm, n: int, w: float, eps: float) -> PlannerConfig:
    return PlannerConfig(
        algorithm=alg,
        weight=w,
        epsilon=eps,
        num_threads=n,
        thread_mgt=m.thread_mgt,
        time_limit=m.time_limit,
    )


def run_cell(
    m: TrialMatrix,
    instances: InstanceCache,
    alg: Algorithm,
    n: int,
    w: float,
    eps: float,
) -> list[BenchRecord]:
    cfg = _config(m, alg, n, w, eps)
    rows: list[BenchRecord] = []
    if m.warmup and m.num_trials > 0:
        p = instances[0]
        try:
            plan(p.space, p.start, cfg)
        except Exception:
            log.warning("warm-up run of %s N_t=%d failed", alg.value, n, exc_info=True)
    failures = 0
    for trial in range(m.num_trials):
        base = dict(trial_id=trial, algorithm=alg.value, N_t=n, w=w, eps=eps)
        if failures >= MAX_CONSECUTIVE_FAILURES:
            rows.append(BenchRecord(**base, outcome=SKIPPED, cost=math.inf, wall_time=0.0,
                                    edges_evaluated=0, states_expanded=0, threads_spawned=0))
            continue
        p = instances[trial]
        t0 = time.perf_counter()
        try:
            res = plan(p.space, p.start, cfg)
        except Exception as exc:
            failures += 1
            log.error("%s N_t=%d trial %d failed: %s", alg.value, n, trial, exc)
            rows.append(BenchRecord(**base, outcome=ERROR, cost=math.inf,
                                    wall_time=time.perf_counter() - t0,
                                    edges_evaluated=0, states_expanded=0, threads_spawned=0))
            continue
        failures = 0
        st = res.stats
        rows.append(BenchRecord(
            **base,
            outcome=res.outcome.value,
            cost=float(res.cost),
            wall_time=st.wall_time,
            edges_evaluated=st.edges_evaluated,
            states_expanded=st.states_expanded,
            threads_spawned=st.threads_spawned,
        ))
        log.debug("%s N_t=%d trial %d: %s %.4fs", alg.value, n, trial, res.outcome.value, st.wall_time)
    return rows


def run_matrix(
    m: TrialMatrix,
    progress: Optional[Callable[[tuple[Algorithm, int, float, float], list[BenchRecord]], None]] = None,
) -> list[BenchRecord]:
    """Run every cell sequentially; rows come out grouped by cell."""
    instances = InstanceCache(m)
    records: list[BenchRecord] = []
    for cell in m.cells():
        rows = run_cell(m, instances, *cell)
        records.extend(rows)
        if progress is not None:
            progress(cell, rows)
    instances.check_parity()
    return records


# -- summaries ---------------------------------------------------------------

@dataclass(frozen=True)
class CellSummary:
    algorithm: str
    N_t: int
    w: float
    eps: float
    trials: int
    solved: int
    solve_rate: float
    mean_time: float
    median_time: float
    std_time: float
    mean_edges: float
    median_edges: float
    mean_expanded: float
    mean_cost: float
    mean_threads_spawned: float
    speedup: float
    speedup_median: float


SUMMARY_FIELDS = tuple(f.name for f in fields(CellSummary))


def _mean(xs: list[float]) -> float:
    return statistics.fmean(xs) if xs else math.nan


def _median(xs: list[float]) -> float:
    return statistics.median(xs) if xs else math.nan


def _std(xs: list[float]) -> float:
    return statistics.pstdev(xs) if xs else math.nan


def group_cells(records: Iterable[BenchRecord]) -> dict[tuple[str, int, float, float], list[BenchRecord]]:
    cells: dict[tuple[str, int, float, float], list[BenchRecord]] = {}
    for r in records:
        cells.setdefault((r.algorithm, r.N_t, r.w, r.eps), []).append(r)
    return cells


def _baseline(cells: dict, w: float, eps: float) -> Optional[list[BenchRecord]]:
    for key in ((Algorithm.WASTAR.value, 1, w, eps), (Algorithm.ASTAR.value, 1, w, eps),
                (Algorithm.ASTAR.value, 1, 1.0, 1.0)):
        if key in cells:
            return cells[key]
    return None


def summarize(records: Iterable[BenchRecord]) -> list[CellSummary]:
    """Per-cell statistics over solved trials; speedup is relative to the
    weighted A* ``N_t = 1`` cell with the same (w, eps), or A* if absent."""
    cells = group_cells(records)
    out = []
    for (alg, n, w, eps), rows in cells.items():
        solved = [r for r in rows if r.outcome == "SOLVED"]
        times = [r.wall_time for r in solved]
        edges = [float(r.edges_evaluated) for r in solved]
        base = _baseline(cells, w, eps)
        speedup = speedup_med = math.nan
        if base is not None:
            bt = [r.wall_time for r in base if r.outcome == "SOLVED"]
            if bt and times:
                speedup = _mean(bt) / _mean(times)
                speedup_med = _median(bt) / _median(times)
        out.append(CellSummary(
            algorithm=alg,
            N_t=n,
            w=w,
            eps=eps,
            trials=len(rows),
            solved=len(solved),
            solve_rate=len(solved) / len(rows) if rows else math.nan,
            mean_time=_mean(times),
            median_time=_median(times),
            std_time=_std(times),
            mean_edges=_mean(edges),
            median_edges=_median(edges),
            mean_expanded=_mean([float(r.states_expanded) for r in solved]),
            mean_cost=_mean([r.cost for r in solved]),
            mean_threads_spawned=_mean([float(r.threads_spawned) for r in solved]),
            speedup=speedup,
            speedup_median=speedup_med,
        ))
    return out


def cell_mean(records: Iterable[BenchRecord], attr: str, algorithm: str, n: int,
              w: Optional[float] = None, eps: Optional[float] = None) -> float:
    """Mean of ``attr`` over the solved rows of one cell."""
    vals = [
        float(getattr(r, attr)) for r in records
        if r.algorithm == algorithm and r.N_t == n and r.outcome == "SOLVED"
        and (w is None or r.w == w) and (eps is None or r.eps == eps)
    ]
    return _mean(vals)


def saturation_point(summary: Iterable[CellSummary], algorithm: str, tol: float = 1.05) -> Optional[int]:
    """Smallest N_t whose mean time is within ``tol`` of the best N_t."""
    pts = sorted((s.N_t, s.mean_time) for s in summary
                 if s.algorithm == algorithm and not math.isnan(s.mean_time))
    if not pts:
        return None
    best = min(t for _, t in pts)
    return next(n for n, t in pts if t <= tol * best)
