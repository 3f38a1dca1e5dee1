"""Bookkeeping shared by all planners: evaluation counting, relaxation,
edge-expansion steps and path reconstruction."""
from __future__ import annotations

import math
import threading
import time
from contextlib import contextmanager
from typing import Any, Callable, Hashable, Iterator, Optional

from ..core import (
    DUMMY,
    Edge,
    SearchConsistencyError,
    SharedSearchState,
    StateRecord,
    StateRegistry,
    Status,
)
from .types import Outcome, PlannerConfig, RunStats, SearchResult, SearchTrace, Step


def backtrack(goal_index: int, registry: StateRegistry) -> list[Step]:
    """Follow parent pointers from ``goal_index`` back to the start state."""
    recs = registry.records
    rec = recs[goal_index]
    if math.isinf(rec.g):
        raise SearchConsistencyError(f"backtrack from undiscovered state {rec.key!r}")
    steps: list[Step] = []
    seen = {goal_index}
    while rec.parent is not None:
        p, action, cost = rec.parent
        prev = recs[p]
        steps.append(Step(prev.key, action, rec.key, cost))
        if p in seen:
            raise SearchConsistencyError(f"parent cycle through {prev.key!r}")
        seen.add(p)
        rec = prev
    if rec.g != 0:
        raise SearchConsistencyError(f"parent chain ends at {rec.key!r} with g={rec.g}")
    steps.reverse()
    total = 0.0
    for st in steps:
        total += st.cost
    if total != recs[goal_index].g:
        raise SearchConsistencyError(f"path cost {total} != g {recs[goal_index].g}")
    return steps


class SearchContext:
    """Per-run state handed to every planner step."""

    def __init__(self, space: Any, config: PlannerConfig) -> None:
        self.space = space
        self.config = config
        self.weight = config.weight
        self.shared = SharedSearchState()
        self.stats = RunStats()
        self.trace: Optional[SearchTrace] = SearchTrace() if config.debug else None
        self._count_lock = threading.Lock()
        self.t0 = time.perf_counter()
        self.deadline = self.t0 + config.time_limit

    # -- timing -----------------------------------------------------------
    def remaining(self) -> float:
        return self.deadline - time.perf_counter()

    def timed_out(self) -> bool:
        return time.perf_counter() > self.deadline

    @contextmanager
    def locked(self) -> Iterator[None]:
        """Acquire the shared lock, accounting the time spent waiting for it."""
        t = time.perf_counter()
        with self.shared.lock:
            self.stats.lock_wait_time += time.perf_counter() - t
            yield

    # -- the single evaluation call site ------------------------------------
    def evaluate(self, key: Hashable, action: int) -> tuple[Hashable, float]:
        with self._count_lock:
            self.stats.edges_evaluated += 1
        tr = self.trace
        if tr is not None:
            with tr.lock:
                tr.edge_evaluations[(key, action)] += 1
                n = tr.edge_evaluations[(key, action)]
            if n > 1:
                raise SearchConsistencyError(f"edge {(key, action)!r} evaluated {n} times")
        return self.space.evaluate(key, action)

    # -- locked helpers -------------------------------------------------------
    def seed(self, start: Hashable) -> StateRecord:
        rec = self.shared.registry.get_or_insert(start, self.space.heuristic(start))
        rec.g = 0.0
        rec.status = Status.OPEN_DUMMY
        return rec

    def log_selection(self, rec: StateRecord, action: int) -> None:
        if self.trace is not None:
            self.trace.selections.append((rec.key, rec.g, action))

    def relax(
        self,
        parent: StateRecord,
        action: int,
        succ_key: Hashable,
        cost: float,
        item_for: Callable[[int], Any],
    ) -> bool:
        """g-update of ``succ_key`` through ``parent``; True if OPEN changed.

        States already in BE or CLOSED are never updated.
        """
        if math.isinf(cost):
            return False
        reg = self.shared.registry
        rec = reg.lookup(succ_key)
        if rec is None:
            rec = reg.get_or_insert(succ_key, self.space.heuristic(succ_key))
        new_g = parent.g + cost
        if rec.status is Status.PARTIALLY_EXPANDED or rec.status is Status.CLOSED:
            if new_g < rec.g:
                self.stats.blocked_updates += 1
            return False
        if new_g < rec.g:
            rec.g = new_g
            rec.parent = (parent.index, action, cost)
            rec.status = Status.OPEN_DUMMY
            self.shared.push(item_for(rec.index), new_g + self.weight * rec.h, new_g)
            return True
        return False

    def close(self, rec: StateRecord) -> None:
        self.shared.mark_closed(rec.index)
        self.stats.states_expanded += 1
        if self.trace is not None:
            self.trace.closed_insertions[rec.key] += 1

    # -- edge-based expansion steps (lock held) ---------------------------------
    def expand_dummy_locked(self, rec: StateRecord) -> None:
        """Replace the dummy edge of ``rec`` by its real edges, all at the
        dummy's priority."""
        n = self.space.num_actions(rec.key)
        rec.n_actions = n
        self.stats.dummy_expansions += 1
        f = rec.g + self.weight * rec.h
        push = self.shared.push
        for a in range(n):
            push(Edge(rec.index, a), f, rec.g)
        if n == 0:
            self.close(rec)

    def finish_real_edge_locked(
        self, rec: StateRecord, action: int, succ: Hashable, cost: float
    ) -> bool:
        """Apply an evaluated real edge; True if OPEN or BE changed."""
        changed = self.relax(rec, action, succ, cost, lambda i: Edge(i, DUMMY))
        rec.n_successors_generated += 1
        if rec.n_successors_generated == rec.n_actions:
            self.close(rec)
            changed = True
        return changed

    # -- results --------------------------------------------------------------
    def finish(self, outcome: Outcome, goal_index: Optional[int] = None) -> SearchResult:
        st = self.stats
        st.wall_time = time.perf_counter() - self.t0
        st.max_open_size = max(st.max_open_size, self.shared.max_open_size)
        if outcome is not Outcome.SOLVED:
            return SearchResult.unsolved(outcome, st, self.trace)
        reg = self.shared.registry
        path = backtrack(goal_index, reg)
        goal = reg[goal_index]
        return SearchResult(outcome, path, goal.g, st, self.trace, goal.key)
