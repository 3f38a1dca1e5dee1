"""Serial planners (A*, weighted A*, edge-based eA*) and PwA*.

PwA* shares the weighted A* loop; only the evaluation of a state's
outgoing edges is fanned out over a thread pool, so its expansion order
and result are identical to weighted A*.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Hashable

from ..core import DUMMY, Edge
from .common import SearchContext
from .types import Outcome, PlannerConfig, SearchResult


def wastar_plan(space: Any, start: Hashable, config: PlannerConfig, parallel: bool = False) -> SearchResult:
    ctx = SearchContext(space, config)
    shared = ctx.shared
    records = shared.registry.records
    w = config.weight

    rec0 = ctx.seed(start)
    shared.push(rec0.index, w * rec0.h, 0.0)

    pool = None
    spawned = [0]
    if parallel and config.num_threads > 1:
        spawn_lock = threading.Lock()

        def _count_spawn() -> None:
            with spawn_lock:
                spawned[0] += 1

        pool = ThreadPoolExecutor(
            max_workers=config.num_threads,
            thread_name_prefix="pwastar",
            initializer=_count_spawn,
        )
    try:
        while shared.open:
            if ctx.timed_out():
                return ctx.finish(Outcome.TIMEOUT)
            s = shared.open.pop()
            rec = records[s]
            ctx.log_selection(rec, DUMMY)
            if space.is_goal(rec.key):
                return ctx.finish(Outcome.SOLVED, s)
            shared.mark_partially_expanded(s)
            n = space.num_actions(rec.key)
            rec.n_actions = n
            key = rec.key
            if pool is None:
                results = [ctx.evaluate(key, a) for a in range(n)]
            else:
                results = list(pool.map(lambda a: ctx.evaluate(key, a), range(n)))
            for a, (succ, cost) in enumerate(results):
                ctx.relax(rec, a, succ, cost, lambda i: i)
                rec.n_successors_generated += 1
            ctx.close(rec)
            shared.track_open_size()
        return ctx.finish(Outcome.NO_SOLUTION)
    finally:
        if pool is not None:
            pool.shutdown(wait=True)
        ctx.stats.threads_spawned = spawned[0] if pool is not None else 1


def eastar_plan(space: Any, start: Hashable, config: PlannerConfig) -> SearchResult:
    """Edge-based (weighted) A*: OPEN holds edges, each expansion handles one."""
    ctx = SearchContext(space, config)
    ctx.stats.threads_spawned = 1
    shared = ctx.shared
    records = shared.registry.records
    w = config.weight

    rec0 = ctx.seed(start)
    shared.push(Edge(rec0.index, DUMMY), w * rec0.h, 0.0)
    while shared.open:
        if ctx.timed_out():
            return ctx.finish(Outcome.TIMEOUT)
        edge = shared.open.pop()
        rec = records[edge.source]
        ctx.log_selection(rec, edge.action)
        if space.is_goal(rec.key):
            return ctx.finish(Outcome.SOLVED, edge.source)
        if edge.action == DUMMY:
            shared.mark_partially_expanded(edge.source)
            ctx.expand_dummy_locked(rec)
        else:
            succ, cost = ctx.evaluate(rec.key, edge.action)
            ctx.finish_real_edge_locked(rec, edge.action, succ, cost)
        shared.track_open_size()
    return ctx.finish(Outcome.NO_SOLUTION)
