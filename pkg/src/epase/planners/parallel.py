"""Parallel planners: ePA*SE (edge-parallel) and wPA*SE (state-parallel).

Both run the same driver.  With ``SPAWN_ON_DEMAND`` a coordinator thread
selects safe work under the lock and hands it to worker threads through
single-slot mailboxes, spawning a new worker only when every existing one
is busy.  With ``PREALLOCATED_POOL`` all ``num_threads`` workers start
immediately and each pulls work from OPEN itself, polling while nothing is
safe to expand.
"""
from __future__ import annotations

import logging
import queue
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Optional

from ..core import DUMMY, Edge, Status
from ..independence import IndependenceParams, select_safe_edge, select_safe_state
from .common import SearchContext
from .types import Outcome, PlannerConfig, SearchResult, ThreadMgt

log = logging.getLogger(__name__)


@dataclass(eq=False)
class _Worker:
    index: int
    mailbox: "queue.SimpleQueue[Any]" = field(default_factory=queue.SimpleQueue)
    thread: Optional[threading.Thread] = None


class _ParallelPlanner:
    name = "parallel"

    def __init__(self, space: Any, start: Hashable, config: PlannerConfig) -> None:
        self.space = space
        self.start = start
        self.config = config
        self.ctx = SearchContext(space, config)
        self.params = IndependenceParams(config.epsilon, config.weight, config.full_open_scan)
        self.error: Optional[BaseException] = None
        self.outcome: Optional[Outcome] = None
        self.goal_index: Optional[int] = None
        self._workers: list[_Worker] = []
        self._idle: list[_Worker] = []

    # hooks ----------------------------------------------------------------
    def seed(self) -> None:
        raise NotImplementedError

    def select_locked(self) -> Any:
        raise NotImplementedError

    def take_locked(self, item: Any) -> int:
        """Remove ``item`` from OPEN; return its source state index."""
        raise NotImplementedError

    def expand(self, item: Any, on_done: Callable[[], None]) -> None:
        """Expand ``item``; call ``on_done`` under the lock right before the
        final change notification."""
        raise NotImplementedError

    # driver -----------------------------------------------------------------
    def run(self) -> SearchResult:
        with self.ctx.shared.lock:
            self.seed()
            self.ctx.shared.track_open_size()
        if self.config.thread_mgt is ThreadMgt.PREALLOCATED_POOL:
            self._run_pull()
        else:
            self._run_push()
        self.ctx.stats.threads_spawned = len(self._workers)
        if self.error is not None:
            raise self.error
        assert self.outcome is not None
        return self.ctx.finish(self.outcome, self.goal_index)

    def _stop_locked(self, outcome: Optional[Outcome]) -> None:
        if self.outcome is None and outcome is not None:
            self.outcome = outcome
        self.ctx.shared.terminate = True
        self.ctx.shared.changed.notify_all()

    def _fail(self, exc: BaseException) -> None:
        with self.ctx.shared.lock:
            if self.error is None:
                self.error = exc
            self._stop_locked(None)

    def _check_goal_locked(self, item: Any) -> bool:
        s = self.take_locked(item)
        if self.space.is_goal(self.ctx.shared.record(s).key):
            self.goal_index = s
            self._stop_locked(Outcome.SOLVED)
            return True
        return False

    # spawn-on-demand: coordinator + mailboxes ---------------------------------
    def _spawn(self) -> _Worker:
        w = _Worker(len(self._workers))
        w.thread = threading.Thread(
            target=self._mailbox_worker, args=(w,), name=f"{self.name}-worker-{w.index}", daemon=True
        )
        self._workers.append(w)
        w.thread.start()
        return w

    def _mailbox_worker(self, w: _Worker) -> None:
        shared = self.ctx.shared
        while True:
            item = w.mailbox.get()
            if item is None:
                return
            released = []

            def on_done() -> None:
                # rejoin the idle list in the same critical section that
                # publishes the result, so the coordinator never sees the
                # result without also seeing this worker free
                self._idle.append(w)
                released.append(True)

            try:
                self.expand(item, on_done)
            except BaseException as exc:  # surfaced by the coordinator
                log.debug("worker %d failed", w.index, exc_info=True)
                self._fail(exc)
                return
            if not released:
                with shared.lock:
                    self._idle.append(w)
                    shared.changed.notify_all()

    def _run_push(self) -> None:
        ctx = self.ctx
        shared = ctx.shared
        cond = shared.changed
        limit = self.config.num_threads
        with cond:
            while True:
                if self.error is not None or shared.terminate:
                    break
                if ctx.timed_out():
                    self._stop_locked(Outcome.TIMEOUT)
                    break
                if shared.is_exhausted():
                    self._stop_locked(Outcome.NO_SOLUTION)
                    break
                if not self._idle and len(self._workers) >= limit:
                    cond.wait(max(ctx.remaining(), 0.0))
                    continue
                version = shared.version
                item = self.select_locked()
                if item is None:
                    if self.config.busy_wait:
                        cond.release()
                        try:
                            time.sleep(0)
                        finally:
                            cond.acquire()
                    else:
                        cond.wait_for(
                            lambda: shared.version != version or self.error is not None,
                            timeout=max(ctx.remaining(), 0.0),
                        )
                    continue
                if self._check_goal_locked(item):
                    break
                w = self._idle.pop() if self._idle else self._spawn()
                w.mailbox.put(item)
            shared.terminate = True
        for w in self._workers:
            w.mailbox.put(None)
        for w in self._workers:
            w.thread.join()

    # preallocated pool: every worker pulls from OPEN --------------------------
    def _run_pull(self) -> None:
        for i in range(self.config.num_threads):
            w = _Worker(i)
            w.thread = threading.Thread(
                target=self._pulling_worker, name=f"{self.name}-puller-{i}", daemon=True
            )
            self._workers.append(w)
        for w in self._workers:
            w.thread.start()
        for w in self._workers:
            w.thread.join()

    def _pulling_worker(self) -> None:
        ctx = self.ctx
        shared = ctx.shared
        while True:
            with shared.lock:
                if shared.terminate:
                    return
                if ctx.timed_out():
                    self._stop_locked(Outcome.TIMEOUT)
                    return
                if shared.is_exhausted():
                    self._stop_locked(Outcome.NO_SOLUTION)
                    return
                item = self.select_locked()
                if item is not None and self._check_goal_locked(item):
                    return
            if item is None:
                continue  # spin, as the original PA*SE threads do
            try:
                self.expand(item, _noop)
            except BaseException as exc:
                self._fail(exc)
                return


def _noop() -> None:
    pass


class EpasePlanner(_ParallelPlanner):
    """Edge-parallel search: workers evaluate single edges lock-free."""

    name = "epase"

    def seed(self) -> None:
        rec = self.ctx.seed(self.start)
        self.ctx.shared.push(Edge(rec.index, DUMMY), self.config.weight * rec.h, 0.0)

    def select_locked(self) -> Optional[Edge]:
        return select_safe_edge(self.ctx.shared, self.space.pairwise_heuristic, self.params)

    def take_locked(self, edge: Edge) -> int:
        shared = self.ctx.shared
        shared.open.remove(edge)
        rec = shared.record(edge.source)
        self.ctx.log_selection(rec, edge.action)
        if edge.action == DUMMY:
            # a dummy edge under expansion already makes its source partially expanded
            shared.mark_partially_expanded(edge.source)
        return edge.source

    def expand(self, edge: Edge, on_done: Callable[[], None]) -> None:
        epase_expand(edge, self.ctx, on_done)


def epase_expand(edge: Edge, ctx: SearchContext, on_done: Optional[Callable[[], None]] = None) -> None:
    """Expand one edge that has already been removed from OPEN."""
    shared = ctx.shared
    rec = shared.record(edge.source)
    if edge.action == DUMMY:
        with ctx.locked():
            if rec.status is Status.OPEN_DUMMY:
                shared.mark_partially_expanded(edge.source)
            ctx.expand_dummy_locked(rec)
            if on_done is not None:
                on_done()
            shared.notify_change()
        return
    succ, cost = ctx.evaluate(rec.key, edge.action)
    with ctx.locked():
        changed = ctx.finish_real_edge_locked(rec, edge.action, succ, cost)
        if on_done is not None:
            on_done()
            changed = True
        if changed:
            shared.notify_change()


class WpasePlanner(_ParallelPlanner):
    """State-parallel search: a worker evaluates all edges of one state."""

    name = "wpase"

    def seed(self) -> None:
        rec = self.ctx.seed(self.start)
        self.ctx.shared.push(rec.index, self.config.weight * rec.h, 0.0)

    def select_locked(self) -> Optional[int]:
        return select_safe_state(self.ctx.shared, self.space.pairwise_heuristic, self.params)

    def take_locked(self, s: int) -> int:
        shared = self.ctx.shared
        shared.open.remove(s)
        rec = shared.record(s)
        self.ctx.log_selection(rec, DUMMY)
        shared.mark_partially_expanded(s)
        return s

    def expand(self, s: int, on_done: Callable[[], None]) -> None:
        ctx = self.ctx
        shared = ctx.shared
        rec = shared.record(s)
        key = rec.key
        n = self.space.num_actions(key)
        with ctx.locked():
            rec.n_actions = n
        for a in range(n):
            if shared.terminate:
                return
            succ, cost = ctx.evaluate(key, a)
            with ctx.locked():
                changed = ctx.relax(rec, a, succ, cost, lambda i: i)
                rec.n_successors_generated += 1
                if changed:
                    shared.notify_change()
        with ctx.locked():
            ctx.close(rec)
            on_done()
            shared.notify_change()


def epase_plan(space: Any, start: Hashable, config: PlannerConfig) -> SearchResult:
    return EpasePlanner(space, start, config).run()


def wpase_plan(space: Any, start: Hashable, config: PlannerConfig) -> SearchResult:
    return WpasePlanner(space, start, config).run()
