"""Ground-truth shortest paths by plain uniform-cost search.

Deliberately naive and self-contained: it materialises the reachable graph
with its own queue and bookkeeping and shares nothing with the planners it
is used to check.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Optional


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass
class OracleResult:
    optimal_cost: Optional[float]  # None when no goal is reachable
    optimal_g: dict[Hashable, float] = field(default_factory=dict)
    goal_state: Optional[Hashable] = None

    @property
    def reachable(self) -> bool:
        return self.optimal_cost is not None


def _undelayed(space: Any) -> Any:
    strip = getattr(space, "without_delay", None)
    return strip() if strip is not None else space


def oracle_shortest_paths(
    space: Any,
    start: Hashable,
    exhaustive: bool = True,
    max_states: int = 10**6,
) -> OracleResult:
    """Settle every reachable state (or stop at the first goal).

    Raises :class:`OracleBudgetExceeded` rather than returning a partial
    answer when more than ``max_states`` states are discovered.
    """
    space = _undelayed(space)
    dist: dict[Hashable, float] = {start: 0.0}
    settled: dict[Hashable, float] = {}
    tie = itertools.count()
    heap = [(0.0, next(tie), start)]
    best_goal: Optional[Hashable] = None
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled[u] = d
        if best_goal is None and space.is_goal(u):
            best_goal = u
            if not exhaustive:
                break
        for a in range(space.num_actions(u)):
            v, c = space.evaluate(u, a)
            if math.isinf(c) or v in settled:
                continue
            nd = d + c
            if nd < dist.get(v, math.inf):
                if v not in dist and len(dist) >= max_states:
                    raise OracleBudgetExceeded(f"more than {max_states} states")
                dist[v] = nd
                heapq.heappush(heap, (nd, next(tie), v))
    if best_goal is None:
        return OracleResult(None, settled, None)
    return OracleResult(settled[best_goal], settled, best_goal)


def reachable(space: Any, start: Hashable, max_states: int = 10**6) -> bool:
    return oracle_shortest_paths(space, start, exhaustive=False, max_states=max_states).reachable


def bellman_violations(space: Any, result: OracleResult, tol: float = 0.0) -> list[tuple]:
    """Edges ``u -> v`` between settled states with ``g*(v) > g*(u) + c + tol``,
    plus settled states (other than the start) whose g* is not attained by
    any predecessor.
    """
    space = _undelayed(space)
    g = result.optimal_g
    bad = []
    attained = {s for s, v in g.items() if v == 0.0}
    for u, gu in g.items():
        for a in range(space.num_actions(u)):
            v, c = space.evaluate(u, a)
            if math.isinf(c) or v not in g:
                continue
            if g[v] > gu + c + tol:
                bad.append(("relaxable", u, v))
            if g[v] == gu + c:
                attained.add(v)
    bad.extend(("unattained", s, None) for s in g if s not in attained)
    return bad
