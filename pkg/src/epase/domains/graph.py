"""Explicit weighted digraphs, mostly as a substrate for oracle tests."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .delay import DelayModel

INF = math.inf


@dataclass(frozen=True)
class ExplicitGraph:
    """States are ``0 .. n-1``; action ``i`` of state ``s`` is ``adjacency[s][i]``.

    ``heuristic_table`` defaults to all zeros.  With ``coords`` the pairwise
    heuristic is the Euclidean distance between the two points, which is
    admissible as long as every edge costs at least its straight-line length
    (the random generator guarantees this); without coords it is zero.
    """

    adjacency: tuple[tuple[tuple[int, float], ...], ...]
    goals: frozenset[int]
    heuristic_table: Optional[tuple[float, ...]] = None
    coords: Optional[tuple[tuple[float, float], ...]] = None
    delay: DelayModel = field(default_factory=DelayModel)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Sequence[tuple[int, int, float]],
        goals: Sequence[int],
        heuristic: Optional[Sequence[float]] = None,
        coords: Optional[Sequence[tuple[float, float]]] = None,
    ) -> "ExplicitGraph":
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, c in edges:
            if c < 0:
                raise ValueError(f"negative cost on edge {u}->{v}")
            adj[u].append((v, float(c)))
        return cls(
            adjacency=tuple(tuple(a) for a in adj),
            goals=frozenset(goals),
            heuristic_table=None if heuristic is None else tuple(float(h) for h in heuristic),
            coords=None if coords is None else tuple(tuple(map(float, p)) for p in coords),
        )

    @property
    def num_states(self) -> int:
        return len(self.adjacency)

    def without_delay(self) -> "ExplicitGraph":
        return replace(self, delay=DelayModel())

    def num_actions(self, state: int) -> int:
        return len(self.adjacency[state])

    def evaluate(self, state: int, action: int) -> tuple[int, float]:
        succ, cost = self.adjacency[state][action]
        if self.delay.kind != "none":
            self.delay(state, action)
        return succ, cost

    def heuristic(self, state: int) -> float:
        if self.heuristic_table is None:
            return 0.0
        return self.heuristic_table[state]

    def pairwise_heuristic(self, a: int, b: int) -> float:
        if self.coords is None:
            return 0.0
        (ax, ay), (bx, by) = self.coords[a], self.coords[b]
        return math.hypot(ax - bx, ay - by)

    def is_goal(self, state: int) -> bool:
        return state in self.goals


def walkthrough_graph() -> tuple[ExplicitGraph, int, dict[tuple[int, int], str]]:
    """Seven-state graph where weighted edge-based search skips three edges.

    ``s0`` has edges to ``s1, s2, s3``; ``s1`` to ``s4`` (the goal) and
    ``s5``.  With weight 2 the heuristic pulls the search straight through
    ``s0 -> s1 -> s4``: the edge-based planner evaluates only those two
    edges, while state-based weighted A* evaluates every outgoing edge of
    ``s0`` and ``s1``.  Returns ``(graph, start, labels)`` where ``labels``
    maps ``(state, action)`` to names like ``"e0->2"``.
    """
    edges = [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (1, 5, 1), (4, 6, 1)]
    h = [2, 1, 2, 2, 0, 1, 0]
    g = ExplicitGraph.from_edges(7, edges, goals=[4], heuristic=h)
    labels = {}
    for s, succs in enumerate(g.adjacency):
        for a, (t, _c) in enumerate(succs):
            labels[(s, a)] = f"e{s}->{t}"
    return g, 0, labels
