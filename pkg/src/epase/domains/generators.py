"""Seeded random problem instances."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Any, Hashable, Optional

import numpy as np

from ..oracle import reachable
from .delay import DelayModel
from .graph import ExplicitGraph
from .grid import GridDomain, make_grid


class GenerationError(RuntimeError):
    pass


@dataclass
class Problem:
    space: Any
    start: Hashable
    seed: int

    def fingerprint(self) -> str:
        """Stable digest identifying the instance (used for parity checks)."""
        sp = self.space
        h = hashlib.sha1()
        h.update(repr(self.start).encode())
        if isinstance(sp, GridDomain):
            cfg = sp.config
            h.update(np.packbits(cfg.occupancy).tobytes())
            h.update(repr((cfg.goal, cfg.primitives, cfg.num_headings, cfg.metric)).encode())
        elif isinstance(sp, ExplicitGraph):
            h.update(repr((sp.adjacency, sorted(sp.goals), sp.heuristic_table, sp.coords)).encode())
        else:
            h.update(repr(sp).encode())
        return h.hexdigest()


def random_occupancy(rng: np.random.Generator, width: int, height: int, density: float) -> np.ndarray:
    if not 0.0 <= density < 1.0:
        raise ValueError(f"obstacle density must be in [0, 1), got {density}")
    return rng.random((height, width)) < density


def random_grid(
    seed: int,
    width: int = 50,
    height: int = 50,
    obstacle_density: float = 0.2,
    primitives: str = "eight",
    num_headings: Optional[int] = None,
    delay: Optional[DelayModel] = None,
    metric: str = "euclidean",
    solvable: bool = True,
    min_distance: float = 0.0,
    occupancy: Optional[np.ndarray] = None,
    max_tries: int = 200,
) -> Problem:
    """Random occupancy grid with start and goal on free cells.

    With ``solvable=True`` start/goal pairs are rejection-sampled until the
    oracle confirms the goal is reachable; ``min_distance`` rejects pairs
    closer than that (Euclidean, in cells).  Passing ``occupancy`` keeps
    that fixed map and only samples start and goal.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        if occupancy is None:
            occ = random_occupancy(rng, width, height, obstacle_density)
        else:
            occ = np.asarray(occupancy, dtype=bool)
        free = np.argwhere(~occ)
        if len(free) < 2:
            continue
        for _ in range(20):
            i, j = rng.choice(len(free), size=2, replace=False)
            (sy, sx), (gy, gx) = free[i], free[j]
            if math.hypot(sx - gx, sy - gy) < min_distance:
                continue
            space = make_grid(
                occ, (int(gx), int(gy)), primitives, num_headings,
                delay=delay, metric=metric,
            )
            start = space.state(int(sx), int(sy), 0)
            if not solvable or reachable(space, start):
                return Problem(space, start, seed)
    raise GenerationError(f"no instance found for seed {seed} after {max_tries} tries")


def walled_goal_grid(
    seed: int,
    width: int = 50,
    height: int = 50,
    obstacle_density: float = 0.1,
    primitives: str = "eight",
    delay: Optional[DelayModel] = None,
) -> Problem:
    """Random grid whose goal cell sits inside a closed ring of obstacles."""
    rng = np.random.default_rng(seed)
    occ = random_occupancy(rng, width, height, obstacle_density)
    gx = int(rng.integers(2, width - 2))
    gy = int(rng.integers(2, height - 2))
    occ[gy - 2:gy + 3, gx - 2:gx + 3] = True
    occ[gy - 1:gy + 2, gx - 1:gx + 2] = False
    occ[gy, gx] = False
    free = np.argwhere(~occ)
    inside = {(y, x) for y in range(gy - 1, gy + 2) for x in range(gx - 1, gx + 2)}
    candidates = [tuple(p) for p in free if tuple(p) not in inside]
    if not candidates:
        raise GenerationError(f"no free start cell for seed {seed}")
    sy, sx = candidates[int(rng.integers(len(candidates)))]
    space = make_grid(occ, (gx, gy), primitives, delay=delay)
    return Problem(space, space.state(int(sx), int(sy), 0), seed)


def random_explicit_graph(
    seed: int,
    n_states: int = 200,
    avg_degree: float = 4.0,
    cost_range: tuple[int, int] = (0, 5),
    solvable: bool = True,
    with_heuristic: bool = True,
    max_tries: int = 200,
) -> Problem:
    """Random geometric digraph with integer edge costs.

    States are points in a 100x100 square; each edge ``u -> v`` costs
    ``ceil(|uv|) + k`` with ``k`` drawn from ``cost_range``, so Euclidean
    distance is an admissible pairwise heuristic and the distance to the
    goal point a consistent unary one.
    """
    rng = np.random.default_rng(seed)
    lo, hi = cost_range
    for _ in range(max_tries):
        pts = rng.random((n_states, 2)) * 100.0
        k = max(1, int(round(avg_degree)))
        edges = []
        d = np.hypot(pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1])
        for u in range(n_states):
            order = np.argsort(d[u])
            near = order[1:1 + 2 * k]
            chosen = rng.choice(near, size=min(k, len(near)), replace=False)
            for v in sorted(int(v) for v in chosen):
                edges.append((u, v, math.ceil(d[u, v]) + int(rng.integers(lo, hi + 1))))
        start, goal = (int(v) for v in rng.choice(n_states, size=2, replace=False))
        h = d[:, goal].tolist() if with_heuristic else None
        graph = ExplicitGraph.from_edges(
            n_states, edges, goals=[goal], heuristic=h, coords=[tuple(p) for p in pts.tolist()]
        )
        if not solvable or reachable(graph, start):
            return Problem(graph, start, seed)
    raise GenerationError(f"no solvable graph for seed {seed} after {max_tries} tries")
