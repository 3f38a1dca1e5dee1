"""Occupancy-grid navigation with motion primitives.

States are ``(x, y)`` cells, or ``(x, y, heading)`` when the grid has more
than one heading bin.  Every primitive moves the robot by a fixed offset;
the swept segment is sampled at quarter-cell resolution and any occupied
or out-of-bounds cell touched by a sample makes the edge invalid
(infinite cost).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .delay import DelayModel

INF = math.inf

SAMPLE_STEP = 0.25


@dataclass(frozen=True)
class Primitive:
    dx: int
    dy: int
    dtheta: int = 0
    cost: float = 1.0

    @property
    def displacement(self) -> float:
        return math.hypot(self.dx, self.dy)


def four_connected() -> tuple[Primitive, ...]:
    return tuple(Primitive(dx, dy) for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)))


def eight_connected(diagonal_cost: float = 1.5) -> tuple[Primitive, ...]:
    # 1.5 rather than sqrt(2): admissible for Euclidean h and exact in binary
    diag = tuple(
        Primitive(dx, dy, 0, diagonal_cost) for dx, dy in ((1, 1), (-1, 1), (-1, -1), (1, -1))
    )
    return four_connected() + diag


def lattice18(turn_cost: float = 0.5) -> tuple[Primitive, ...]:
    """18 primitives, each changing exactly one of x, y, heading by 1, 2 or 3.

    Translations cost their length; turns cost ``turn_cost`` per heading bin.
    """
    prims = []
    for step in (1, 2, 3):
        for sign in (1, -1):
            d = sign * step
            prims.append(Primitive(d, 0, 0, float(step)))
            prims.append(Primitive(0, d, 0, float(step)))
            prims.append(Primitive(0, 0, d, turn_cost * step))
    return tuple(prims)


PRESETS = {
    "four": four_connected,
    "eight": eight_connected,
    "lattice18": lattice18,
}


@dataclass(frozen=True)
class GoalRegion:
    """Axis-aligned cell rectangle (inclusive), optionally widened by a radius.

    With ``radius > 0`` the region is every cell within that distance of the
    rectangle under the domain metric.
    """

    x0: int
    y0: int
    x1: int
    y1: int
    radius: float = 0.0

    @classmethod
    def cell(cls, x: int, y: int, radius: float = 0.0) -> "GoalRegion":
        return cls(x, y, x, y, radius)

    def offsets(self, x: float, y: float) -> tuple[float, float]:
        dx = max(self.x0 - x, 0.0, x - self.x1)
        dy = max(self.y0 - y, 0.0, y - self.y1)
        return dx, dy


def _metric(name: str):
    if name == "euclidean":
        return math.hypot
    if name == "manhattan":
        return lambda dx, dy: abs(dx) + abs(dy)
    raise ValueError(f"unknown heuristic metric {name!r}")


@dataclass(frozen=True)
class GridConfig:
    occupancy: np.ndarray  # bool, shape (height, width), True = blocked
    goal: GoalRegion
    primitives: tuple[Primitive, ...] = field(default_factory=eight_connected)
    num_headings: int = 1
    delay: DelayModel = field(default_factory=DelayModel)
    metric: str = "euclidean"

    @property
    def height(self) -> int:
        return int(self.occupancy.shape[0])

    @property
    def width(self) -> int:
        return int(self.occupancy.shape[1])


def _swept_cells(p: Primitive) -> tuple[tuple[int, int], ...]:
    """Cell offsets touched by the segment from (0,0) to (dx,dy).

    A sample lying exactly on a cell border touches both neighbours, which
    rules out cutting corners between two blocked cells.
    """
    length = p.displacement
    n = max(1, math.ceil(length / SAMPLE_STEP))
    cells: dict[tuple[int, int], None] = {}
    for i in range(n + 1):
        t = i / n
        px, py = t * p.dx, t * p.dy
        xs = {math.floor(px + 0.5 - 1e-9), math.floor(px + 0.5 + 1e-9)}
        ys = {math.floor(py + 0.5 - 1e-9), math.floor(py + 0.5 + 1e-9)}
        for cx in sorted(xs):
            for cy in sorted(ys):
                cells[(cx, cy)] = None
    return tuple(cells)


class GridDomain:
    """A :class:`~epase.domains.base.SearchSpace` over an occupancy grid."""

    def __init__(self, config: GridConfig) -> None:
        occ = np.asarray(config.occupancy, dtype=bool)
        if occ.ndim != 2:
            raise ValueError("occupancy must be a 2-D array")
        if config.num_headings < 1:
            raise ValueError("num_headings must be >= 1")
        dist = _metric(config.metric)
        for p in config.primitives:
            if p.cost < dist(p.dx, p.dy) - 1e-12:
                raise ValueError(f"primitive {p} is cheaper than its displacement")
            if p.cost < 0:
                raise ValueError(f"primitive {p} has negative cost")
        self.config = config
        self._occ = occ
        self._blocked = occ.tolist()
        self._h, self._w = occ.shape
        self._prims = config.primitives
        self._swept = [_swept_cells(p) for p in self._prims]
        self._dist = dist
        self._k = config.num_headings
        self._delay = config.delay

    # -- construction helpers -------------------------------------------
    def without_delay(self) -> "GridDomain":
        return GridDomain(replace(self.config, delay=DelayModel()))

    def with_delay(self, delay: DelayModel) -> "GridDomain":
        return GridDomain(replace(self.config, delay=delay))

    @property
    def delay(self) -> DelayModel:
        return self._delay

    # -- SearchSpace ----------------------------------------------------
    def state(self, x: int, y: int, theta: int = 0):
        return (x, y) if self._k == 1 else (x, y, theta)

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self._w and 0 <= y < self._h

    def is_free(self, x: int, y: int) -> bool:
        return self.in_bounds(x, y) and not self._blocked[y][x]

    def num_actions(self, state) -> int:
        return len(self._prims)

    def evaluate(self, state, action: int):
        p = self._prims[action]
        x, y = state[0], state[1]
        nx, ny = x + p.dx, y + p.dy
        if self._k == 1:
            succ = (nx, ny)
        else:
            succ = (nx, ny, (state[2] + p.dtheta) % self._k)
        cost = p.cost
        blocked = self._blocked
        w, h = self._w, self._h
        for ox, oy in self._swept[action]:
            cx, cy = x + ox, y + oy
            if not (0 <= cx < w and 0 <= cy < h) or blocked[cy][cx]:
                cost = INF
                break
        if self._delay.kind != "none":
            self._delay(state, action)
        if cost == INF:
            return state, INF
        return succ, cost

    def heuristic(self, state) -> float:
        g = self.config.goal
        dx, dy = g.offsets(state[0], state[1])
        return max(0.0, self._dist(dx, dy) - g.radius)

    def pairwise_heuristic(self, a, b) -> float:
        return self._dist(a[0] - b[0], a[1] - b[1])

    def is_goal(self, state) -> bool:
        g = self.config.goal
        dx, dy = g.offsets(state[0], state[1])
        if g.radius == 0:
            return dx == 0 and dy == 0
        return self._dist(dx, dy) <= g.radius

    # -- misc -------------------------------------------------------------
    def free_cells(self) -> list[tuple[int, int]]:
        ys, xs = np.nonzero(~self._occ)
        return list(zip(xs.tolist(), ys.tolist()))

    def __repr__(self) -> str:
        return (
            f"GridDomain({self._w}x{self._h}, headings={self._k}, "
            f"primitives={len(self._prims)}, goal={self.config.goal})"
        )


def make_grid(
    occupancy: np.ndarray,
    goal: GoalRegion | tuple[int, int],
    primitives: str | Sequence[Primitive] = "eight",
    num_headings: Optional[int] = None,
    delay: Optional[DelayModel] = None,
    metric: str = "euclidean",
) -> GridDomain:
    """Convenience constructor accepting preset names and bare goal cells."""
    if isinstance(primitives, str):
        prims = PRESETS[primitives]()
        if num_headings is None:
            num_headings = 8 if primitives == "lattice18" else 1
    else:
        prims = tuple(primitives)
    if not isinstance(goal, GoalRegion):
        goal = GoalRegion.cell(*goal)
    return GridDomain(
        GridConfig(
            occupancy=np.asarray(occupancy, dtype=bool),
            goal=goal,
            primitives=prims,
            num_headings=num_headings or 1,
            delay=delay or DelayModel(),
            metric=metric,
        )
    )
