"""The planner family behind :func:`plan`."""
from __future__ import annotations

from typing import Any, Hashable

from .common import SearchContext, backtrack
from .parallel import EpasePlanner, WpasePlanner, epase_expand, epase_plan, wpase_plan
from .serial import eastar_plan, wastar_plan
from .types import (
    Algorithm,
    Outcome,
    PlannerConfig,
    RunStats,
    SearchResult,
    SearchTrace,
    Step,
    ThreadMgt,
)


def plan(space: Any, start: Hashable, config: PlannerConfig) -> SearchResult:
    """Run the configured algorithm from ``start`` until a goal state is reached."""
    algo = config.algorithm
    if algo in (Algorithm.ASTAR, Algorithm.WASTAR):
        return wastar_plan(space, start, config)
    if algo is Algorithm.PWASTAR:
        return wastar_plan(space, start, config, parallel=True)
    if algo is Algorithm.EASTAR:
        return eastar_plan(space, start, config)
    if algo is Algorithm.WPASE:
        return wpase_plan(space, start, config)
    if algo is Algorithm.EPASE:
        return epase_plan(space, start, config)
    raise ValueError(f"unknown algorithm {algo!r}")


__all__ = [
    "Algorithm",
    "EpasePlanner",
    "Outcome",
    "PlannerConfig",
    "RunStats",
    "SearchContext",
    "SearchResult",
    "SearchTrace",
    "Step",
    "ThreadMgt",
    "WpasePlanner",
    "backtrack",
    "eastar_plan",
    "epase_expand",
    "epase_plan",
    "plan",
    "wastar_plan",
    "wpase_plan",
]
