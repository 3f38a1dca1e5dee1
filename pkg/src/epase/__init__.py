"""Edge-parallel heuristic search.

Serial A*/weighted A*, edge-based eA*, PwA*, the state-parallel wPA*SE
baseline and the edge-parallel ePA*SE planner share one interface::

    from epase import PlannerConfig, Algorithm, plan
    from epase.domains import random_grid

    problem = random_grid(seed=1)
    result = plan(problem.space, problem.start,
                  PlannerConfig(Algorithm.EPASE, weight=5, epsilon=5, num_threads=8))
"""
from .core import DUMMY, Edge, OpenList, SearchConsistencyError, SharedSearchState, Status
from .independence import IndependenceParams, edge_safe_to_expand, state_independent
from .oracle import OracleResult, oracle_shortest_paths
from .planners import (
    Algorithm,
    Outcome,
    PlannerConfig,
    RunStats,
    SearchResult,
    Step,
    ThreadMgt,
    backtrack,
    plan,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "DUMMY",
    "Edge",
    "IndependenceParams",
    "OpenList",
    "OracleResult",
    "Outcome",
    "PlannerConfig",
    "RunStats",
    "SearchConsistencyError",
    "SearchResult",
    "SharedSearchState",
    "Status",
    "Step",
    "ThreadMgt",
    "backtrack",
    "edge_safe_to_expand",
    "oracle_shortest_paths",
    "plan",
    "state_independent",
]
