from __future__ import annotations

import enum
import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, NamedTuple, Optional


class Algorithm(str, enum.Enum):
    ASTAR = "ASTAR"
    WASTAR = "WASTAR"
    EASTAR = "EASTAR"
    PWASTAR = "PWASTAR"
    WPASE = "WPASE"
    EPASE = "EPASE"

    @property
    def serial(self) -> bool:
        return self in (Algorithm.ASTAR, Algorithm.WASTAR, Algorithm.EASTAR)


class ThreadMgt(str, enum.Enum):
    SPAWN_ON_DEMAND = "SPAWN_ON_DEMAND"
    PREALLOCATED_POOL = "PREALLOCATED_POOL"


class Outcome(str, enum.Enum):
    SOLVED = "SOLVED"
    NO_SOLUTION = "NO_SOLUTION"
    TIMEOUT = "TIMEOUT"


@dataclass(frozen=True)
class PlannerConfig:
    algorithm: Algorithm = Algorithm.EPASE
    weight: float = 1.0
    epsilon: float = 1.0
    num_threads: int = 1
    thread_mgt: ThreadMgt = ThreadMgt.SPAWN_ON_DEMAND
    time_limit: float = 60.0
    rng_seed: int = 0
    # None: scan all of OPEN only when weight > epsilon
    full_open_scan: Optional[bool] = None
    # record selections and per-edge evaluation counts; duplicates abort
    debug: bool = False
    # coordinator polls instead of blocking on the change notification
    busy_wait: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "thread_mgt", ThreadMgt(self.thread_mgt))
        if not self.weight >= 1 or not self.epsilon >= 1:
            raise ValueError("weight and epsilon must both be >= 1")
        if self.num_threads < 1:
            raise ValueError("num_threads must be positive")
        if self.algorithm is Algorithm.ASTAR and self.weight != 1:
            raise ValueError("ASTAR is unweighted; use WASTAR")

    @property
    def effective_threads(self) -> int:
        return 1 if self.algorithm.serial else self.num_threads


class Step(NamedTuple):
    state: Hashable
    action: int
    successor: Hashable
    cost: float


@dataclass
class RunStats:
    states_expanded: int = 0
    edges_evaluated: int = 0
    dummy_expansions: int = 0
    max_open_size: int = 0
    threads_spawned: int = 0
    wall_time: float = 0.0
    lock_wait_time: float = 0.0
    # g-improvements refused because the successor was already in BE/CLOSED
    blocked_updates: int = 0

    def counts(self) -> tuple[int, ...]:
        """Everything except timings; identical across repeated serial runs."""
        return (
            self.states_expanded,
            self.edges_evaluated,
            self.dummy_expansions,
            self.max_open_size,
            self.threads_spawned,
            self.blocked_updates,
        )


@dataclass
class SearchTrace:
    """Debug-mode log of one run."""

    # (state key, g at selection time, action or DUMMY) per selected item
    selections: list[tuple[Hashable, float, int]] = field(default_factory=list)
    edge_evaluations: Counter = field(default_factory=Counter)
    closed_insertions: Counter = field(default_factory=Counter)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def duplicate_evaluations(self) -> dict:
        return {k: n for k, n in self.edge_evaluations.items() if n > 1}

    def duplicate_closings(self) -> dict:
        return {k: n for k, n in self.closed_insertions.items() if n > 1}


@dataclass
class SearchResult:
    outcome: Outcome
    path: list[Step]
    cost: float
    stats: RunStats
    trace: Optional[SearchTrace] = None
    goal: Optional[Hashable] = None

    @property
    def solved(self) -> bool:
        return self.outcome is Outcome.SOLVED

    @classmethod
    def unsolved(cls, outcome: Outcome, stats: RunStats, trace: Optional[SearchTrace] = None) -> "SearchResult":
        return cls(outcome, [], math.inf, stats, trace)
