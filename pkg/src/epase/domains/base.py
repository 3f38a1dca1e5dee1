from __future__ import annotations

from typing import Hashable, Protocol, runtime_checkable


@runtime_checkable
class SearchSpace(Protocol):
    """What a planner needs from a domain.

    ``evaluate`` may be slow and is called concurrently from worker threads;
    it must be deterministic and side-effect free.  ``pairwise_heuristic`` is
    called while the planner holds its lock, so it has to be cheap.  It must
    satisfy ``h(s, s) == 0``, the triangle inequality and never exceed the
    true cost between the two states.
    """

    def num_actions(self, state: Hashable) -> int: ...

    def evaluate(self, state: Hashable, action: int) -> tuple[Hashable, float]: ...

    def heuristic(self, state: Hashable) -> float: ...

    def pairwise_heuristic(self, a: Hashable, b: Hashable) -> float: ...

    def is_goal(self, state: Hashable) -> bool: ...
