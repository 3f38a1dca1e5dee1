"""Safety checks deciding which OPEN item may be expanded out of order.

A state ``s`` is independent of ``s'`` when expanding ``s'`` cannot lower
``g(s)`` by more than the allowed slack::

    g(s) - g(s') <= epsilon * h(s', s)

An edge (or, for the state-parallel baseline, a state) is safe once its
source is independent of every BE state and of the sources of all OPEN
items that precede it in priority order (all OPEN items when the weight
exceeds epsilon).  All functions here must be called with the shared lock
held.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from .core import Edge, SharedSearchState


@dataclass(frozen=True)
class IndependenceParams:
    epsilon: float = 1.0
    weight: float = 1.0
    full_open_scan: Optional[bool] = None

    def __post_init__(self) -> None:
        if not self.epsilon >= 1:
            raise ValueError(f"epsilon must be >= 1, got {self.epsilon}")
        if not self.weight >= 1:
            raise ValueError(f"weight must be >= 1, got {self.weight}")
        if self.full_open_scan is None:
            object.__setattr__(self, "full_open_scan", self.weight > self.epsilon)
        elif self.weight > self.epsilon and not self.full_open_scan:
            raise ValueError("weight > epsilon requires full_open_scan=True")


def state_independent(g_s: float, g_s_prime: float, h_pair: float, epsilon: float) -> bool:
    """True when ``s`` (g-value ``g_s``) is independent of ``s'``."""
    if math.isinf(epsilon):
        return True
    return g_s - g_s_prime <= epsilon * h_pair


def first_safe(
    shared: SharedSearchState,
    pairwise: Callable[[Any, Any], float],
    params: IndependenceParams,
    source_of: Callable[[Any], int],
) -> Optional[Any]:
    """Return the smallest-priority OPEN item whose source passes the checks.

    Sources are deduplicated: each distinct preceding source is compared
    once per candidate, and a source that failed stays failed for the rest
    of the scan (later candidates face a superset of constraints).
    """
    if not shared.open:
        return None
    records = shared.registry.records
    eps = params.epsilon
    if math.isinf(eps):
        return shared.open.peek()

    all_sources: Iterable[int] = ()
    if params.full_open_scan:
        all_sources = list(dict.fromkeys(source_of(it) for it in shared.open))
    be = list(shared.be)

    prefix: list[int] = []
    seen: set[int] = set()
    failed: set[int] = set()
    for item, _key in shared.open.scan():
        s = source_of(item)
        if s not in failed:
            rec = records[s]
            g_s = rec.g
            ok = True
            for other in be:
                if other != s:
                    o = records[other]
                    if g_s - o.g > eps * pairwise(o.key, rec.key):
                        ok = False
                        break
            if ok:
                for other in (all_sources if params.full_open_scan else prefix):
                    if other != s:
                        o = records[other]
                        if g_s - o.g > eps * pairwise(o.key, rec.key):
                            ok = False
                            break
            if ok:
                return item
            failed.add(s)
        if s not in seen:
            seen.add(s)
            prefix.append(s)
    return None


def edge_safe_to_expand(
    candidate: Edge,
    shared: SharedSearchState,
    pairwise: Callable[[Any, Any], float],
    params: IndependenceParams,
) -> bool:
    """Direct (unoptimised) check of one OPEN edge against OPEN and BE."""
    records = shared.registry.records
    cand = records[candidate.source]
    cand_key = shared.open.key_of(candidate)
    checked: set[int] = {candidate.source}
    for item, key in shared.open.scan():
        if not params.full_open_scan and key >= cand_key:
            break
        s = item.source
        if s in checked:
            continue
        checked.add(s)
        o = records[s]
        if not state_independent(cand.g, o.g, pairwise(o.key, cand.key), params.epsilon):
            return False
    for s in shared.be:
        if s == candidate.source:
            continue
        o = records[s]
        if not state_independent(cand.g, o.g, pairwise(o.key, cand.key), params.epsilon):
            return False
    return True


def select_safe_edge(
    shared: SharedSearchState,
    pairwise: Callable[[Any, Any], float],
    params: IndependenceParams,
) -> Optional[Edge]:
    return first_safe(shared, pairwise, params, lambda e: e.source)


def select_safe_state(
    shared: SharedSearchState,
    pairwise: Callable[[Any, Any], float],
    params: IndependenceParams,
) -> Optional[int]:
    return first_safe(shared, pairwise, params, lambda s: s)
