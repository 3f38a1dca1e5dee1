import math
import threading
import time

import numpy as np
import pytest

from epase.core import DUMMY, Edge, SearchConsistencyError, Status
from epase.domains import DelayModel, ExplicitGraph, make_grid, random_grid
from epase.oracle import oracle_shortest_paths
from epase.planners import (
    Algorithm,
    Outcome,
    PlannerConfig,
    SearchContext,
    ThreadMgt,
    backtrack,
    epase_expand,
    plan,
)

ALL = [
    (Algorithm.ASTAR, 1), (Algorithm.WASTAR, 1), (Algorithm.EASTAR, 1), (Algorithm.PWASTAR, 4),
    (Algorithm.WPASE, 1), (Algorithm.WPASE, 4), (Algorithm.EPASE, 1), (Algorithm.EPASE, 4),
    (Algorithm.EPASE, 8),
]


class Counting:
    """Wraps a space and counts evaluator calls; rejects the dummy action."""

    def __init__(self, space):
        self.space = space
        self.calls = 0
        self._lock = threading.Lock()

    def __getattr__(self, name):
        return getattr(self.space, name)

    def evaluate(self, s, a):
        assert a != DUMMY
        with self._lock:
            self.calls += 1
        return self.space.evaluate(s, a)


def chain(n, cost=1.0, delay=None):
    edges = [(i, i + 1, cost) for i in range(n - 1)]
    g = ExplicitGraph.from_edges(n, edges, goals=[n - 1])
    return g if delay is None else ExplicitGraph(g.adjacency, g.goals, g.heuristic_table, g.coords, delay)


@pytest.mark.parametrize("alg,n", ALL)
def test_empty_grid_cost_8(alg, n):
    g = make_grid(np.zeros((5, 5), bool), (4, 4), "four", metric="manhattan")
    res = plan(g, (0, 0), PlannerConfig(algorithm=alg, num_threads=n))
    assert res.outcome is Outcome.SOLVED and res.cost == 8.0
    assert res.path[0].state == (0, 0) and res.path[-1].successor == (4, 4)


@pytest.mark.parametrize("alg,n", ALL)
def test_disconnected_goal(alg, n):
    occ = np.zeros((6, 6), bool)
    occ[:, 3] = True
    g = make_grid(occ, (5, 5), "eight")
    res = plan(g, (0, 0), PlannerConfig(algorithm=alg, num_threads=n, debug=True))
    assert res.outcome is Outcome.NO_SOLUTION
    assert math.isinf(res.cost) and res.path == []
    # everything reachable was closed: nothing is left partially expanded
    assert res.stats.states_expanded == 18


@pytest.mark.parametrize("alg,n", ALL)
def test_path_is_consistent_and_counted(alg, n):
    p = random_grid(11, 30, 30, 0.2)
    space = Counting(p.space)
    w = 1.0 if alg is Algorithm.ASTAR else 2.0
    res = plan(space, p.start, PlannerConfig(algorithm=alg, weight=w, epsilon=w, num_threads=n))
    assert res.solved
    assert res.stats.edges_evaluated == space.calls
    assert res.path[0].state == p.start
    total = 0.0
    for a, b in zip(res.path, res.path[1:]):
        assert a.successor == b.state
    for st in res.path:
        assert p.space.evaluate(st.state, st.action) == (st.successor, st.cost)
        total += st.cost
    assert total == res.cost
    assert p.space.is_goal(res.path[-1].successor)


def test_epase_matches_oracle_on_100_grids():
    for seed in range(100):
        p = random_grid(seed, 50, 50, 0.2)
        opt = oracle_shortest_paths(p.space, p.start).optimal_cost
        res = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.EPASE, num_threads=8))
        assert res.cost == opt, seed


def test_wpase_matches_oracle_on_100_grids():
    for seed in range(100):
        p = random_grid(seed, 50, 50, 0.2)
        opt = oracle_shortest_paths(p.space, p.start).optimal_cost
        res = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.WPASE, num_threads=4))
        assert res.cost == opt, seed


def _ctx_with_state(space, start, config=PlannerConfig()):
    ctx = SearchContext(space, config)
    rec = ctx.seed(start)
    return ctx, rec


def test_dummy_expansion_inserts_real_edges_at_equal_f():
    g = ExplicitGraph.from_edges(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], goals=[3], heuristic=[1, 0, 0, 0])
    ctx, rec = _ctx_with_state(g, 0)
    epase_expand(Edge(rec.index, DUMMY), ctx)
    sh = ctx.shared
    keys = [sh.open.key_of(Edge(rec.index, a)) for a in range(3)]
    assert len(sh.open) == 3 and len({k.f for k in keys}) == 1
    assert rec.index in sh.be and rec.index not in sh.closed
    assert ctx.stats.edges_evaluated == 0


def test_real_edge_to_closed_successor():
    g = ExplicitGraph.from_edges(2, [(0, 1, 1), (1, 0, 1)], goals=[1])
    ctx, rec0 = _ctx_with_state(g, 0)
    sh = ctx.shared
    sh.mark_partially_expanded(rec0.index)
    rec0.n_actions = 1
    rec0.n_successors_generated = 1
    sh.mark_closed(rec0.index)
    rec1 = sh.registry.get_or_insert(1, 0.0)
    rec1.g, rec1.status = 1.0, Status.OPEN_DUMMY
    sh.mark_partially_expanded(rec1.index)
    rec1.n_actions = 1
    epase_expand(Edge(rec1.index, 0), ctx)
    assert len(sh.open) == 0
    assert rec1.n_successors_generated == 1 and rec1.status is Status.CLOSED
    assert rec0.g == 0.0


def test_real_edge_repositions_successor_dummy():
    g = ExplicitGraph.from_edges(3, [(0, 2, 7), (1, 2, 10)], goals=[2], heuristic=[0, 0, 2])
    ctx, rec0 = _ctx_with_state(g, 0)
    sh = ctx.shared
    s2 = sh.registry.get_or_insert(2, 2.0)
    s2.g, s2.status = 10.0, Status.OPEN_DUMMY
    sh.push(Edge(s2.index, DUMMY), 12.0, 10.0)
    sh.mark_partially_expanded(rec0.index)
    rec0.n_actions = 1
    epase_expand(Edge(rec0.index, 0), ctx)
    assert s2.g == 7.0
    assert sh.open.key_of(Edge(s2.index, DUMMY)).f == 9.0
    assert len(sh.open) == 1


def test_spawn_on_demand_on_a_chain():
    g = chain(30, delay=DelayModel.fixed(0.002))
    res = plan(g, 0, PlannerConfig(algorithm=Algorithm.EPASE, num_threads=8))
    assert res.solved and res.cost == 29.0
    assert 1 <= res.stats.threads_spawned <= 3


def test_preallocated_pool_spawns_all():
    g = chain(5)
    cfg = PlannerConfig(algorithm=Algorithm.EPASE, num_threads=8, thread_mgt=ThreadMgt.PREALLOCATED_POOL)
    assert plan(g, 0, cfg).stats.threads_spawned == 8


@pytest.mark.parametrize("mgt", list(ThreadMgt))
@pytest.mark.parametrize("alg", [Algorithm.EPASE, Algorithm.WPASE, Algorithm.PWASTAR])
def test_workers_exit_after_plan(alg, mgt):
    before = threading.active_count()
    p = random_grid(2, 20, 20, 0.2)
    plan(p.space, p.start, PlannerConfig(algorithm=alg, num_threads=8, thread_mgt=mgt))
    deadline = time.time() + 2
    while threading.active_count() > before and time.time() < deadline:
        time.sleep(0.01)
    assert threading.active_count() == before


def test_busy_wait_coordinator():
    p = random_grid(4, 30, 30, 0.2)
    opt = oracle_shortest_paths(p.space, p.start).optimal_cost
    res = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.EPASE, num_threads=4, busy_wait=True))
    assert res.cost == opt


@pytest.mark.parametrize("alg", [Algorithm.WASTAR, Algorithm.EASTAR, Algorithm.WPASE, Algorithm.EPASE])
def test_timeout(alg):
    p = random_grid(5, 50, 50, 0.1, delay=DelayModel.fixed(0.005), min_distance=30)
    res = plan(p.space, p.start, PlannerConfig(algorithm=alg, num_threads=2, time_limit=0.1))
    assert res.outcome is Outcome.TIMEOUT


class Exploding:
    def __init__(self, space):
        self.space = space

    def __getattr__(self, name):
        return getattr(self.space, name)

    def evaluate(self, s, a):
        raise RuntimeError("collision checker crashed")


@pytest.mark.parametrize("mgt", list(ThreadMgt))
@pytest.mark.parametrize("alg", [Algorithm.WPASE, Algorithm.EPASE])
def test_worker_errors_propagate(alg, mgt):
    p = random_grid(1, 10, 10, 0.0)
    with pytest.raises(RuntimeError, match="crashed"):
        plan(Exploding(p.space), p.start, PlannerConfig(algorithm=alg, num_threads=3, thread_mgt=mgt))


def test_eastar_cheaper_than_wastar_on_empty_grids():
    for seed in range(20):
        p = random_grid(seed, 30, 30, 0.0)
        a = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.ASTAR))
        e = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.EASTAR))
        w = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.WASTAR))
        assert e.cost == a.cost
        assert e.stats.edges_evaluated <= w.stats.edges_evaluated


def test_single_worker_wpase_follows_astar_order():
    for seed in range(10):
        p = random_grid(seed, 25, 25, 0.2)
        a = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.ASTAR, debug=True))
        s = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.WPASE, num_threads=1, debug=True))
        assert [k for k, _, _ in s.trace.selections] == [k for k, _, _ in a.trace.selections]
        assert s.cost == a.cost


def test_single_worker_epase_follows_eastar_order():
    for seed in range(10):
        p = random_grid(seed, 25, 25, 0.2)
        a = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.EASTAR, debug=True))
        s = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.EPASE, num_threads=1, debug=True))
        assert s.trace.selections == a.trace.selections


def test_pwastar_matches_wastar():
    for seed in range(20):
        p = random_grid(seed, 30, 30, 0.2)
        for w in (1.0, 3.0):
            ref = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.WASTAR, weight=w))
            par = plan(p.space, p.start, PlannerConfig(algorithm=Algorithm.PWASTAR, weight=w, num_threads=4))
            assert par.cost == ref.cost
            assert par.stats.edges_evaluated == ref.stats.edges_evaluated


def test_pwastar_single_thread_as_fast_as_wastar():
    probs = [random_grid(s, 20, 20, 0.15, delay=DelayModel.fixed(0.0005)) for s in range(5)]

    def total(alg):
        t = 0.0
        for p in probs:
            t += plan(p.space, p.start, PlannerConfig(algorithm=alg, weight=2, num_threads=1)).stats.wall_time
        return t

    total(Algorithm.WASTAR)
    assert total(Algorithm.PWASTAR) <= 1.10 * total(Algorithm.WASTAR)


def test_backtrack_trivial_and_chain():
    g = chain(4)
    res = plan(g, 3, PlannerConfig(algorithm=Algorithm.EPASE))
    assert res.solved and res.path == [] and res.cost == 0.0
    res = plan(g, 0, PlannerConfig(algorithm=Algorithm.EASTAR))
    assert [(st.state, st.successor) for st in res.path] == [(0, 1), (1, 2), (2, 3)]


def test_backtrack_detects_bad_parents():
    g = chain(3)
    ctx, rec0 = _ctx_with_state(g, 0)
    r1 = ctx.shared.registry.get_or_insert(1, 0.0)
    r1.g, r1.parent = 1.0, (0, 0, 2.0)  # cost does not add up
    with pytest.raises(SearchConsistencyError):
        backtrack(r1.index, ctx.shared.registry)


def test_config_validation():
    with pytest.raises(ValueError):
        PlannerConfig(weight=0.5)
    with pytest.raises(ValueError):
        PlannerConfig(num_threads=0)
    with pytest.raises(ValueError):
        PlannerConfig(algorithm=Algorithm.ASTAR, weight=2)
    assert PlannerConfig(algorithm="WASTAR", num_threads=8).effective_threads == 1
