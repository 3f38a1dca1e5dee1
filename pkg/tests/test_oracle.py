import numpy as np
import pytest

from epase.domains import ExplicitGraph, make_grid, random_explicit_graph
from epase.oracle import OracleBudgetExceeded, bellman_violations, oracle_shortest_paths


def test_empty_grid_manhattan():
    g = make_grid(np.zeros((5, 5), bool), (4, 4), "four", metric="manhattan")
    res = oracle_shortest_paths(g, (0, 0))
    assert res.optimal_cost == 8.0
    assert res.optimal_g[(4, 4)] == 8.0


def test_unreachable_marker():
    g = ExplicitGraph.from_edges(4, [(0, 1, 1), (2, 3, 1)], goals=[3])
    res = oracle_shortest_paths(g, 0)
    assert res.optimal_cost is None
    assert not res.reachable


@pytest.mark.parametrize("seed", range(10))
def test_bellman_consistency(seed):
    p = random_explicit_graph(seed, 20, avg_degree=3)
    res = oracle_shortest_paths(p.space, p.start)
    assert bellman_violations(p.space, res) == []


def test_budget_guard():
    g = make_grid(np.zeros((40, 40), bool), (39, 39), "four")
    with pytest.raises(OracleBudgetExceeded):
        oracle_shortest_paths(g, (0, 0), max_states=50)
