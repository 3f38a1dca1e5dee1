import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epase.core import DUMMY, Edge, SharedSearchState, Status
from epase.independence import (
    IndependenceParams,
    edge_safe_to_expand,
    select_safe_edge,
    state_independent,
)


@pytest.mark.parametrize(
    "g_s, g_sp, h, eps, expected",
    [(5, 3, 3, 1, True), (5, 3, 1, 1, False), (5, 3, 1, 5, True)],
)
def test_state_independent_examples(g_s, g_sp, h, eps, expected):
    assert state_independent(g_s, g_sp, h, eps) is expected


def test_infinite_epsilon_is_always_independent():
    assert state_independent(100.0, 0.0, 0.0, math.inf)


@given(
    st.floats(0, 100), st.floats(0, 100), st.floats(0, 100),
    st.floats(1, 10), st.floats(0, 10),
)
def test_independence_is_monotone_in_epsilon(g_s, g_sp, h, eps, extra):
    if state_independent(g_s, g_sp, h, eps):
        assert state_independent(g_s, g_sp, h, eps + extra)


def test_params_validation():
    assert IndependenceParams(2, 1).full_open_scan is False
    assert IndependenceParams(1.5, 3).full_open_scan is True
    with pytest.raises(ValueError):
        IndependenceParams(1.5, 3, full_open_scan=False)
    with pytest.raises(ValueError):
        IndependenceParams(0.5, 1)


def _state(sh, key, g, status=Status.OPEN_DUMMY):
    rec = sh.registry.get_or_insert(key, 0.0)
    rec.g = g
    rec.status = status
    if status is Status.PARTIALLY_EXPANDED:
        sh.be.add(rec.index)
    return rec


def _line_h(a, b):
    return abs(a - b)


def test_lone_candidate_is_safe():
    sh = SharedSearchState()
    r = _state(sh, 0, 0.0)
    e = Edge(r.index, DUMMY)
    sh.push(e, 0.0, 0.0)
    assert edge_safe_to_expand(e, sh, _line_h, IndependenceParams())


def test_be_state_blocks_candidate():
    sh = SharedSearchState()
    cand = _state(sh, 10, 10.0)
    _state(sh, 7, 2.0, Status.PARTIALLY_EXPANDED)  # h(s', cand) = 3
    e = Edge(cand.index, DUMMY)
    sh.push(e, 10.0, 10.0)
    assert not edge_safe_to_expand(e, sh, _line_h, IndependenceParams(1, 1))
    assert select_safe_edge(sh, _line_h, IndependenceParams(1, 1)) is None
    assert edge_safe_to_expand(e, sh, _line_h, IndependenceParams(3, 1))


def test_chain_first_edge_safe_after_dummy_expansion():
    # s0 -> s1 -> s2, unit costs, zero heuristic; s0's dummy has expanded
    sh = SharedSearchState()
    s0 = _state(sh, 0, 0.0, Status.PARTIALLY_EXPANDED)
    e = Edge(s0.index, 0)
    sh.push(e, 0.0, 0.0)
    zero = lambda a, b: 0.0  # noqa: E731
    assert edge_safe_to_expand(e, sh, zero, IndependenceParams())
    assert select_safe_edge(sh, zero, IndependenceParams()) == e


def test_earlier_open_source_blocks_later_candidate():
    sh = SharedSearchState()
    a = _state(sh, 0, 0.0)
    b = _state(sh, 5, 9.0)
    ea, eb = Edge(a.index, DUMMY), Edge(b.index, DUMMY)
    sh.push(ea, 1.0, 0.0)
    sh.push(eb, 9.0, 9.0)
    p = IndependenceParams(1, 1)
    assert edge_safe_to_expand(ea, sh, _line_h, p)
    assert not edge_safe_to_expand(eb, sh, _line_h, p)  # 9 - 0 > 5


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20), st.booleans()), min_size=1, max_size=12),
       st.sampled_from([1.0, 1.5, 3.0, math.inf]), st.sampled_from([1.0, 2.0, 5.0]))
def test_optimised_selection_matches_reference(states, eps, w):
    """``select_safe_edge`` returns the first edge in key order passing the
    direct check, for arbitrary OPEN/BE contents."""
    sh = SharedSearchState()
    for pos, g, in_be in states:
        rec = sh.registry.lookup(pos) or _state(sh, pos, float(g))
        if rec.status is Status.PARTIALLY_EXPANDED:
            continue
        if in_be:
            rec.status = Status.PARTIALLY_EXPANDED
            sh.be.add(rec.index)
            sh.push(Edge(rec.index, 0), rec.g + w * pos, rec.g)
        else:
            sh.push(Edge(rec.index, DUMMY), rec.g + w * pos, rec.g)
    p = IndependenceParams(eps, w)
    expected = next((e for e in sh.open if edge_safe_to_expand(e, sh, _line_h, p)), None)
    assert select_safe_edge(sh, _line_h, p) == expected
