"""When is it safe to expand an edge out of order?

An edge whose source is s may be expanded before the edges ahead of it in
OPEN, and while other states are still being expanded, if none of those
states could still lower g(s).  The check compares g values against the
pairwise heuristic: s is independent of s' when
``g(s) - g(s') <= eps * h(s', s)``.
"""
from epase.core import DUMMY, Edge, SharedSearchState, Status
from epase.independence import IndependenceParams, edge_safe_to_expand, state_independent


def line(a, b):
    return abs(a - b)


print("g(s)=5, g(s')=3, h=3, eps=1 ->", state_independent(5, 3, 3, 1))
print("g(s)=5, g(s')=3, h=1, eps=1 ->", state_independent(5, 3, 1, 1))
print("g(s)=5, g(s')=3, h=1, eps=5 ->", state_independent(5, 3, 1, 5))

# A state at position 7 (g=2) is being expanded; the candidate sits at 10
# with g=10.  Reaching it through the busy state could cost as little as
# 2 + 3 = 5, so the candidate must wait unless eps relaxes the test.
shared = SharedSearchState()
busy = shared.registry.get_or_insert(7, 0.0)
busy.g, busy.status = 2.0, Status.PARTIALLY_EXPANDED
shared.be.add(busy.index)
cand = shared.registry.get_or_insert(10, 0.0)
cand.g, cand.status = 10.0, Status.OPEN_DUMMY
edge = Edge(cand.index, DUMMY)
shared.push(edge, 10.0, 10.0)
for eps in (1, 2, 3):
    ok = edge_safe_to_expand(edge, shared, line, IndependenceParams(epsilon=eps))
    print(f"eps={eps}: candidate safe = {ok}")
