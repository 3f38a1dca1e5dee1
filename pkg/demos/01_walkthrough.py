"""Which edges does an edge-based search actually evaluate?

A seven-state graph: s0 has three successors, s1 two, and the heuristic
points straight from s0 through s1 to the goal s4.  We run state-based
weighted A* and its edge-based counterpart with w = 2 and list the edges
each one had to evaluate.
"""
from epase.domains import walkthrough_graph
from epase.planners import Algorithm, PlannerConfig, plan

graph, start, labels = walkthrough_graph()

for alg in (Algorithm.WASTAR, Algorithm.EASTAR):
    res = plan(graph, start, PlannerConfig(algorithm=alg, weight=2, epsilon=2, debug=True))
    evaluated = sorted(labels[e] for e in res.trace.edge_evaluations)
    print(f"{alg.value:<7} cost={res.cost:g}  evaluated {len(evaluated)} edges: {', '.join(evaluated)}")

# The state-based search evaluates every outgoing edge of s0 and s1 as soon
# as it expands them.  The edge-based search pops one edge at a time, and
# once e0->1 has produced s1 with a better priority than the remaining
# edges of s0, it never comes back to them before reaching the goal.
