"""One slow action among seventeen fast ones.

Think of a mobile manipulator where moving the base is cheap to check but
moving the arm needs a full-body collision check.  Here action 0 of the
18-primitive lattice takes 50 ms to evaluate and the others 1 ms.  A
state-parallel planner must finish all edges of a state, slow one
included, before the state counts as expanded; the edge-parallel planner
hands out single edges and keeps other workers busy meanwhile.

The delays are CPU-bound, so wall times only separate on a machine with
enough cores for the workers.
"""
import os

from epase.domains import DelayModel, random_grid
from epase.planners import Algorithm, PlannerConfig, plan

delay = DelayModel.per_action_table([0.050] + [0.001] * 17)
p = random_grid(3, 30, 30, 0.15, primitives="lattice18", delay=delay, min_distance=10)
goal = p.space.config.goal
print(f"{os.cpu_count()} CPUs; start {p.start}, goal ({goal.x0}, {goal.y0})")

for alg in (Algorithm.WPASE, Algorithm.EPASE):
    cfg = PlannerConfig(algorithm=alg, weight=5, epsilon=5, num_threads=8)
    res = plan(p.space, p.start, cfg)
    st = res.stats
    print(f"{alg.value:<6} N_t=8  {st.wall_time:6.2f}s  cost={res.cost:g}  "
          f"edges={st.edges_evaluated}  workers={st.threads_spawned}")
