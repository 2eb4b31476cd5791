"""
The routing ILP and three ways to reach the same optimum
========================================================

The model is built with exact rational coefficients. A plan from the
combinatorial solver is encoded as a 0/1 assignment and checked row by
row; the brute-force oracle and a MILP solver (HiGHS through scipy)
reach the same optimum independently.
"""

import time

from aggroute import build_ilp, brute_force_optimum, encode, export_lp, objective_value, solve, validate_assignment
from aggroute.ilp import solve_milp
from aggroute.oracle import random_instance

topology, demands = random_instance(seed=7)
print("links:", topology.links)
print("demands:", [(d.source, d.dest) for d in demands])

model = build_ilp(topology, demands)
print(f"{len(model.variables)} binary variables, {len(model.constraints)} rows")

###############################################################################
# Solver plan, encoded and validated

plan = solve(topology, demands)
values = encode(plan, model)
print("violations:", validate_assignment(model, values))
print("objective of encoded plan:", objective_value(model, values), "solver cost:", plan.total_cost)

###############################################################################
# Brute force and MILP

oracle_cost, _ = brute_force_optimum(topology, demands)
start = time.perf_counter()
milp_cost, _ = solve_milp(model)
print(f"oracle: {oracle_cost}, MILP: {milp_cost} ({time.perf_counter() - start:.2f}s)")

###############################################################################
# The LP text handed to external solvers

lines = export_lp(model).splitlines()
start = lines.index("Subject To")
print("\n".join(lines[start:start + 8]))
