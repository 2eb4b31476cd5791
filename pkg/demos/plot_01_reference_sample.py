"""
Aggregation on the COST239 reference sample
===========================================

Two sources (nodes 7 and 9) each send one wavelength to nodes 2, 11, 4, 3
and 1. Conventional routing puts every demand on its own shortest path.
With aggregation, two demands bound for the same node can merge at an
intermediate node and share one wavelength from there on.
"""

from importlib import resources

from aggroute import conventional_solve, cost239, parse_demands, solve

topology = cost239()
text = resources.files("aggroute").joinpath("data/cost239_sample.csv").read_text()
demands = parse_demands(text, topology)

###############################################################################
# Conventional routing: 18 wavelength-links.

baseline = conventional_solve(topology, demands)
for r in baseline.routes:
    print(f"{r.demand.source}->{r.demand.dest}: {'-'.join(map(str, r.route))}")
print("conventional cost:", baseline.total_cost)

###############################################################################
# Aggregation-aware routing: 13 wavelength-links. Note how 9->2 and 9->4
# leave their shortest paths to join 7->2 and 7->4 at node 7.

plan = solve(topology, demands)
for r in plan.routes:
    shared = "-".join(map(str, r.shared_segment))
    print(f"{r.demand.source}->{r.demand.dest}: {'-'.join(map(str, r.route)):<10} "
          f"merge at {r.agg_node}, shared {shared}, with demand {r.partner}")
print("aggregation cost:", plan.total_cost)
print(f"gain: {(baseline.total_cost - plan.total_cost) / baseline.total_cost:.1%}")
