"""
Exact aggregation-aware routing by decomposition.

Only demands with a common destination may be paired, each demand has at
most one partner, and a pair merges at a single node ``v`` and shares the
``v -> t`` segment. The wavelength-link cost therefore separates per
destination group, and inside a group a pair ``(a, b)`` costs at best

    dist(a.source, v) + dist(b.source, v) + dist(v, t)

minimised over ``v != t``. :func:`solve` prices every pair this way and
picks the cheapest partial matching of each group by subset dynamic
programming.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import CapacityError, ContractError, EncodingError, ParseError
from .ilp import IlpModel, VarRef, F, THETA, X, Z
from .topology import Arc, DistanceMatrix, Topology, hop_distances, shortest_path
from .traffic import Demand, DemandSet

__all__ = [
    "MAX_GROUP_SIZE",
    "PairPrice",
    "DemandRoute",
    "AggregationPlan",
    "price_pair",
    "solve",
    "conventional_solve",
    "encode",
    "plan_to_json",
    "plan_from_json",
]

MAX_GROUP_SIZE = 12


class PairPrice(NamedTuple):
    d1: int
    d2: int
    agg_node: int
    cost: int
    saving: int


class DemandRoute(NamedTuple):
    demand: Demand
    route: tuple[int, ...]
    partner: int | None = None
    agg_node: int | None = None
    shared_segment: tuple[int, ...] | None = None

    @property
    def hops(self) -> int:
        return len(self.route) - 1


@dataclass(frozen=True)
class AggregationPlan:
    """Routes for every demand, in demand-id order, plus the resulting cost."""

    routes: tuple[DemandRoute, ...]
    total_cost: int

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(r.demand.id, r.partner) for r in self.routes
                if r.partner is not None and r.demand.id < r.partner]

    def __getitem__(self, demand_id) -> DemandRoute:
        return self.routes[demand_id]


def plan_cost(routes) -> int:
    """Route hops minus one shared segment per aggregated pair."""
    total = sum(r.hops for r in routes)
    for r in routes:
        if r.partner is not None and r.demand.id < r.partner and r.shared_segment is not None:
            total -= len(r.shared_segment) - 1
    return total


def price_pair(dm: DistanceMatrix, d1: Demand, d2: Demand) -> PairPrice:
    """Cheapest aggregation node for two demands with a common destination.

    The node may coincide with either source but not with the
    destination. Ties go to the smallest node id.

    Examples
    --------
    On the bundled COST239 network, demands 7->1 and 9->1 merge at node 7
    for a cost of 2 instead of 3.
    """
    if d1.dest != d2.dest:
        raise ContractError(f"demands {d1.id} and {d2.id} have different destinations")
    if d1.id == d2.id:
        raise ContractError(f"cannot pair demand {d1.id} with itself")
    t = d1.dest
    best = None
    for v in dm.nodes:
        if v == t:
            continue
        cost = dm[d1.source, v] + dm[d2.source, v] + dm[v, t]
        if best is None or cost < best[1]:
            best = (v, cost)
    if best is None:
        raise ContractError("no admissible aggregation node")
    v, cost = best
    saving = dm[d1.source, t] + dm[d2.source, t] - cost
    return PairPrice(d1.id, d2.id, v, cost, saving)


def _match_group(group: list[Demand], dm: DistanceMatrix) -> list[tuple[Demand, Demand | None, PairPrice | None]]:
    """Minimum-cost partial matching of one destination group.

    Among equal-cost matchings the one with fewer pairs wins, so
    zero-saving pairs are never formed.
    """
    n = len(group)
    if n > MAX_GROUP_SIZE:
        raise CapacityError(
            f"destination {group[0].dest} has {n} demands; exact pairing supports at most "
            f"{MAX_GROUP_SIZE}, export the ILP and use a MILP solver instead")
    t = group[0].dest
    single = [dm[d.source, t] for d in group]
    prices = {}
    for i in range(n):
        for j in range(i + 1, n):
            p = price_pair(dm, group[i], group[j])
            if p.saving > 0:
                prices[i, j] = p

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[tuple[int, int], tuple]:
        if mask == 0:
            return (0, 0), ()
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        (c, k), picks = best(rest)
        top = ((c + single[i], k), ((i, None),) + picks)
        for j in range(i + 1, n):
            if rest >> j & 1 and (i, j) in prices:
                (c, k), picks = best(rest & ~(1 << j))
                cand = ((c + prices[i, j].cost, k + 1), ((i, j),) + picks)
                if cand[0] < top[0]:
                    top = cand
        return top

    _, picks = best((1 << n) - 1)
    return [(group[i], None if j is None else group[j], None if j is None else prices[i, j])
            for i, j in picks]


def solve(topology: Topology, demands: DemandSet, dm: DistanceMatrix | None = None) -> AggregationPlan:
    """Minimum wavelength-link-cost routing with optional pairwise aggregation.

    Each pair is routed along shortest ``source -> v`` paths and one
    common shortest ``v -> t`` segment; unpaired demands take their
    shortest path. Path ties are broken by smallest node id.
    """
    demands.check_nodes(topology)
    if dm is None:
        dm = hop_distances(topology)
    routes: dict[int, DemandRoute] = {}
    for t, group in demands.by_destination().items():
        for a, b, price in _match_group(group, dm):
            if b is None:
                routes[a.id] = DemandRoute(a, tuple(shortest_path(topology, a.source, t, dm)))
                continue
            v = price.agg_node
            shared = tuple(shortest_path(topology, v, t, dm))
            for me, other in ((a, b), (b, a)):
                lead = shortest_path(topology, me.source, v, dm)
                routes[me.id] = DemandRoute(me, tuple(lead) + shared[1:], other.id, v, shared)
    ordered = tuple(routes[d.id] for d in demands)
    return AggregationPlan(ordered, plan_cost(ordered))


def conventional_solve(topology: Topology, demands: DemandSet,
                       dm: DistanceMatrix | None = None) -> AggregationPlan:
    """Every demand on its own shortest path, no aggregation."""
    demands.check_nodes(topology)
    if dm is None:
        dm = hop_distances(topology)
    routes = tuple(DemandRoute(d, tuple(shortest_path(topology, d.source, d.dest, dm)))
                   for d in demands)
    return AggregationPlan(routes, plan_cost(routes))


def _arcs(path) -> list[Arc]:
    return [Arc(u, v) for u, v in zip(path, path[1:])]


def encode(plan: AggregationPlan, model: IlpModel) -> dict[VarRef, int]:
    """Translate a plan into a total 0/1 assignment of ``model``'s variables.

    Only plans that cannot be written as model variables are rejected
    (unknown demand, arc or node; a partner without aggregation node or
    segment, or the reverse). Semantic defects such as a broken route or
    one-sided partnership are encoded as given and surface as violated
    rows in :func:`~aggroute.ilp.validate_assignment`.
    """
    values = model.zero_assignment()

    def put(var):
        if var not in values:
            raise EncodingError(f"plan uses {var.name}, which is not a model variable")
        values[var] = 1

    for r in plan.routes:
        d = r.demand
        if model.demands is not None and (d.id >= len(model.demands) or model.demands[d.id] != d):
            raise EncodingError(f"demand {d} is not part of the model")
        for arc in _arcs(r.route):
            put(X(d.id, arc))
        if r.partner is None:
            if r.agg_node is not None or r.shared_segment is not None:
                raise EncodingError(f"demand {d.id} has aggregation data but no partner")
            continue
        if r.agg_node is None or r.shared_segment is None:
            raise EncodingError(f"demand {d.id} has a partner but no aggregation node or segment")
        put(THETA(d.id, r.agg_node))
        put(F(d.id, r.partner))
        for arc in _arcs(r.shared_segment):
            put(Z(d.id, r.agg_node, arc))
    return values


def plan_to_json(plan: AggregationPlan) -> str:
    records = []
    for r in plan.routes:
        records.append({
            "id": r.demand.id,
            "source": r.demand.source,
            "dest": r.demand.dest,
            "route": list(r.route),
            "partner": r.partner,
            "agg_node": r.agg_node,
            "shared_segment": None if r.shared_segment is None else list(r.shared_segment),
        })
    return json.dumps({"demands": records, "total_cost": plan.total_cost}, indent=2) + "\n"


def plan_from_json(text: str) -> AggregationPlan:
    """Inverse of :func:`plan_to_json`.

    The stored ``total_cost`` is kept as written so that a tampered plan
    can still be loaded and checked.
    """
    try:
        doc = json.loads(text)
        routes = []
        for rec in doc["demands"]:
            seg = rec["shared_segment"]
            routes.append(DemandRoute(
                Demand(int(rec["id"]), int(rec["source"]), int(rec["dest"])),
                tuple(int(n) for n in rec["route"]),
                None if rec["partner"] is None else int(rec["partner"]),
                None if rec["agg_node"] is None else int(rec["agg_node"]),
                None if seg is None else tuple(int(n) for n in seg),
            ))
        return AggregationPlan(tuple(routes), int(doc["total_cost"]))
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed plan document: {exc}") from None
