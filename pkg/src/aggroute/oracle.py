"""
Brute-force reference optimizer for tiny instances.

Shares no code with :mod:`aggroute.solver` beyond the data types: paths
come from depth-first enumeration of all simple paths, pairings from
enumerating every partition of each destination group into pairs and
singletons, and each candidate is scored by summing route arcs and
refunding half of every aggregated arc per demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError
from .solver import AggregationPlan, DemandRoute
from .topology import Topology
from .traffic import DemandSet

__all__ = ["OracleLimits", "brute_force_optimum", "random_instance"]


@dataclass(frozen=True)
class OracleLimits:
    max_nodes: int = 6
    max_demands: int = 6
    max_path_len: int | None = None  # defaults to |V| - 1


def _simple_paths(adj, src, dst, max_len):
    """All simple paths src -> dst with at most ``max_len`` links."""
    found = []
    stack = [(src, (src,))]
    while stack:
        node, path = stack.pop()
        if node == dst:
            found.append(path)
            continue
        if len(path) - 1 >= max_len:
            continue
        for nxt in adj[node]:
            if nxt not in path:
                stack.append((nxt, path + (nxt,)))
    return found


def _partitions(items):
    """Every way to split ``items`` into pairs and singletons."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in _partitions(rest):
        yield [(first,)] + tail
    for k, other in enumerate(rest):
        for tail in _partitions(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + tail


def _eq1(routes):
    """Wavelength-link objective from explicit arc sets."""
    total = Fraction(0)
    for route, seg in routes:
        total += len(set(zip(route, route[1:])))
        if seg is not None:
            total -= Fraction(len(set(zip(seg, seg[1:]))), 2)
    return total


def brute_force_optimum(topology: Topology, demands: DemandSet,
                        limits: OracleLimits = OracleLimits()):
    """Exhaustive minimum wavelength-link cost.

    Returns ``(cost, witness)`` where ``witness`` is an
    :class:`~aggroute.solver.AggregationPlan` attaining ``cost``.
    """
    if len(topology.nodes) > limits.max_nodes or len(demands) > limits.max_demands:
        raise CapacityError(
            f"oracle limited to {limits.max_nodes} nodes and {limits.max_demands} demands, "
            f"got {len(topology.nodes)} and {len(demands)}")
    max_len = limits.max_path_len if limits.max_path_len is not None else len(topology.nodes) - 1
    adj = {n: [] for n in topology.nodes}
    for a in topology.arcs:
        adj[a.tail].append(a.head)

    paths = {}

    def shortest_of(u, v):
        # every simple path is scored; the cheapest (then lexicographically first) wins
        if (u, v) not in paths:
            cands = _simple_paths(adj, u, v, max_len)
            paths[u, v] = min(cands, key=lambda p: (len(p), p)) if cands else None
        return paths[u, v]

    groups = {}
    for d in demands:
        groups.setdefault(d.dest, []).append(d)

    total = Fraction(0)
    chosen: dict[int, DemandRoute] = {}
    for t, group in groups.items():
        best = None
        for parts in _partitions(group):
            cost = Fraction(0)
            routes = {}
            feasible = True
            for part in parts:
                if len(part) == 1:
                    (a,) = part
                    p = shortest_of(a.source, t)
                    if p is None:
                        feasible = False
                        break
                    cost += _eq1([(p, None)])
                    routes[a.id] = DemandRoute(a, p)
                    continue
                a, b = part
                pair_best = None
                for v in topology.nodes:
                    if v == t:
                        continue
                    seg = shortest_of(v, t)
                    pa = (a.source,) if v == a.source else shortest_of(a.source, v)
                    pb = (b.source,) if v == b.source else shortest_of(b.source, v)
                    if seg is None or pa is None or pb is None:
                        continue
                    ra, rb = pa + seg[1:], pb + seg[1:]
                    c = _eq1([(ra, seg), (rb, seg)])
                    if pair_best is None or c < pair_best[0]:
                        pair_best = (c, v, ra, rb, seg)
                if pair_best is None:
                    feasible = False
                    break
                c, v, ra, rb, seg = pair_best
                cost += c
                routes[a.id] = DemandRoute(a, ra, b.id, v, seg)
                routes[b.id] = DemandRoute(b, rb, a.id, v, seg)
            if feasible and (best is None or cost < best[0]):
                best = (cost, routes)
        if best is None:
            raise CapacityError(f"no route to destination {t} within {max_len} links")
        total += best[0]
        chosen.update(best[1])

    assert total.denominator == 1
    witness = AggregationPlan(tuple(chosen[d.id] for d in demands), int(total))
    return int(total), witness


def random_instance(seed: int, max_nodes: int = 6, max_demands: int = 6):
    """Connected random graph plus demands, at least two sharing a destination."""
    rng = random.Random(seed)
    n = rng.randint(3, max_nodes)
    nodes = list(range(1, n + 1))
    links = set()
    order = nodes[:]
    rng.shuffle(order)
    for k in range(1, n):
        u, v = order[k], order[rng.randrange(k)]
        links.add((min(u, v), max(u, v)))
    for u in nodes:
        for v in nodes:
            if u < v and rng.random() < 0.3:
                links.add((u, v))
    topo = Topology.from_links(sorted(links), name=f"random-{seed}")

    t = rng.choice(nodes)
    s1, s2 = rng.sample([x for x in nodes if x != t], 2)
    pairs = [(s1, t), (s2, t)]
    candidates = [(s, d) for s in nodes for d in nodes if s != d and (s, d) not in pairs]
    extra = rng.randint(0, max_demands - 2)
    pairs += rng.sample(candidates, min(extra, len(candidates)))
    rng.shuffle(pairs)
    return topo, DemandSet.from_pairs(pairs, seed=seed)
