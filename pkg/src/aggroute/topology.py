"""
Fiber topologies, hop distances and deterministic shortest routes.

Links are undirected and unweighted: one traversed link costs one
wavelength-link. Each undirected link is stored as a pair of directed
:class:`Arc` objects because the routing model reasons about link
direction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ParseError, ValidationError

__all__ = [
    "Arc",
    "Topology",
    "DistanceMatrix",
    "parse_topology",
    "format_topology",
    "load_topology",
    "cost239",
    "hop_distances",
    "shortest_path",
]


class Arc(NamedTuple):
    tail: int
    head: int

    def reversed(self) -> "Arc":
        return Arc(self.head, self.tail)


@dataclass(frozen=True)
class Topology:
    """Immutable directed view of an undirected fiber network.

    ``nodes`` and ``arcs`` are kept sorted so that every iteration over a
    topology is reproducible.
    """

    nodes: tuple[int, ...]
    arcs: tuple[Arc, ...]
    name: str = ""

    @classmethod
    def from_links(cls, links: Iterable[tuple[int, int]], name: str = "",
                   nodes: Iterable[int] = ()) -> "Topology":
        """Build a topology from undirected links, adding both arc directions.

        Duplicate links collapse. Raises :class:`ValidationError` on a
        self-loop, a non-positive node id or a disconnected graph.
        """
        node_set = set(nodes)
        arc_set = set()
        for u, v in links:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"self-loop on node {u}")
            arc_set.add(Arc(u, v))
            arc_set.add(Arc(v, u))
            node_set.update((u, v))
        bad = [n for n in node_set if n < 1]
        if bad:
            raise ValidationError(f"node ids must be positive, got {min(bad)}")
        topo = cls(tuple(sorted(node_set)), tuple(sorted(arc_set)), name)
        topo._check_connected()
        return topo

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for tail, head in self.arcs:
            adj[tail].append(head)
        return {n: tuple(sorted(hs)) for n, hs in adj.items()}

    @cached_property
    def links(self) -> tuple[tuple[int, int], ...]:
        """Undirected links as ``(low, high)`` pairs."""
        return tuple(a for a in self.arcs if a.tail < a.head)

    @cached_property
    def out_arcs(self) -> dict[int, tuple[Arc, ...]]:
        return {n: tuple(Arc(n, h) for h in self.neighbors[n]) for n in self.nodes}

    @cached_property
    def in_arcs(self) -> dict[int, tuple[Arc, ...]]:
        return {n: tuple(Arc(h, n) for h in self.neighbors[n]) for n in self.nodes}

    def __contains__(self, node) -> bool:
        return node in self.neighbors

    def _check_connected(self):
        if not self.nodes:
            return
        root = self.nodes[0]
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        if len(seen) != len(self.nodes):
            missing = min(n for n in self.nodes if n not in seen)
            raise ValidationError(
                f"topology is disconnected: node {missing} unreachable from node {root}")


def parse_topology(text: str, name: str = "") -> Topology:
    """Parse an edge-list document.

    One undirected link per line as two whitespace-separated positive
    integers. Lines starting with ``#`` and blank lines are ignored.

    Examples
    --------
    >>> t = parse_topology("1 2\\n2 3")
    >>> len(t.nodes), len(t.arcs)
    (3, 4)
    """
    links = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected two node ids, got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"node ids must be integers, got {line!r}", lineno) from None
        if u < 1 or v < 1:
            raise ParseError(f"node ids must be positive, got {line!r}", lineno)
        links.append((u, v))
    return Topology.from_links(links, name=name)


def format_topology(topology: Topology) -> str:
    """Serialize to the edge-list format accepted by :func:`parse_topology`."""
    lines = [f"# {topology.name}"] if topology.name else []
    lines.extend(f"{u} {v}" for u, v in topology.links)
    return "\n".join(lines) + "\n"


def load_topology(path) -> Topology:
    path = Path(path)
    return parse_topology(path.read_text(encoding="utf-8"), name=path.stem)


def cost239() -> Topology:
    """The bundled 11-node COST239 network."""
    text = resources.files("aggroute").joinpath("data/cost239.txt").read_text(encoding="utf-8")
    return parse_topology(text, name="COST239")


class DistanceMatrix:
    """All-pairs hop counts indexed by node id.

    ``dist`` is a dense integer array whose rows and columns follow
    ``nodes``; look up values with ``dm[u, v]``.
    """

    def __init__(self, nodes: tuple[int, ...], dist: np.ndarray):
        self.nodes = tuple(nodes)
        self.index = {n: i for i, n in enumerate(self.nodes)}
        self.dist = dist
        self.dist.setflags(write=False)

    def __getitem__(self, pair) -> int:
        u, v = pair
        return int(self.dist[self.index[u], self.index[v]])

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.nodes == other.nodes and np.array_equal(self.dist, other.dist)

    def __repr__(self):
        return f"DistanceMatrix(nodes={self.nodes!r})"


def _bfs_levels(topology: Topology, source: int) -> dict[int, int]:
    level = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in topology.neighbors[u]:
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def hop_distances(topology: Topology) -> DistanceMatrix:
    """Breadth-first search from every node."""
    n = len(topology.nodes)
    dist = np.zeros((n, n), dtype=np.int64)
    for i, u in enumerate(topology.nodes):
        level = _bfs_levels(topology, u)
        for j, v in enumerate(topology.nodes):
            dist[i, j] = level[v]
    return DistanceMatrix(topology.nodes, dist)


def shortest_path(topology: Topology, u: int, v: int,
                  dm: DistanceMatrix | None = None) -> list[int]:
    """Hop-shortest route from ``u`` to ``v`` as a node list.

    Among equal-length routes the lexicographically smallest one is
    returned: each step moves to the smallest-id neighbour that is one hop
    closer to ``v``.
    """
    if u not in topology or v not in topology:
        raise ValidationError(f"unknown node in ({u}, {v})")
    if dm is None:
        to_v = _bfs_levels(topology, v)
    else:
        to_v = {n: dm[n, v] for n in topology.nodes}
    path = [u]
    while path[-1] != v:
        here = path[-1]
        path.append(next(w for w in topology.neighbors[here] if to_v[w] == to_v[here] - 1))
    return path
