"""Demand sets and the two-to-many random traffic generator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ParameterError, ParseError, ValidationError
from .topology import Topology

__all__ = [
    "Demand",
    "DemandSet",
    "generate_two_to_many",
    "parse_demands",
    "format_demands",
    "load_demands",
]


class Demand(NamedTuple):
    """One wavelength of traffic from ``source`` to ``dest``."""

    id: int
    source: int
    dest: int


@dataclass(frozen=True)
class DemandSet:
    demands: tuple[Demand, ...] = ()
    seed: int | None = None

    def __post_init__(self):
        pairs = set()
        for i, d in enumerate(self.demands):
            if d.id != i:
                raise ValidationError(f"demand ids must be contiguous from 0, got {d.id} at position {i}")
            if d.source == d.dest:
                raise ValidationError(f"demand {d.id} has source equal to destination ({d.source})")
            if (d.source, d.dest) in pairs:
                raise ValidationError(f"duplicate demand {d.source}->{d.dest}")
            pairs.add((d.source, d.dest))

    @classmethod
    def from_pairs(cls, pairs, seed=None) -> "DemandSet":
        return cls(tuple(Demand(i, int(s), int(t)) for i, (s, t) in enumerate(pairs)), seed)

    def __len__(self):
        return len(self.demands)

    def __iter__(self):
        return iter(self.demands)

    def __getitem__(self, i) -> Demand:
        return self.demands[i]

    def by_destination(self) -> dict[int, list[Demand]]:
        """Destination groups in ascending destination order, members in id order."""
        groups: dict[int, list[Demand]] = {}
        for d in sorted(self.demands, key=lambda d: (d.dest, d.id)):
            groups.setdefault(d.dest, []).append(d)
        return groups

    def check_nodes(self, topology: Topology):
        for d in self.demands:
            for n in (d.source, d.dest):
                if n not in topology:
                    raise ValidationError(f"demand {d.source}->{d.dest}: unknown node {n}")


_U64 = 1 << 64


def _draw_index(bitgen: np.random.PCG64, n: int) -> int:
    # unbiased integer in [0, n) from raw PCG64 output; stream-stable across numpy releases
    limit = _U64 - (_U64 % n)
    while True:
        r = int(bitgen.random_raw())
        if r < limit:
            return r % n


def _sample(bitgen: np.random.PCG64, pool: Sequence[int], k: int) -> list[int]:
    # partial Fisher-Yates; result order is draw order
    pool = list(pool)
    for i in range(k):
        j = i + _draw_index(bitgen, len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def generate_two_to_many(topology: Topology, n_dest: int, seed: int) -> DemandSet:
    """Random two-to-many traffic.

    Two distinct sources are drawn uniformly from all nodes, then
    ``n_dest`` distinct destinations uniformly from the remaining nodes.
    Every (source, destination) pair becomes one demand, source-major in
    draw order, giving ``2 * n_dest`` demands.

    The generator is a PCG64 seeded with the 64-bit ``seed``; indices come
    straight from its raw output so the same seed always yields the same
    demands.
    """
    if n_dest < 0 or n_dest > len(topology.nodes) - 2:
        raise ParameterError(
            f"n_dest must be in [0, {len(topology.nodes) - 2}] for {len(topology.nodes)} nodes, got {n_dest}")
    if not 0 <= seed < _U64:
        raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if n_dest == 0:
        return DemandSet((), seed)
    bitgen = np.random.PCG64(seed)
    sources = _sample(bitgen, topology.nodes, 2)
    rest = [n for n in topology.nodes if n not in sources]
    dests = _sample(bitgen, rest, n_dest)
    return DemandSet.from_pairs([(s, t) for s in sources for t in dests], seed=seed)


def parse_demands(text: str, topology: Topology | None = None) -> DemandSet:
    """Parse header-free ``source,dest`` lines; ``#`` starts a comment line.

    When ``topology`` is given every node id must belong to it.
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise ParseError(f"expected 'source,dest', got {line!r}", lineno)
        try:
            s, t = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"node ids must be integers, got {line!r}", lineno) from None
        if s == t:
            raise ValidationError(f"line {lineno}: source equals destination ({s})")
        pairs.append((s, t))
    demands = DemandSet.from_pairs(pairs)
    if topology is not None:
        demands.check_nodes(topology)
    return demands


def format_demands(demands: DemandSet) -> str:
    lines = []
    if demands.seed is not None:
        lines.append(f"# seed {demands.seed}")
    lines.extend(f"{d.source},{d.dest}" for d in demands)
    return "\n".join(lines) + "\n" if lines else ""


def load_demands(path, topology: Topology | None = None) -> DemandSet:
    with open(path, encoding="utf-8") as fh:
        return parse_demands(fh.read(), topology)
