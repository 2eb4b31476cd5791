"""
Conventional versus aggregation-aware cost over random two-to-many traffic.

For every load (number of destinations) and sample index a seed is
derived from the base seed, a demand set is drawn, and both routings are
costed. Results go to a CSV with the columns listed in ``CSV_HEADER``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import struct
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, Sequence

from .errors import ParameterError, VerificationError
from .ilp import build_ilp, objective_value, validate_assignment
from .solver import AggregationPlan, conventional_solve, encode, solve
from .topology import Topology, cost239, hop_distances, load_topology
from .traffic import generate_two_to_many

__all__ = [
    "DEFAULT_BASE_SEED",
    "CSV_HEADER",
    "ExperimentConfig",
    "ExperimentRecord",
    "SummaryRow",
    "sample_seed",
    "run_experiment",
    "records_to_csv",
    "summarize",
    "format_summary",
]

log = logging.getLogger(__name__)

DEFAULT_BASE_SEED = 20220239
CSV_HEADER = ("load", "sample", "seed", "cost_conventional", "cost_aggregation", "gain")
GAIN_DIGITS = 6


@dataclass(frozen=True)
class ExperimentConfig:
    topology_path: str | None = None  # None selects the bundled COST239 network
    loads: tuple[int, ...] = (5, 7, 9)
    samples_per_load: int = 10
    base_seed: int = DEFAULT_BASE_SEED
    output_path: str | None = None
    verify: bool = False

    def topology(self) -> Topology:
        return cost239() if self.topology_path is None else load_topology(self.topology_path)


class ExperimentRecord(NamedTuple):
    load: int
    sample_index: int
    seed: int
    cost_conventional: int
    cost_aggregation: int

    @property
    def gain(self) -> Fraction:
        if self.cost_conventional == 0:
            return Fraction(0)
        return Fraction(self.cost_conventional - self.cost_aggregation, self.cost_conventional)


def sample_seed(base_seed: int, load: int, index: int) -> int:
    """64-bit per-sample seed: BLAKE2b-64 of the little-endian triple."""
    digest = hashlib.blake2b(struct.pack("<QQQ", base_seed, load, index), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _verify(topology, demands, plan: AggregationPlan, label):
    model = build_ilp(topology, demands)
    values = encode(plan, model)
    bad = validate_assignment(model, values)
    if bad:
        raise VerificationError(f"{label} plan violates {len(bad)} rows, first: {bad[0]}")
    obj = objective_value(model, values)
    if obj != plan.total_cost:
        raise VerificationError(f"{label} plan objective {obj} != reported cost {plan.total_cost}")


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    topology = cfg.topology()
    if not cfg.loads:
        raise ParameterError("at least one load is required")
    if cfg.samples_per_load < 1:
        raise ParameterError(f"samples_per_load must be positive, got {cfg.samples_per_load}")
    for load in cfg.loads:
        if not 1 <= load <= len(topology.nodes) - 2:
            raise ParameterError(
                f"load {load} outside [1, {len(topology.nodes) - 2}] for {len(topology.nodes)} nodes")
    dm = hop_distances(topology)
    records = []
    for load in cfg.loads:
        for index in range(cfg.samples_per_load):
            seed = sample_seed(cfg.base_seed, load, index)
            demands = generate_two_to_many(topology, load, seed)
            conv = conventional_solve(topology, demands, dm)
            agg = solve(topology, demands, dm)
            if cfg.verify:
                _verify(topology, demands, conv, "conventional")
                _verify(topology, demands, agg, "aggregation")
            rec = ExperimentRecord(load, index, seed, conv.total_cost, agg.total_cost)
            log.debug("load=%d sample=%d conv=%d agg=%d", load, index, conv.total_cost, agg.total_cost)
            records.append(rec)
    if cfg.output_path is not None:
        path = Path(cfg.output_path)
        try:
            path.write_text(records_to_csv(records), encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write results to {path}: {exc.strerror}") from exc
    return records


def _fixed(q: Fraction, digits: int = GAIN_DIGITS) -> str:
    # round half up on the exact rational, so output never depends on float formatting
    scale = 10 ** digits
    n = (q.numerator * scale * 2 + q.denominator) // (2 * q.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in sorted(records, key=lambda r: (r.load, r.sample_index)):
        writer.writerow([r.load, r.sample_index, r.seed, r.cost_conventional,
                         r.cost_aggregation, _fixed(r.gain)])
    return buf.getvalue()


class SummaryRow(NamedTuple):
    load: int
    samples: int
    mean_gain: Fraction
    min_gain: Fraction
    max_gain: Fraction


def summarize(records: Sequence[ExperimentRecord]) -> list[SummaryRow]:
    """Per-load mean, minimum and maximum gain, loads ascending."""
    if not records:
        raise ParameterError("cannot summarize an empty record list")
    by_load: dict[int, list[Fraction]] = {}
    for r in records:
        by_load.setdefault(r.load, []).append(r.gain)
    return [SummaryRow(load, len(g), sum(g, Fraction(0)) / len(g), min(g), max(g))
            for load, g in sorted(by_load.items())]


def format_summary(rows: Sequence[SummaryRow], digits: int = 4) -> str:
    lines = ["load,samples,mean_gain,min_gain,max_gain"]
    for r in rows:
        lines.append(",".join([str(r.load), str(r.samples), _fixed(r.mean_gain, digits),
                               _fixed(r.min_gain, digits), _fixed(r.max_gain, digits)]))
    return "\n".join(lines) + "\n"
