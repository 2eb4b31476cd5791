"""
Integer linear program for aggregation-aware routing.

Variables (all binary), for demand ``d``, arc ``e`` and node ``v``:

* ``X(d, e)``: arc ``e`` carries the lightpath of ``d``;
* ``Z(d, v, e)``: ``d`` is aggregated at ``v`` and ``e`` carries the
  aggregated lightpath from ``v`` to the destination;
* ``THETA(d, v)``: ``d`` is aggregated at ``v``;
* ``F(d1, d2)``: ``d1`` is aggregated with ``d2`` (``d1 != d2``).

The objective counts wavelength-links: every ``X`` costs 1 and every ``Z``
refunds 1/2, so a segment shared by two partners is paid once. Constraint
rows are tagged ``eq2`` ... ``eq12``; the tag of a row is the part of its
name before the first underscore.

Coefficients are :class:`fractions.Fraction` throughout; no floating
point enters construction, validation or objective evaluation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple

import numpy as np

from .errors import AssignmentError, ValidationError
from .topology import Arc, Topology
from .traffic import DemandSet

__all__ = [
    "VarKind",
    "VarRef",
    "LinearConstraint",
    "IlpModel",
    "Violation",
    "build_ilp",
    "export_lp",
    "validate_assignment",
    "objective_value",
    "solve_milp",
]

HALF = Fraction(1, 2)
ONE = Fraction(1)


class VarKind(enum.Enum):
    X = "x"
    Z = "z"
    THETA = "t"
    F = "f"


class VarRef(NamedTuple):
    kind: VarKind
    demand: int
    arc: Arc | None = None
    node: int | None = None
    partner: int | None = None

    @property
    def name(self) -> str:
        """Deterministic LP column name."""
        k = self.kind
        if k is VarKind.X:
            return f"x_d{self.demand}_e{self.arc.tail}_{self.arc.head}"
        if k is VarKind.Z:
            return f"z_d{self.demand}_v{self.node}_e{self.arc.tail}_{self.arc.head}"
        if k is VarKind.THETA:
            return f"t_d{self.demand}_v{self.node}"
        return f"f_d{self.demand}_d{self.partner}"


def X(d, arc):
    return VarRef(VarKind.X, d, arc=Arc(*arc))


def Z(d, v, arc):
    return VarRef(VarKind.Z, d, arc=Arc(*arc), node=v)


def THETA(d, v):
    return VarRef(VarKind.THETA, d, node=v)


def F(d1, d2):
    return VarRef(VarKind.F, d1, partner=d2)


class LinearConstraint(NamedTuple):
    """``sum(coef * var) <relation> rhs``; ``tag`` doubles as the LP row name."""

    terms: tuple[tuple[Fraction, VarRef], ...]
    relation: str
    rhs: Fraction
    tag: str

    @property
    def family(self) -> str:
        return self.tag.split("_", 1)[0]

    def lhs(self, values: Mapping[VarRef, int]) -> Fraction:
        return sum((c * values[v] for c, v in self.terms), Fraction(0))

    def holds(self, lhs: Fraction) -> bool:
        if self.relation == "<=":
            return lhs <= self.rhs
        if self.relation == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


class Violation(NamedTuple):
    tag: str
    lhs: Fraction
    relation: str
    rhs: Fraction

    def __str__(self):
        return f"{self.tag}: {self.lhs} {self.relation} {self.rhs} violated"


@dataclass(frozen=True)
class IlpModel:
    variables: tuple[VarRef, ...]
    constraints: tuple[LinearConstraint, ...]
    objective: tuple[tuple[Fraction, VarRef], ...]
    topology: Topology | None = field(default=None, compare=False, repr=False)
    demands: DemandSet | None = field(default=None, compare=False, repr=False)

    @cached_property
    def column(self) -> dict[VarRef, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def count(self, kind: VarKind) -> int:
        return sum(1 for v in self.variables if v.kind is kind)

    def families(self) -> list[str]:
        seen = dict.fromkeys(c.family for c in self.constraints)
        return list(seen)

    def zero_assignment(self) -> dict[VarRef, int]:
        return dict.fromkeys(self.variables, 0)


def _row(terms, relation, rhs, tag) -> LinearConstraint | None:
    merged: dict[VarRef, Fraction] = {}
    for c, v in terms:
        merged[v] = merged.get(v, Fraction(0)) + Fraction(c)
    kept = tuple((c, v) for v, c in merged.items() if c != 0)
    if not kept:
        # tautological rows (empty sums) carry no information and cannot be written in LP form
        return None
    return LinearConstraint(kept, relation, Fraction(rhs), tag)


def build_ilp(topology: Topology, demands: DemandSet) -> IlpModel:
    """Expand every constraint family over its quantifiers.

    Rows whose expansion has no variable terms (for instance the
    different-destination row of a demand when all demands share one
    destination) are omitted. ``F(d, d)`` does not exist, so pairing rows
    are only generated for ``d1 != d2``.
    """
    if len(demands) == 0:
        raise ValidationError("cannot build a model for an empty demand set")
    demands.check_nodes(topology)
    V = topology.nodes
    E = topology.arcs
    D = demands.demands
    ids = [d.id for d in D]

    variables: list[VarRef] = []
    variables += [X(d, e) for d in ids for e in E]
    variables += [Z(d, v, e) for d in ids for v in V for e in E]
    variables += [THETA(d, v) for d in ids for v in V]
    variables += [F(d1, d2) for d1 in ids for d2 in ids if d1 != d2]

    objective = [(ONE, X(d, e)) for d in ids for e in E]
    objective += [(-HALF, Z(d, v, e)) for d in ids for v in V for e in E]

    rows: list[LinearConstraint | None] = []
    add = rows.append
    outs, ins = topology.out_arcs, topology.in_arcs

    for dem in D:
        d = dem.id
        # routing flow conservation
        for v in V:
            rhs = 1 if v == dem.source else -1 if v == dem.dest else 0
            add(_row([(1, X(d, e)) for e in outs[v]] + [(-1, X(d, e)) for e in ins[v]],
                     "=", rhs, f"eq2_d{d}_v{v}"))
        # aggregated at most once, never at the destination
        add(_row([(1, THETA(d, v)) for v in V], "<=", 1, f"eq3_d{d}_sum"))
        add(_row([(1, THETA(d, dem.dest))], "=", 0, f"eq3_d{d}_v{dem.dest}"))

    for d1 in D:
        partners = [d2 for d2 in D if d2.id != d1.id]
        add(_row([(1, F(d1.id, d2.id)) for d2 in partners], "<=", 1, f"eq4_d{d1.id}"))
        add(_row([(1, F(d2.id, d1.id)) for d2 in partners if d2.dest != d1.dest],
                 "=", 0, f"eq5_d{d1.id}"))
        for d2 in partners:
            add(_row([(1, F(d1.id, d2.id)), (-1, F(d2.id, d1.id))], "=", 0,
                     f"eq6_d{d1.id}_d{d2.id}"))
        pair_sum = [(-1, F(d1.id, d2.id)) for d2 in partners]
        for e in E:
            add(_row([(1, Z(d1.id, v, e)) for v in V] + pair_sum, "<=", 0,
                     f"eq7_d{d1.id}_e{e.tail}_{e.head}"))
        add(_row([(-c, f) for c, f in pair_sum] + [(-1, THETA(d1.id, v)) for v in V], "=", 0,
                 f"eq8_d{d1.id}"))

    for d1 in ids:
        for d2 in ids:
            if d1 == d2:
                continue
            for v in V:
                add(_row([(1, THETA(d1, v)), (-1, THETA(d2, v)), (1, F(d1, d2))], "<=", 1,
                         f"eq9_d{d1}_d{d2}_v{v}"))
                add(_row([(1, THETA(d2, v)), (-1, THETA(d1, v)), (1, F(d1, d2))], "<=", 1,
                         f"eq10_d{d1}_d{d2}_v{v}"))

    for d in ids:
        for v in V:
            for e in E:
                add(_row([(1, Z(d, v, e)), (-1, X(d, e))], "<=", 0,
                         f"eq11_d{d}_v{v}_e{e.tail}_{e.head}"))

    for dem in D:
        d = dem.id
        for v in V:
            for i in V:
                terms = [(1, Z(d, v, e)) for e in outs[i]] + [(-1, Z(d, v, e)) for e in ins[i]]
                if i == v:
                    terms.append((-1, THETA(d, v)))
                elif i == dem.dest:
                    terms.append((1, THETA(d, v)))
                add(_row(terms, "=", 0, f"eq12_d{d}_v{v}_i{i}"))

    constraints = tuple(r for r in rows if r is not None)
    return IlpModel(tuple(variables), constraints, tuple(objective), topology, demands)


def _check_total(model: IlpModel, values: Mapping[VarRef, int]):
    missing = [v for v in model.variables if v not in values]
    if missing:
        shown = ", ".join(v.name for v in missing[:10])
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        raise AssignmentError(f"assignment misses {len(missing)} variables: {shown}{more}")
    bad = [v for v in model.variables if values[v] not in (0, 1)]
    if bad:
        raise AssignmentError(f"non-binary value for {bad[0].name}: {values[bad[0]]!r}")


def validate_assignment(model: IlpModel, values: Mapping[VarRef, int]) -> list[Violation]:
    """Every constraint row the assignment violates, in model order."""
    _check_total(model, values)
    out = []
    for row in model.constraints:
        lhs = row.lhs(values)
        if not row.holds(lhs):
            out.append(Violation(row.tag, lhs, row.relation, row.rhs))
    return out


def objective_value(model: IlpModel, values: Mapping[VarRef, int]) -> Fraction:
    _check_total(model, values)
    return sum((c * values[v] for c, v in model.objective), Fraction(0))


def _fmt_coef(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return repr(float(c))


def _fmt_terms(terms, per_line=8) -> list[str]:
    chunks = []
    for c, v in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        chunks.append(f"{sign} {v.name}" if mag == 1 else f"{sign} {_fmt_coef(mag)} {v.name}")
    return [" ".join(chunks[i:i + per_line]) for i in range(0, len(chunks), per_line)]


def export_lp(model: IlpModel) -> str:
    """Render the model in CPLEX LP text format.

    Long expressions are wrapped onto continuation lines; every row is
    named by its tag and every variable is declared binary.
    """
    out = ["\\ aggregation-aware routing", "Minimize"]
    obj = _fmt_terms(model.objective)
    out.append(" obj: " + (obj[0] if obj else "0"))
    out.extend("   " + line for line in obj[1:])
    out.append("Subject To")
    for row in model.constraints:
        lines = _fmt_terms(row.terms)
        rel = "=" if row.relation == "=" else row.relation
        lines[-1] += f" {rel} {_fmt_coef(row.rhs)}"
        out.append(f" {row.tag}: {lines[0]}")
        out.extend("   " + line for line in lines[1:])
    out.append("Binary")
    out.extend(f" {v.name}" for v in model.variables)
    out.append("End")
    return "\n".join(out) + "\n"


def solve_milp(model: IlpModel, time_limit: float | None = None):
    """Solve the model with HiGHS through :func:`scipy.optimize.milp`.

    Independent of the combinatorial solver; meant for cross-checks on small
    instances. Returns ``(objective, assignment)`` with the objective
    recomputed exactly from the rounded integral solution.
    """
    from scipy.optimize import Bounds, LinearConstraint as ScipyConstraint, milp
    from scipy.sparse import coo_matrix

    col = model.column
    n = len(model.variables)
    c = np.zeros(n)
    for coef, v in model.objective:
        c[col[v]] += float(coef)
    rows, cols, vals, lo, hi = [], [], [], [], []
    for r, row in enumerate(model.constraints):
        for coef, v in row.terms:
            rows.append(r)
            cols.append(col[v])
            vals.append(float(coef))
        rhs = float(row.rhs)
        lo.append(-np.inf if row.relation == "<=" else rhs)
        hi.append(np.inf if row.relation == ">=" else rhs)
    A = coo_matrix((vals, (rows, cols)), shape=(len(model.constraints), n)).tocsr()
    options = {} if time_limit is None else {"time_limit": time_limit}
    res = milp(c, constraints=ScipyConstraint(A, lo, hi), integrality=np.ones(n),
               bounds=Bounds(0, 1), options=options)
    if res.x is None:
        raise ValidationError(f"MILP solver failed: {res.message}")
    values = {v: int(round(res.x[i])) for i, v in enumerate(model.variables)}
    return objective_value(model, values), values
