"""Command-line entry point.

Exit status: 0 success, 1 validation or equivalence failure, 2 usage
error, 3 I/O error. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .errors import AggrouteError
from .experiment import DEFAULT_BASE_SEED, ExperimentConfig, format_summary, records_to_csv, run_experiment, summarize
from .ilp import build_ilp, export_lp, objective_value, validate_assignment
from .oracle import brute_force_optimum, random_instance
from .solver import conventional_solve, encode, plan_from_json, plan_to_json, solve
from .topology import cost239, load_topology
from .traffic import format_demands, generate_two_to_many, load_demands

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _topology(args):
    return cost239() if args.topology is None else load_topology(args.topology)


def _instance(args):
    topo = _topology(args)
    return topo, load_demands(args.demands, topo)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_plan(args):
    topo, demands = _instance(args)
    plan = solve(topo, demands)
    _emit(plan_to_json(plan), args.out)
    print(f"total cost: {plan.total_cost}", file=sys.stderr)
    return EXIT_OK


def cmd_baseline(args):
    topo, demands = _instance(args)
    plan = conventional_solve(topo, demands)
    if args.out is not None:
        _emit(plan_to_json(plan), args.out)
    print(plan.total_cost)
    return EXIT_OK


def cmd_export_lp(args):
    topo, demands = _instance(args)
    _emit(export_lp(build_ilp(topo, demands)), args.out)
    return EXIT_OK


def cmd_validate(args):
    topo, demands = _instance(args)
    with open(args.plan, encoding="utf-8") as fh:
        plan = plan_from_json(fh.read())
    model = build_ilp(topo, demands)
    values = encode(plan, model)
    violations = validate_assignment(model, values)
    for v in violations:
        print(v, file=sys.stderr)
    obj = objective_value(model, values)
    if obj != plan.total_cost:
        print(f"objective {obj} differs from stated total_cost {plan.total_cost}", file=sys.stderr)
        return EXIT_INVALID
    if violations:
        return EXIT_INVALID
    print(f"valid, objective {obj}")
    return EXIT_OK


def cmd_oracle_check(args):
    failures = 0
    for k in range(args.samples):
        topo, demands = random_instance(args.seed + k)
        expected, _ = brute_force_optimum(topo, demands)
        got = solve(topo, demands).total_cost
        if got != expected:
            failures += 1
            print(f"instance {args.seed + k}: solver {got} != oracle {expected}", file=sys.stderr)
    print(f"{args.samples - failures}/{args.samples} instances match")
    return EXIT_INVALID if failures else EXIT_OK


def cmd_gen_traffic(args):
    demands = generate_two_to_many(_topology(args), args.dests, args.seed)
    _emit(format_demands(demands), args.out)
    return EXIT_OK


def _loads(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_experiment(args):
    cfg = ExperimentConfig(args.topology, args.loads, args.samples, args.seed, None, args.verify)
    records = run_experiment(cfg)
    if args.out is None:
        sys.stdout.write(records_to_csv(records))
    else:
        _emit(records_to_csv(records), args.out)
        sys.stdout.write(format_summary(summarize(records)))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="aggroute", description="Aggregation-aware optical routing.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, demands=True, out=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--topology", metavar="PATH", help="edge-list file (default: bundled COST239)")
        if demands:
            sp.add_argument("--demands", metavar="PATH", required=True, help="demand CSV")
        if out:
            sp.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        sp.set_defaults(func=func)
        return sp

    add("plan", cmd_plan, "optimal aggregation-aware plan as JSON")
    add("baseline", cmd_baseline, "conventional shortest-path cost")
    add("export-lp", cmd_export_lp, "write the ILP in LP format")
    v = add("validate", cmd_validate, "check a plan JSON against the ILP", out=False)
    v.add_argument("--plan", metavar="PATH", required=True)
    o = add("oracle-check", cmd_oracle_check, "compare solver and brute force on random instances",
            demands=False, out=False)
    o.add_argument("--samples", type=int, default=100)
    o.add_argument("--seed", type=int, default=0)
    g = add("gen-traffic", cmd_gen_traffic, "write random two-to-many demands", demands=False)
    g.add_argument("--dests", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    e = add("experiment", cmd_experiment, "run the load/sample comparison", demands=False)
    e.add_argument("--loads", type=_loads, default=(5, 7, 9))
    e.add_argument("--samples", type=int, default=10)
    e.add_argument("--seed", type=int, default=DEFAULT_BASE_SEED)
    e.add_argument("--verify", action="store_true", help="re-check every plan against the ILP")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AggrouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
