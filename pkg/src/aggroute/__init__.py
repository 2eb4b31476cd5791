"""Aggregation-aware routing for optical networks.

Intermediate nodes may all-optically merge two same-rate lightpaths bound
for the same destination into one higher-order-format lightpath. This
package finds routings of minimum wavelength-link cost under that
capability and compares them with conventional shortest-path routing.
"""

from .errors import (AggrouteError, AssignmentError, CapacityError, ContractError, EncodingError,
                     ParameterError, ParseError, ValidationError, VerificationError)
from .topology import (Arc, DistanceMatrix, Topology, cost239, format_topology, hop_distances,
                       load_topology, parse_topology, shortest_path)
from .traffic import Demand, DemandSet, format_demands, generate_two_to_many, load_demands, parse_demands
from .ilp import IlpModel, VarKind, VarRef, build_ilp, export_lp, objective_value, validate_assignment
from .solver import (AggregationPlan, DemandRoute, PairPrice, conventional_solve, encode, plan_from_json,
                     plan_to_json, price_pair, solve)
from .oracle import OracleLimits, brute_force_optimum
from .experiment import ExperimentConfig, ExperimentRecord, run_experiment, summarize

__version__ = "0.1.0"
