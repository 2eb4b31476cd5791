from importlib import resources

import pytest

from aggroute.topology import Topology, cost239, parse_topology
from aggroute.traffic import DemandSet, parse_demands

# Reference low-load sample on COST239.
# (source, dest, route, aggregation node, aggregated links, partner (source, dest))
TABLE1 = [
    (7, 2, (7, 1, 2), 7, (7, 1, 2), (9, 2)),
    (7, 11, (7, 9, 11), 9, (9, 11), (9, 11)),
    (7, 4, (7, 5, 4), 7, (7, 5, 4), (9, 4)),
    (7, 3, (7, 8, 3), 8, (8, 3), (9, 3)),
    (7, 1, (7, 1), 7, (7, 1), (9, 1)),
    (9, 2, (9, 7, 1, 2), 7, (7, 1, 2), (7, 2)),
    (9, 11, (9, 11), 9, (9, 11), (7, 11)),
    (9, 4, (9, 7, 5, 4), 7, (7, 5, 4), (7, 4)),
    (9, 3, (9, 8, 3), 8, (8, 3), (7, 3)),
    (9, 1, (9, 7, 1), 7, (7, 1), (7, 1)),
]

TABLE2 = {
    (7, 2): (7, 1, 2),
    (7, 11): (7, 9, 11),
    (7, 4): (7, 5, 4),
    (7, 3): (7, 8, 3),
    (7, 1): (7, 1),
    (9, 2): (9, 8, 2),
    (9, 11): (9, 11),
    (9, 4): (9, 10, 4),
    (9, 3): (9, 8, 3),
    (9, 1): (9, 8, 1),
}

# Cost of each table by hand: Table 2 routes sum to 18 links; Table 1 routes
# sum to 20 links of which 2 + 1 + 2 + 1 + 1 = 7 are shared by a pair.
TABLE2_COST = 18
TABLE1_COST = 13


@pytest.fixture(scope="session")
def cost():
    return cost239()


@pytest.fixture(scope="session")
def sample_demands(cost):
    text = resources.files("aggroute").joinpath("data/cost239_sample.csv").read_text(encoding="utf-8")
    return parse_demands(text, cost)


@pytest.fixture(scope="session")
def sample_csv_path():
    return str(resources.files("aggroute").joinpath("data/cost239_sample.csv"))


@pytest.fixture
def path3():
    return parse_topology("1 2\n2 3")


@pytest.fixture
def path3_pair():
    return DemandSet.from_pairs([(1, 3), (2, 3)])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
