import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flagcalc.algebra import StepGraphon, complete_bipartite_graphon  # noqa: E402
from flagcalc.flags import Flag, make_type  # noqa: E402
from flagcalc.graphs import Graph, complete, edgeless, path  # noqa: E402

K2, K3, K4 = complete(2), complete(3), complete(4)
I2, I3 = edgeless(2), edgeless(3)
P3, P4 = path(3), path(4)
E3 = Graph(3, frozenset({(2, 3)}))
TAU1 = make_type(1)

LI2 = Flag(I2, (1,), TAU1)
LE2 = Flag(K2, (1,), TAU1)
# the six one-vertex-labelled graphs on [3]
LI3 = Flag(I3, (1,), TAU1)
LE3_ISO = Flag(E3, (1,), TAU1)  # label on the isolated vertex
LE3_END = Flag(E3, (2,), TAU1)  # label on an endpoint of the edge
LP3_END = Flag(P3, (1,), TAU1)
LP3_MID = Flag(P3, (2,), TAU1)
LK3 = Flag(K3, (1,), TAU1)


# five step graphons with different shapes
GRAPHON_SUITE = [
    StepGraphon.constant("1/2"),
    complete_bipartite_graphon(),
    StepGraphon.constant("1/3"),
    StepGraphon(("1/3", "2/3"), (("1/2", "1/5"), ("1/5", "3/4"))),
    StepGraphon(
        ("1/4", "1/4", "1/2"),
        (("0", "1", "2/3"), ("1", "1/3", "0"), ("2/3", "0", "1")),
    ),
]


@pytest.fixture(scope="session")
def graphon_suite():
    return GRAPHON_SUITE


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
