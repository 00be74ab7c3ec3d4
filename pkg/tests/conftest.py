import pytest

from cflink.graph import Graph, parse_edge_list, random_graph


@pytest.fixture
def p4():
    return parse_edge_list("1 2\n2 3\n3 4\n")


@pytest.fixture
def k4():
    return parse_edge_list("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")


@pytest.fixture
def star5():
    # centre c with four leaves
    return parse_edge_list("c a\nc b\nc d\nc e\n")


@pytest.fixture
def k2():
    return Graph(2, [(0, 1)])


def er_graphs(count, n, p, offset=0):
    return [random_graph(n, p, seed=offset + i) for i in range(count)]


# acceptance criteria report their verdicts here; printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line[1])
