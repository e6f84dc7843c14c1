import pytest

from circlecolor.intervals import IntervalRep, build_dag, build_graph, normalize


# pentagon witness: the overlap graph of these five intervals is C5
C5_RAW = [(1, 4), (3, 6), (5, 8), (7, 10), (2, 9)]

# path on three vertices, from the sequence (5,3,1,4,6,2)
P3_RAW = [(5, 3), (1, 4), (6, 2)]

NESTED_RAW = [(1, 4), (2, 3)]


@pytest.fixture(scope="session")
def c5() -> IntervalRep:
    return normalize(C5_RAW)


@pytest.fixture(scope="session")
def p3() -> IntervalRep:
    return normalize(P3_RAW)


@pytest.fixture(scope="session")
def nested() -> IntervalRep:
    return normalize(NESTED_RAW)


@pytest.fixture(scope="session")
def c5_graph(c5):
    return build_graph(c5)


@pytest.fixture(scope="session")
def c5_dag(c5):
    return build_dag(c5)
