import pytest

from hopfgalois.comod import Measuring, trivial_action
from hopfgalois.crossed import cocycle_from_table, crossed_product
from hopfgalois.fixtures import builtin_fixtures
from hopfgalois.hopf import (
    build_dual_group_algebra,
    build_group_algebra,
    build_sweedler,
    cyclic_group,
    field_algebra,
    product_group,
    symmetric_group,
)
from hopfgalois.linalg import LinMap, tensor_space
from hopfgalois.scalars import ONE


@pytest.fixture(scope="session")
def fs():
    return builtin_fixtures()


@pytest.fixture(scope="session")
def kZ2():
    return build_group_algebra(*cyclic_group(2))


@pytest.fixture(scope="session")
def kV4():
    return build_group_algebra(*product_group(cyclic_group(2, "a"), cyclic_group(2, "b")))


@pytest.fixture(scope="session")
def kZ3():
    return build_group_algebra(*cyclic_group(3))


@pytest.fixture(scope="session")
def kS3():
    return build_group_algebra(*symmetric_group(3))


@pytest.fixture(scope="session")
def dS3():
    return build_dual_group_algebra(*symmetric_group(3))


@pytest.fixture(scope="session")
def H4():
    return build_sweedler()


@pytest.fixture(scope="session")
def K():
    return field_algebra()


def sign_action(H, B, negate):
    """h▷u = -u for h in ``negate``, trivial otherwise; B = kZ2 with basis (1, u)."""
    cols = []
    for h in range(H.dim):
        s = -ONE if H.space.labels[h] in negate else ONE
        cols += [{0: ONE}, {1: s}]
    return Measuring(H, B, LinMap(tensor_space(H.space, B.space), B.space, cols))


@pytest.fixture(scope="session")
def sign_kZ2(kZ2):
    return sign_action(kZ2, kZ2.alg, {"g"})


@pytest.fixture(scope="session")
def q_sigma_neg1(kZ2, K):
    M = trivial_action(kZ2, K)
    return crossed_product(M, cocycle_from_table(M, {("g", "g"): {0: -ONE}}))


# one pass/fail line per acceptance criterion, filled in by test_acceptance
CRITERIA: dict[int, bool] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if CRITERIA[n] else 'FAIL'}")
