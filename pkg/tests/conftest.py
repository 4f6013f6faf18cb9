import warnings

import numpy as np
import pytest

from conjcodes import catalog
from conjcodes.conjugate_pair import ConjugatePair
from conjcodes.finite_field import FieldParams
from conjcodes.linear_codes import LinearCode

GF2 = FieldParams(2)
GF3 = FieldParams(3)
GF4 = FieldParams(2, 2)

HAMMING = np.array([
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
])


def random_code(rng, n, field, k=None):
    k = rng.integers(0, n + 1) if k is None else k
    return LinearCode(rng.integers(0, field.q, size=(k, n)), field, n)


def random_pair(rng, n, field):
    """C1 random, C2 = C1^perp plus random extra generators, so C1^perp <= C2."""
    c1 = random_code(rng, n, field, k=rng.integers(1, n + 1))
    extra = rng.integers(0, field.q, size=(rng.integers(0, n + 1), n))
    c2 = LinearCode(np.concatenate([c1.dual().gen, extra]), field, n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ConjugatePair(c1, c2)


@pytest.fixture(scope="session")
def steane():
    return catalog.steane()


@pytest.fixture(scope="session")
def css422():
    return catalog.css422()


@pytest.fixture(scope="session")
def trivial():
    return catalog.load_builtin("trivial")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
