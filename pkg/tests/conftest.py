import numpy as np
import pytest

from weylkit import make_group
from weylkit.weyl import KernelOperator, PhaseSpaceFunction


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_function(g, rng):
    n = g.order
    return PhaseSpaceFunction(g, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def random_operator(g, rng):
    n = g.order
    return KernelOperator(g, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


SMALL_GROUPS = [[1], [2], [3], [4], [2, 2], [2, 3], [6], [8], [2, 2, 2]]


@pytest.fixture(params=SMALL_GROUPS, ids=lambda o: "x".join(map(str, o)))
def small_group(request):
    return make_group(request.param)


# acceptance criteria register here and are summarized at the end of the run
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, text = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {text}")
