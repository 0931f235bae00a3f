import sys

import pytest

import hyperdelta.scattering as sc
from hyperdelta.specfun import bessel_k
from hyperdelta.sturmian import ModelParams


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # first call triggers numba compilation; keep it out of timed tests
    bessel_k([0.0, 1j, 1 + 1j], 1.0)


@pytest.fixture
def attractive():
    return ModelParams(-1.0)


@pytest.fixture(params=[0.0, 0.1, 0.3, 0.45])
def channel(request, attractive):
    k = request.param
    return sc.channel_energy(k, attractive), sc.solve(k, attractive)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
