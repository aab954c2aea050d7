import sys

import pytest
from hypothesis import HealthCheck, settings

from eclab.ffield import BinaryField, PrimeField

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


@pytest.fixture
def F13():
    return PrimeField(13)


@pytest.fixture
def F101():
    return PrimeField(101)


@pytest.fixture
def GF256():
    return BinaryField(8)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "REPORT", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
