import os

import pytest
from hypothesis import settings

from barrier_rhs.core import PhysicalConfig
from barrier_rhs.testspace import make_test_function
from barrier_rhs.transforms import QuadratureSpec

settings.register_profile("ci", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

# (center, width, momentum): Gaussian bodies clear of the barrier edges
TRANSFORM_FUNCTIONS = ((-4.0, 0.6, 1.5), (5.0, 0.7, -2.0), (-2.5, 0.4, 3.0))


@pytest.fixture(scope="session")
def cfg():
    return PhysicalConfig(v0=10.0, a=0.0, b=1.0, m=1.0, hbar=1.0)


@pytest.fixture(scope="session")
def spec():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def transform_functions(cfg):
    return [make_test_function(cfg, *p) for p in TRANSFORM_FUNCTIONS]


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
