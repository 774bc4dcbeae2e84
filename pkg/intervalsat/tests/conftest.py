"""
Sweep sizes for the randomized tests

By default every sweep runs a reduced number of cases. Pass --full-sweeps
(or set INTERVALSAT_FULL_SWEEPS=1) to run them at acceptance scale.
"""

import os

import pytest

FULL_SWEEPS_ENV = "INTERVALSAT_FULL_SWEEPS"


def pytest_addoption(parser):
    parser.addoption(
        "--full-sweeps",
        action="store_true",
        default=False,
        help="Run the randomized sweeps at acceptance scale",
    )


def full_sweeps(config) -> bool:
    return config.getoption("--full-sweeps") or os.environ.get(FULL_SWEEPS_ENV, "0") not in ("", "0")


@pytest.fixture
def sweep(request):
    """Pick between the reduced and the acceptance-scale size of a sweep"""
    full = full_sweeps(request.config)

    def size(reduced: int, acceptance: int) -> int:
        return acceptance if full else reduced

    return size
