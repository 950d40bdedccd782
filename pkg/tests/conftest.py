from fractions import Fraction

import pytest

from anharmonic import report
from anharmonic.config import RunConfig


@pytest.fixture(scope="session")
def config():
    return RunConfig()


@pytest.fixture(scope="session")
def exact(config):
    """Oracle level E_n(lambda), cached across the whole session."""
    def level(lam, n=0):
        return report.oracle_level(config, Fraction(lam), n)
    return level
