import logging

import pytest

from cellkey_dp.core import experiment_config
from cellkey_dp.core.calibration import CalibrationInput, design_guide
from cellkey_dp.core.config import get_settings
from cellkey_dp.core.sampler import build_lookup

logging.basicConfig(level=logging.INFO)

EXAMPLE_EPSILON = 0.5
EXAMPLE_DELTA = 1e-4


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; every test starts from the environment it sets up."""
    get_settings.cache_clear()
    experiment_config.experiment_config = None
    yield
    get_settings.cache_clear()
    experiment_config.experiment_config = None


@pytest.fixture
def uniqueness_check(monkeypatch):
    monkeypatch.setenv("CKDP_ROOT_UNIQUENESS_CHECK", "true")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def example_design():
    """The (epsilon=0.5, delta=1e-4) design: D*=25."""
    return design_guide(CalibrationInput(epsilon=EXAMPLE_EPSILON, delta_target=EXAMPLE_DELTA))


@pytest.fixture(scope="session")
def example_pmf(example_design):
    return example_design.pmf


@pytest.fixture(scope="session")
def example_table(example_pmf):
    return build_lookup(example_pmf, 32)
