import pytest
from pydantic import ValidationError

from cellkey_dp.core.config import Settings, get_settings


def test_defaults():
    settings = get_settings()
    assert settings.ROOT_XTOL == 1e-15
    assert settings.ROOT_MAX_ITER == 200
    assert settings.ROOT_UNIQUENESS_CHECK is False
    assert settings.KAPPA_DIVISOR == 10.0
    assert settings.DESIGN_D_MAX == 200
    assert (settings.GAMMA_GRID_LO, settings.GAMMA_GRID_HI, settings.GAMMA_GRID_STEP) == (0.0001, 0.3, 0.0001)
    assert settings.BIG_N == 4294967291
    assert settings.DEFAULT_KEYSIZE_LOG2 == 32
    assert settings.LOG_FORMAT == "text"


def test_settings_are_cached():
    assert get_settings() is get_settings()


def test_environment_override(monkeypatch):
    monkeypatch.setenv("CKDP_DESIGN_D_MAX", "40")
    monkeypatch.setenv("CKDP_LOG_LEVEL", "DEBUG")
    settings = Settings()
    assert settings.DESIGN_D_MAX == 40
    assert settings.LOG_LEVEL == "DEBUG"


def test_prefix_is_required(monkeypatch):
    monkeypatch.setenv("DESIGN_D_MAX", "40")
    assert Settings().DESIGN_D_MAX == 200


@pytest.mark.parametrize(
    "name,value",
    [
        ("CKDP_BIG_N", "4294967295"),
        ("CKDP_KAPPA_DIVISOR", "0.5"),
        ("CKDP_ROOT_XTOL", "0"),
        ("CKDP_DEFAULT_KEYSIZE_LOG2", "33"),
        ("CKDP_LOG_FORMAT", "xml"),
    ],
)
def test_invalid_values_rejected(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings()
