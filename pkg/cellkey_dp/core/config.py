from functools import lru_cache
from typing import Literal
import logging

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Numerical and runtime settings, overridable through CKDP_* variables or .env."""

    # Root finding for the shape exponent
    ROOT_XTOL: float = 1e-15
    ROOT_MAX_ITER: int = 200
    ROOT_RESIDUAL_TOL: float = 1e-13
    ROOT_UNIQUENESS_CHECK: bool = False
    ROOT_SCAN_STEP: float = 1e-3

    # Calibration
    KAPPA_DIVISOR: float = 10.0
    DESIGN_D_MAX: int = 200

    # Numeric best-delta search
    GAMMA_GRID_LO: float = 0.0001
    GAMMA_GRID_HI: float = 0.3
    GAMMA_GRID_STEP: float = 0.0001

    # Cell keys
    BIG_N: int = 4294967291
    DEFAULT_KEYSIZE_LOG2: int = 32

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: Literal["text", "json"] = "text"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CKDP_",
        case_sensitive=True,
        extra="ignore",
    )

    @field_validator("ROOT_XTOL", "ROOT_RESIDUAL_TOL", "ROOT_SCAN_STEP", "GAMMA_GRID_STEP")
    @classmethod
    def validate_positive(cls, v):
        if not v > 0:
            raise ValueError("Tolerances and steps must be positive")
        return v

    @field_validator("KAPPA_DIVISOR")
    @classmethod
    def validate_kappa_divisor(cls, v):
        if v < 1:
            raise ValueError("KAPPA_DIVISOR below 1 would leave the admissible kappa interval")
        return v

    @field_validator("BIG_N")
    @classmethod
    def validate_big_n(cls, v):
        if not isprime(v):
            raise ValueError(f"BIG_N must be prime, got {v}")
        return v

    @field_validator("DEFAULT_KEYSIZE_LOG2")
    @classmethod
    def validate_keysize(cls, v):
        if not 1 <= v <= 32:
            raise ValueError("DEFAULT_KEYSIZE_LOG2 must be between 1 and 32")
        return v


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings instance."""
    settings = Settings()
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
