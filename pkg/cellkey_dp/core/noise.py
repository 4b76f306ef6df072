"""
Maximum-entropy symmetric perturbation noise.

Under a zero-mean and variance constraint on the support [-D, D], the
entropy-maximising pmf has the closed form p(z) = C exp(-gamma z^2). This module
builds that pmf from (D, gamma) or (D, V) and enforces the admissible variance
interval (0, D(D+1)/3).
"""
from typing import Tuple
import hashlib
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import optimize

from .config import get_settings
from .errors import ConvergenceError, InvalidParameterError

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-12


class NoiseParams(BaseModel):
    """Support half-width and shape exponent."""
    model_config = ConfigDict(frozen=True)

    D: int = Field(ge=1, description="Support half-width")
    gamma: float = Field(ge=0, allow_inf_nan=False, description="Shape exponent, 0 is the uniform case")


class VarianceBound(BaseModel):
    """Exclusive upper variance bound D(D+1)/3; zero is the exclusive lower bound."""
    model_config = ConfigDict(frozen=True)

    D: int = Field(ge=1)
    upper: float = Field(gt=0)


class NoisePmf(BaseModel):
    """Symmetric pmf over [-D, D]; masses are ordered z = -D..D."""
    model_config = ConfigDict(frozen=True)

    D: int = Field(ge=1)
    gamma: float = Field(ge=0, allow_inf_nan=False)
    C: float = Field(gt=0, le=1)
    variance: float = Field(ge=0)
    masses: Tuple[float, ...]

    @model_validator(mode="after")
    def check_masses(self) -> "NoisePmf":
        if len(self.masses) != 2 * self.D + 1:
            raise ValueError(f"Expected {2 * self.D + 1} masses, got {len(self.masses)}")
        if any(m < 0 for m in self.masses):
            raise ValueError("Masses must be non-negative")
        if abs(math.fsum(self.masses) - 1.0) > SUM_TOLERANCE:
            raise ValueError("Masses must sum to 1")
        if self.masses != self.masses[::-1]:
            raise ValueError("Masses must be symmetric about zero")
        return self

    @property
    def params(self) -> NoiseParams:
        return NoiseParams(D=self.D, gamma=self.gamma)

    @property
    def support(self) -> range:
        return range(-self.D, self.D + 1)

    def mass(self, z: int) -> float:
        """Probability of noise value z; zero outside the support."""
        if -self.D <= z <= self.D:
            return self.masses[z + self.D]
        return 0.0

    def digest(self) -> str:
        """Content hash of the JSON form."""
        return hashlib.sha256(self.model_dump_json().encode("utf-8")).hexdigest()


def _check_support(D: int) -> None:
    if isinstance(D, bool) or not isinstance(D, (int, np.integer)) or D < 1:
        raise InvalidParameterError(f"Support half-width D must be a positive integer, got {D!r}")


def _check_gamma(gamma: float) -> None:
    if not math.isfinite(gamma) or gamma < 0:
        raise InvalidParameterError(f"gamma must be finite and >= 0, got {gamma!r}")


def _half_weights(D: int, gamma: float) -> np.ndarray:
    """exp(-gamma z^2) for z = 0..D."""
    z = np.arange(D + 1, dtype=np.float64)
    return np.exp(-gamma * z * z)


def _tail_sum(values) -> float:
    # largest |z| first
    return math.fsum(reversed(list(values)))


def variance_bound(D: int) -> VarianceBound:
    """Admissible variance interval (0, D(D+1)/3) for a pmf decreasing in |z|."""
    _check_support(D)
    return VarianceBound(D=D, upper=D * (D + 1) / 3)


def normaliser_from_gamma(D: int, gamma: float) -> float:
    """C = 1 / (2 sum_{z=1..D} exp(-gamma z^2) + 1)."""
    _check_support(D)
    _check_gamma(gamma)
    w = _half_weights(D, gamma)
    return 1.0 / (2.0 * _tail_sum(w[1:]) + 1.0)


def variance_from_gamma(D: int, gamma: float) -> float:
    """Variance of the pmf with shape exponent gamma; strictly decreasing in gamma."""
    _check_support(D)
    _check_gamma(gamma)
    w = _half_weights(D, gamma)
    z = np.arange(D + 1, dtype=np.float64)
    numerator = 2.0 * _tail_sum(z[1:] ** 2 * w[1:])
    return numerator / (2.0 * _tail_sum(w[1:]) + 1.0)


def pmf_from_gamma(D: int, gamma: float) -> NoisePmf:
    """Build p(z) = C exp(-gamma z^2) on [-D, D]."""
    _check_support(D)
    _check_gamma(gamma)
    w = _half_weights(D, gamma)
    C = 1.0 / (2.0 * _tail_sum(w[1:]) + 1.0)
    half = [C * float(v) for v in w]
    masses = tuple(half[:0:-1] + half)
    z_sq = [float(z * z) for z in range(1, D + 1)]
    variance = 2.0 * _tail_sum(z2 * m for z2, m in zip(z_sq, half[1:]))
    return NoisePmf(D=int(D), gamma=float(gamma), C=C, variance=variance, masses=masses)


def _variance_polynomial(D: int, V: float):
    """f(x) = sum_{z=1..D} (2z^2 - 2V) x^{z^2} - V, sparse in square powers."""
    z_sq = np.arange(1, D + 1, dtype=np.float64) ** 2
    coefficients = 2.0 * z_sq - 2.0 * V

    def f(x):
        x = np.asarray(x, dtype=np.float64)
        terms = coefficients * np.power.outer(x, z_sq)
        return terms.sum(axis=-1) - V

    return f


def _count_sign_changes(f, step: float) -> int:
    grid = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    signs = np.sign(f(grid))
    signs = signs[signs != 0]
    return int(np.count_nonzero(np.diff(signs)))


def solve_gamma(D: int, V: float) -> float:
    """Shape exponent whose pmf on [-D, D] has variance V.

    Solves f(x) = 0 on (0, 1) by bisection and returns gamma = -ln x.
    f(0) = -V < 0 and f(1) = (2D+1)(D(D+1)/3 - V) > 0 bracket the root whenever
    V is admissible.
    """
    _check_support(D)
    bound = variance_bound(D)
    if not math.isfinite(V) or V <= 0:
        raise InvalidParameterError(f"Variance {V!r} violates the lower bound: V must be > 0")
    if V >= bound.upper:
        raise InvalidParameterError(
            f"Variance {V!r} violates the upper bound: V must be < D(D+1)/3 = {bound.upper!r} for D={D}"
        )

    settings = get_settings()
    f = _variance_polynomial(D, V)

    if settings.ROOT_UNIQUENESS_CHECK:
        changes = _count_sign_changes(f, settings.ROOT_SCAN_STEP)
        assert changes == 1, f"f(x) changes sign {changes} times on (0, 1) for D={D}, V={V}"

    x, result = optimize.bisect(
        lambda t: float(f(t)),
        0.0,
        1.0,
        xtol=settings.ROOT_XTOL,
        maxiter=settings.ROOT_MAX_ITER,
        full_output=True,
        disp=False,
    )
    residual = abs(float(f(x)))
    if not result.converged:
        raise ConvergenceError(
            f"Bisection for D={D}, V={V} did not converge in {result.iterations} iterations "
            f"(residual {residual:.3e})",
            iterations=result.iterations,
            residual=residual,
        )
    if residual > settings.ROOT_RESIDUAL_TOL:
        logger.debug(f"solve_gamma D={D} V={V}: residual {residual:.3e} at interval width limit")

    gamma = -math.log(x)
    logger.debug(f"solve_gamma D={D} V={V} -> gamma={gamma!r} after {result.iterations} iterations")
    return gamma


def pmf_from_variance(D: int, V: float) -> NoisePmf:
    return pmf_from_gamma(D, solve_gamma(D, V))


def shannon_entropy(pmf: NoisePmf) -> float:
    """Entropy in nats; ln(2D+1) for the uniform pmf."""
    return -math.fsum(m * math.log(m) for m in pmf.masses if m > 0)
