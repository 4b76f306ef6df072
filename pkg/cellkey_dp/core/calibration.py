"""
Noise calibration from privacy targets.

Placing gamma in [eps/(2D+1), eps/(2D-1)) pins z* to -D, so the violation set is
{-D} and delta equals the endpoint mass p(-D) with no plateau. The offset
kappa > 0 puts gamma just below the upper end: gamma = eps/(2D-1) - kappa.
"""
from typing import Optional, Tuple
import logging
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import get_settings
from .errors import InvalidParameterError, TargetUnreachableError
from .noise import NoisePmf, normaliser_from_gamma, pmf_from_gamma, variance_from_gamma

logger = logging.getLogger(__name__)


class KappaRule(BaseModel):
    """kappa(eps, D) = 2 eps / (divisor (4D^2 - 1)); divisor >= 1 keeps kappa admissible."""
    model_config = ConfigDict(frozen=True)

    divisor: float = Field(default_factory=lambda: get_settings().KAPPA_DIVISOR, ge=1)

    def __call__(self, epsilon: float, D: int) -> float:
        return kappa_max(epsilon, D) / self.divisor


class CalibrationInput(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(gt=0, allow_inf_nan=False)
    delta_target: float = Field(gt=0, lt=1)
    kappa_rule: KappaRule = Field(default_factory=KappaRule)
    D_max: int = Field(default_factory=lambda: get_settings().DESIGN_D_MAX, ge=1)


class CalibrationResult(BaseModel):
    """Design output; field order matches the JSON artifact."""
    model_config = ConfigDict(frozen=True)

    epsilon: float
    delta_target: float
    D_star: int = Field(ge=1)
    kappa: float = Field(gt=0)
    gamma: float
    V: float
    delta_achieved: float
    pmf: NoisePmf

    @model_validator(mode="after")
    def check_design(self) -> "CalibrationResult":
        if self.delta_achieved > self.delta_target:
            raise ValueError("Achieved delta exceeds the target")
        return self


class AsymptoticDesign(BaseModel):
    """kappa -> 0 limits: gamma -> eps/(2D-1) from below, V and delta from above."""
    model_config = ConfigDict(frozen=True)

    epsilon: float
    D: int
    gamma: float
    V: float
    delta: float


def _check(epsilon: float, D: int) -> None:
    if not math.isfinite(epsilon) or epsilon <= 0:
        raise InvalidParameterError(f"epsilon must be a finite positive number, got {epsilon!r}")
    if isinstance(D, bool) or not isinstance(D, int) or D < 1:
        raise InvalidParameterError(f"D must be a positive integer, got {D!r}")


def kappa_max(epsilon: float, D: int) -> float:
    """Largest admissible kappa, 2 eps / (4D^2 - 1); it puts gamma at eps/(2D+1)."""
    _check(epsilon, D)
    return 2.0 * epsilon / (4 * D * D - 1)


def gamma_range(epsilon: float, D: int) -> Tuple[float, float]:
    """[eps/(2D+1), eps/(2D-1)): closed below, open above."""
    _check(epsilon, D)
    return epsilon / (2 * D + 1), epsilon / (2 * D - 1)


def variance_range(epsilon: float, D: int) -> Tuple[float, float]:
    """(V(eps/(2D-1)), V(eps/(2D+1))]: open below, closed above."""
    lo_gamma, hi_gamma = gamma_range(epsilon, D)
    return variance_from_gamma(D, hi_gamma), variance_from_gamma(D, lo_gamma)


def normaliser_range(epsilon: float, D: int) -> Tuple[float, float]:
    """[C(eps/(2D+1)), C(eps/(2D-1))): C increases with gamma."""
    lo_gamma, hi_gamma = gamma_range(epsilon, D)
    return normaliser_from_gamma(D, lo_gamma), normaliser_from_gamma(D, hi_gamma)


def _endpoint_mass(D: int, gamma: float) -> float:
    return math.exp(-gamma * D * D) * normaliser_from_gamma(D, gamma)


def delta_range(epsilon: float, D: int) -> Tuple[float, float]:
    """(delta(eps/(2D-1)), delta(eps/(2D+1))]: delta decreases with gamma."""
    lo_gamma, hi_gamma = gamma_range(epsilon, D)
    return _endpoint_mass(D, hi_gamma), _endpoint_mass(D, lo_gamma)


def _calibrated_gamma(epsilon: float, D: int, kappa: float) -> float:
    upper = kappa_max(epsilon, D)
    if not math.isfinite(kappa) or not 0 < kappa <= upper:
        raise InvalidParameterError(
            f"kappa must lie in (0, 2*eps/(4D^2-1)] = (0, {upper!r}] for eps={epsilon}, D={D}, got {kappa!r}"
        )
    return epsilon / (2 * D - 1) - kappa


def calibrated_pmf(epsilon: float, D: int, kappa: float) -> NoisePmf:
    """Calibrated pmf with gamma = eps/(2D-1) - kappa."""
    return pmf_from_gamma(D, _calibrated_gamma(epsilon, D, kappa))


def calibrated_delta(epsilon: float, D: int, kappa: float) -> float:
    """Endpoint mass exp(-gamma D^2) / (2 sum exp(-gamma z^2) + 1) of the calibrated pmf."""
    return calibrated_pmf(epsilon, D, kappa).mass(-D)


def asymptotic_design(epsilon: float, D: int) -> AsymptoticDesign:
    _check(epsilon, D)
    gamma = epsilon / (2 * D - 1)
    return AsymptoticDesign(
        epsilon=epsilon,
        D=D,
        gamma=gamma,
        V=variance_from_gamma(D, gamma),
        delta=_endpoint_mass(D, gamma),
    )


def design_guide(calibration: CalibrationInput) -> CalibrationResult:
    """Smallest support D <= D_max whose calibrated delta meets the target."""
    epsilon, target = calibration.epsilon, calibration.delta_target
    best_delta: Optional[float] = None

    for D in range(1, calibration.D_max + 1):
        kappa = calibration.kappa_rule(epsilon, D)
        pmf = calibrated_pmf(epsilon, D, kappa)
        delta = pmf.mass(-D)
        logger.debug(f"design_guide eps={epsilon}: D={D} kappa={kappa!r} delta={delta!r}")
        if best_delta is None or delta < best_delta:
            best_delta = delta
        if delta <= target:
            logger.info(f"design_guide eps={epsilon} delta_target={target}: D*={D}, delta={delta!r}, V={pmf.variance!r}")
            return CalibrationResult(
                epsilon=epsilon,
                delta_target=target,
                D_star=D,
                kappa=kappa,
                gamma=pmf.gamma,
                V=pmf.variance,
                delta_achieved=delta,
                pmf=pmf,
            )

    raise TargetUnreachableError(
        f"No support D <= {calibration.D_max} reaches delta <= {target} at epsilon={epsilon}; "
        f"best delta found was {best_delta!r}",
        best_delta=best_delta,
        d_max=calibration.D_max,
    )
