"""
Exact (epsilon, delta) accounting for a single counting query of sensitivity 1.

For p(z) = C exp(-gamma z^2) the likelihood ratio p(z)/p(z-1) exceeds e^epsilon
exactly on the integer interval [-D, max(-D, z*)] with
z* = floor(0.5 - epsilon / (2 gamma)); delta is the hockey-stick sum over it.
"""
from enum import Enum
from typing import Optional, Protocol, Sequence
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import get_settings
from .errors import InvalidParameterError
from .noise import NoisePmf, pmf_from_gamma

logger = logging.getLogger(__name__)


class Provenance(str, Enum):
    ANALYTICAL = "analytical"
    ORACLE = "oracle"
    NUMERIC_SEARCH = "numeric-search"
    POST_QUANTIZATION = "post-quantization"


class DpPoint(BaseModel):
    """An (epsilon, delta) pair and where it came from."""
    model_config = ConfigDict(frozen=True, use_enum_values=True)

    epsilon: float = Field(gt=0)
    delta: float = Field(ge=0, le=1)
    provenance: Provenance
    gamma: Optional[float] = Field(default=None, description="Minimising gamma for numeric-search points")


class ViolationSet(BaseModel):
    """Noise values whose forward likelihood ratio exceeds e^epsilon."""
    model_config = ConfigDict(frozen=True)

    lo: int
    hi: int

    @model_validator(mode="after")
    def check_bounds(self) -> "ViolationSet":
        if not self.lo <= self.hi <= 0:
            raise ValueError(f"Violation set bounds must satisfy lo <= hi <= 0, got [{self.lo}, {self.hi}]")
        return self

    @property
    def members(self) -> range:
        return range(self.lo, self.hi + 1)


class GammaGrid(BaseModel):
    """Linear grid lo, lo+step, ..., <= hi."""
    model_config = ConfigDict(frozen=True)

    lo: float = Field(gt=0)
    hi: float = Field(gt=0)
    step: float = Field(gt=0)

    @classmethod
    def default(cls) -> "GammaGrid":
        settings = get_settings()
        return cls(lo=settings.GAMMA_GRID_LO, hi=settings.GAMMA_GRID_HI, step=settings.GAMMA_GRID_STEP)

    def points(self) -> np.ndarray:
        if self.hi < self.lo:
            return np.empty(0)
        count = int(math.floor((self.hi - self.lo) / self.step + 1e-9)) + 1
        return np.round(self.lo + self.step * np.arange(count), 12)


class HasMasses(Protocol):
    @property
    def masses(self) -> Sequence[float]: ...


def _check_epsilon(epsilon: float) -> None:
    if not math.isfinite(epsilon) or epsilon <= 0:
        raise InvalidParameterError(f"epsilon must be a finite positive number, got {epsilon!r}")


def _z_star(gamma: float, epsilon: float) -> int:
    # plain floor on binary64, no snapping at ties
    return math.floor(0.5 - epsilon / (2.0 * gamma))


def plateau_threshold(gamma: float, D: int) -> float:
    """delta stops decreasing for every epsilon above gamma (2D - 1)."""
    return gamma * (2 * D - 1)


def violation_set(pmf: NoisePmf, epsilon: float) -> ViolationSet:
    _check_epsilon(epsilon)
    if pmf.gamma <= 0:
        raise InvalidParameterError("The violation set is undefined for gamma = 0")
    hi = max(-pmf.D, _z_star(pmf.gamma, epsilon))
    return ViolationSet(lo=-pmf.D, hi=hi)


def delta_lower_bound(pmf: NoisePmf) -> float:
    """p(-D) = C exp(-gamma D^2); the endpoint always belongs to the violation set."""
    return pmf.mass(-pmf.D)


def delta_of_epsilon(pmf: NoisePmf, epsilon: float) -> DpPoint:
    """Closed-form delta for the pmf at epsilon."""
    vset = violation_set(pmf, epsilon)
    endpoint = delta_lower_bound(pmf)
    if vset.hi <= -pmf.D:
        delta = endpoint
    else:
        gamma, C = pmf.gamma, pmf.C
        e_eps = math.exp(epsilon)
        terms = [
            C * (math.exp(-gamma * z * z) - e_eps * math.exp(-gamma * (z - 1) * (z - 1)))
            for z in range(-pmf.D + 1, vset.hi + 1)
        ]
        delta = endpoint + math.fsum(terms)
    return DpPoint(epsilon=epsilon, delta=min(1.0, max(0.0, delta)), provenance=Provenance.ANALYTICAL)


def directional_deltas(pmf: HasMasses, epsilon: float) -> tuple[float, float]:
    """Hockey-stick sums for the forward (z vs z-1) and backward (z vs z+1) neighbour shifts."""
    _check_epsilon(epsilon)
    masses = np.asarray(pmf.masses, dtype=np.float64)
    if masses.ndim != 1 or masses.size == 0:
        raise InvalidParameterError("pmf masses must be a non-empty sequence")
    if np.any(masses < 0):
        raise InvalidParameterError("pmf masses must be non-negative")
    padded = np.concatenate(([0.0], masses, [0.0]))
    e_eps = math.exp(epsilon)
    # 0/0 positions give 0 - 0 and drop out of the max(0, .)
    forward = np.maximum(0.0, padded[1:] - e_eps * padded[:-1])
    backward = np.maximum(0.0, padded[:-1] - e_eps * padded[1:])
    return math.fsum(forward.tolist()), math.fsum(backward.tolist())


def delta_oracle(pmf: HasMasses, epsilon: float) -> DpPoint:
    """Brute-force delta over every output position and both shift directions."""
    forward, backward = directional_deltas(pmf, epsilon)
    delta = max(forward, backward)
    return DpPoint(epsilon=epsilon, delta=min(1.0, delta), provenance=Provenance.ORACLE)


def best_delta_numeric(D: int, epsilon: float, gamma_grid: Optional[GammaGrid] = None) -> DpPoint:
    """Smallest closed-form delta over a grid of shape exponents."""
    _check_epsilon(epsilon)
    grid = gamma_grid or GammaGrid.default()
    gammas = grid.points()
    if gammas.size == 0:
        raise InvalidParameterError(f"Empty gamma grid: {grid.model_dump()}")

    best_delta, best_gamma = math.inf, None
    for gamma in gammas:
        delta = delta_of_epsilon(pmf_from_gamma(D, float(gamma)), epsilon).delta
        # ties resolve to the smallest gamma
        if delta < best_delta:
            best_delta, best_gamma = delta, float(gamma)

    logger.debug(f"best_delta_numeric D={D} eps={epsilon}: delta={best_delta!r} at gamma={best_gamma}")
    return DpPoint(epsilon=epsilon, delta=best_delta, provenance=Provenance.NUMERIC_SEARCH, gamma=best_gamma)
