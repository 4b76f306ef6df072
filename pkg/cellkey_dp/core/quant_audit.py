"""
Post-quantization utility and privacy audit.

The table's cumulative integers define an exact pmf with denominator KEYSIZE.
Bias and variance are computed from integer moments; the effective epsilon is the
log of the largest forward likelihood ratio, and the effective delta the larger
endpoint mass.
"""
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple
import logging
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .accounting import DpPoint, Provenance
from .calibration import KappaRule, calibrated_pmf
from .errors import SupportFailureError
from .sampler import LookupTable, build_lookup

logger = logging.getLogger(__name__)


class QuantizedPmf(BaseModel):
    """Masses numerators[i] / KEYSIZE over z = -D..D."""
    model_config = ConfigDict(frozen=True)

    D: int = Field(ge=1)
    keysize_log2: int = Field(ge=1, le=32)
    numerators: Tuple[int, ...]
    full_support: bool

    @model_validator(mode="after")
    def check_numerators(self) -> "QuantizedPmf":
        if len(self.numerators) != 2 * self.D + 1:
            raise ValueError(f"Expected {2 * self.D + 1} numerators, got {len(self.numerators)}")
        if any(n < 0 for n in self.numerators):
            raise ValueError("Numerators must be non-negative")
        if sum(self.numerators) != self.keysize:
            raise ValueError("Numerators must sum to KEYSIZE")
        return self

    @property
    def keysize(self) -> int:
        return 1 << self.keysize_log2

    @property
    def masses(self) -> Tuple[float, ...]:
        return tuple(n / self.keysize for n in self.numerators)

    def mass(self, z: int) -> Fraction:
        return Fraction(self.numerators[z + self.D], self.keysize)


class EpsilonQ(NamedTuple):
    one_sided: float
    two_sided: float


class QuantAudit(BaseModel):
    """Metrics of one (epsilon, D, KEYSIZE) cell; field order follows the sweep CSV."""
    model_config = ConfigDict(frozen=True)

    epsilon_design: float
    delta_design: float
    keysize_log2: int
    full_support: bool
    bias_q: float
    variance_q: float
    var_rel_err: Optional[float] = None
    epsilon_q: float
    epsilon_q_twosided: float
    delta_q: float
    D: int
    variance_design: Optional[float] = None

    @property
    def dp_point(self) -> Optional[DpPoint]:
        """(epsilon^Q, delta^Q); None when the support is broken or epsilon^Q is 0."""
        if not self.full_support or self.epsilon_q <= 0:
            return None
        return DpPoint(epsilon=self.epsilon_q, delta=self.delta_q, provenance=Provenance.POST_QUANTIZATION)


def quantized_pmf(table: LookupTable) -> QuantizedPmf:
    cumulative = (0,) + tuple(table.cumulative)
    numerators = tuple(b - a for a, b in zip(cumulative[:-1], cumulative[1:]))
    return QuantizedPmf(
        D=table.D,
        keysize_log2=table.keysize_log2,
        numerators=numerators,
        full_support=table.full_support,
    )


def bias_variance(qpmf: QuantizedPmf) -> Tuple[float, float]:
    """Exact first and central second moments, rounded once to binary64."""
    first = sum(z * n for z, n in zip(range(-qpmf.D, qpmf.D + 1), qpmf.numerators))
    second = sum(z * z * n for z, n in zip(range(-qpmf.D, qpmf.D + 1), qpmf.numerators))
    bias = Fraction(first, qpmf.keysize)
    variance = Fraction(second, qpmf.keysize) - bias * bias
    return float(bias), float(variance)


def _max_ratio(pairs: Sequence[Tuple[int, int]]) -> Optional[Fraction]:
    ratios = [Fraction(num, den) for num, den in pairs if den > 0]
    return max(ratios) if ratios else None


def _log_ratio(ratio: Optional[Fraction]) -> float:
    if ratio is None or ratio <= 1:
        return 0.0
    return math.log(ratio.numerator) - math.log(ratio.denominator)


def _ratio_pairs(numerators: Sequence[int], finite_only: bool) -> Tuple[List, List]:
    forward, reverse = [], []
    for prev, cur in zip(numerators[:-1], numerators[1:]):
        if finite_only and (prev == 0 or cur == 0):
            continue
        forward.append((cur, prev))
        reverse.append((prev, cur))
    return forward, reverse


def _epsilons(qpmf: QuantizedPmf, finite_only: bool) -> EpsilonQ:
    forward, reverse = _ratio_pairs(qpmf.numerators, finite_only)
    eps_forward = _log_ratio(_max_ratio(forward))
    eps_reverse = _log_ratio(_max_ratio(reverse))
    return EpsilonQ(eps_forward, max(eps_forward, eps_reverse))


def epsilon_q(qpmf: QuantizedPmf) -> EpsilonQ:
    """Effective epsilon, one-sided and two-sided.

    The one-sided value is the smallest epsilon with p(z)/p(z-1) <= e^epsilon for
    z in [-D+1, D], which keeps the violation set at {-D}. The two-sided value
    also covers p(z-1)/p(z).
    """
    if any(n == 0 for n in qpmf.numerators):
        raise SupportFailureError(
            f"Quantized pmf at KEYSIZE=2^{qpmf.keysize_log2} has zero masses; epsilon^Q is unbounded",
            keysize_log2=qpmf.keysize_log2,
            D=qpmf.D,
        )
    return _epsilons(qpmf, finite_only=False)


def delta_q(qpmf: QuantizedPmf) -> float:
    """max(p^Q(-D), p^Q(D))."""
    return max(qpmf.numerators[0], qpmf.numerators[-1]) / qpmf.keysize


def audit_table(
    table: LookupTable,
    epsilon_design: float,
    delta_design: float,
    variance_design: Optional[float] = None,
) -> QuantAudit:
    """Full audit of one table; broken-support tables report epsilon over their finite ratios."""
    qpmf = quantized_pmf(table)
    bias, variance = bias_variance(qpmf)
    if qpmf.full_support:
        eps_one, eps_two = epsilon_q(qpmf)
    else:
        eps_one, eps_two = _epsilons(qpmf, finite_only=True)
    rel_err = None
    if variance_design:
        rel_err = (variance - variance_design) / variance_design
    return QuantAudit(
        epsilon_design=epsilon_design,
        delta_design=delta_design,
        keysize_log2=table.keysize_log2,
        full_support=qpmf.full_support,
        bias_q=bias,
        variance_q=variance,
        var_rel_err=rel_err,
        epsilon_q=eps_one,
        epsilon_q_twosided=eps_two,
        delta_q=delta_q(qpmf),
        D=table.D,
        variance_design=variance_design,
    )


def keysize_sweep(
    D: int,
    epsilons: Sequence[float],
    keysize_log2_list: Sequence[int],
    kappa_rule: Optional[KappaRule] = None,
) -> List[QuantAudit]:
    """Audit the calibrated design at every (KEYSIZE, epsilon), ordered by KEYSIZE then epsilon."""
    rule = kappa_rule or KappaRule()
    designs = []
    for epsilon in sorted(epsilons):
        pmf = calibrated_pmf(epsilon, D, rule(epsilon, D))
        designs.append((epsilon, pmf, pmf.mass(-D)))

    rows = []
    for keysize_log2 in sorted(keysize_log2_list):
        for epsilon, pmf, delta in designs:
            table = build_lookup(pmf, keysize_log2)
            row = audit_table(table, epsilon, delta, pmf.variance)
            if not row.full_support:
                logger.warning(f"Support failure at D={D}, epsilon={epsilon}, KEYSIZE=2^{keysize_log2}")
            rows.append(row)
    logger.info(f"keysize_sweep D={D}: {len(rows)} cells, {sum(not r.full_support for r in rows)} support failures")
    return rows
