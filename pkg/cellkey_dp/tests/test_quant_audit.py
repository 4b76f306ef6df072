"""
Tests for the exact post-quantization audit and the KEYSIZE sweep.
"""
from fractions import Fraction
import math

import pytest

from cellkey_dp.core.accounting import Provenance, delta_oracle
from cellkey_dp.core.calibration import KappaRule
from cellkey_dp.core.errors import SupportFailureError
from cellkey_dp.core.noise import pmf_from_gamma
from cellkey_dp.core.quant_audit import (
    QuantizedPmf,
    audit_table,
    bias_variance,
    delta_q,
    epsilon_q,
    keysize_sweep,
    quantized_pmf,
)
from cellkey_dp.core.sampler import build_lookup
from cellkey_dp.utils.io_utils import linear_grid

SWEEP_EPSILONS = linear_grid(0.1, 2.5, 0.1)


@pytest.fixture(scope="module")
def sweep():
    return keysize_sweep(10, SWEEP_EPSILONS, [8, 16, 32], KappaRule(divisor=10.0))


def rows_for(sweep, keysize_log2):
    return [row for row in sweep if row.keysize_log2 == keysize_log2]


def test_example_quantized_masses(example_table):
    qpmf = quantized_pmf(example_table)
    assert qpmf.mass(-25) == Fraction(425760, 2 ** 32)
    assert qpmf.mass(-24) == Fraction(1126343 - 425760, 2 ** 32)
    assert float(qpmf.mass(-24)) == pytest.approx(0.000163117190823, abs=1e-15)
    assert sum(qpmf.numerators) == 2 ** 32


def test_example_audit(example_pmf, example_table):
    audit = audit_table(example_table, 0.5, example_pmf.mass(-25), example_pmf.variance)
    assert audit.variance_q == pytest.approx(49.002167175291106, abs=1e-9)
    assert audit.bias_q == pytest.approx(-5.820766091346741e-9, abs=1e-12)
    assert audit.epsilon_q == pytest.approx(0.498037038323823, abs=1e-9)
    assert audit.delta_q == 425760 / 2 ** 32
    assert audit.epsilon_q < audit.epsilon_design
    assert audit.full_support

    point = audit.dp_point
    assert point.provenance == Provenance.POST_QUANTIZATION.value
    assert point.delta == audit.delta_q


def test_uniform_small_table_audit():
    qpmf = quantized_pmf(build_lookup(pmf_from_gamma(1, 0.0), 3))
    assert qpmf.numerators == (3, 3, 2)
    bias, variance = bias_variance(qpmf)
    assert bias == -1 / 8
    assert variance == 5 / 8 - 1 / 64
    assert epsilon_q(qpmf).one_sided == 0.0
    assert epsilon_q(qpmf).two_sided == pytest.approx(math.log(1.5), abs=1e-15)
    assert delta_q(qpmf) == 3 / 8


def test_symmetric_numerators():
    qpmf = QuantizedPmf(D=2, keysize_log2=4, numerators=(1, 4, 6, 4, 1), full_support=True)
    bias, _ = bias_variance(qpmf)
    assert bias == 0.0
    assert delta_q(qpmf) == float(qpmf.mass(2))


def test_one_sided_epsilon_is_largest_forward_ratio():
    qpmf = QuantizedPmf(D=1, keysize_log2=2, numerators=(1, 2, 1), full_support=True)
    assert epsilon_q(qpmf).one_sided == pytest.approx(math.log(2), abs=1e-15)
    flat = QuantizedPmf(D=2, keysize_log2=3, numerators=(2, 1, 1, 2, 2), full_support=True)
    assert epsilon_q(flat).one_sided == pytest.approx(math.log(2), abs=1e-15)


def test_quantized_pmf_rejects_bad_sum():
    with pytest.raises(ValueError):
        QuantizedPmf(D=1, keysize_log2=3, numerators=(3, 3, 3), full_support=True)


def test_epsilon_requires_full_support(example_pmf):
    qpmf = quantized_pmf(build_lookup(example_pmf, 8))
    with pytest.raises(SupportFailureError):
        epsilon_q(qpmf)


def test_broken_table_still_audited(example_pmf):
    audit = audit_table(build_lookup(example_pmf, 8), 0.5, example_pmf.mass(-25), example_pmf.variance)
    assert not audit.full_support
    assert audit.dp_point is None
    assert audit.delta_q >= 1 / 256


@pytest.mark.parametrize("D,epsilon", [(20, 3.7), (15, 4.7)])
def test_sweep_records_tables_with_cmf_overshoot(D, epsilon):
    rows = keysize_sweep(D, [epsilon], [32], KappaRule(divisor=10))
    assert len(rows) == 1
    assert not rows[0].full_support
    assert rows[0].dp_point is None


def test_oracle_at_two_sided_epsilon_is_endpoint_mass(example_table):
    qpmf = quantized_pmf(example_table)
    eps = epsilon_q(qpmf)
    assert delta_oracle(qpmf, eps.two_sided).delta <= delta_q(qpmf) + 1e-15


def test_sweep_order_and_shape(sweep):
    assert len(sweep) == 75
    assert [row.keysize_log2 for row in sweep] == [8] * 25 + [16] * 25 + [32] * 25
    for keysize_log2 in (8, 16, 32):
        assert [row.epsilon_design for row in rows_for(sweep, keysize_log2)] == SWEEP_EPSILONS


@pytest.mark.parametrize("keysize_log2,last_full", [(8, 0.6), (16, 1.7), (32, 2.5)])
def test_sweep_support_failures(sweep, keysize_log2, last_full):
    for row in rows_for(sweep, keysize_log2):
        assert row.full_support == (row.epsilon_design <= last_full)


@pytest.mark.parametrize("keysize_log2,lo,hi", [(8, 1e-3, 1e-1), (16, 1e-5, 1e-3), (32, 1e-10, 1e-8)])
def test_sweep_bias_orders(sweep, keysize_log2, lo, hi):
    for row in rows_for(sweep, keysize_log2):
        assert row.bias_q < 0
        assert lo <= abs(row.bias_q) <= hi


@pytest.mark.parametrize("keysize_log2,bound", [(8, 1e-1), (16, 1e-3), (32, 1e-7)])
def test_sweep_variance_error(sweep, keysize_log2, bound):
    for row in rows_for(sweep, keysize_log2):
        if row.full_support:
            assert abs(row.var_rel_err) <= bound


def test_coarse_keys_inflate_epsilon(sweep):
    for row in rows_for(sweep, 8):
        if row.full_support:
            assert row.epsilon_q > row.epsilon_design


def test_fine_keys_track_design(sweep):
    D = 10
    for row in rows_for(sweep, 32):
        kappa = KappaRule(divisor=10.0)(row.epsilon_design, D)
        continuous = row.epsilon_design - kappa * (2 * D - 1)
        assert row.epsilon_q == pytest.approx(continuous, abs=1e-3)
        assert abs(row.epsilon_q - row.epsilon_design) <= 0.01 * row.epsilon_design
        assert abs(row.delta_q - row.delta_design) < 2 ** -32


def test_delta_floor(sweep):
    for row in sweep:
        assert row.delta_q >= 2.0 ** -row.keysize_log2
