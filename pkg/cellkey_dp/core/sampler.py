"""
Lookup-table sampling of the perturbation noise.

The cmf is scaled by KEYSIZE and ceiled into 2D+1 integers. A cell key k maps to
S = z+1 where c(z) <= k < c(z+1), with c(-D-1) = 0. Consecutive equal entries
mean some noise values can never be drawn; such tables are built and flagged but
refuse to sample.
"""
from typing import Tuple, Union
import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .cellkey import CellKey
from .errors import InvalidParameterError, SupportFailureError
from .noise import NoisePmf

logger = logging.getLogger(__name__)

TABLE_VERSION = 1


class LookupTable(BaseModel):
    """Scaled, ceiled cmf over z = -D..D; field order matches the table file."""
    model_config = ConfigDict(frozen=True)

    version: int = TABLE_VERSION
    D: int = Field(ge=1)
    keysize_log2: int = Field(ge=1, le=32)
    full_support: bool
    source_pmf_digest: str
    cumulative: Tuple[int, ...]

    @model_validator(mode="after")
    def check_table(self) -> "LookupTable":
        if self.version != TABLE_VERSION:
            raise ValueError(f"Unsupported table version {self.version}")
        if len(self.cumulative) != 2 * self.D + 1:
            raise ValueError(f"Expected {2 * self.D + 1} cumulative entries, got {len(self.cumulative)}")
        if self.cumulative[-1] != self.keysize:
            raise ValueError("Last cumulative entry must equal KEYSIZE")
        steps = np.diff((0,) + self.cumulative)
        if np.any(steps < 0):
            raise ValueError("Cumulative entries must be non-decreasing")
        if self.full_support != bool(np.all(steps > 0)):
            raise ValueError("full_support flag disagrees with the cumulative entries")
        return self

    @property
    def keysize(self) -> int:
        return 1 << self.keysize_log2


class Sample(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: int


def _strictly_increasing(cumulative: Tuple[int, ...]) -> bool:
    return all(b > a for a, b in zip((0,) + cumulative[:-1], cumulative))


def build_lookup(pmf: NoisePmf, keysize_log2: int) -> LookupTable:
    """Quantize the cmf of pmf at KEYSIZE = 2**keysize_log2."""
    if not 1 <= keysize_log2 <= 32:
        raise InvalidParameterError(f"keysize_log2 must be in [1, 32], got {keysize_log2}")
    keysize = 1 << keysize_log2
    # left-to-right accumulation in binary64
    cmf = np.cumsum(np.asarray(pmf.masses, dtype=np.float64))
    # cmf rounding can pass 1.0 before the last entry
    cumulative = [min(math.ceil(float(c) * keysize), keysize) for c in cmf]
    cumulative[-1] = keysize
    cumulative = tuple(cumulative)
    full_support = _strictly_increasing(cumulative)
    if not full_support:
        logger.info(f"Lookup table for D={pmf.D} at KEYSIZE=2^{keysize_log2} lacks full support")
    return LookupTable(
        D=pmf.D,
        keysize_log2=keysize_log2,
        full_support=full_support,
        source_pmf_digest=pmf.digest(),
        cumulative=cumulative,
    )


def check_full_support(table: LookupTable) -> bool:
    """True iff every z in [-D, D] has a non-empty key interval."""
    return _strictly_increasing(table.cumulative)


def _require_full_support(table: LookupTable) -> None:
    if not check_full_support(table):
        raise SupportFailureError(
            f"KEYSIZE=2^{table.keysize_log2} is insufficient for D={table.D}: some noise values are unreachable; "
            f"increase KEYSIZE or adjust the noise parameters",
            keysize_log2=table.keysize_log2,
            D=table.D,
        )


def _key_value(table: LookupTable, cell_key: Union[CellKey, int]) -> int:
    if isinstance(cell_key, CellKey):
        if cell_key.keysize_log2 != table.keysize_log2:
            raise InvalidParameterError(
                f"Cell key built for KEYSIZE=2^{cell_key.keysize_log2}, table uses 2^{table.keysize_log2}"
            )
        value = cell_key.value
    else:
        value = int(cell_key)
    if not 0 <= value < table.keysize:
        raise InvalidParameterError(f"Cell key {value} outside [0, {table.keysize})")
    return value


def sample(table: LookupTable, cell_key: Union[CellKey, int]) -> Sample:
    """Noise value for a cell key by binary search over the table."""
    _require_full_support(table)
    value = _key_value(table, cell_key)
    index = int(np.searchsorted(table.cumulative, value, side="right"))
    return Sample(value=index - table.D)


def sample_many(table: LookupTable, keys) -> np.ndarray:
    """Vectorised sample() over an array of raw cell-key values."""
    _require_full_support(table)
    keys = np.asarray(keys, dtype=np.int64)
    if keys.size and (keys.min() < 0 or keys.max() >= table.keysize):
        raise InvalidParameterError(f"Cell keys must lie in [0, {table.keysize})")
    cumulative = np.asarray(table.cumulative, dtype=np.int64)
    return np.searchsorted(cumulative, keys, side="right").astype(np.int64) - table.D


def perturb(true_count: int, table: LookupTable, cell_key: Union[CellKey, int]) -> int:
    """true_count + noise; counts below D could turn negative and are rejected."""
    if true_count < table.D:
        raise InvalidParameterError(
            f"true_count={true_count} is below D={table.D}; the perturbed count is only guaranteed "
            f"non-negative when the true count is at least D"
        )
    return true_count + sample(table, cell_key).value
