"""
Record keys and cell-key aggregation.

Each record carries a pseudo-random 32-bit key. A cell key is formed by summing,
per byte position, the corresponding byte of every record key modulo a large
prime, XOR-ing the four component sums, and reducing modulo KEYSIZE. The same
multiset of records always yields the same cell key, so repeated requests for a
cell draw the same perturbation.
"""
from typing import Annotated, Iterable, Sequence, Union
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

from .config import get_settings
from .errors import InvalidParameterError

logger = logging.getLogger(__name__)

RECORD_KEY_BOUND = 2 ** 32
KEY_BYTES = 4
# Bytes summed per chunk before reducing modulo bigN; 255 * CHUNK stays far below 2**63.
CHUNK = 1 << 20

# Philox-4x64 counter-based bit generator seeded through numpy's SeedSequence.
GENERATOR_ALGORITHM = "numpy.random.Philox"

RecordKey = Annotated[int, Field(ge=0, lt=RECORD_KEY_BOUND)]


class CellKeyConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    keysize_log2: int = Field(default_factory=lambda: get_settings().DEFAULT_KEYSIZE_LOG2, ge=1, le=32)
    big_n: int = Field(default_factory=lambda: get_settings().BIG_N, gt=255)

    @field_validator("big_n")
    @classmethod
    def validate_big_n(cls, v):
        if not isprime(v):
            raise ValueError(f"big_n must be prime, got {v}")
        return v

    @property
    def keysize(self) -> int:
        return 1 << self.keysize_log2


class CellKey(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: int = Field(ge=0)
    keysize_log2: int = Field(ge=1, le=32)

    @model_validator(mode="after")
    def check_range(self) -> "CellKey":
        if self.value >= 1 << self.keysize_log2:
            raise ValueError(f"Cell key {self.value} outside [0, 2^{self.keysize_log2})")
        return self


def generate_record_keys(count: int, seed: int) -> np.ndarray:
    """Deterministic uniform 32-bit record keys for a seed."""
    if count < 1:
        raise InvalidParameterError(f"count must be >= 1, got {count}")
    if not 0 <= seed < 2 ** 64:
        raise InvalidParameterError(f"seed must be an unsigned 64-bit integer, got {seed}")
    rng = np.random.Generator(np.random.Philox(seed))
    keys = rng.integers(0, RECORD_KEY_BOUND, size=count, dtype=np.uint32)
    logger.debug(f"Generated {count} record keys with {GENERATOR_ALGORITHM} seed={seed}")
    return keys


def _as_key_array(keys: Union[Sequence[int], np.ndarray, Iterable[int]]) -> np.ndarray:
    arr = np.asarray(list(keys) if not isinstance(keys, np.ndarray) else keys)
    if arr.size == 0:
        raise InvalidParameterError("Cannot aggregate an empty cell")
    if arr.dtype.kind not in "iu":
        raise InvalidParameterError("Record keys must be integers")
    if arr.min() < 0 or arr.max() >= RECORD_KEY_BOUND:
        raise InvalidParameterError("Record keys must lie in [0, 2^32)")
    return np.ascontiguousarray(arr.reshape(-1), dtype="<u4")


def component_sums(keys, big_n: int) -> tuple[int, int, int, int]:
    """Per-byte sums of the record keys modulo big_n, least significant byte first."""
    key_bytes = _as_key_array(keys).view(np.uint8).reshape(-1, KEY_BYTES)
    sums = [0] * KEY_BYTES
    for start in range(0, key_bytes.shape[0], CHUNK):
        chunk = key_bytes[start:start + CHUNK].sum(axis=0, dtype=np.uint64)
        for j in range(KEY_BYTES):
            sums[j] = (sums[j] + int(chunk[j])) % big_n
    return tuple(sums)


def aggregate_cell_key(keys, config: CellKeyConfig) -> CellKey:
    """XOR of the per-byte modular sums, reduced to [0, KEYSIZE)."""
    c1, c2, c3, c4 = component_sums(keys, config.big_n)
    value = (c1 ^ c2 ^ c3 ^ c4) & (config.keysize - 1)
    return CellKey(value=value, keysize_log2=config.keysize_log2)
