"""
Artifact IO for the command line: JSON documents, sweep CSVs, grids and record-key files.
"""
from typing import Any, Iterable, List, Optional, Sequence
import csv
import io
import json
import logging
import sys

import numpy as np
from pydantic import BaseModel

from ..core.errors import InvalidParameterError
from ..core.noise import NoisePmf
from ..core.sampler import LookupTable

logger = logging.getLogger(__name__)


def format_float(value: Any) -> str:
    """17 significant digits for floats, plain str() for everything else; None becomes an empty cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def to_json(document: Any) -> str:
    """
    Serialise a model or plain document with a fixed key order.

    Args:
        document: pydantic model, dict or list

    Returns:
        str: indented JSON terminated by a newline
    """
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json")
    return json.dumps(document, indent=2) + "\n"


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write text to the --out path, or to stdout when no path is given."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"Wrote {out}")


def write_json(document: Any, out: Optional[str] = None) -> None:
    write_output(to_json(document), out)


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Render rows as CSV with a header line.

    Args:
        columns: header names
        rows: one sequence per row, in column order

    Returns:
        str: CSV text with LF line endings
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"Row has {len(row)} cells, expected {len(columns)}")
        writer.writerow([format_float(cell) for cell in row])
    return buffer.getvalue()


def write_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]], out: Optional[str] = None) -> None:
    write_output(to_csv(columns, rows), out)


def save_pmf(pmf: NoisePmf, path: str) -> None:
    write_output(to_json(pmf), path)


def load_pmf(path: str) -> NoisePmf:
    """Read a pmf document; the model validators re-check length, sum and symmetry."""
    with open(path, "r", encoding="utf-8") as f:
        return NoisePmf.model_validate_json(f.read())


def save_table(table: LookupTable, path: str) -> None:
    write_output(to_json(table), path)


def load_table(path: str, pmf: Optional[NoisePmf] = None) -> LookupTable:
    """
    Read a lookup table file.

    Args:
        path: table JSON written by save_table
        pmf: when given, the table's source digest must match it

    Returns:
        LookupTable: validated table
    """
    with open(path, "r", encoding="utf-8") as f:
        table = LookupTable.model_validate_json(f.read())
    if pmf is not None and table.source_pmf_digest != pmf.digest():
        raise InvalidParameterError(f"Table {path} was not built from the given pmf (digest mismatch)")
    logger.debug(f"Loaded table {path}: D={table.D}, KEYSIZE=2^{table.keysize_log2}")
    return table


def linear_grid(start: float, stop: float, step: float) -> List[float]:
    """
    Inclusive grid start, start+step, ..., stop, rounded to 12 decimals.
    """
    if not (step > 0 and start > 0 and stop >= start):
        raise InvalidParameterError(
            f"Invalid grid: need 0 < start <= stop and step > 0, got start={start}, stop={stop}, step={step}"
        )
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [float(v) for v in np.round(start + step * np.arange(count), 12)]


def read_record_keys(path: str) -> np.ndarray:
    """Newline-delimited unsigned decimal record keys; blank lines are skipped."""
    keys = []
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            if not text.isdigit():
                raise InvalidParameterError(f"{path}:{line_no}: record key {text!r} is not an unsigned integer")
            value = int(text)
            if value >= 2 ** 32:
                raise InvalidParameterError(f"{path}:{line_no}: record key {value} exceeds 32 bits")
            keys.append(value)
    if not keys:
        raise InvalidParameterError(f"{path} contains no record keys")
    return np.asarray(keys, dtype=np.uint32)


def write_record_keys(keys: Iterable[int], path: str) -> None:
    write_output("".join(f"{int(k)}\n" for k in keys), path)
