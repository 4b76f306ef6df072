import numpy as np
import pytest

from cellkey_dp.core.errors import InvalidParameterError
from cellkey_dp.core.noise import pmf_from_gamma
from cellkey_dp.core.sampler import build_lookup
from cellkey_dp.utils.io_utils import (
    format_float,
    linear_grid,
    load_pmf,
    load_table,
    read_record_keys,
    save_pmf,
    save_table,
    to_csv,
    write_record_keys,
)


def test_pmf_file_round_trip(tmp_path):
    pmf = pmf_from_gamma(6, 0.07)
    path = tmp_path / "pmf.json"
    save_pmf(pmf, str(path))
    assert load_pmf(str(path)) == pmf


def test_table_file_round_trip(tmp_path):
    pmf = pmf_from_gamma(6, 0.07)
    table = build_lookup(pmf, 20)
    path = tmp_path / "table.json"
    save_table(table, str(path))
    assert load_table(str(path)) == table
    assert load_table(str(path), pmf=pmf) == table
    with pytest.raises(InvalidParameterError, match="digest"):
        load_table(str(path), pmf=pmf_from_gamma(6, 0.08))


def test_float_format():
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(None) == ""
    assert format_float(True) == "true"
    assert format_float(7) == "7"
    assert float(format_float(9.9129808160e-5)) == 9.9129808160e-5


def test_csv_rendering():
    text = to_csv(("a", "b"), [(0.5, None), (1, False)])
    assert text == "a,b\n0.5,\n1,false\n"
    with pytest.raises(ValueError):
        to_csv(("a", "b"), [(1,)])


def test_linear_grid():
    grid = linear_grid(0.1, 2.5, 0.1)
    assert len(grid) == 25
    assert grid[2] == 0.3
    assert grid[-1] == 2.5
    assert linear_grid(0.05, 3.0, 0.05)[-1] == 3.0
    with pytest.raises(InvalidParameterError):
        linear_grid(0.0, 1.0, 0.1)
    with pytest.raises(InvalidParameterError):
        linear_grid(1.0, 0.5, 0.1)


def test_record_key_files(tmp_path):
    path = tmp_path / "keys.txt"
    write_record_keys(np.array([0, 7, 2 ** 32 - 1], dtype=np.uint32), str(path))
    assert path.read_text() == f"0\n7\n{2 ** 32 - 1}\n"
    assert read_record_keys(str(path)).tolist() == [0, 7, 2 ** 32 - 1]


@pytest.mark.parametrize("content", ["", "\n\n", "-3\n", f"{2 ** 32}\n", "1.5\n"])
def test_bad_record_key_files(tmp_path, content):
    path = tmp_path / "keys.txt"
    path.write_text(content)
    with pytest.raises(InvalidParameterError):
        read_record_keys(str(path))
