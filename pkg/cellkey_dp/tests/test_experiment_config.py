import json

import pytest
from pydantic import ValidationError

from cellkey_dp.core.experiment_config import (
    DeltaSweepExperiment,
    EpsilonGrid,
    ExperimentConfig,
    get_config,
    initialize_config,
)


def test_shipped_experiments():
    config = ExperimentConfig.load_from_file()
    assert config.names() == ["calibrated", "keysize_d10", "plateau_d11", "plateau_d15"]

    calibrated = config.get_delta_sweep("calibrated")
    assert calibrated.mode == "calibrated"
    assert calibrated.supports == [11, 15]
    assert calibrated.numeric is True

    keysize = config.get_keysize_sweep("keysize_d10")
    assert keysize.D == 10
    assert keysize.keysize_log2 == [8, 16, 32]
    assert (keysize.epsilons.start, keysize.epsilons.stop, keysize.epsilons.step) == (0.1, 2.5, 0.1)


def test_global_config_lifecycle():
    with pytest.raises(RuntimeError):
        get_config()
    config = initialize_config()
    assert get_config() is config
    assert initialize_config() is config


def test_load_from_custom_file(tmp_path):
    path = tmp_path / "experiments.json"
    path.write_text(json.dumps({
        "delta_sweeps": {
            "tiny": {
                "description": "one curve",
                "mode": "fixed",
                "supports": [3],
                "gammas": [0.2],
                "epsilons": {"start": 0.1, "stop": 0.5, "step": 0.1},
            }
        },
        "keysize_sweeps": {},
    }))
    config = ExperimentConfig.load_from_file(str(path))
    assert config.get_delta_sweep("tiny").gammas == [0.2]
    assert config.get_keysize_sweep("tiny") is None


def test_fixed_mode_needs_a_shape():
    with pytest.raises(ValidationError):
        DeltaSweepExperiment(
            description="no shape",
            mode="fixed",
            supports=[3],
            epsilons=EpsilonGrid(start=0.1, stop=1.0, step=0.1),
        )


def test_grid_order_checked():
    with pytest.raises(ValidationError):
        EpsilonGrid(start=1.0, stop=0.5, step=0.1)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        ExperimentConfig.load_from_file(str(tmp_path / "absent.json"))
