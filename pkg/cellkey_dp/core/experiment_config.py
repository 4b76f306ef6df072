from typing import Dict, List, Literal, Optional
from pydantic import BaseModel, Field, model_validator
import json
import os
import logging

logger = logging.getLogger(__name__)


class EpsilonGrid(BaseModel):
    """Linear epsilon grid start, start+step, ..., stop."""
    start: float = Field(gt=0)
    stop: float = Field(gt=0)
    step: float = Field(gt=0)

    @model_validator(mode="after")
    def check_order(self) -> "EpsilonGrid":
        if self.stop < self.start:
            raise ValueError("Epsilon grid stop must not be below start")
        return self


class DeltaSweepExperiment(BaseModel):
    """delta versus epsilon for fixed variances or for the calibrated family."""
    description: str
    mode: Literal["fixed", "calibrated"]
    supports: List[int] = Field(min_length=1)
    variances: List[float] = Field(default_factory=list)
    gammas: List[float] = Field(default_factory=list)
    epsilons: EpsilonGrid
    numeric: bool = False
    kappa_divisor: Optional[float] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def check_mode(self) -> "DeltaSweepExperiment":
        if self.mode == "fixed" and not (self.variances or self.gammas):
            raise ValueError("Fixed-mode experiments need variances or gammas")
        return self


class KeysizeSweepExperiment(BaseModel):
    """Post-quantization audit over epsilon and KEYSIZE."""
    description: str
    D: int = Field(ge=1)
    epsilons: EpsilonGrid
    keysize_log2: List[int] = Field(min_length=1)
    kappa_divisor: Optional[float] = Field(default=None, ge=1)


class ExperimentConfig(BaseModel):
    """Named experiments shipped in experiments.json."""
    delta_sweeps: Dict[str, DeltaSweepExperiment]
    keysize_sweeps: Dict[str, KeysizeSweepExperiment]

    @classmethod
    def load_from_file(cls, config_path: Optional[str] = None) -> 'ExperimentConfig':
        """Load experiments from a JSON file."""
        if config_path is None:
            config_path = os.path.join(os.path.dirname(__file__), "experiments.json")

        try:
            with open(config_path, 'r') as f:
                data = json.load(f)
                return cls(**data)
        except Exception as e:
            logger.error("Failed to load experiment configuration: %s", str(e))
            raise

    def get_delta_sweep(self, name: str) -> Optional[DeltaSweepExperiment]:
        return self.delta_sweeps.get(name)

    def get_keysize_sweep(self, name: str) -> Optional[KeysizeSweepExperiment]:
        return self.keysize_sweeps.get(name)

    def names(self) -> List[str]:
        return sorted([*self.delta_sweeps, *self.keysize_sweeps])


# Global instance of the experiment configuration
experiment_config: Optional[ExperimentConfig] = None

def initialize_config(config_path: Optional[str] = None) -> ExperimentConfig:
    """Initialize the global experiment configuration."""
    global experiment_config
    if experiment_config is None:
        experiment_config = ExperimentConfig.load_from_file(config_path)
    return experiment_config

def get_config() -> ExperimentConfig:
    """Get the global experiment configuration."""
    if experiment_config is None:
        raise RuntimeError("Experiment configuration not initialized. Call initialize_config() first.")
    return experiment_config
