"""
Exception hierarchy for cellkey_dp.

Each error carries the process exit code the CLI returns for it, the same way
API errors carry an HTTP status code.
"""
from typing import Optional


class PerturbationError(Exception):
    """Base class for all domain errors."""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidParameterError(PerturbationError, ValueError):
    """A parameter lies outside its admissible range."""

    exit_code = 2


class TargetUnreachableError(PerturbationError):
    """No support half-width up to the search cap reaches the delta target."""

    exit_code = 3

    def __init__(self, detail: str, best_delta: float, d_max: int):
        super().__init__(detail)
        self.best_delta = best_delta
        self.d_max = d_max


class SupportFailureError(PerturbationError):
    """The quantized lookup table cannot realise every value in [-D, D]."""

    exit_code = 4

    def __init__(self, detail: str, keysize_log2: Optional[int] = None, D: Optional[int] = None):
        super().__init__(detail)
        self.keysize_log2 = keysize_log2
        self.D = D


class ConvergenceError(PerturbationError):
    """Root finding stopped at its iteration cap."""

    exit_code = 5

    def __init__(self, detail: str, iterations: int, residual: float):
        super().__init__(detail)
        self.iterations = iterations
        self.residual = residual
