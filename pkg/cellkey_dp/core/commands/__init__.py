"""
Subcommand package for the cellkey_dp command line.

Each module exposes register(subparsers), which adds its parser and sets
handler=run; run(args) returns the process exit code.
"""
from . import audit, cellkey, delta, delta_sweep, design, pmf, quantize, sample

COMMANDS = (design, pmf, delta, delta_sweep, quantize, sample, cellkey, audit)

__all__ = ["COMMANDS"]
