"""
Post-quantization sweep over epsilon and KEYSIZE for the calibrated design.
"""
import argparse
import logging

from ..calibration import KappaRule
from ..errors import InvalidParameterError
from ..experiment_config import initialize_config
from ..quant_audit import keysize_sweep
from ...utils.io_utils import linear_grid, write_csv

logger = logging.getLogger(__name__)

COLUMNS = (
    "epsilon_design",
    "delta_design",
    "keysize_log2",
    "full_support",
    "bias_q",
    "variance_q",
    "var_rel_err",
    "epsilon_q",
    "epsilon_q_twosided",
    "delta_q",
)


def register(subparsers) -> None:
    parser = subparsers.add_parser("audit", help="Bias, variance and effective (epsilon, delta) after quantization")
    parser.add_argument("--D", type=int, default=10)
    parser.add_argument("--eps-start", type=float, default=0.1)
    parser.add_argument("--eps-stop", type=float, default=2.5)
    parser.add_argument("--eps-step", type=float, default=0.1)
    parser.add_argument("--keysize-log2", type=int, nargs="+", default=[8, 16, 32])
    parser.add_argument("--kappa-divisor", type=float, default=None)
    parser.add_argument("--experiment", default=None, help="Named keysize sweep from experiments.json")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.experiment is not None:
        experiment = initialize_config().get_keysize_sweep(args.experiment)
        if experiment is None:
            raise InvalidParameterError(f"Unknown keysize sweep experiment: {args.experiment}")
        logger.info(f"Running experiment {args.experiment}: {experiment.description}")
        D, grid = experiment.D, experiment.epsilons
        epsilons = linear_grid(grid.start, grid.stop, grid.step)
        keysizes, divisor = experiment.keysize_log2, experiment.kappa_divisor
    else:
        D = args.D
        epsilons = linear_grid(args.eps_start, args.eps_stop, args.eps_step)
        keysizes, divisor = args.keysize_log2, args.kappa_divisor

    rule = KappaRule(divisor=divisor) if divisor is not None else KappaRule()
    audits = keysize_sweep(D, epsilons, keysizes, rule)
    write_csv(COLUMNS, [tuple(getattr(a, c) for c in COLUMNS) for a in audits], args.out)
    return 0
