"""
delta versus epsilon sweeps, for fixed (D, gamma) curves and for the calibrated family.

Rows are ordered by series then ascending epsilon. The numeric column holds the
smallest delta over the gamma grid and is left empty unless requested.
"""
import argparse
import logging
from typing import List, Optional, Sequence

from ..accounting import GammaGrid, best_delta_numeric, delta_of_epsilon
from ..calibration import KappaRule, calibrated_pmf
from ..errors import InvalidParameterError
from ..experiment_config import DeltaSweepExperiment, initialize_config
from ..noise import NoisePmf, pmf_from_gamma, pmf_from_variance
from ...utils.io_utils import linear_grid, write_csv

logger = logging.getLogger(__name__)

COLUMNS = ("epsilon", "delta_analytical", "delta_numeric_min", "D", "gamma", "V")


def register(subparsers) -> None:
    parser = subparsers.add_parser("delta-sweep", help="CSV of delta over an epsilon grid")
    parser.add_argument("--D", type=int, default=None, help="Support half-width")
    shape = parser.add_mutually_exclusive_group()
    shape.add_argument("--gamma", type=float)
    shape.add_argument("--variance", type=float)
    shape.add_argument("--calibrated", action="store_true", help="gamma = eps/(2D-1) - kappa at each epsilon")
    parser.add_argument("--eps-start", type=float, default=0.05)
    parser.add_argument("--eps-stop", type=float, default=3.0)
    parser.add_argument("--eps-step", type=float, default=0.05)
    parser.add_argument("--numeric", action="store_true", help="Add the best delta over the gamma grid")
    parser.add_argument("--kappa-divisor", type=float, default=None)
    parser.add_argument("--experiment", default=None, help="Named delta sweep from experiments.json")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def fixed_rows(pmf: NoisePmf, epsilons: Sequence[float], numeric: bool = False,
               gamma_grid: Optional[GammaGrid] = None) -> List[tuple]:
    rows = []
    for epsilon in epsilons:
        delta = delta_of_epsilon(pmf, epsilon).delta
        best = best_delta_numeric(pmf.D, epsilon, gamma_grid).delta if numeric else None
        rows.append((epsilon, delta, best, pmf.D, pmf.gamma, pmf.variance))
    return rows


def calibrated_rows(D: int, epsilons: Sequence[float], kappa_rule: KappaRule, numeric: bool = False,
                    gamma_grid: Optional[GammaGrid] = None) -> List[tuple]:
    rows = []
    for epsilon in epsilons:
        pmf = calibrated_pmf(epsilon, D, kappa_rule(epsilon, D))
        delta = delta_of_epsilon(pmf, epsilon).delta
        best = best_delta_numeric(D, epsilon, gamma_grid).delta if numeric else None
        rows.append((epsilon, delta, best, D, pmf.gamma, pmf.variance))
    return rows


def experiment_rows(experiment: DeltaSweepExperiment) -> List[tuple]:
    grid = experiment.epsilons
    epsilons = linear_grid(grid.start, grid.stop, grid.step)
    rule = KappaRule(divisor=experiment.kappa_divisor) if experiment.kappa_divisor else KappaRule()
    rows = []
    for D in experiment.supports:
        if experiment.mode == "calibrated":
            rows.extend(calibrated_rows(D, epsilons, rule, experiment.numeric))
            continue
        pmfs = [pmf_from_variance(D, V) for V in experiment.variances]
        pmfs += [pmf_from_gamma(D, g) for g in experiment.gammas]
        for pmf in pmfs:
            rows.extend(fixed_rows(pmf, epsilons, experiment.numeric))
    return rows


def run(args: argparse.Namespace) -> int:
    if args.experiment is not None:
        experiment = initialize_config().get_delta_sweep(args.experiment)
        if experiment is None:
            raise InvalidParameterError(f"Unknown delta sweep experiment: {args.experiment}")
        logger.info(f"Running experiment {args.experiment}: {experiment.description}")
        rows = experiment_rows(experiment)
    else:
        if args.D is None or (args.gamma is None and args.variance is None and not args.calibrated):
            raise InvalidParameterError("delta-sweep needs --D and one of --gamma, --variance, --calibrated")
        epsilons = linear_grid(args.eps_start, args.eps_stop, args.eps_step)
        if args.calibrated:
            rule = KappaRule(divisor=args.kappa_divisor) if args.kappa_divisor is not None else KappaRule()
            rows = calibrated_rows(args.D, epsilons, rule, args.numeric)
        else:
            pmf = pmf_from_variance(args.D, args.variance) if args.variance is not None else pmf_from_gamma(args.D, args.gamma)
            rows = fixed_rows(pmf, epsilons, args.numeric)
    logger.info(f"delta-sweep: {len(rows)} rows")
    write_csv(COLUMNS, rows, args.out)
    return 0
