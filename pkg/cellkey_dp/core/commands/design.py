import argparse
import logging

from ..calibration import CalibrationInput, KappaRule, design_guide
from ...utils.io_utils import write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("design", help="Smallest support D meeting an (epsilon, delta) target")
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--delta", type=float, required=True, help="delta target in (0, 1)")
    parser.add_argument("--kappa-divisor", type=float, default=None,
                        help="kappa = 2 eps / (divisor (4D^2 - 1)); defaults to CKDP_KAPPA_DIVISOR")
    parser.add_argument("--d-max", type=int, default=None, help="Largest support searched")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """CalibrationResult JSON for the target."""
    fields = {"epsilon": args.epsilon, "delta_target": args.delta}
    if args.kappa_divisor is not None:
        fields["kappa_rule"] = KappaRule(divisor=args.kappa_divisor)
    if args.d_max is not None:
        fields["D_max"] = args.d_max
    result = design_guide(CalibrationInput(**fields))
    write_json(result, args.out)
    return 0
