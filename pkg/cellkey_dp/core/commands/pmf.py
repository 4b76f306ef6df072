import argparse
import logging

from ..noise import pmf_from_gamma, pmf_from_variance, shannon_entropy
from ...utils.io_utils import save_pmf, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("pmf", help="Maximum-entropy pmf for a support and a variance or gamma")
    parser.add_argument("--D", type=int, required=True, help="Support half-width")
    shape = parser.add_mutually_exclusive_group(required=True)
    shape.add_argument("--variance", type=float)
    shape.add_argument("--gamma", type=float)
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.variance is not None:
        pmf = pmf_from_variance(args.D, args.variance)
    else:
        pmf = pmf_from_gamma(args.D, args.gamma)
    logger.info(f"pmf D={pmf.D} gamma={pmf.gamma!r} V={pmf.variance!r} entropy={shannon_entropy(pmf)!r} nats")
    if args.out:
        save_pmf(pmf, args.out)
    else:
        write_json(pmf)
    return 0
