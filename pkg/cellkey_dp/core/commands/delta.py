import argparse
import logging

from ..accounting import delta_of_epsilon, delta_oracle
from ...utils.io_utils import load_pmf, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("delta", help="delta at epsilon for a pmf file")
    parser.add_argument("--pmf", required=True, help="pmf JSON written by the pmf or design command")
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--oracle", action="store_true", help="Use the brute-force hockey-stick sum")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    pmf = load_pmf(args.pmf)
    point = delta_oracle(pmf, args.epsilon) if args.oracle else delta_of_epsilon(pmf, args.epsilon)
    write_json(point.model_dump(mode="json", exclude_none=True), args.out)
    return 0
