import argparse
import logging

from ..config import get_settings
from ..sampler import build_lookup
from ...utils.io_utils import load_pmf, save_table, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("quantize", help="Build the lookup table for a pmf file")
    parser.add_argument("--pmf", required=True)
    parser.add_argument("--keysize-log2", type=int, default=None, help="log2 KEYSIZE, 1..32")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    keysize_log2 = args.keysize_log2 if args.keysize_log2 is not None else get_settings().DEFAULT_KEYSIZE_LOG2
    table = build_lookup(load_pmf(args.pmf), keysize_log2)
    if not table.full_support:
        logger.warning(f"KEYSIZE=2^{keysize_log2} leaves some values of [-{table.D}, {table.D}] unreachable; "
                       f"sampling from this table will be refused")
    if args.out:
        save_table(table, args.out)
    else:
        write_json(table)
    return 0
