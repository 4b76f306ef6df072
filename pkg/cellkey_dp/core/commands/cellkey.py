import argparse
import logging

from ..cellkey import CellKeyConfig, aggregate_cell_key, generate_record_keys
from ..errors import InvalidParameterError
from ...utils.io_utils import read_record_keys, write_output, write_record_keys

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("cellkey", help="Aggregate record keys into a cell key")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--record-keys", help="Newline-delimited record keys")
    source.add_argument("--count", type=int, help="Generate this many record keys")
    parser.add_argument("--seed", type=int, default=0, help="Seed for generated record keys")
    parser.add_argument("--keysize-log2", type=int, default=None)
    parser.add_argument("--big-n", type=int, default=None)
    parser.add_argument("--keys-out", default=None, help="Also write the generated record keys here")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Print the cell key as an unsigned decimal."""
    if args.record_keys is not None:
        if args.keys_out:
            raise InvalidParameterError("--keys-out only applies to generated record keys")
        keys = read_record_keys(args.record_keys)
    else:
        keys = generate_record_keys(args.count, args.seed)
        if args.keys_out:
            write_record_keys(keys, args.keys_out)

    fields = {}
    if args.keysize_log2 is not None:
        fields["keysize_log2"] = args.keysize_log2
    if args.big_n is not None:
        fields["big_n"] = args.big_n
    cell_key = aggregate_cell_key(keys, CellKeyConfig(**fields))
    logger.info(f"Aggregated {len(keys)} record keys into cell key {cell_key.value} (KEYSIZE=2^{cell_key.keysize_log2})")
    write_output(f"{cell_key.value}\n", args.out)
    return 0
