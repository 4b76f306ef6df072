import argparse
import logging

from ..cellkey import CellKeyConfig, aggregate_cell_key
from ..sampler import perturb
from ...utils.io_utils import load_table, read_record_keys, write_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sample", help="Perturb a true count through a lookup table")
    parser.add_argument("--table", required=True, help="Table JSON written by quantize")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--cell-key", type=int)
    source.add_argument("--record-keys", help="Newline-delimited record keys, aggregated to a cell key")
    parser.add_argument("--count", type=int, required=True, help="True cell count n")
    parser.add_argument("--big-n", type=int, default=None, help="Prime modulus for record-key aggregation")
    parser.add_argument("--out", default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Perturbed count n + S for the cell key."""
    table = load_table(args.table)
    if args.record_keys is not None:
        fields = {"keysize_log2": table.keysize_log2}
        if args.big_n is not None:
            fields["big_n"] = args.big_n
        cell_key = aggregate_cell_key(read_record_keys(args.record_keys), CellKeyConfig(**fields)).value
    else:
        cell_key = args.cell_key
    perturbed = perturb(args.count, table, cell_key)
    write_json(
        {
            "true_count": args.count,
            "cell_key": cell_key,
            "noise": perturbed - args.count,
            "perturbed_count": perturbed,
        },
        args.out,
    )
    return 0
