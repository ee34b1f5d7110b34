"""Command line: embed a parallel TSV into two embedding files."""

import argparse
import json
import sys

from .encode import DEFAULT_BATCH_SIZE, embed_pairs
from .errors import XlembedError


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xlembed",
        description="Embed both columns of a parallel-sentence TSV into "
        "binary embedding files.",
    )
    parser.add_argument("--tsv", required=True, help="parallel sentence pairs, one per line")
    parser.add_argument("--model", required=True, help="sentence-embedding model id")
    parser.add_argument("--src-out", required=True, help="output file for column 1")
    parser.add_argument("--tgt-out", required=True, help="output file for column 2")
    parser.add_argument("--batch", type=_positive_int, default=DEFAULT_BATCH_SIZE,
                        help="encoder batch size (throughput only, never values)")
    parser.add_argument("--src-lang", default="src", help="language tag for column 1")
    parser.add_argument("--tgt-lang", default="tgt", help="language tag for column 2")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        summary = embed_pairs(
            args.tsv,
            args.model,
            args.src_out,
            args.tgt_out,
            batch_size=args.batch,
            src_lang=args.src_lang,
            tgt_lang=args.tgt_lang,
        )
    except (XlembedError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(summary.as_dict()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
