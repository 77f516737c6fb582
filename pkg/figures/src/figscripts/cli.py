"""Command-line entry point: ``plot <kind> <inputs...> -o <out>``."""

from __future__ import annotations

import argparse
import sys

from .io import InputError
from .plots import PLOT_KINDS, PlotError, render

EXIT_OK = 0
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render figures from gpesolve diagnostics CSVs and snapshots",
    )
    parser.add_argument("kind", choices=sorted(PLOT_KINDS))
    parser.add_argument("inputs", nargs="+", help="CSV or snapshot paths (stem, .json or .bin)")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(args.kind, args.inputs, args.output)
    except (InputError, PlotError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {args.output}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
