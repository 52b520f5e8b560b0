"""render: draw one figure from a harness CSV file.

    render --kind rates --in results/rates.csv --out rates.svg
"""

import argparse
import sys

from .figures import KINDS, FigureSpec, render
from .schemas import SchemaError


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="render", description="Render a figure from a harness CSV file."
    )
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="src", required=True, help="input CSV path")
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    parser.add_argument("--title", default=None)
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    args = parser.parse_args(argv)
    spec = FigureSpec(
        kind=args.kind,
        src=args.src,
        out=args.out,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    try:
        render(spec)
    except (OSError, SchemaError, ValueError) as e:
        print(f"render: {e}", file=sys.stderr)
        return 1
    print(f"{args.kind}: {args.src} -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
