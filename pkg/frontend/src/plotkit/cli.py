"""Command line entry point: plotkit --input ... --kind ... --output ..."""

import argparse
import sys

from .figures import RENDERERS, SchemaError, render_contour, render_profile


def main(argv=None):
    parser = argparse.ArgumentParser(prog="plotkit", description=__doc__)
    parser.add_argument("--input", action="append", required=True, help="input CSV (repeatable)")
    parser.add_argument("--kind", choices=sorted(RENDERERS), required=True)
    parser.add_argument("--output", required=True, help="image file to write")
    parser.add_argument("--field", default="rho", help="column to plot (profile/contour)")
    parser.add_argument("--reference", default=None, help="reference CSV drawn as a solid line")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        kind = args.kind
        if kind == "profile":
            render_profile(args.input, args.output, field=args.field,
                           reference=args.reference, title=args.title)
        elif kind == "contour":
            render_contour(args.input, args.output, field=args.field, title=args.title)
        else:
            RENDERERS[kind](args.input, args.output, title=args.title)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"plotkit error: {exc}", file=sys.stderr)
        return 1
    print(args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
