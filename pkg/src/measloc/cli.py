"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys

from .errors import MeasLocError, ParseError, ValidationError
from .reports import COMMANDS, failed, format_reports, run


def build_parser():
    p = argparse.ArgumentParser(
        prog="measloc",
        description="Check measure/locale dualities on finite structures.",
    )
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("input", nargs="?", help="document file or inline document text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--max-points", type=int, default=3)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--figures", metavar="DIR", help="also write figures to DIR")
    p.add_argument("--timings", action="store_true", help="include per-law runtime")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2**64:
        print("error: seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    try:
        obj, reports = run(args.command, args.input, seed=args.seed, cases=args.cases,
                           max_points=args.max_points)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        print(f"invalid input ({e.invariant}): {e}", file=sys.stderr)
        return 2
    except MeasLocError as e:
        print(f"error ({type(e).__name__}): {e}", file=sys.stderr)
        return 2
    sys.stdout.write(format_reports(reports, args.format, args.timings))
    if args.figures:
        from .plotting import render_figures

        for path in render_figures(args.command, obj, reports, args.figures):
            print(f"figure: {path}", file=sys.stderr)
    return 1 if failed(reports) else 0


if __name__ == "__main__":
    sys.exit(main())
