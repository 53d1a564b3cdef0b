"""Command line entry point: satnls-plots KIND --output FIG [inputs...]

Exit codes: 0 success, 2 usage or schema problems, 3 missing or
inconsistent inputs.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InconsistentInput, MissingInput, SchemaError
from .figures import FIGURE_KINDS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satnls-plots",
        description="Render figures from satnls run artifacts.",
    )
    parser.add_argument("kind", choices=FIGURE_KINDS)
    parser.add_argument("--output", required=True, help="figure path (.png or .svg)")
    parser.add_argument("--series", help="diagnostic series CSV")
    parser.add_argument("--report", help="run report JSON")
    parser.add_argument("--norms", help="norm table JSON")
    parser.add_argument("--profile", help="separation profile CSV")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    inputs = {
        "series": args.series,
        "report": args.report,
        "norms": args.norms,
        "profile": args.profile,
    }
    try:
        path = render(args.kind, inputs, args.output)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MissingInput, InconsistentInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"{args.kind}: wrote {path}")
    return 0


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
