"""plot: render result CSVs to figures.

    plot --kind {ber|snr_vs_rate|papr} --in results.csv [more.csv ...] \
         --out figure.png [--group-by format,m] [--target-ber 1e-4]

Exit codes: 0 success (including an empty-but-valid CSV, which renders
empty axes), 2 on schema or argument errors, 1 on other failures.
"""

from __future__ import annotations

import argparse
import sys

from .plots import DEFAULT_GROUPS, KINDS, PlotSpec, render
from .reader import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description="Render optofdm result CSVs")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    parser.add_argument("--out", required=True, help="output image path (png/svg/pdf)")
    parser.add_argument(
        "--group-by",
        default=",".join(DEFAULT_GROUPS),
        help="comma-separated CSV columns that define one series",
    )
    parser.add_argument("--target-ber", type=float, default=1e-4,
                        help="crossing level for snr_vs_rate")
    parser.add_argument("--title")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            inputs=args.inputs,
            kind=args.kind,
            out=args.out,
            group_by=tuple(k.strip() for k in args.group_by.split(",") if k.strip()),
            target_ber=args.target_ber,
            title=args.title,
        )
        summary = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {summary['out']} ({summary['series']} series, {summary['points']} points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
