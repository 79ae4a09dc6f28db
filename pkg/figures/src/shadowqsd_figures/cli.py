"""``render_figures <results.csv> <out_dir>``: draw every figure the CSV supports."""

import argparse
import sys
from pathlib import Path

from shadowqsd_figures.render import FigureSpec, SchemaError, kinds_for_table, read_table, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render study-result CSVs into the standard figure set",
    )
    parser.add_argument("results_csv", help="CSV produced by a study run")
    parser.add_argument("out_dir", help="directory for the rendered images")
    parser.add_argument("--kind", choices=("shots", "subspace", "errorbar", "bias"),
                        help="render only this figure kind")
    args = parser.parse_args(argv)

    csv_path = Path(args.results_csv)
    if not csv_path.is_file():
        print(f"error: no such file: {csv_path}", file=sys.stderr)
        return 2
    try:
        table = read_table(csv_path)
    except (SchemaError, ValueError) as exc:
        print(f"error: unreadable CSV: {exc}", file=sys.stderr)
        return 2

    kinds = [args.kind] if args.kind else kinds_for_table(table)
    if not kinds:
        known = {"shots", "subspace", "errorbar", "bias"}
        print(
            "error: CSV matches no figure schema; "
            f"found columns {sorted(table)} (known kinds: {sorted(known)})",
            file=sys.stderr,
        )
        return 2

    out_dir = Path(args.out_dir)
    for kind in kinds:
        spec = FigureSpec(csv_path, kind, out_dir / f"{kind}.png")
        try:
            plot = render(spec)
        except SchemaError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(f"wrote {spec.out_path} (fit slope {plot.fit_slope:.3g})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
