"""CLI entry point: plots <report.csv> <out_dir>."""

from __future__ import annotations

import argparse
import sys

from oscplots.frame import SchemaMismatchError
from oscplots.render import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render figures and a summary table from a harness CSV report",
    )
    parser.add_argument("report", help="CSV report path")
    parser.add_argument("out_dir", help="output directory for figures and summary.md")
    args = parser.parse_args(argv)
    try:
        outputs = render(args.report, args.out_dir)
    except SchemaMismatchError as exc:
        print(f"schema mismatch: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in outputs["figures"] + outputs["summary"]:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
