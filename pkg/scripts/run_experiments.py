#!/usr/bin/env python3
"""Run the full experiment catalog (or a subset) and write one CSV per kind.

Usage:
    python3 scripts/run_experiments.py out_dir [kind ...]
"""

import sys
from pathlib import Path

from oscint.experiments import EXPERIMENT_KINDS, default_config, run_experiment


def main(argv):
    if not argv:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    out_dir = Path(argv[0])
    out_dir.mkdir(parents=True, exist_ok=True)
    kinds = argv[1:] or sorted(EXPERIMENT_KINDS)
    unknown = [k for k in kinds if k not in EXPERIMENT_KINDS]
    if unknown:
        print(f"unknown kinds: {unknown}; known: {sorted(EXPERIMENT_KINDS)}", file=sys.stderr)
        return 2
    rc = 0
    for kind in kinds:
        report = run_experiment(default_config(kind))
        path = out_dir / f"{kind}.csv"
        report.document.write(path)
        for label, verdict in report.verdicts.items():
            fit = report.fits.get(label)
            extra = f" slope={fit.slope:.4f} r2={fit.r_squared:.4f}" if fit else ""
            print(f"[{verdict}] {kind}:{label}{extra}")
        print(f"  wrote {path} ({report.wall_clock:.1f}s)")
        rc |= 0 if report.passed else 1
    return rc


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
