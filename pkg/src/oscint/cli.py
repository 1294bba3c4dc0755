"""Command-line driver: invariant self-checks and the experiment catalog."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from oscint.experiments import (
    EXPERIMENT_KINDS,
    ExperimentConfig,
    default_config,
    run_experiment,
)

RATE_KINDS = ("chirp_fourier_norm", "chirp2d_mixed_norm", "c2pm_closed_form")
BLOWUP_KINDS = ("degenerate_blowup", "fefferman_logN")
BOUNDED_KINDS = ("mixed_bounded", "c2_wiener_iff", "sup_tensor_bounded", "vector_valued")


def _print_report(report) -> int:
    for label, verdict in report.verdicts.items():
        fit = report.fits.get(label)
        extra = f" slope={fit.slope:.4f} r2={fit.r_squared:.4f}" if fit else ""
        print(f"[{verdict}] {report.config.kind}:{label}{extra}")
    print(f"  wall_clock={report.wall_clock:.2f}s rows={len(report.document.rows)}")
    return 0 if report.passed else 1


def _run_kind(kind: str, out: str | None, config_path: str | None) -> int:
    if config_path:
        cfg = ExperimentConfig.from_json(Path(config_path).read_text())
        if cfg.kind != kind:
            print(f"config kind {cfg.kind!r} does not match requested {kind!r}", file=sys.stderr)
            return 2
    else:
        cfg = default_config(kind)
    report = run_experiment(cfg)
    if out:
        report.document.write(out)
        print(f"wrote {out}")
    return _print_report(report)


def _cmd_verify(_args) -> int:
    """Fast invariant self-checks across modules."""
    from oscint.lattice import FreqGrid, GridFunction, freq_lp_norm, lp_norm, synthesize
    from oscint.martingale import build_cdf_from_weights, pair_partition
    from oscint.osc import SignVector, brute_ordered, closed_form_c2pm, dp_ordered
    from oscint.akns import build_system, recursion_residual, solve

    failures = 0

    def check(name: str, ok: bool):
        nonlocal failures
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
        failures += 0 if ok else 1

    rng = np.random.default_rng(0)
    grid = FreqGrid.dual(64, 8.0)
    f = GridFunction(grid, rng.normal(size=64) + 1j * rng.normal(size=64))
    check("parseval", abs(lp_norm(f, 2) - freq_lp_norm(f, 2)) <= 1e-10 * freq_lp_norm(f, 2))

    g12 = FreqGrid(12, 3.0, 10, 2.0)
    fs = [GridFunction(g12, rng.normal(size=12) + 1j * rng.normal(size=12)) for _ in range(3)]
    eps = SignVector((-1, 1, 1))
    b = synthesize(brute_ordered(fs, eps)).space
    d = synthesize(dp_ordered(fs, eps)).space
    check("oracle_equivalence", np.max(np.abs(b - d)) <= 1e-9 * np.max(np.abs(b)))

    ok = True
    for seed in range(20):
        w = np.random.default_rng(seed).uniform(0.05, 1.0, size=32)
        cdf = build_cdf_from_weights(FreqGrid(32, 4.0, 8, 4.0), w)
        part = pair_partition(cdf)
        counts = np.zeros((32, 32), dtype=int)
        for e in part.entries:
            counts[e.left_range[0] : e.left_range[1], e.right_range[0] : e.right_range[1]] += 1
        for i, k in part.residual_pairs:
            counts[i, k] += 1
        iu = np.triu_indices(32, k=1)
        ok &= bool(np.all(counts[iu] == 1)) and not part.residual_pairs
    check("pair_partition_tiling", ok)

    check(
        "closed_form_spot",
        abs(closed_form_c2pm(0.5) - (-2j / np.pi)) <= 1e-12,
    )

    sys2 = build_system([1.0], [(1.0, 1.0), (0.0, 0.0)], (0.7, 1.1))
    sol = solve(sys2, 1.0, 513)
    exact = np.outer(
        (np.exp(-1j * 0.7 * sol.x1) - 1) / (-1j * 0.7),
        (np.exp(-1j * 1.1 * sol.x2) - 1) / (-1j * 1.1),
    )
    check("akns_closed_form", float(np.abs(sol.u_tilde(1) - exact).max()) <= 1e-6)
    check("akns_residual", recursion_residual(sol) <= 1e-6)

    return 1 if failures else 0


def _cmd_decompose(args) -> int:
    from oscint.lattice import FreqGrid
    from oscint.osc import SignVector, decompose_reconstruct
    from oscint.witnesses import random_bandlimited

    grid = FreqGrid(16, 4.0, 12, 2.0)
    worst = 0.0
    for seed in range(args.seeds):
        fs = [random_bandlimited(1000 * seed + i, (0, 16), grid) for i in range(3)]
        rep = decompose_reconstruct(fs, SignVector((-1, 1, 1)), pivot=0, p_prime=2.0)
        worst = max(worst, rep.max_rel_err)
    ok = worst <= 1e-9
    print(f"[{'PASS' if ok else 'FAIL'}] decompose_reconstruct max_rel_err={worst:.3e}")
    return 0 if ok else 1


def _cmd_report(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rc = 0
    for kind in sorted(EXPERIMENT_KINDS):
        report = run_experiment(default_config(kind))
        path = out_dir / f"{kind}.csv"
        report.document.write(path)
        rc |= _print_report(report)
    print(f"reports in {out_dir}")
    return rc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="oscint",
        description="Numerical laboratory for ordered multilinear oscillatory integrals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", help="run fast invariant self-checks")

    for name, kinds in (("rates", RATE_KINDS), ("blowup", BLOWUP_KINDS), ("bounded", BOUNDED_KINDS)):
        p = sub.add_parser(name, help=f"run a {name} experiment")
        p.add_argument("kind", choices=kinds)
        p.add_argument("--out", help="write the CSV report here")
        p.add_argument("--config", help="JSON ExperimentConfig overriding defaults")

    p = sub.add_parser("akns", help="quadrant saturation probe")
    p.add_argument("--out", help="write the CSV report here")
    p.add_argument("--config", help="JSON ExperimentConfig overriding defaults")

    p = sub.add_parser("decompose", help="martingale decomposition-reconstruction check")
    p.add_argument("--seeds", type=int, default=20)

    p = sub.add_parser("report", help="run the full catalog and write CSVs")
    p.add_argument("out_dir")

    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command in ("rates", "blowup", "bounded"):
        return _run_kind(args.kind, args.out, args.config)
    if args.command == "akns":
        return _run_kind("akns_sup", args.out, args.config)
    if args.command == "decompose":
        return _cmd_decompose(args)
    if args.command == "report":
        return _cmd_report(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
