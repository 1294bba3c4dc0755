"""Experiment catalog: rate fits, blow-up probes, bounded-ratio protocols.

Each experiment kind measures a family of norms over a geometric N schedule,
writes one CSV row per measurement, and appends a footer with the fitted
slope and verdict so the conclusion is recomputable from the file alone.
Verdict semantics: growth claims PASS when the fitted slope matches the
expected rate within tolerance (R^2 >= 0.9); boundedness claims PASS when
the log-log slope stays within the dead zone |slope| <= 0.05 (growth is
declared at >= 0.15; in between is INCONCLUSIVE).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import simpson
from scipy.special import sici

from oscint.fitting import FitResult, fit_line, fit_log_growth, fit_power_law
from oscint.lattice import (
    FreqGrid,
    GridFunction,
    GridFunction2D,
    AxisNorm,
    MixedNormSpec,
    band_project,
    conjugate_exponent,
    freq_lp_norm,
    lp_norm,
    lp_norm_samples,
    mixed_norm,
    synthesize,
    wiener_norm,
)
from oscint.osc import SignVector, closed_form_c2pm, dp_ordered, signed_synth
from oscint.reporting import ReportDocument
from oscint.tensor2d import sup_tensor_partial
from oscint.witnesses import chirp, chirp2d, g_pm, random_bandlimited
from oscint.akns import build_system, solve, sup_quadrant

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "check_vector_valued",
    "EXPERIMENT_KINDS",
    "default_config",
    "fefferman_integral",
    "BOUNDED_SLOPE",
    "GROWTH_SLOPE",
]

# Slope dead zone separating "bounded" from "growing" verdicts.
BOUNDED_SLOPE = 0.05
GROWTH_SLOPE = 0.15


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    exponents: tuple[float, ...] = ()
    schedule: tuple[float, ...] = ()
    seeds: tuple[int, ...] = (0,)
    params: dict = field(default_factory=dict)
    expected_slope: float | None = None
    slope_tol: float = 0.05

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(
                f"unknown experiment kind {self.kind!r}; "
                f"known: {sorted(EXPERIMENT_KINDS)}"
            )
        sched = tuple(self.schedule)
        if sched and list(sched) != sorted(set(sched)):
            raise ValueError("schedule must be strictly increasing")

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "exponents": list(self.exponents),
                "schedule": list(self.schedule),
                "seeds": list(self.seeds),
                "params": self.params,
                "expected_slope": self.expected_slope,
                "slope_tol": self.slope_tol,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        d = json.loads(text)
        return cls(
            kind=d["kind"],
            exponents=tuple(d.get("exponents", ())),
            schedule=tuple(d.get("schedule", ())),
            seeds=tuple(d.get("seeds", (0,))),
            params=d.get("params", {}),
            expected_slope=d.get("expected_slope"),
            slope_tol=d.get("slope_tol", 0.05),
        )


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    document: ReportDocument
    fits: dict[str, FitResult]
    verdicts: dict[str, str]
    wall_clock: float

    @property
    def passed(self) -> bool:
        return all(v == "PASS" for v in self.verdicts.values())


# ---------------------------------------------------------------------------
# Shared grid builders
# ---------------------------------------------------------------------------


def chirp_grid(N: float, atoms_per_unit: int = 24, xi_factor: float = 4.0) -> FreqGrid:
    """Dual grid wide enough for the quadratic chirp of window N."""
    M = int(round(atoms_per_unit * N * N))
    return FreqGrid.dual(M, xi_factor * N)


def to_dual(f: GridFunction) -> GridFunction:
    """Re-wrap frequency samples onto the dual grid (one full spatial period)."""
    return GridFunction(grid=FreqGrid.dual(f.grid.M, f.grid.xi_max), freq=f.freq)


def _slope_verdict_growth(fit: FitResult, expected: float, tol: float) -> str:
    ok = abs(fit.slope - expected) <= tol and fit.r_squared >= 0.9
    return "PASS" if ok else "FAIL"


def _slope_verdict_bounded(slope: float) -> str:
    """Boundedness is one-sided: only upward drift of the ratio refutes it."""
    if slope <= BOUNDED_SLOPE:
        return "PASS"
    if slope >= GROWTH_SLOPE:
        return "FAIL"
    return "INCONCLUSIVE"


def _slope_verdict_growing(slope: float) -> str:
    if slope >= GROWTH_SLOPE:
        return "PASS"
    if slope <= BOUNDED_SLOPE:
        return "FAIL"
    return "INCONCLUSIVE"


# ---------------------------------------------------------------------------
# Experiment kinds
# ---------------------------------------------------------------------------


def _run_chirp_fourier_norm(cfg: ExperimentConfig, doc: ReportDocument):
    """Fourier-side L^p norm of the chirp family: expected slope 1/p."""
    exps = cfg.exponents or (1.5, 2.0, 4.0)
    schedule = cfg.schedule or (16, 32, 64, 128, 256, 512)
    per_p: dict[float, list[tuple[float, float]]] = {p: [] for p in exps}
    for N in schedule:
        f = chirp(N, 1, chirp_grid(N))
        for p in exps:
            val = freq_lp_norm(f, p)
            doc.add_row(f"{cfg.kind}_p{p:g}", N, 0, val, 1.0)
            per_p[p].append((N, val))
    fits, verdicts = {}, {}
    for p in exps:
        fit = fit_power_law(per_p[p])
        label = f"p{p:g}"
        fits[label] = fit
        verdicts[label] = _slope_verdict_growth(fit, 1.0 / p, cfg.slope_tol)
        doc.add_footer(
            kind=f"{cfg.kind}_p{p:g}",
            fit="loglog",
            slope=f"{fit.slope:.6f}",
            r2=f"{fit.r_squared:.6f}",
            expected=f"{1.0 / p:.6f}",
            tol=cfg.slope_tol,
            verdict=verdicts[label],
        )
    return fits, verdicts


def fefferman_integral(N: float) -> float:
    """|PV-integral of e^{-4 pi i s t}/(s t) over [-N/10, N/10]^2|.

    Odd/even reduction leaves 4 * int_0^{4 pi a^2} Si(u)/u du with a = N/10
    (exact), evaluated by dense Simpson quadrature on the sine-integral.
    """
    a = N / 10.0
    U = 4.0 * np.pi * a * a
    u = np.linspace(0.0, U, max(4096, int(20 * U)))
    si = sici(u)[0]
    integrand = np.empty_like(u)
    integrand[0] = 1.0  # Si(u)/u -> 1 as u -> 0
    integrand[1:] = si[1:] / u[1:]
    return 4.0 * float(simpson(integrand, x=u))


def _run_fefferman_logN(cfg: ExperimentConfig, doc: ReportDocument):
    schedule = cfg.schedule or (16, 32, 64, 128, 256, 512)
    samples = []
    for N in schedule:
        val = fefferman_integral(N)
        doc.add_row(cfg.kind, N, 0, val, 1.0)
        samples.append((N, val))
    fit = fit_log_growth(samples)
    verdict = "PASS" if fit.slope > 0 and fit.r_squared >= 0.9 else "FAIL"
    doc.add_footer(
        kind=cfg.kind,
        fit="semilog",
        slope=f"{fit.slope:.6f}",
        r2=f"{fit.r_squared:.6f}",
        expected="positive",
        verdict=verdict,
    )
    return {"logN": fit}, {"logN": verdict}


def _gpm_trio(N: float, signs: tuple[int, int, int], atoms_per_unit: int = 24):
    """g_pm witnesses on a shared dual grid sized for n=3 evaluation."""
    M = int(round(atoms_per_unit * N * N))
    grid = FreqGrid.dual(M, 4.0 * N)
    band = 2.5 * N
    return [g_pm(N, band, s, grid, eps_mollify=0.1) for s in signs]


def _c3_norm(fs, eps: SignVector, q: float) -> float:
    out = to_dual(dp_ordered(fs, eps))
    return lp_norm(out, q)


def _run_degenerate_blowup(cfg: ExperimentConfig, doc: ReportDocument):
    """Doubly sign-degenerate trilinear form on chirp witnesses: the ratio
    value / (product of witness L^{3q} norms) should grow like log N."""
    q = cfg.exponents[0] if cfg.exponents else 2.0
    schedule = cfg.schedule or (2, 4, 8, 16)
    p_i = 3.0 * q
    samples = []
    for N in schedule:
        fs = _gpm_trio(N, (1, -1, 1))
        val = _c3_norm(fs, SignVector((1, -1, 1)), q)
        normalizer = float(np.prod([lp_norm(f, p_i) for f in fs]))
        doc.add_row(cfg.kind, N, 0, val, normalizer)
        samples.append((N, val / normalizer))
    fit = fit_log_growth(samples)
    verdict = _slope_verdict_growing(fit.slope) if fit.r_squared >= 0.9 else "FAIL"
    doc.add_footer(
        kind=cfg.kind,
        fit="semilog",
        slope=f"{fit.slope:.6f}",
        r2=f"{fit.r_squared:.6f}",
        expected=f">={GROWTH_SLOPE}",
        verdict=verdict,
    )
    return {"blowup": fit}, {"blowup": verdict}


def _run_mixed_bounded(cfg: ExperimentConfig, doc: ReportDocument):
    """Wiener-cured trilinear form: ratio against W_{p1} x L^{p2} x L^{p3}
    norms stays within a bounded band (log-log slope in the dead zone)."""
    p1, p2, p3 = cfg.exponents or (4.0, 4.0, 4.0)
    q = 1.0 / (1.0 / p1 + 1.0 / p2 + 1.0 / p3)
    schedule = cfg.schedule or (2, 4, 8, 16)
    samples = []
    for N in schedule:
        fs = _gpm_trio(N, (1, -1, 1))
        val = _c3_norm(fs, SignVector((-1, 1, 1)), q)
        normalizer = wiener_norm(fs[0], p1) * lp_norm(fs[1], p2) * lp_norm(fs[2], p3)
        doc.add_row(cfg.kind, N, 0, val, normalizer)
        samples.append((N, val / normalizer))
    fit = fit_power_law(samples)
    ratios = [r for _, r in samples]
    band = max(ratios) / min(ratios)
    verdict = _slope_verdict_bounded(fit.slope)
    if band > 10.0:
        verdict = "FAIL"
    doc.add_footer(
        kind=cfg.kind,
        fit="loglog",
        slope=f"{fit.slope:.6f}",
        r2=f"{fit.r_squared:.6f}",
        band=f"{band:.4f}",
        expected=f"|slope|<={BOUNDED_SLOPE} band<=10",
        verdict=verdict,
    )
    return {"bounded": fit}, {"bounded": verdict}


def _indicator_band(grid: FreqGrid, half_width: float) -> GridFunction:
    """Trapezoid-weighted lattice indicator of [-half_width, half_width]."""
    freq = np.zeros(grid.M, dtype=complex)
    inside = np.abs(grid.xi) <= half_width + 1e-12
    freq[inside] = 1.0
    edge = np.abs(np.abs(grid.xi) - half_width) <= 1e-12
    freq[edge] = 0.5
    return GridFunction(grid=grid, freq=freq)


def c2pm_discrete(M: int, x: np.ndarray) -> np.ndarray:
    """Degenerate bilinear evaluator on unit-band indicator data at points x.

    Uses trapezoid-weighted band indicators plus the analytic half-diagonal
    correction (the strict sum k1 < k2 misses half the diagonal band that
    the continuum integral over x1 < x2 retains)."""
    grid = FreqGrid.dual(M, 2.0)
    f = _indicator_band(grid, 1.0)
    eps = SignVector((1, -1))
    out = dp_ordered([f, f], eps)
    vals = signed_synth(out, 1, x)
    # diagonal band: phases cancel since eps sums to zero on the diagonal
    diag = 0.5 * np.sum(f.freq * f.freq) * grid.dxi**2
    return vals + diag


def _run_c2pm_closed_form(cfg: ExperimentConfig, doc: ReportDocument):
    schedule = cfg.schedule or (256, 512, 1024)
    x = np.concatenate([np.linspace(-4.0, -0.25, 40), np.linspace(0.25, 4.0, 40)])
    exact = np.array([closed_form_c2pm(t) for t in x])
    errs = []
    for M in schedule:
        approx = c2pm_discrete(int(M), x)
        rel = float(np.max(np.abs(approx - exact) / np.abs(exact)))
        doc.add_row(cfg.kind, M, 0, rel, 1.0)
        errs.append(rel)
    final_ok = errs[-1] <= 1e-3
    improving = all(errs[i + 1] < errs[i] for i in range(len(errs) - 1))
    verdict = "PASS" if final_ok and improving else "FAIL"
    doc.add_footer(
        kind=cfg.kind,
        fit="refinement",
        final_rel_err=f"{errs[-1]:.3e}",
        improving=improving,
        expected="<=1e-3 and improving",
        verdict=verdict,
    )
    fit = fit_line(np.log(np.asarray(schedule, float)), np.log(np.asarray(errs)))
    return {"refinement": fit}, {"closed_form": verdict}


def _run_c2_wiener_iff(cfg: ExperimentConfig, doc: ReportDocument):
    """Bilinear degenerate form from L^{p1} x W_{p2} on the fixed unit-band
    indicator witness, whose output decays like 1/x: the L^q mass over a
    growing window [-X, X] converges when 1/p1 + 1/p2 < 1 (q > 1) and
    diverges at the boundary control (2, 2) where q = 1."""
    schedule = cfg.schedule or (4, 8, 16, 32, 64)
    pairs = cfg.params.get("pairs", [[3.0, 4.0], [2.0, 2.0]])
    M = int(cfg.params.get("M", 1024))
    grid = FreqGrid.dual(M, 2.0)
    f = _indicator_band(grid, 1.0)
    out = to_dual(dp_ordered([f, f], SignVector((-1, 1))))
    synthesize(out)
    x_out = out.grid.x
    f_space = synthesize(to_dual(f)).space
    x_in = to_dual(f).grid.x
    fits, verdicts = {}, {}
    for p1, p2 in pairs:
        q = 1.0 / (1.0 / p1 + 1.0 / p2)
        bounded_expected = (1.0 / p1 + 1.0 / p2 < 1.0) and (p2 > 2.0)
        label = f"p{p1:g}_{p2:g}"
        w_norm = freq_lp_norm(f, conjugate_exponent(p2))
        samples = []
        for X in schedule:
            val = lp_norm_samples(out.space[np.abs(x_out) <= X], out.grid.dx, q)
            l_norm = lp_norm_samples(f_space[np.abs(x_in) <= X], grid.dx, p1)
            normalizer = l_norm * w_norm
            doc.add_row(f"{cfg.kind}_{label}", X, 0, val, normalizer)
            samples.append((X, val / normalizer))
        fit = fit_power_law(samples)
        fits[label] = fit
        if bounded_expected:
            verdicts[label] = _slope_verdict_bounded(fit.slope)
        else:
            verdicts[label] = _slope_verdict_growing(fit.slope)
        doc.add_footer(
            kind=f"{cfg.kind}_{label}",
            fit="loglog",
            slope=f"{fit.slope:.6f}",
            r2=f"{fit.r_squared:.6f}",
            expected="bounded" if bounded_expected else "growing",
            verdict=verdicts[label],
        )
    return fits, verdicts


def _chirp2d_grid(N: float, atoms_per_unit: int = 12) -> FreqGrid:
    M = int(round(atoms_per_unit * N * N))
    return FreqGrid.dual(M, 3.0 * N)


def _run_chirp2d_mixed_norm(cfg: ExperimentConfig, doc: ReportDocument):
    """Mixed norms of the cross-chirp: L^q[W_p] should scale like
    N^{(p+q)/(pq)}; W_p[L^q] like N^{max{(p'+q')/(p'q'), (p+q)/(pq)}}."""
    schedule = cfg.schedule or (2, 4, 8, 16)
    pq_list = cfg.params.get("pq", [[4.0, 2.0], [3.0, 3.0]])
    fits, verdicts = {}, {}
    cache = {}
    for N in schedule:
        g = _chirp2d_grid(N)
        cache[N] = chirp2d(N, g, g)
    for p, q in pq_list:
        pp, qp = conjugate_exponent(p), conjugate_exponent(q)
        targets = {
            "LqWp": (
                MixedNormSpec.of(AxisNorm(axis=0, p=p, wiener=True), AxisNorm(axis=1, p=q)),
                (p + q) / (p * q),
            ),
            "WpLq": (
                MixedNormSpec.of(AxisNorm(axis=1, p=q), AxisNorm(axis=0, p=p, wiener=True)),
                max((pp + qp) / (pp * qp), (p + q) / (p * q)),
            ),
        }
        for name, (spec, expected) in targets.items():
            label = f"{name}_p{p:g}_q{q:g}"
            samples = []
            for N in schedule:
                val = mixed_norm(cache[N], spec)
                doc.add_row(f"{cfg.kind}_{label}", N, 0, val, 1.0)
                samples.append((N, val))
            fit = fit_power_law(samples)
            fits[label] = fit
            verdicts[label] = _slope_verdict_growth(fit, expected, cfg.slope_tol)
            doc.add_footer(
                kind=f"{cfg.kind}_{label}",
                fit="loglog",
                slope=f"{fit.slope:.6f}",
                r2=f"{fit.r_squared:.6f}",
                expected=f"{expected:.6f}",
                tol=cfg.slope_tol,
                verdict=verdicts[label],
            )
    return fits, verdicts


def _resample_space(F: GridFunction2D, x_points: int) -> GridFunction2D:
    """Same frequency content, coarser spatial sampling for pointwise scans."""
    g1 = FreqGrid(M=F.grid1.M, xi_max=F.grid1.xi_max, x_points=x_points, x_max=F.grid1.x_max)
    g2 = FreqGrid(M=F.grid2.M, xi_max=F.grid2.xi_max, x_points=x_points, x_max=F.grid2.x_max)
    return GridFunction2D(grid1=g1, grid2=g2, freq=F.freq)


def _run_sup_tensor_bounded(cfg: ExperimentConfig, doc: ReportDocument):
    """Prefix-rectangle maximal operator on the cross-chirp family: ratio
    against the flat frequency L^{p'} norm should not grow."""
    p = cfg.exponents[0] if cfg.exponents else 4.0
    schedule = cfg.schedule or (2, 3, 4, 5)
    x_points = int(cfg.params.get("x_points", 48))
    atoms = int(cfg.params.get("atoms_per_unit", 14))
    samples = []
    for N in schedule:
        M = int(round(atoms * N * N))
        g = FreqGrid.dual(M, 3.0 * N)
        F = _resample_space(chirp2d(N, g, g), x_points)
        sup = sup_tensor_partial(F, m_limit=max(256, M))
        vals = np.array(
            [lp_norm_samples(sup.space[i, :], sup.grid2.dx, p) for i in range(x_points)]
        )
        val = lp_norm_samples(vals, sup.grid1.dx, p)
        pprime = conjugate_exponent(p)
        flat = lp_norm_samples(F.freq.ravel(), g.dxi * g.dxi, pprime)
        doc.add_row(cfg.kind, N, 0, val, flat)
        samples.append((N, val / flat))
    fit = fit_power_law(samples)
    verdict = _slope_verdict_bounded(fit.slope)
    doc.add_footer(
        kind=cfg.kind,
        fit="loglog",
        slope=f"{fit.slope:.6f}",
        r2=f"{fit.r_squared:.6f}",
        expected=f"|slope|<={BOUNDED_SLOPE}",
        verdict=verdict,
    )
    return {"sup_tensor": fit}, {"sup_tensor": verdict}


def generic_lambda_pairs(count: int = 16, seed: int = 2024) -> list[tuple[float, float]]:
    """Seeded spectral parameter pairs bounded away from resonances."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        l1, l2 = rng.uniform(-2.0, 2.0, size=2)
        if min(abs(l1), abs(l2)) > 0.2:
            pairs.append((float(l1), float(l2)))
    return pairs


def _akns_witness_potentials(N_w: float, eps_mollify: float = 0.1):
    """Separable products of mollified chirps shifted into the quadrant.

    The smooth window keeps the potentials exactly supported in
    [0, 2 N_w (1 + eps)]^2, so the prefix integrals must saturate once the
    domain covers the support.  (A sharp band truncation would reintroduce
    1/x tails and defeat any finite-domain saturation probe.)"""
    from oscint.witnesses import _smooth_step

    inner, outer = N_w * (1.0 - eps_mollify), N_w * (1.0 + eps_mollify)

    def mollified_chirp(sign: int):
        def line(x: np.ndarray) -> np.ndarray:
            y = x - N_w  # center the window inside the quadrant
            t = np.clip((outer - np.abs(y)) / (outer - inner), 0.0, 1.0)
            w = _smooth_step(t)
            w[np.abs(y) <= inner] = 1.0
            return np.exp(sign * 2j * np.pi * y**2) * w

        return line

    cp, cm = mollified_chirp(1), mollified_chirp(-1)

    def sep(a, b):
        return lambda x1, x2: np.outer(a(x1), b(x2))

    return [sep(cp, cm), sep(cm, cp), sep(cp, cp)]


def _run_akns_sup(cfg: ExperimentConfig, doc: ReportDocument):
    """Saturation probe: doubling the quadrant must not grow the sup of the
    bottom component by more than 20% for compactly-concentrated potentials."""
    n_pairs = int(cfg.params.get("n_lambda", 16))
    N_w = float(cfg.params.get("window", 1.0))
    x_max = float(cfg.params.get("x_max", 4.0 * N_w))
    points = int(cfg.params.get("points", 129))
    potentials = _akns_witness_potentials(N_w)
    constants = [(1.0, 1.0), (0.0, 0.0), (1.0, 1.0), (0.0, 0.0)]
    worst = 0.0
    for idx, lam in enumerate(generic_lambda_pairs(n_pairs)):
        system = build_system(potentials, constants, lam)
        base = sup_quadrant(solve(system, x_max, points), 1)
        doubled = sup_quadrant(solve(system, 2.0 * x_max, 2 * points - 1), 1)
        ratio = doubled / base if base > 0 else float("inf")
        worst = max(worst, ratio)
        doc.add_row(cfg.kind, idx, 0, doubled, base)
    verdict = "PASS" if worst <= 1.2 else "FAIL"
    doc.add_footer(
        kind=cfg.kind,
        fit="saturation",
        max_ratio=f"{worst:.6f}",
        expected="<=1.2",
        verdict=verdict,
    )
    fit = FitResult(slope=worst, intercept=0.0, r_squared=1.0)
    return {"saturation": fit}, {"saturation": verdict}


def check_vector_valued(
    p: float,
    q: float,
    family_sizes: tuple[int, ...] = (2, 4, 8, 16, 32),
    n_seeds: int = 100,
    M: int = 64,
) -> dict[int, float]:
    """Square-function ratio survey for the half-band projection operator.

    For each family {f_j}, ratio = ||(sum |T f_j|^2)^{1/2}||_q
    / ||(sum |f_j|^2)^{1/2}||_p with T = projection onto the lower half band.
    Returns the mean ratio per family size."""
    grid = FreqGrid.dual(M, float(M) / 4.0)
    cell = (0, M // 2)
    out: dict[int, float] = {}
    counter = 0
    for size in family_sizes:
        ratios = []
        for _ in range(n_seeds):
            sq_in = np.zeros(grid.x_points)
            sq_out = np.zeros(grid.x_points)
            for _ in range(size):
                f = random_bandlimited(counter, (0, M), grid)
                counter += 1
                sq_in += np.abs(synthesize(f).space) ** 2
                sq_out += np.abs(synthesize(band_project(f, cell)).space) ** 2
            num = lp_norm_samples(np.sqrt(sq_out), grid.dx, q)
            den = lp_norm_samples(np.sqrt(sq_in), grid.dx, p)
            ratios.append(num / den)
        out[size] = float(np.mean(ratios))
    return out


def _run_vector_valued(cfg: ExperimentConfig, doc: ReportDocument):
    p = cfg.exponents[0] if cfg.exponents else 4.0
    q = cfg.exponents[1] if len(cfg.exponents) > 1 else p
    sizes = tuple(int(s) for s in (cfg.schedule or (2, 4, 8, 16, 32)))
    n_seeds = int(cfg.params.get("n_seeds", 100))
    means = check_vector_valued(p, q, sizes, n_seeds=n_seeds)
    for size, mean_ratio in means.items():
        doc.add_row(cfg.kind, size, 0, mean_ratio, 1.0)
    center = float(np.mean(list(means.values())))
    spread = max(abs(v - center) / center for v in means.values())
    verdict = "PASS" if spread <= 0.2 else "FAIL"
    doc.add_footer(
        kind=cfg.kind,
        fit="stability",
        spread=f"{spread:.6f}",
        expected="<=0.2",
        verdict=verdict,
    )
    fit = FitResult(slope=spread, intercept=center, r_squared=1.0)
    return {"stability": fit}, {"stability": verdict}


EXPERIMENT_KINDS: dict[str, Callable] = {
    "chirp_fourier_norm": _run_chirp_fourier_norm,
    "fefferman_logN": _run_fefferman_logN,
    "degenerate_blowup": _run_degenerate_blowup,
    "c2pm_closed_form": _run_c2pm_closed_form,
    "mixed_bounded": _run_mixed_bounded,
    "c2_wiener_iff": _run_c2_wiener_iff,
    "chirp2d_mixed_norm": _run_chirp2d_mixed_norm,
    "sup_tensor_bounded": _run_sup_tensor_bounded,
    "akns_sup": _run_akns_sup,
    "vector_valued": _run_vector_valued,
}


def default_config(kind: str, **overrides) -> ExperimentConfig:
    return ExperimentConfig(kind=kind, **overrides)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    start = time.time()
    doc = ReportDocument()
    fits, verdicts = EXPERIMENT_KINDS[cfg.kind](cfg, doc)
    return ExperimentReport(
        config=cfg,
        document=doc,
        fits=fits,
        verdicts=verdicts,
        wall_clock=time.time() - start,
    )
