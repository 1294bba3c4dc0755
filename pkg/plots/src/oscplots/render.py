"""Figure + summary-table rendering for harness CSV reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from oscplots.frame import ReportFrame, ReportRow

__all__ = ["AXES_BY_KIND", "base_kind", "fit_on_axes", "render"]

# Static axes table: each catalog kind encodes its expected law.
# loglog -> power law (slope = exponent), semilog -> log growth,
# linear -> stability/saturation surveys with no asymptotic claim.
AXES_BY_KIND: dict[str, str] = {
    "chirp_fourier_norm": "loglog",
    "fefferman_logN": "semilog",
    "degenerate_blowup": "semilog",
    "c2pm_closed_form": "loglog",
    "mixed_bounded": "loglog",
    "c2_wiener_iff": "loglog",
    "chirp2d_mixed_norm": "loglog",
    "sup_tensor_bounded": "loglog",
    "akns_sup": "linear",
    "vector_valued": "linear",
}
_DEFAULT_AXES = "loglog"


def base_kind(label: str) -> str:
    """Longest catalog kind that prefixes the row label (labels may carry
    exponent suffixes like chirp_fourier_norm_p2)."""
    best = ""
    for kind in AXES_BY_KIND:
        if label == kind or label.startswith(kind + "_"):
            if len(kind) > len(best):
                best = kind
    return best or label


def _plot_values(rows: list[ReportRow]) -> tuple[np.ndarray, np.ndarray]:
    """Plot the normalized ratio when a normalizer is present, else the value."""
    N = np.array([r.N for r in rows], dtype=float)
    if all(r.normalizer == 1.0 for r in rows):
        y = np.array([r.value for r in rows], dtype=float)
    else:
        y = np.array([r.ratio for r in rows], dtype=float)
    return N, y


def fit_on_axes(N: np.ndarray, y: np.ndarray, axes: str):
    """Least-squares slope on the declared axes; None when unfittable."""
    if len(N) < 2:
        return None
    if axes == "loglog":
        if np.any(N <= 0) or np.any(y <= 0):
            return None
        coeffs = np.polyfit(np.log(N), np.log(y), 1)
        line = lambda n: np.exp(coeffs[1]) * n ** coeffs[0]
    elif axes == "semilog":
        if np.any(N <= 0):
            return None
        coeffs = np.polyfit(np.log(N), y, 1)
        line = lambda n: coeffs[0] * np.log(n) + coeffs[1]
    else:
        coeffs = np.polyfit(N, y, 1)
        line = lambda n: coeffs[0] * n + coeffs[1]
    return float(coeffs[0]), line


def _summary_table(frame: ReportFrame) -> str:
    keys = ["kind", "fit", "slope", "r2", "expected", "verdict"]
    lines = [
        "| " + " | ".join(keys) + " |",
        "|" + "|".join(" --- " for _ in keys) + "|",
    ]
    for footer in frame.footers:
        lines.append("| " + " | ".join(footer.get(k, "") for k in keys) + " |")
    if not frame.footers:
        lines.append("| " + " | ".join("" for _ in keys) + " |")
    return "\n".join(lines) + "\n"


def _render_figure(kind: str, axes: str, series: dict[str, list[ReportRow]], path: Path):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label in sorted(series):
        N, y = _plot_values(series[label])
        ax.plot(N, y, "o", label=label)
        fitted = fit_on_axes(N, y, axes)
        if fitted is not None:
            slope, line = fitted
            dense = np.linspace(N.min(), N.max(), 64)
            ax.plot(dense, line(dense), "-", label=f"{label} fit slope={slope:.3f}")
    if axes == "loglog":
        ax.set_xscale("log")
        ax.set_yscale("log")
    elif axes == "semilog":
        ax.set_xscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("value")
    ax.set_title(kind)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render(report_path, out_dir) -> dict[str, list[str]]:
    """Render one figure per catalog kind present plus summary.md.

    Returns {"figures": [...], "summary": [path]} with paths as strings;
    an empty data section yields the summary only.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    frame = ReportFrame.read(report_path)

    by_base: dict[str, dict[str, list[ReportRow]]] = {}
    for label, rows in frame.series().items():
        by_base.setdefault(base_kind(label), {})[label] = rows

    figures: list[str] = []
    for kind in sorted(by_base):
        axes = AXES_BY_KIND.get(kind, _DEFAULT_AXES)
        path = out_dir / f"{kind}.png"
        _render_figure(kind, axes, by_base[kind], path)
        figures.append(str(path))

    summary_path = out_dir / "summary.md"
    summary_path.write_text(_summary_table(frame))
    return {"figures": figures, "summary": [str(summary_path)]}
