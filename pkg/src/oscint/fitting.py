"""Least-squares rate fits used by the experiment harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["FitResult", "fit_power_law", "fit_log_growth", "fit_line"]


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


def fit_line(x: np.ndarray, y: np.ndarray) -> FitResult:
    if len(x) < 2:
        raise ValueError("need at least 2 points")
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return FitResult(slope=float(slope), intercept=float(intercept), r_squared=r2)


def _columns(samples: Sequence[tuple[float, float]]):
    if len(samples) < 4:
        raise ValueError("need at least 4 samples for a rate fit")
    arr = np.asarray(samples, dtype=float)
    return arr[:, 0], arr[:, 1]


def fit_power_law(samples: Sequence[tuple[float, float]]) -> FitResult:
    """OLS fit of log value vs log N; slope is the power-law exponent."""
    N, v = _columns(samples)
    if np.any(N <= 0) or np.any(v <= 0):
        raise ValueError("power-law fit needs positive samples")
    return fit_line(np.log(N), np.log(v))


def fit_log_growth(samples: Sequence[tuple[float, float]]) -> FitResult:
    """OLS fit of value vs log N (natural log); slope is the log-growth constant."""
    N, v = _columns(samples)
    if np.any(N <= 0):
        raise ValueError("log-growth fit needs positive N")
    return fit_line(np.log(N), v)
