"""Named test functions: chirps, mollified indicators, band-limited chirps,
modulations, the 2D chirp, and seeded random band-limited functions.

Witnesses built in the spatial variable (chirps, bumps) get their lattice
samples from the forward transform; every constructor is deterministic
from its arguments, and chirp constructors refuse grids whose lattice is
too narrow for the chirp bandwidth (aliasing guard).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from oscint.lattice import (
    FreqGrid,
    GridFunction,
    GridFunction2D,
    band_project,
    forward_samples,
)

__all__ = [
    "WitnessSpec",
    "chirp",
    "mollified_indicator",
    "g_pm",
    "modulate",
    "chirp2d",
    "random_bandlimited",
]

_ALIAS_EDGE_FRACTION = 0.05
_ALIAS_ENERGY_TOL = 1e-3


def _check_aliasing(grid: FreqGrid, freq: np.ndarray, what: str) -> None:
    """Refuse constructions leaking > 0.1% of energy into the outer 5% of the lattice."""
    edge = max(1, int(round(_ALIAS_EDGE_FRACTION * grid.M / 2)))
    energy = np.abs(freq) ** 2
    total = energy.sum()
    if total == 0:
        return
    outer = energy[:edge].sum() + energy[-edge:].sum()
    if outer > _ALIAS_ENERGY_TOL * total:
        raise ValueError(
            f"{what}: {outer / total:.2e} of the energy sits in the outer 5% "
            f"of the lattice (xi_max={grid.xi_max}); widen the frequency extent"
        )


def chirp(N: float, sign: int, grid: FreqGrid) -> GridFunction:
    """Quadratic-phase window e^{sign * 2 pi i x^2} on [-N, N]."""
    if sign not in (-1, 1):
        raise ValueError("sign must be +-1")
    if N <= 0:
        raise ValueError("window half-width must be positive")
    if grid.x_max < N:
        raise ValueError(f"spatial extent {grid.x_max} does not cover [-N, N]")
    x = grid.x
    space = np.where(np.abs(x) <= N, np.exp(sign * 2j * np.pi * x**2), 0.0)
    f = GridFunction.from_space(grid, space)
    _check_aliasing(grid, f.freq, f"chirp(N={N})")
    return f


def _smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity ramp: 0 for t <= 0, 1 for t >= 1."""
    s = np.zeros_like(t)
    pos = t > 0
    s[pos] = np.exp(-1.0 / t[pos])
    sc = np.zeros_like(t)
    neg = (1.0 - t) > 0
    sc[neg] = np.exp(-1.0 / (1.0 - t[neg]))
    return s / (s + sc)


def mollified_indicator(N: float, eps: float, grid: FreqGrid) -> GridFunction:
    """Smooth window: 1 on [-N(1-eps), N(1-eps)], supported in [-N(1+eps), N(1+eps)]."""
    if not (0 < eps < 1):
        raise ValueError("mollification width must lie in (0, 1)")
    x = np.abs(grid.x)
    inner, outer = N * (1.0 - eps), N * (1.0 + eps)
    t = (outer - x) / (outer - inner)
    space = _smooth_step(np.clip(t, 0.0, 1.0))
    space[x <= inner] = 1.0
    space[x >= outer] = 0.0
    return GridFunction.from_space(grid, space.astype(complex))


def g_pm(
    N: float, M_band: float, sign: int, grid: FreqGrid, eps_mollify: float = 0.1
) -> GridFunction:
    """Band-limited mollified chirp: project the chirp-with-smooth-window
    onto frequencies [-M_band, M_band]."""
    if M_band > grid.xi_max:
        raise ValueError(f"band {M_band} exceeds lattice extent {grid.xi_max}")
    window = mollified_indicator(N, eps_mollify, grid)
    x = grid.x
    space = np.exp(sign * 2j * np.pi * x**2) * window.space
    f = GridFunction.from_space(grid, space)
    _check_aliasing(grid, f.freq, f"g_pm(N={N})")
    keep = np.nonzero(np.abs(f.grid.xi) <= M_band)[0]
    return band_project(f, (int(keep[0]), int(keep[-1]) + 1))


def modulate(f: GridFunction, b: float, snap_tol: float = 1e-9) -> GridFunction:
    """Frequency shift by b, snapped to the lattice; norms are preserved."""
    shift = int(round(b / f.grid.dxi))
    if abs(b - shift * f.grid.dxi) > snap_tol * max(1.0, abs(b)):
        raise ValueError(
            f"shift {b} is not within tolerance of a lattice multiple of dxi={f.grid.dxi}"
        )
    out = np.zeros_like(f.freq)
    live = np.nonzero(f.freq)[0]
    moved = live + shift
    if live.size and (moved.min() < 0 or moved.max() >= f.grid.M):
        raise ValueError("modulation pushes the band off the lattice")
    out[moved] = f.freq[live]
    return GridFunction(grid=f.grid, freq=out)


def chirp2d(N: float, grid1: FreqGrid, grid2: FreqGrid) -> GridFunction2D:
    """Cross-chirp e^{2 pi i x y} on the square [-N, N]^2."""
    for g in (grid1, grid2):
        if g.x_max < N:
            raise ValueError("spatial extent does not cover the square")
        if g.xi_max < N:
            raise ValueError(
                f"lattice extent {g.xi_max} below the cross-chirp bandwidth {N}"
            )
    x, y = grid1.x, grid2.x
    wx = (np.abs(x) <= N).astype(float)
    wy = (np.abs(y) <= N).astype(float)
    space = np.exp(2j * np.pi * np.outer(x, y)) * np.outer(wx, wy)
    F = GridFunction2D.from_space(grid1, grid2, space)
    _check_aliasing(grid1, np.linalg.norm(F.freq, axis=1), f"chirp2d(N={N}) axis 0")
    _check_aliasing(grid2, np.linalg.norm(F.freq, axis=0), f"chirp2d(N={N}) axis 1")
    return F


def random_bandlimited(seed: int, band: tuple[int, int], grid: FreqGrid) -> GridFunction:
    """Deterministic unit-variance complex Gaussian atoms on a band."""
    a, b = band
    if not (0 <= a < b <= grid.M):
        raise ValueError(f"band {band} invalid for M={grid.M}")
    rng = np.random.default_rng(seed)
    freq = np.zeros(grid.M, dtype=complex)
    freq[a:b] = rng.normal(scale=np.sqrt(0.5), size=b - a) + 1j * rng.normal(
        scale=np.sqrt(0.5), size=b - a
    )
    return GridFunction(grid=grid, freq=freq)


@dataclass(frozen=True)
class WitnessSpec:
    """Serializable recipe for a witness function."""

    kind: str  # chirp | mollified_indicator | g_pm | chirp2d | random_bandlimited
    N: float = 1.0
    M_band: Optional[float] = None
    sign: int = 1
    modulation_b: float = 0.0
    epsilon_mollify: float = 0.1
    seed: int = 0
    band: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.N <= 0:
            raise ValueError("N must be positive")
        if self.kind == "g_pm" and self.M_band is None:
            raise ValueError("g_pm needs M_band")

    def build(self, grid: FreqGrid, grid2: Optional[FreqGrid] = None):
        if self.kind == "chirp":
            out = chirp(self.N, self.sign, grid)
        elif self.kind == "mollified_indicator":
            out = mollified_indicator(self.N, self.epsilon_mollify, grid)
        elif self.kind == "g_pm":
            out = g_pm(self.N, self.M_band, self.sign, grid, self.epsilon_mollify)
        elif self.kind == "chirp2d":
            return chirp2d(self.N, grid, grid2 if grid2 is not None else grid)
        elif self.kind == "random_bandlimited":
            band = self.band if self.band is not None else (0, grid.M)
            out = random_bandlimited(self.seed, band, grid)
        else:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if self.modulation_b:
            out = modulate(out, self.modulation_b)
        return out

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "WitnessSpec":
        data = json.loads(text)
        if data.get("band") is not None:
            data["band"] = tuple(data["band"])
        return cls(**data)
