"""Uniform frequency lattices, transforms, band projections and norm functionals.

Everything downstream (multilinear evaluators, martingale structures, the
experiment harness) works on functions represented by their samples on a
uniform frequency lattice; spatial samples are always derived from the
frequency side.  Grids whose spatial sampling is the exact DFT dual of the
frequency lattice get an FFT fast path, which is what makes the large-N
chirp experiments affordable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "FreqGrid",
    "GridFunction",
    "GridFunction2D",
    "AxisNorm",
    "MixedNormSpec",
    "make_grid",
    "synthesize",
    "band_project",
    "lp_norm",
    "lp_norm_samples",
    "freq_lp_norm",
    "wiener_norm",
    "mixed_norm",
    "conjugate_exponent",
]

# Dense transform matrices beyond this many entries are refused; use a dual
# grid (FFT path) instead.
_DENSE_LIMIT = 40_000_000


def conjugate_exponent(p: float) -> float:
    """p' = p/(p-1), with p=inf -> 1 and p=1 -> inf."""
    if p == 1.0:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class FreqGrid:
    """Uniform frequency lattice with an attached spatial sampling.

    Frequency atoms: xi_k = -xi_max + k*dxi for k in [0, M), dxi = 2*xi_max/M.
    Spatial samples:  x_j = -x_max + j*dx  for j in [0, x_points), dx = 2*x_max/x_points.

    Both lattices are half-open, so rectangle-rule sums over them are the
    trapezoid rule for the periodic synthesized functions.
    """

    M: int
    xi_max: float
    x_points: int
    x_max: float

    def __post_init__(self):
        if self.M < 2:
            raise ValueError(f"need at least 2 frequency atoms, got M={self.M}")
        if self.x_points < 1:
            raise ValueError("need at least one spatial point")
        for name in ("xi_max", "x_max"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be finite and positive, got {v}")

    @property
    def dxi(self) -> float:
        return 2.0 * self.xi_max / self.M

    @property
    def dx(self) -> float:
        return 2.0 * self.x_max / self.x_points

    @property
    def xi(self) -> np.ndarray:
        return -self.xi_max + self.dxi * np.arange(self.M)

    @property
    def x(self) -> np.ndarray:
        return -self.x_max + self.dx * np.arange(self.x_points)

    @property
    def is_dual(self) -> bool:
        """True when spatial sampling is the exact DFT dual of the lattice."""
        return self.x_points == self.M and abs(self.dx * self.dxi * self.M - 1.0) < 1e-12

    @classmethod
    def dual(cls, M: int, xi_max: float) -> "FreqGrid":
        """Grid whose spatial samples cover one period 1/dxi at DFT-dual spacing."""
        return cls(M=M, xi_max=xi_max, x_points=M, x_max=M / (4.0 * xi_max))


def make_grid(M: int, xi_max: float, x_points: int, x_max: float) -> FreqGrid:
    return FreqGrid(M=M, xi_max=xi_max, x_points=x_points, x_max=x_max)


def _dense_synthesis_matrix(grid: FreqGrid) -> np.ndarray:
    if grid.x_points * grid.M > _DENSE_LIMIT:
        raise MemoryError(
            f"dense transform for {grid.x_points}x{grid.M} grid refused; "
            "use a dual grid (FFT path) at this size"
        )
    return np.exp(2j * np.pi * np.outer(grid.x, grid.xi))


def _dual_phases(grid: FreqGrid):
    # x_j*xi_k = x_max*xi_max - x_max*dxi*k - xi_max*dx*j + j*k/M
    c = np.exp(2j * np.pi * grid.x_max * grid.xi_max)
    u = np.exp(-2j * np.pi * grid.xi_max * grid.dx * np.arange(grid.x_points))
    v = np.exp(-2j * np.pi * grid.x_max * grid.dxi * np.arange(grid.M))
    return c, u, v


def synth_samples(grid: FreqGrid, freq: np.ndarray) -> np.ndarray:
    """f(x_j) = dxi * sum_k fhat(xi_k) e^{2 pi i x_j xi_k}."""
    if grid.is_dual:
        c, u, v = _dual_phases(grid)
        return grid.dxi * c * u * (grid.M * np.fft.ifft(v * freq))
    return grid.dxi * (_dense_synthesis_matrix(grid) @ freq)


def forward_samples(grid: FreqGrid, space: np.ndarray) -> np.ndarray:
    """fhat(xi_k) = dx * sum_j f(x_j) e^{-2 pi i x_j xi_k}."""
    if grid.is_dual:
        c, u, v = _dual_phases(grid)
        return grid.dx * np.conj(c) * np.conj(v) * np.fft.fft(np.conj(u) * space)
    return grid.dx * (_dense_synthesis_matrix(grid).conj().T @ space)


@dataclass
class GridFunction:
    """Complex function sampled on a FreqGrid, frequency side primary.

    Treated as immutable after construction; the spatial cache is populated
    once by synthesize() and never rewritten.
    """

    grid: FreqGrid
    freq: np.ndarray
    space: Optional[np.ndarray] = None

    def __post_init__(self):
        self.freq = np.asarray(self.freq, dtype=complex)
        if self.freq.shape != (self.grid.M,):
            raise ValueError(
                f"freq samples have shape {self.freq.shape}, expected ({self.grid.M},)"
            )

    @classmethod
    def from_space(cls, grid: FreqGrid, space: np.ndarray) -> "GridFunction":
        space = np.asarray(space, dtype=complex)
        if space.shape != (grid.x_points,):
            raise ValueError("space samples do not match grid")
        return cls(grid=grid, freq=forward_samples(grid, space), space=space)


def synthesize(f: GridFunction) -> GridFunction:
    """Populate (once) and return the spatial representation."""
    if f.space is None:
        f.space = synth_samples(f.grid, f.freq)
    return f


def band_project(f: GridFunction, cell: Sequence[int]) -> GridFunction:
    """Zero frequency samples outside the half-open index range cell=(start, stop)."""
    start, stop = cell
    if not (0 <= start <= stop <= f.grid.M):
        raise IndexError(f"cell {cell} out of range for M={f.grid.M}")
    out = np.zeros_like(f.freq)
    out[start:stop] = f.freq[start:stop]
    return GridFunction(grid=f.grid, freq=out)


def lp_norm_samples(samples: np.ndarray, weight: float, p: float) -> float:
    """(sum |s|^p * weight)^{1/p}; p=inf is the max modulus."""
    if p <= 0:
        raise ValueError(f"exponent must be positive, got p={p}")
    a = np.abs(samples)
    if np.isinf(p):
        return float(a.max()) if a.size else 0.0
    return float((np.sum(a**p) * weight) ** (1.0 / p))


def lp_norm(f: GridFunction, p: float) -> float:
    """Spatial L^p quadrature norm over the grid's sample window."""
    synthesize(f)
    return lp_norm_samples(f.space, f.grid.dx, p)


def freq_lp_norm(f: GridFunction, p: float) -> float:
    """L^p norm of fhat on the frequency lattice."""
    return lp_norm_samples(f.freq, f.grid.dxi, p)


def wiener_norm(f: GridFunction, p: float) -> float:
    """||f||_{W_p} = ||fhat||_{p'}; defined for p > 1."""
    if p <= 1:
        raise ValueError(f"Wiener norm needs p > 1, got p={p}")
    return freq_lp_norm(f, conjugate_exponent(p))


# ----------------------------------------------------------------------------
# Two-dimensional functions and mixed norms
# ----------------------------------------------------------------------------


@dataclass
class GridFunction2D:
    """Complex function on a product lattice; freq is an (M1, M2) matrix.

    A spatial cache may be attached at construction (write-once); off dual
    grids the forward transform is lossy, so samples constructed in space
    keep their space representation authoritative.
    """

    grid1: FreqGrid
    grid2: FreqGrid
    freq: np.ndarray
    space: Optional[np.ndarray] = None

    def __post_init__(self):
        self.freq = np.asarray(self.freq, dtype=complex)
        if self.freq.shape != (self.grid1.M, self.grid2.M):
            raise ValueError("freq samples do not match grids")

    def grid_for_axis(self, axis: int) -> FreqGrid:
        return self.grid1 if axis == 0 else self.grid2

    @classmethod
    def from_space(cls, grid1: FreqGrid, grid2: FreqGrid, space: np.ndarray) -> "GridFunction2D":
        space = np.asarray(space, dtype=complex)
        if space.shape != (grid1.x_points, grid2.x_points):
            raise ValueError("space samples do not match grids")
        half = np.apply_along_axis(lambda r: forward_samples(grid2, r), 1, space)
        freq = np.apply_along_axis(lambda c: forward_samples(grid1, c), 0, half)
        return cls(grid1=grid1, grid2=grid2, freq=freq, space=space)


def synth_axis(F: GridFunction2D, data: np.ndarray, axis: int) -> np.ndarray:
    """Synthesize one axis of a 2D frequency array, leaving the other in frequency."""
    grid = F.grid_for_axis(axis)
    return np.apply_along_axis(lambda v: synth_samples(grid, v), axis, data)


def synthesize2d(F: GridFunction2D) -> np.ndarray:
    """Full spatial samples, shape (x_points1, x_points2)."""
    if F.space is None:
        F.space = synth_axis(F, synth_axis(F, F.freq, 1), 0)
    return F.space


@dataclass(frozen=True)
class AxisNorm:
    """Norm instruction for one axis of a mixed norm."""

    axis: int
    p: float
    wiener: bool = False

    def __post_init__(self):
        if self.p <= 0:
            raise ValueError(f"exponent must be positive, got {self.p}")
        if self.wiener and self.p <= 1:
            raise ValueError("Wiener axis needs p > 1")


@dataclass(frozen=True)
class MixedNormSpec:
    """Mixed norm: entries listed inner-to-outer, exactly one per axis.

    A Wiener-flagged axis is normed on the partial Fourier transform along
    that axis, at the conjugate exponent; a plain axis is normed on spatial
    samples at its own exponent.  Evaluation order follows the listed order
    exactly (no Minkowski reordering).
    """

    entries: tuple[AxisNorm, ...]

    def __post_init__(self):
        axes = sorted(e.axis for e in self.entries)
        if axes != [0, 1]:
            raise ValueError(f"spec must cover axes 0 and 1 exactly once, got {axes}")

    @classmethod
    def of(cls, inner: AxisNorm, outer: AxisNorm) -> "MixedNormSpec":
        return cls(entries=(inner, outer))


def mixed_norm(F: GridFunction2D, spec: MixedNormSpec) -> float:
    """Iterated norm of F per spec, inner axis first."""
    by_axis = {e.axis: e for e in spec.entries}
    data = F.freq
    # A non-Wiener axis is normed in the spatial variable: synthesize it.
    for axis in (0, 1):
        if not by_axis[axis].wiener:
            data = synth_axis(F, data, axis)
    vals = np.abs(data)
    axis_alive = [0, 1]
    for entry in spec.entries:
        grid = F.grid_for_axis(entry.axis)
        weight = grid.dxi if entry.wiener else grid.dx
        expo = conjugate_exponent(entry.p) if entry.wiener else entry.p
        ax = axis_alive.index(entry.axis)
        if np.isinf(expo):
            vals = vals.max(axis=ax)
        else:
            vals = (np.sum(vals**expo, axis=ax) * weight) ** (1.0 / expo)
        axis_alive.pop(ax)
    return float(vals)
