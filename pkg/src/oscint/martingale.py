"""Dyadic cell systems over weighted frequency atoms.

A CdfMap carries the normalized cumulative mass of |fhat|^{p'} across the
lattice; cells at depth m are the preimages of dyadic intervals of length
2^-m under that map.  Atoms are assigned by the mass strictly before them
(left-endpoint convention), so every atom lands in exactly one cell even
when a single atom carries a large chunk of the mass.  The pair partition
tiles the strictly-ordered index pairs i < k by the smallest dyadic cell
separating their cumulative positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from oscint.lattice import FreqGrid, GridFunction, conjugate_exponent

__all__ = [
    "CdfMap",
    "MartingaleStructure",
    "PairPartitionEntry",
    "PairPartition",
    "build_cdf",
    "build_cdf_from_weights",
    "cells",
    "restricted_cells",
    "pair_partition",
    "default_depth",
]

IndexRange = tuple[int, int]  # half-open [start, stop)


def default_depth(M: int) -> int:
    return math.ceil(math.log2(M)) + 4


@dataclass(frozen=True)
class CdfMap:
    """Normalized cumulative mass of nonnegative atom weights.

    gamma[k] is the fraction of total mass strictly before atom k, clamped
    below 1 so every atom has a well-defined dyadic address at any depth.
    """

    grid: FreqGrid
    weights: np.ndarray
    cum: np.ndarray
    gamma: np.ndarray

    @property
    def total(self) -> float:
        return float(self.cum[-1])

    @property
    def max_weight(self) -> float:
        return float(self.weights.max())

    @property
    def m_max(self) -> int:
        """Deep enough to separate the smallest positive gamma gap (so only
        exact ties survive to the residual), capped to keep cell enumeration
        tractable."""
        base = default_depth(self.grid.M)
        gaps = np.diff(self.gamma)
        gaps = gaps[gaps > 0]
        if gaps.size == 0:
            return base
        needed = int(math.ceil(-math.log2(float(gaps.min())))) + 1
        return min(max(base, needed), 52)


def build_cdf_from_weights(grid: FreqGrid, weights: np.ndarray) -> CdfMap:
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (grid.M,):
        raise ValueError("weights do not match grid")
    if np.any(weights < 0):
        raise ValueError("weights must be nonnegative")
    total = float(weights.sum())
    if total <= 0:
        raise ValueError("zero-mass weight vector")
    cum = np.concatenate(([0.0], np.cumsum(weights)))
    gamma = np.minimum(cum[:-1] / total, np.nextafter(1.0, 0.0))
    return CdfMap(grid=grid, weights=weights, cum=cum, gamma=gamma)


def build_cdf(f: GridFunction, p_prime: float) -> CdfMap:
    """Cumulative mass map of |fhat|^{p'} * dxi."""
    if p_prime < 1:
        raise ValueError(f"need p_prime >= 1, got {p_prime}")
    w = np.abs(f.freq) ** p_prime * f.grid.dxi
    return build_cdf_from_weights(f.grid, w)


@dataclass(frozen=True)
class MartingaleStructure:
    """Depth-m dyadic cells of a CdfMap, each with its left/right halves.

    cell_ranges[j] is the half-open atom-index range whose gamma values lie
    in [j*2^-m, (j+1)*2^-m); halves split at the midpoint value.
    """

    cdf: CdfMap
    m: int
    cell_ranges: tuple[IndexRange, ...]
    left_ranges: tuple[IndexRange, ...]
    right_ranges: tuple[IndexRange, ...]

    def mass(self, j: int) -> float:
        a, b = self.cell_ranges[j]
        return float(self.cdf.cum[b] - self.cdf.cum[a])


def _split_by_values(gamma: np.ndarray, lo: int, hi: int, thresholds: np.ndarray):
    """Boundaries partitioning gamma[lo:hi] (sorted) at the given thresholds."""
    cuts = lo + np.searchsorted(gamma[lo:hi], thresholds, side="left")
    return np.concatenate(([lo], cuts, [hi]))


def cells(cdf: CdfMap, m: int) -> MartingaleStructure:
    if m < 0:
        raise ValueError("depth must be nonnegative")
    if m > cdf.m_max:
        raise ValueError(f"depth {m} exceeds m_max={cdf.m_max}")
    n_cells = 1 << m
    edges = np.arange(1, n_cells) / n_cells
    bounds = _split_by_values(cdf.gamma, 0, cdf.grid.M, edges)
    cell_ranges, left_ranges, right_ranges = [], [], []
    for j in range(n_cells):
        a, b = int(bounds[j]), int(bounds[j + 1])
        mid_val = (j + 0.5) / n_cells
        mid = a + int(np.searchsorted(cdf.gamma[a:b], mid_val, side="left"))
        cell_ranges.append((a, b))
        left_ranges.append((a, mid))
        right_ranges.append((mid, b))
    return MartingaleStructure(
        cdf=cdf,
        m=m,
        cell_ranges=tuple(cell_ranges),
        left_ranges=tuple(left_ranges),
        right_ranges=tuple(right_ranges),
    )


def restricted_cells(cdf: CdfMap, m1: int, j1: int, m2: int) -> MartingaleStructure:
    """Depth-m2 subdivision of cell (m1, j1) under renormalized mass.

    The returned structure partitions the parent range; sub-cell masses track
    2^-(m1+m2) of the total mass up to atom-resolution slack.
    """
    parent = cells(cdf, m1)
    a, b = parent.cell_ranges[j1]
    if a == b:
        raise ValueError(f"cell ({m1}, {j1}) is empty")
    local = cdf.cum[a : b + 1] - cdf.cum[a]
    local_total = local[-1]
    if local_total <= 0:
        raise ValueError(f"cell ({m1}, {j1}) carries no mass")
    local_gamma = np.minimum(local[:-1] / local_total, np.nextafter(1.0, 0.0))
    n_cells = 1 << m2
    edges = np.arange(1, n_cells) / n_cells
    bounds = a + np.concatenate(
        ([0], np.searchsorted(local_gamma, edges, side="left"), [b - a])
    )
    cell_ranges, left_ranges, right_ranges = [], [], []
    for j in range(n_cells):
        lo, hi = int(bounds[j]), int(bounds[j + 1])
        mid_val = (j + 0.5) / n_cells
        mid = lo + int(np.searchsorted(local_gamma[lo - a : hi - a], mid_val, side="left"))
        cell_ranges.append((lo, hi))
        left_ranges.append((lo, mid))
        right_ranges.append((mid, hi))
    return MartingaleStructure(
        cdf=cdf,
        m=m2,
        cell_ranges=tuple(cell_ranges),
        left_ranges=tuple(left_ranges),
        right_ranges=tuple(right_ranges),
    )


@dataclass(frozen=True)
class PairPartitionEntry:
    """One tile of the ordered-pair partition: pairs (i, k) with i in the
    left half and k in the right half of cell j at depth m."""

    m: int
    j: int
    left_range: IndexRange
    right_range: IndexRange


@dataclass(frozen=True)
class PairPartition:
    entries: tuple[PairPartitionEntry, ...]
    residual_pairs: tuple[tuple[int, int], ...]
    m_max: int


def pair_partition(cdf: CdfMap, m_max: int | None = None) -> PairPartition:
    """Tile {(i, k): i < k} by smallest-separating dyadic cells.

    A pair (i, k) belongs to the unique deepest cell containing both gamma
    values with gamma_i in the left half and gamma_k in the right half.
    Pairs whose gamma values collide at depth m_max (atoms sharing a dyadic
    address all the way down) land in the residual set for direct handling.
    """
    if m_max is None:
        m_max = cdf.m_max
    if m_max < math.ceil(math.log2(cdf.grid.M)):
        raise ValueError(f"m_max={m_max} too shallow for M={cdf.grid.M}")
    entries: list[PairPartitionEntry] = []
    residual: list[tuple[int, int]] = []
    gamma = cdf.gamma

    # depth-first over occupied cells only: the halves of cell (m, j) are
    # exactly its children (m+1, 2j) and (m+1, 2j+1)
    stack = [(0, 0, 0, cdf.grid.M)]
    while stack:
        m, j, a, b = stack.pop()
        if b - a < 2:
            continue
        if m == m_max:
            for i in range(a, b):
                for k in range(i + 1, b):
                    residual.append((i, k))
            continue
        mid_val = (j + 0.5) / (1 << m)
        mid = a + int(np.searchsorted(gamma[a:b], mid_val, side="left"))
        if mid > a and b > mid:
            entries.append(
                PairPartitionEntry(m=m, j=j, left_range=(a, mid), right_range=(mid, b))
            )
        stack.append((m + 1, 2 * j, a, mid))
        stack.append((m + 1, 2 * j + 1, mid, b))
    entries.sort(key=lambda e: (e.m, e.j))
    return PairPartition(entries=tuple(entries), residual_pairs=tuple(residual), m_max=m_max)
