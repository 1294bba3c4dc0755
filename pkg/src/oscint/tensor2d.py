"""Biparameter operators on product lattices.

The tensor evaluator orders atom tuples independently in each variable;
the grid martingale stacks a dyadic split of the x-marginal mass with
renormalized per-cell splits in y; the maximal partial-sum operator takes
a sup over prefix rectangles of the 2D synthesis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from oscint.lattice import FreqGrid, GridFunction2D, synth_samples
from oscint.martingale import (
    CdfMap,
    MartingaleStructure,
    build_cdf_from_weights,
    cells,
)
from oscint.osc import SignVector

__all__ = [
    "GridMartingale2D",
    "brute_tensor",
    "grid_martingale_2d",
    "sup_tensor_partial",
]

_TENSOR_M_LIMIT = 32
_SUP_M_DEFAULT_LIMIT = 96


def brute_tensor(
    fs: list[GridFunction2D], eps: SignVector, m_limit: int = _TENSOR_M_LIMIT
) -> GridFunction2D:
    """C(z1, z2) over tuples ordered independently per axis (enumeration).

    n = 1 reduces to plain 2D synthesis; n = 2 enumerates (k1<k2) x (l1<l2).
    """
    n = eps.n
    if n not in (1, 2):
        raise ValueError("tensor evaluator supports n in {1, 2}")
    if len(fs) != n:
        raise ValueError(f"{len(fs)} functions but n={n}")
    g1, g2 = fs[0].grid1, fs[0].grid2
    for f in fs[1:]:
        if f.grid1 != g1 or f.grid2 != g2:
            raise ValueError("all inputs must share the product grid")
    if max(g1.M, g2.M) > m_limit:
        raise MemoryError(f"tensor enumeration limited to M <= {m_limit} per axis")
    x1, x2 = g1.x, g2.x
    out = np.zeros((g1.x_points, g2.x_points), dtype=complex)
    scale = (g1.dxi * g2.dxi) ** n
    if n == 1:
        ks, ls = [(0,)], [(0,)]
        k_tuples = [(k,) for k in range(g1.M)]
        l_tuples = [(l,) for l in range(g2.M)]
    else:
        k_tuples = list(itertools.combinations(range(g1.M), 2))
        l_tuples = list(itertools.combinations(range(g2.M), 2))
    for ks in k_tuples:
        s1 = sum(eps.signs[i] * g1.xi[ks[i]] for i in range(n))
        ph1 = np.exp(2j * np.pi * x1 * s1)
        for ls in l_tuples:
            coeff = scale
            for i in range(n):
                coeff *= fs[i].freq[ks[i], ls[i]]
            if coeff == 0:
                continue
            s2 = sum(eps.signs[i] * g2.xi[ls[i]] for i in range(n))
            out += coeff * np.outer(ph1, np.exp(2j * np.pi * x2 * s2))
    return GridFunction2D.from_space(g1, g2, out)


@dataclass(frozen=True)
class GridMartingale2D:
    """Outer dyadic split of x-marginal mass with per-cell inner y splits.

    product_cells[j1] holds the inner MartingaleStructure (over y atoms,
    restricted to the rows of outer cell j1); product-cell mass tracks
    2^-(m1+m2) of the total up to one atom weight.
    """

    F: GridFunction2D
    m1: int
    m2: int
    outer: MartingaleStructure
    inner: tuple[MartingaleStructure | None, ...]
    weights: np.ndarray  # per-atom mass matrix |fhat|^{q'} dxi deta

    def product_mass(self, j1: int, j2: int) -> float:
        a, b = self.outer.cell_ranges[j1]
        struct = self.inner[j1]
        if struct is None:
            return 0.0
        c, d = struct.cell_ranges[j2]
        return float(self.weights[a:b, c:d].sum())

    @property
    def total(self) -> float:
        return float(self.weights.sum())


def grid_martingale_2d(
    F: GridFunction2D, q_prime: float, m1: int, m2: int
) -> GridMartingale2D:
    """Two-level product cell system driven by |fhat|^{q'} mass."""
    w = np.abs(F.freq) ** q_prime * (F.grid1.dxi * F.grid2.dxi)
    if w.sum() <= 0:
        raise ValueError("zero-mass input")
    outer_cdf = build_cdf_from_weights(F.grid1, w.sum(axis=1))
    outer = cells(outer_cdf, m1)
    inner: list[MartingaleStructure | None] = []
    for a, b in outer.cell_ranges:
        col = w[a:b, :].sum(axis=0)
        if col.sum() <= 0:
            inner.append(None)
            continue
        inner_cdf = build_cdf_from_weights(F.grid2, col)
        inner.append(cells(inner_cdf, m2))
    return GridMartingale2D(
        F=F, m1=m1, m2=m2, outer=outer, inner=tuple(inner), weights=w
    )


def sup_tensor_partial(
    F: GridFunction2D, m_limit: int = _SUP_M_DEFAULT_LIMIT
) -> GridFunction2D:
    """Pointwise sup over prefix rectangles of the partial 2D synthesis.

    value(z) = max_{K, L} |sum_{k<K, l<L} fhat(k, l) e^{2 pi i (z1 xi_k + z2 eta_l)}|
               * dxi * deta,
    computed per output point by a cumulative sum over the (K, L) table.
    """
    g1, g2 = F.grid1, F.grid2
    if max(g1.M, g2.M) > m_limit:
        raise MemoryError(f"prefix-rectangle scan limited to M <= {m_limit} per axis")
    ph1 = np.exp(2j * np.pi * np.outer(g1.x, g1.xi))  # (P1, M1)
    ph2 = np.exp(2j * np.pi * np.outer(g2.xi, g2.x))  # (M2, P2)
    out = np.zeros((g1.x_points, g2.x_points))
    scale = g1.dxi * g2.dxi
    for j1 in range(g1.x_points):
        # prefix over K of the phase-weighted rows at z1 = x[j1]
        rowpre = np.cumsum(ph1[j1][:, None] * F.freq, axis=0)  # (M1, M2)
        # tab[K, l, j2]; prefix over l gives the (K, L) rectangle table per z2
        tab = rowpre[:, :, None] * ph2[None, :, :]
        partial = np.abs(np.cumsum(tab, axis=1))
        out[j1, :] = partial.max(axis=(0, 1)) * scale
    return GridFunction2D.from_space(g1, g2, out)
