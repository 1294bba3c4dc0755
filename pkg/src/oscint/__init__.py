"""Numerical laboratory for ordered multilinear oscillatory integrals."""

from oscint.lattice import (
    AxisNorm,
    FreqGrid,
    GridFunction,
    GridFunction2D,
    MixedNormSpec,
    band_project,
    conjugate_exponent,
    freq_lp_norm,
    lp_norm,
    make_grid,
    mixed_norm,
    synthesize,
    wiener_norm,
)

__all__ = [
    "AxisNorm",
    "FreqGrid",
    "GridFunction",
    "GridFunction2D",
    "MixedNormSpec",
    "band_project",
    "conjugate_exponent",
    "freq_lp_norm",
    "lp_norm",
    "make_grid",
    "mixed_norm",
    "synthesize",
    "wiener_norm",
]
