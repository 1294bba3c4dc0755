"""Upper-triangular biparameter first-order systems solved by iterated
prefix integrals over the quadrant.

The solution family fixes u_tilde_N = 1 and recurses downward:

    u_tilde_j(x1, x2) = integral over [0,x1]x[0,x2] of
        V_j(s, t) u_tilde_{j+1}(s, t) e^{-i (alpha_{j,1} lambda_1 s
                                            + alpha_{j,2} lambda_2 t)} ds dt

with alpha_{j,k} = c_{j,k} - c_{j+1,k}.  Multiplying back by the unimodular
prefactor e^{i(c_{j,1} lambda_1 x1 + c_{j,2} lambda_2 x2)} recovers u_j, so
all sup probes run directly on u_tilde.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from oscint.lattice import GridFunction2D

__all__ = [
    "AknsSystem",
    "QuadrantSolution",
    "build_system",
    "solve",
    "sup_quadrant",
    "recursion_residual",
    "as_potential",
]

Potential = Callable[[np.ndarray, np.ndarray], np.ndarray]


def as_potential(v) -> Potential:
    """Adapt a constant, callable, or band-limited 2D function to a sampler
    v(X1, X2) on meshgrid arrays."""
    if isinstance(v, GridFunction2D):

        def sample(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
            e1 = np.exp(2j * np.pi * np.outer(x1, v.grid1.xi))
            e2 = np.exp(2j * np.pi * np.outer(v.grid2.xi, x2))
            return (e1 @ v.freq @ e2) * (v.grid1.dxi * v.grid2.dxi)

        return sample
    if np.isscalar(v) and not isinstance(v, str):
        return lambda x1, x2: np.full((len(x1), len(x2)), complex(v))
    if callable(v):
        return v
    raise TypeError(f"cannot interpret potential of type {type(v)!r}")


@dataclass(frozen=True)
class AknsSystem:
    """System size N, potentials V_1..V_{N-1}, diagonal constants and
    spectral parameters; alphas are the adjacent constant differences."""

    potentials: tuple[Potential, ...]
    constants: tuple[tuple[float, float], ...]
    lam: tuple[float, float]

    @property
    def N(self) -> int:
        return len(self.constants)

    @property
    def alphas(self) -> tuple[tuple[float, float], ...]:
        return tuple(
            (
                self.constants[j][0] - self.constants[j + 1][0],
                self.constants[j][1] - self.constants[j + 1][1],
            )
            for j in range(self.N - 1)
        )


def build_system(
    potentials: Sequence, constants: Sequence[tuple[float, float]], lam: tuple[float, float]
) -> AknsSystem:
    constants = tuple((float(a), float(b)) for a, b in constants)
    if len(potentials) != len(constants) - 1:
        raise ValueError(
            f"{len(constants)}-component system needs {len(constants) - 1} potentials"
        )
    for j in range(len(constants) - 1):
        for k in range(2):
            if constants[j][k] == constants[j + 1][k]:
                raise ValueError(
                    f"adjacent constants coincide at j={j}, axis {k}: "
                    f"{constants[j][k]}"
                )
    return AknsSystem(
        potentials=tuple(as_potential(v) for v in potentials),
        constants=constants,
        lam=(float(lam[0]), float(lam[1])),
    )


@dataclass
class QuadrantSolution:
    """u_tilde_j on the quadrant lattice; fields[j] holds u_tilde_{j+1} in
    0-based storage, fields[-1] is the constant top component."""

    system: AknsSystem
    x1: np.ndarray
    x2: np.ndarray
    fields: tuple[np.ndarray, ...]

    def u_tilde(self, j: int) -> np.ndarray:
        """1-based component index, j in [1, N]."""
        if not (1 <= j <= self.system.N):
            raise IndexError(f"component {j} outside [1, {self.system.N}]")
        return self.fields[j - 1]


def _phase_weighted_integrand(
    system: AknsSystem, j: int, x1: np.ndarray, x2: np.ndarray, upper: np.ndarray
) -> np.ndarray:
    a1, a2 = system.alphas[j]
    l1, l2 = system.lam
    phase = np.exp(-1j * (a1 * l1 * x1[:, None] + a2 * l2 * x2[None, :]))
    return system.potentials[j](x1, x2) * upper * phase


def _prefix_integral(G: np.ndarray, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    inner = cumulative_trapezoid(G, x2, axis=1, initial=0.0)
    return cumulative_trapezoid(inner, x1, axis=0, initial=0.0)


def solve(system: AknsSystem, x_max: float, points: int = 513) -> QuadrantSolution:
    """Bottom-up recursion on an inclusive uniform quadrant lattice."""
    if x_max <= 0 or points < 2:
        raise ValueError("need positive extent and at least 2 points per axis")
    x1 = np.linspace(0.0, x_max, points)
    x2 = np.linspace(0.0, x_max, points)
    dx = x_max / (points - 1)
    l1, l2 = system.lam
    for (a1, a2) in system.alphas:
        if max(abs(a1 * l1), abs(a2 * l2)) * dx > 0.5:
            raise ValueError(
                "lattice does not resolve the phases: |alpha*lambda|*dx > 0.5"
            )
    fields: list[np.ndarray] = [np.ones((points, points), dtype=complex)]
    for j in range(system.N - 2, -1, -1):
        G = _phase_weighted_integrand(system, j, x1, x2, fields[-1])
        fields.append(_prefix_integral(G, x1, x2))
    fields.reverse()
    return QuadrantSolution(system=system, x1=x1, x2=x2, fields=tuple(fields))


def sup_quadrant(sol: QuadrantSolution, j: int) -> float:
    """sup over the quadrant of |u_j| (equals sup |u_tilde_j|)."""
    return float(np.abs(sol.u_tilde(j)).max())


def recursion_residual(sol: QuadrantSolution) -> float:
    """Max deviation of each stored component from re-applying the prefix
    integral operator to the component above it."""
    worst = 0.0
    system = sol.system
    for j in range(system.N - 1):
        G = _phase_weighted_integrand(system, j, sol.x1, sol.x2, sol.fields[j + 1])
        again = _prefix_integral(G, sol.x1, sol.x2)
        worst = max(worst, float(np.abs(again - sol.fields[j]).max()))
    return worst
