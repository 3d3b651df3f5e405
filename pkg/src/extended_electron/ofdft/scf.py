"""Self-consistent solution of the coupled density/field equations.

Each iteration

1. builds v_eff0 = Hartree + cohesive from the current density rho + S,
2. solves the coupled eigenproblem at fixed potentials (the plain
   density-amplitude eigenproblem when Pi = 0, otherwise shifted block
   inverse iteration on the 4-component operator),
3. renormalises, mixes linearly with the previous fields and renormalises
   again,
4. records the max-norm residuals of both equations for the mixed fields at
   their own potentials, with mu from the Rayleigh quotient.

The loop stops when both residuals drop below ``tol``. A run that does not
get there returns ``converged=False`` with its full history.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.integrate import cumulative_trapezoid
from scipy.sparse.linalg import cg, splu

from .coupled import (
    GridField,
    PotentialSet,
    chemical_potential,
    coupled_operator,
    coupled_residual,
)
from .grid import Grid, laplacian_matrix, pairwise_sum
from .lps import LPSConvergenceError, lowest_eigenpair, lps_solve, symmetric_hamiltonian

__all__ = [
    "SCFConfig",
    "SCFResult",
    "scf_solve",
    "hartree_potential_field",
    "cohesive_potential_field",
    "effective_potential",
]

NORMALIZATIONS = ("total", "density")


@dataclass(frozen=True)
class SCFConfig:
    mixing: float = 0.3
    tol: float = 1e-10
    max_iter: int = 300
    hartree: bool = True
    cohesive: bool = True
    normalization: str = "total"  # integral of rho + S, or of rho alone
    inner_steps: int = 50
    poisson_tol: float = 1e-13

    def __post_init__(self):
        if not 0.0 < self.mixing <= 1.0:
            raise ValueError("mixing must lie in (0, 1]")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1 or self.inner_steps < 1:
            raise ValueError("iteration limits must be at least 1")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")


@dataclass
class SCFResult:
    fields: GridField
    mu: float
    residual_history: list[tuple[float, float]]
    iterations: int
    converged: bool
    v_eff0: np.ndarray
    norm_history: list[float] = field(default_factory=list)
    message: str = ""

    def __post_init__(self):
        if len(self.residual_history) != self.iterations:
            raise ValueError("residual history must have one entry per iteration")

    def summary(self) -> dict:
        return {
            "mu": self.mu,
            "iterations": self.iterations,
            "converged": self.converged,
            "message": self.message,
            "residual_history": [list(r) for r in self.residual_history],
            "norm_history": list(self.norm_history),
        }


# effective potential -------------------------------------------------------

def hartree_potential_field(density, grid: Grid, tol: float = 1e-13) -> np.ndarray:
    """Solve lap v_H = -4 pi n on the grid.

    Dirichlet grids use conjugate gradients on -lap; periodic grids subtract
    the mean density (neutralising background) and fix the gauge to zero
    mean; radial grids integrate the enclosed charge directly.
    """
    n = np.asarray(density, dtype=float)
    if grid.boundary == "radial":
        r = grid.radius
        rr = np.concatenate([[0.0], r])
        q = cumulative_trapezoid(np.concatenate([[0.0], 4.0 * math.pi * r * r * n]), rr, initial=0.0)[1:]
        outer_integrand = np.concatenate([[0.0], 4.0 * math.pi * r * n])
        outer_cum = cumulative_trapezoid(outer_integrand, rr, initial=0.0)
        outer = (outer_cum[-1] - outer_cum)[1:]
        return q / r + outer
    A = (-laplacian_matrix(grid)).tocsr()
    rhs = 4.0 * math.pi * n.ravel()
    # tolerance relative to the charge, not to the (possibly zero) centred source
    scale = float(np.max(np.abs(rhs))) or 1.0
    if grid.boundary == "periodic":
        rhs = rhs - rhs.mean()
    x, info = cg(A, rhs, rtol=0.0, atol=tol * scale, maxiter=20 * grid.size)
    if info != 0:
        raise RuntimeError(f"Poisson solve did not converge (info={info})")
    if grid.boundary == "periodic":
        x = x - x.mean()
    return x.reshape(grid.shape)


def cohesive_potential_field(density) -> np.ndarray:
    """-3/(5 r_s) with r_s = (3 / (4 pi n))^(1/3), i.e. -(3/5)(4 pi n / 3)^(1/3)."""
    n = np.clip(np.asarray(density, dtype=float), 0.0, None)
    return -0.6 * np.cbrt(4.0 * math.pi * n / 3.0)


def effective_potential(density, grid: Grid, config: SCFConfig) -> np.ndarray:
    v = np.zeros(grid.shape)
    if config.hartree:
        v = v + hartree_potential_field(density, grid, config.poisson_tol)
    if config.cohesive:
        v = v + cohesive_potential_field(density)
    return v


# helpers -------------------------------------------------------------------

def _normalize(psi: np.ndarray, grid: Grid, N: float, mode: str) -> np.ndarray:
    w = grid.weights
    if mode == "total":
        norm = pairwise_sum(w * (psi * psi).sum(axis=0))
    else:
        norm = pairwise_sum(w * psi[0] * psi[0])
    if not norm > 0:
        raise FloatingPointError("fields collapsed to zero")
    psi = psi * math.sqrt(N / norm)
    return -psi if pairwise_sum(w * psi[0]) < 0 else psi


def _measure(psi: np.ndarray, grid: Grid, mode: str) -> float:
    w = grid.weights
    if mode == "total":
        return pairwise_sum(w * (psi * psi).sum(axis=0))
    return pairwise_sum(w * psi[0] * psi[0])


def _solve_fixed_potentials(grid: Grid, v0: np.ndarray, Pi: np.ndarray, psi: np.ndarray,
                            inner_steps: int) -> np.ndarray:
    """Lowest coupled eigenvector for fixed (v0, Pi), as a (4,)+shape array."""
    s = np.sqrt(grid.weights.ravel())
    mu0, y0, _, _ = lowest_eigenpair(symmetric_hamiltonian(grid, v0))
    if not np.any(Pi):
        out = np.zeros((4,) + grid.shape)
        out[0] = (y0 / s).reshape(grid.shape)
        return out
    A = coupled_operator(grid, v0, Pi)
    # the coupling shifts eigenvalues by at most max|Pi|; stay below that band
    shift = mu0 - float(np.max(np.linalg.norm(Pi, axis=-1))) - 1e-2 * max(1.0, abs(mu0))
    lu = splu((A - shift * sp.identity(A.shape[0], format="csc")).tocsc())
    y = (psi.reshape(4, -1) * s).ravel()
    y /= np.linalg.norm(y)
    for _ in range(inner_steps):
        y = lu.solve(y)
        y /= np.linalg.norm(y)
    return (y.reshape(4, -1) / s).reshape((4,) + grid.shape)


def _pots(grid, v_ext, v_eff0, Pi, mu=0.0):
    return PotentialSet(v_ext=v_ext, v_eff0=v_eff0, Pi=Pi, mu=mu)


# driver --------------------------------------------------------------------

def scf_solve(grid: Grid, v_ext, Pi=None, N: float = 1.0,
              config: SCFConfig | None = None) -> SCFResult:
    """Self-consistent (rho^(1/2), Lambda) for external potential ``v_ext``.

    ``Pi`` is a constant 3-vector or a field of shape ``grid.shape + (3,)``;
    None means Pi = 0, where the result reduces to the density-amplitude
    ground state in its own effective potential.
    """
    config = config or SCFConfig()
    if not N > 0:
        raise ValueError("electron number N must be positive")
    v_ext = np.broadcast_to(np.asarray(v_ext, dtype=float), grid.shape).copy()
    Pi = np.zeros(grid.shape + (3,)) if Pi is None else \
        np.broadcast_to(np.asarray(Pi, dtype=float), grid.shape + (3,)).copy()
    if not (np.all(np.isfinite(v_ext)) and np.all(np.isfinite(Pi))):
        raise ValueError("potentials must be finite")

    start = lps_solve(grid, v_ext, N=N)
    psi = np.zeros((4,) + grid.shape)
    psi[0] = start.rho_half
    if np.any(Pi):
        # small seed along e3 so the field components can develop
        psi[3] = 1e-3 * start.rho_half
    psi = _normalize(psi, grid, N, config.normalization)

    history: list[tuple[float, float]] = []
    norms: list[float] = []
    beta = config.mixing
    mu = start.mu
    v_eff0 = np.zeros(grid.shape)
    converged = False
    message = "maximum iterations reached"
    for _ in range(config.max_iter):
        fields = GridField.from_stacked(psi)
        v_eff0 = effective_potential(fields.total_density(), grid, config)
        try:
            new = _solve_fixed_potentials(grid, v_ext + v_eff0, Pi, psi, config.inner_steps)
        except LPSConvergenceError as exc:
            message = f"inner eigen-solve failed: {exc}"
            break
        new = _normalize(new, grid, N, config.normalization)
        psi = _normalize((1.0 - beta) * psi + beta * new, grid, N, config.normalization)
        norms.append(_measure(psi, grid, config.normalization))

        fields = GridField.from_stacked(psi)
        v_eff0 = effective_potential(fields.total_density(), grid, config)
        pots = _pots(grid, v_ext, v_eff0, Pi)
        mu = chemical_potential(fields, pots, grid)
        pots.mu = mu
        rs, rv = coupled_residual(fields, pots, grid)
        history.append((float(np.max(np.abs(rs))), float(np.max(np.abs(rv)))))
        if not all(math.isfinite(x) for x in history[-1]):
            message = "non-finite residual"
            break
        if max(history[-1]) < config.tol:
            converged = True
            message = "converged"
            break

    return SCFResult(fields=GridField.from_stacked(psi), mu=mu, residual_history=history,
                     iterations=len(history), converged=converged, v_eff0=v_eff0,
                     norm_history=norms, message=message)
