"""Thomas-Fermi and von Weizsaecker kinetic-energy functionals on a grid."""
from __future__ import annotations

import math

import numpy as np

from .grid import Grid, gradient, pairwise_sum

__all__ = ["C_TF", "RHO_FLOOR", "kinetic_functionals", "thomas_fermi", "von_weizsaecker"]

C_TF = 0.3 * (3.0 * math.pi ** 2) ** (2.0 / 3.0)
# below this density the vW integrand is taken as its limit, zero
RHO_FLOOR = 1e-14


def _density(rho, grid: Grid) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    if rho.shape != grid.shape:
        raise ValueError(f"density shape {rho.shape} does not match grid {grid.shape}")
    if np.any(rho < 0):
        raise ValueError("density must be non-negative")
    return rho


def thomas_fermi(rho, grid: Grid) -> float:
    """C_TF * integral rho^(5/3)."""
    rho = _density(rho, grid)
    return C_TF * pairwise_sum(grid.weights * rho ** (5.0 / 3.0))


def von_weizsaecker(rho, grid: Grid) -> float:
    """(1/8) integral |grad rho|^2 / rho."""
    rho = _density(rho, grid)
    g2 = (gradient(rho, grid) ** 2).sum(axis=0)
    mask = rho >= RHO_FLOOR
    integrand = np.zeros_like(rho)
    integrand[mask] = g2[mask] / rho[mask]
    return 0.125 * pairwise_sum(grid.weights * integrand)


def kinetic_functionals(rho, grid: Grid) -> tuple[float, float]:
    """(T_TF, T_vW) for the density ``rho``."""
    return thomas_fermi(rho, grid), von_weizsaecker(rho, grid)
