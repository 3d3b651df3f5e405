"""Density amplitude coupled to a vector field through a bivector potential.

With H0 = -1/2 lap + v0 and a vector potential field Pi, the pair
(rho^(1/2), Lambda) obeys

    [H0 - mu] rho^(1/2)              = Pi . Lambda
    [H0 - mu] Lambda + rho^(1/2) Pi  = Pi x Lambda

Stacking Psi = (rho^(1/2), Lambda_x, Lambda_y, Lambda_z) this is the linear
eigenproblem (I4 (x) H0 + C) Psi = mu Psi with the pointwise block

    C = [[0, -Pi^T], [Pi, -[Pi]x]],

which is antisymmetric. The coupled operator is therefore not symmetric
once Pi != 0 and its spectrum is complex in general.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .grid import Grid, laplacian, pairwise_sum, symmetric_laplacian_matrix

__all__ = [
    "GridField",
    "PotentialSet",
    "coupled_residual",
    "coupled_operator",
    "chemical_potential",
    "manufacture_potentials",
    "linear_response",
]

_E3 = np.array([0.0, 0.0, 1.0])


@dataclass
class GridField:
    """rho^(1/2), |Lambda| = S^(1/2) and the unit direction e_S on a grid.

    ``e_S`` has shape ``grid.shape + (3,)``; where S_half = 0 it is stored as
    e3 and never read.
    """

    rho_half: np.ndarray
    S_half: np.ndarray
    e_S: np.ndarray

    def __post_init__(self):
        self.rho_half = np.asarray(self.rho_half, dtype=float)
        self.S_half = np.asarray(self.S_half, dtype=float)
        self.e_S = np.asarray(self.e_S, dtype=float)
        if self.S_half.shape != self.rho_half.shape or self.e_S.shape != self.rho_half.shape + (3,):
            raise ValueError("rho_half, S_half and e_S must share the grid shape")
        if np.any(self.S_half < 0):
            raise ValueError("S_half must be non-negative")
        lengths = np.linalg.norm(self.e_S, axis=-1)
        if np.any(np.abs(lengths[self.S_half > 0] - 1.0) > 1e-10):
            raise ValueError("e_S must be a unit vector wherever S_half > 0")

    @classmethod
    def from_lambda(cls, rho_half, Lambda) -> "GridField":
        Lambda = np.asarray(Lambda, dtype=float)
        S = np.linalg.norm(Lambda, axis=-1)
        e = np.broadcast_to(_E3, Lambda.shape).copy()
        nz = S > 0
        e[nz] = Lambda[nz] / S[nz][:, None]
        return cls(rho_half, S, e)

    @classmethod
    def density_only(cls, rho_half) -> "GridField":
        rho_half = np.asarray(rho_half, dtype=float)
        return cls(rho_half, np.zeros_like(rho_half), np.broadcast_to(_E3, rho_half.shape + (3,)).copy())

    @property
    def Lambda(self) -> np.ndarray:
        return self.e_S * self.S_half[..., None]

    def total_density(self) -> np.ndarray:
        """rho + S, the scalar part of Psi^dagger Psi."""
        return self.rho_half ** 2 + self.S_half ** 2

    def scaled(self, a: float) -> "GridField":
        return GridField.from_lambda(a * self.rho_half, a * self.Lambda)

    def stacked(self) -> np.ndarray:
        """Psi as an array of shape ``(4,) + grid.shape``."""
        return np.concatenate([self.rho_half[None], np.moveaxis(self.Lambda, -1, 0)])

    @classmethod
    def from_stacked(cls, psi: np.ndarray) -> "GridField":
        return cls.from_lambda(psi[0], np.moveaxis(psi[1:], 0, -1))


@dataclass
class PotentialSet:
    v_ext: np.ndarray
    v_eff0: np.ndarray
    Pi: np.ndarray  # grid.shape + (3,)
    mu: float = 0.0

    def __post_init__(self):
        self.v_ext = np.asarray(self.v_ext, dtype=float)
        self.v_eff0 = np.broadcast_to(np.asarray(self.v_eff0, dtype=float), self.v_ext.shape).copy()
        self.Pi = np.broadcast_to(np.asarray(self.Pi, dtype=float), self.v_ext.shape + (3,)).copy()
        if not np.all(np.isfinite(self.Pi)):
            raise ValueError("Pi must be finite everywhere")

    @property
    def v0(self) -> np.ndarray:
        return self.v_ext + self.v_eff0


def _check(grid: Grid, fields: GridField, pots: PotentialSet) -> None:
    if fields.rho_half.shape != grid.shape or pots.v_ext.shape != grid.shape:
        raise ValueError(f"fields {fields.rho_half.shape} / potentials {pots.v_ext.shape} "
                         f"do not match grid {grid.shape}")


def _shifted_h0(f: np.ndarray, v0: np.ndarray, mu: float, grid: Grid) -> np.ndarray:
    return -0.5 * laplacian(f, grid) + (v0 - mu) * f


def coupled_residual(fields: GridField, pots: PotentialSet, grid: Grid):
    """Pointwise residuals (scalar field, vector field of shape grid.shape + (3,))."""
    _check(grid, fields, pots)
    v0, mu, Pi = pots.v0, pots.mu, pots.Pi
    rho = fields.rho_half
    Lam = fields.Lambda
    scalar = _shifted_h0(rho, v0, mu, grid) - np.einsum("...i,...i->...", Pi, Lam)
    hl = np.stack([_shifted_h0(Lam[..., i], v0, mu, grid) for i in range(3)], axis=-1)
    vec = hl + rho[..., None] * Pi - np.cross(Pi, Lam)
    return scalar, vec


def _cross_matrix(P: np.ndarray) -> np.ndarray:
    """[P]x with [P]x L = P x L, shape (..., 3, 3)."""
    z = np.zeros(P.shape[:-1])
    px, py, pz = P[..., 0], P[..., 1], P[..., 2]
    return np.stack([np.stack([z, -pz, py], -1),
                     np.stack([pz, z, -px], -1),
                     np.stack([-py, px, z], -1)], -2)


def coupled_operator(grid: Grid, v0, Pi) -> sp.csr_matrix:
    """I4 (x) H0 + C in the weight-symmetrised representation, size 4 n."""
    n = grid.size
    L = symmetric_laplacian_matrix(grid)
    H0 = (-0.5 * L + sp.diags(np.asarray(v0, dtype=float).ravel())).tocsr()
    C = np.zeros((4, 4, n))
    P = np.broadcast_to(np.asarray(Pi, dtype=float), grid.shape + (3,)).reshape(n, 3)
    C[0, 1:] = -P.T
    C[1:, 0] = P.T
    C[1:, 1:] = -np.moveaxis(_cross_matrix(P), 0, -1)
    blocks = [[sp.diags(C[a, b]) + (H0 if a == b else 0) for b in range(4)] for a in range(4)]
    return sp.bmat(blocks, format="csr")


def chemical_potential(fields: GridField, pots: PotentialSet, grid: Grid) -> float:
    """Rayleigh quotient <Psi, H Psi> / <Psi, Psi> of the coupled operator.

    The antisymmetric coupling does not contribute, so this is the H0
    expectation over all four components.
    """
    _check(grid, fields, pots)
    psi = fields.stacked()
    w = grid.weights
    norm = pairwise_sum(w * (psi * psi).sum(axis=0))
    if not norm > 0:
        raise ValueError("chemical potential undefined for zero fields")
    v0 = pots.v0
    num = 0.0
    for c in psi:
        num += pairwise_sum(w * c * (-0.5 * laplacian(c, grid) + v0 * c))
    return num / norm


def manufacture_potentials(rho_half, Lambda, grid: Grid, mu: float = 0.0,
                           v_ext=None) -> PotentialSet:
    """Potentials (v0, Pi) for which (rho_half, Lambda) solves both equations exactly.

    With K = -1/2 lap the scalar equation fixes

        v0 = mu - (rho K rho + Lambda . K Lambda) / (rho^2 + |Lambda|^2)

    and Pi solves (rho I + [Lambda]x) Pi = -(K + v0 - mu) Lambda. Needs
    rho_half != 0 everywhere.
    """
    rho = np.asarray(rho_half, dtype=float)
    Lam = np.asarray(Lambda, dtype=float)
    if rho.shape != grid.shape or Lam.shape != grid.shape + (3,):
        raise ValueError("fields do not match the grid")
    if np.any(np.abs(rho) < 1e-12):
        raise ValueError("manufactured potentials need rho_half != 0 at every point")
    K_rho = -0.5 * laplacian(rho, grid)
    K_lam = np.stack([-0.5 * laplacian(Lam[..., i], grid) for i in range(3)], axis=-1)
    total = rho * rho + (Lam * Lam).sum(-1)
    v0 = mu - (rho * K_rho + (Lam * K_lam).sum(-1)) / total
    g = K_lam + (v0 - mu)[..., None] * Lam
    M = rho[..., None, None] * np.eye(3) + _cross_matrix(Lam)
    Pi = -np.linalg.solve(M, g[..., None])[..., 0]
    v_ext = np.zeros(grid.shape) if v_ext is None else np.asarray(v_ext, dtype=float)
    return PotentialSet(v_ext=v_ext, v_eff0=v0 - v_ext, Pi=Pi, mu=mu)


def linear_response(grid: Grid, v0, Pi, rho_half, mu: float, shift: float) -> np.ndarray:
    """First-order Lambda from one shifted block solve around a pure density state.

    Solves [H0 - mu + shift] Lambda = -rho_half Pi, the vector equation
    linearised in Pi with the coupling Pi x Lambda dropped. For a uniform
    state Lambda = -(rho_half / shift) Pi, aligned with Pi and linear in it.
    """
    if not shift > 0:
        raise ValueError("shift must be positive")
    n = grid.size
    L = symmetric_laplacian_matrix(grid)
    A = (-0.5 * L + sp.diags(np.asarray(v0, dtype=float).ravel() - mu + shift)).tocsc()
    s = np.sqrt(grid.weights.ravel())
    P = np.broadcast_to(np.asarray(Pi, dtype=float), grid.shape + (3,)).reshape(n, 3)
    rho = np.asarray(rho_half, dtype=float).ravel()
    out = np.empty((n, 3))
    for i in range(3):
        out[:, i] = spsolve(A, -s * rho * P[:, i]) / s
    return out.reshape(grid.shape + (3,))
