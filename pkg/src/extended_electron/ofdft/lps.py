"""Lowest eigenpair of the density-amplitude equation [-1/2 lap + v - mu] f = 0.

The nodeless ground state f = rho^(1/2) is found with shift-invert Lanczos
(ARPACK through :func:`scipy.sparse.linalg.eigsh`) and then polished by
inverse iteration with a sparse LU factorisation, which also provides the
per-iteration residual history.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh, splu

from .grid import Grid, pairwise_sum, symmetric_laplacian_matrix

__all__ = ["LPSResult", "LPSConvergenceError", "lps_solve", "symmetric_hamiltonian",
           "lowest_eigenpair", "normalize_amplitude"]


@dataclass
class LPSResult:
    rho_half: np.ndarray
    mu: float
    iterations: int
    residual_history: list[float] = field(default_factory=list)

    @property
    def density(self) -> np.ndarray:
        return self.rho_half ** 2


class LPSConvergenceError(RuntimeError):
    def __init__(self, message: str, residual_history: list[float]):
        super().__init__(message)
        self.residual_history = residual_history


def _potential(grid: Grid, *terms) -> np.ndarray:
    v = np.zeros(grid.shape)
    for t in terms:
        if t is None:
            continue
        t = np.asarray(t, dtype=float)
        if t.ndim and t.shape != grid.shape:
            raise ValueError(f"potential shape {t.shape} does not match grid {grid.shape}")
        v = v + t
    if not np.all(np.isfinite(v)):
        raise ValueError("potential must be finite on every grid point")
    return v


def symmetric_hamiltonian(grid: Grid, v) -> sp.csr_matrix:
    """-1/2 lap + v in the symmetrised representation y = W^(1/2) f."""
    L = symmetric_laplacian_matrix(grid)
    v = np.broadcast_to(np.asarray(v, dtype=float), grid.shape)
    return (-0.5 * L + sp.diags(v.ravel())).tocsr()


def _start_vector(n: int) -> np.ndarray:
    # smooth positive start: overlaps the nodeless ground state, deterministic
    return np.sin(np.pi * (np.arange(n) + 1.0) / (n + 1.0)) + 0.5


def lowest_eigenpair(A: sp.spmatrix, tol: float = 1e-12, max_iter: int = 500):
    """Lowest eigenpair of a symmetric sparse matrix.

    Returns ``(value, unit_vector, iterations, residual_history)``; raises
    :class:`LPSConvergenceError` when the polish stalls above ``tol``.
    """
    n = A.shape[0]
    diag = A.diagonal()
    # Gershgorin lower bound keeps the shift strictly below the spectrum
    radius = np.asarray(abs(A).sum(axis=1)).ravel() - np.abs(diag)
    sigma = float(np.min(diag - radius)) - 1.0
    try:
        vals, vecs = eigsh(A, k=1, sigma=sigma, which="LM", v0=_start_vector(n),
                           tol=0.0, maxiter=max(max_iter, 50) * 10)
        mu, y = float(vals[0]), vecs[:, 0]
    except ArpackNoConvergence:
        mu, y = sigma + 1.0, _start_vector(n)
    y = y / np.linalg.norm(y)

    # inverse iteration with a shift just below the estimate
    history: list[float] = []
    scale = max(1.0, abs(mu))
    shift = mu - 1e-3 * scale
    lu = splu((A - shift * sp.identity(n, format="csc")).tocsc())
    for it in range(1, max_iter + 1):
        Ay = A @ y
        mu = float(y @ Ay)
        res = float(np.max(np.abs(Ay - mu * y)))
        history.append(res)
        if res <= tol * scale:
            return mu, y, it, history
        y = lu.solve(y)
        y /= np.linalg.norm(y)
    raise LPSConvergenceError(
        f"inverse iteration did not reach residual {tol:g} in {max_iter} steps "
        f"(last {history[-1]:.3e})", history)


def normalize_amplitude(f: np.ndarray, grid: Grid, N: float) -> np.ndarray:
    """Scale ``f`` so that the integral of f^2 is N, with a positive mean."""
    norm = pairwise_sum(grid.weights * f * f)
    if not norm > 0:
        raise ValueError("cannot normalise a zero field")
    f = f * np.sqrt(N / norm)
    return -f if pairwise_sum(grid.weights * f) < 0 else f


def lps_solve(grid: Grid, v_ext, v_eff0=None, N: float = 1.0, tol: float = 1e-11,
              max_iter: int = 500) -> LPSResult:
    """Ground state of [-1/2 lap + v_ext + v_eff0 - mu] rho^(1/2) = 0 with integral rho = N."""
    if not N > 0:
        raise ValueError("electron number N must be positive")
    v = _potential(grid, v_ext, v_eff0)
    A = symmetric_hamiltonian(grid, v)
    mu, y, iterations, history = lowest_eigenpair(A, tol=tol, max_iter=max_iter)
    f = (y / np.sqrt(grid.weights.ravel())).reshape(grid.shape)
    return LPSResult(rho_half=normalize_amplitude(f, grid, N), mu=mu,
                     iterations=iterations, residual_history=history)
