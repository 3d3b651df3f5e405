"""Uniform real-space grids and second-order finite-difference operators.

Three geometries are supported:

* ``dirichlet``: 1-3 axes, values vanish on ghost points one spacing
  beyond each end, so interior points sit at (i + 1) h.
* ``periodic``: 1-3 axes, points at i h with period n h.
* ``radial``: one axis in r for spherically symmetric fields, r_i = (i + 1) h,
  with the Laplacian applied as (1/r) d2(r f)/dr2 and u = r f vanishing at
  r = 0 and one spacing past the last point.

Integrals use the weights ``Grid.weights`` (cell volume, or 4 pi r^2 h for
the radial grid), so every operator here is symmetric in the weighted inner
product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

__all__ = ["Grid", "BOUNDARIES", "laplacian", "laplacian_matrix",
           "symmetric_laplacian_matrix", "gradient",
           "integrate", "pairwise_sum"]

BOUNDARIES = ("dirichlet", "periodic", "radial")
MIN_POINTS = 8


@dataclass(frozen=True)
class Grid:
    shape: tuple[int, ...]
    spacing: tuple[float, ...]
    boundary: str = "dirichlet"

    def __post_init__(self):
        shape = tuple(int(n) for n in np.atleast_1d(self.shape))
        spacing = tuple(float(h) for h in np.broadcast_to(
            np.atleast_1d(np.asarray(self.spacing, dtype=float)), (len(shape),)))
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "spacing", spacing)
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        if not 1 <= len(shape) <= 3:
            raise ValueError("grids have 1 to 3 axes")
        if self.boundary == "radial" and len(shape) != 1:
            raise ValueError("a radial grid has exactly one axis")
        if any(n < MIN_POINTS for n in shape):
            raise ValueError(f"need at least {MIN_POINTS} points per axis, got {shape}")
        if any(not (h > 0 and math.isfinite(h)) for h in spacing):
            raise ValueError("grid spacing must be positive and finite")

    @classmethod
    def box(cls, points, length, boundary: str = "dirichlet") -> "Grid":
        """Grid filling a box of side ``length`` (per axis) with ``points`` unknowns."""
        points = tuple(int(n) for n in np.atleast_1d(points))
        length = np.broadcast_to(np.atleast_1d(np.asarray(length, dtype=float)), (len(points),))
        if boundary == "periodic":
            spacing = tuple(L / n for L, n in zip(length, points))
        else:
            spacing = tuple(L / (n + 1) for L, n in zip(length, points))
        return cls(points, spacing, boundary)

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def lengths(self) -> tuple[float, ...]:
        if self.boundary == "periodic":
            return tuple(n * h for n, h in zip(self.shape, self.spacing))
        return tuple((n + 1) * h for n, h in zip(self.shape, self.spacing))

    def axis_coordinates(self, axis: int) -> np.ndarray:
        n, h = self.shape[axis], self.spacing[axis]
        offset = 0 if self.boundary == "periodic" else 1
        return h * (np.arange(n) + offset)

    def coordinates(self) -> list[np.ndarray]:
        return np.meshgrid(*(self.axis_coordinates(a) for a in range(self.ndim)), indexing="ij")

    def centre(self) -> np.ndarray:
        if self.boundary == "radial":
            return np.zeros(1)
        return 0.5 * np.array(self.lengths)

    @cached_property
    def radius(self) -> np.ndarray:
        if self.boundary != "radial":
            raise ValueError("radius is defined on radial grids only")
        return self.axis_coordinates(0)

    @cached_property
    def weights(self) -> np.ndarray:
        if self.boundary == "radial":
            r = self.radius
            return 4.0 * math.pi * r * r * self.spacing[0]
        return np.full(self.shape, float(np.prod(self.spacing)))

    @cached_property
    def _laplacian(self) -> sp.csr_matrix:
        return _build_laplacian(self)

    def same_as(self, other: "Grid") -> bool:
        return (self.shape == other.shape and self.boundary == other.boundary
                and np.allclose(self.spacing, other.spacing, rtol=1e-14, atol=0.0))


def _second_difference(n: int, h: float, periodic: bool) -> sp.csr_matrix:
    main = np.full(n, -2.0)
    off = np.ones(n - 1)
    D = sp.diags([off, main, off], [-1, 0, 1], shape=(n, n), format="lil")
    if periodic:
        D[0, n - 1] = 1.0
        D[n - 1, 0] = 1.0
    return (D.tocsr() / (h * h))


def _build_laplacian(grid: Grid) -> sp.csr_matrix:
    periodic = grid.boundary == "periodic"
    if grid.boundary == "radial":
        r = grid.radius
        D = _second_difference(grid.shape[0], grid.spacing[0], False)
        return (sp.diags(1.0 / r) @ D @ sp.diags(r)).tocsr()
    ops = [_second_difference(n, h, periodic) for n, h in zip(grid.shape, grid.spacing)]
    eyes = [sp.identity(n, format="csr") for n in grid.shape]
    total = None
    for a in range(grid.ndim):
        term = None
        for b in range(grid.ndim):
            factor = ops[b] if a == b else eyes[b]
            term = factor if term is None else sp.kron(term, factor, format="csr")
        total = term if total is None else total + term
    return total.tocsr()


def laplacian_matrix(grid: Grid) -> sp.csr_matrix:
    """Sparse Laplacian acting on C-ordered flattened fields."""
    return grid._laplacian


def symmetric_laplacian_matrix(grid: Grid) -> sp.csr_matrix:
    """W^(1/2) L W^(-1/2) for the weights W; symmetric in the plain dot product.

    On Cartesian grids the weights are constant and this is the Laplacian
    itself; on the radial grid it is the plain second difference acting on
    u = r f.
    """
    if grid.boundary == "radial":
        return _second_difference(grid.shape[0], grid.spacing[0], False)
    return grid._laplacian


def laplacian(field, grid: Grid) -> np.ndarray:
    f = np.asarray(field, dtype=float)
    if f.shape != grid.shape:
        raise ValueError(f"field shape {f.shape} does not match grid {grid.shape}")
    return (grid._laplacian @ f.ravel()).reshape(grid.shape)


def gradient(field, grid: Grid) -> np.ndarray:
    """Central-difference gradient, shape ``(ndim,) + grid.shape``.

    Dirichlet grids use the zero ghost values, periodic grids wrap around
    and the radial grid takes second-order one-sided differences at its ends.
    """
    f = np.asarray(field, dtype=float)
    if f.shape != grid.shape:
        raise ValueError(f"field shape {f.shape} does not match grid {grid.shape}")
    out = np.empty((grid.ndim,) + grid.shape)
    for a, h in enumerate(grid.spacing):
        if grid.boundary == "periodic":
            out[a] = (np.roll(f, -1, axis=a) - np.roll(f, 1, axis=a)) / (2.0 * h)
        elif grid.boundary == "radial":
            out[a] = np.gradient(f, h, edge_order=2)
        else:
            pad = [(0, 0)] * grid.ndim
            pad[a] = (1, 1)
            g = np.pad(f, pad)
            hi = [slice(None)] * grid.ndim
            lo = [slice(None)] * grid.ndim
            hi[a] = slice(2, None)
            lo[a] = slice(None, -2)
            out[a] = (g[tuple(hi)] - g[tuple(lo)]) / (2.0 * h)
    return out


def pairwise_sum(values) -> float:
    """Sum in a fixed pairwise order, reproducible for a given array layout."""
    # numpy's add.reduce over a contiguous 1-D buffer is a blocked pairwise tree
    return float(np.add.reduce(np.ascontiguousarray(values, dtype=float).ravel()))


def integrate(field, grid: Grid) -> float:
    f = np.asarray(field, dtype=float)
    if f.shape != grid.shape:
        raise ValueError(f"field shape {f.shape} does not match grid {grid.shape}")
    return pairwise_sum(grid.weights * f)
