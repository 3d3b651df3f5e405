"""Spin of the extended electron and its response to magnetic fields.

The spin is the sandwich s = psi a ~psi / 2 of the multivector
wavefunction with an axis a. Rotations act on psi from one side only, so
a 2*pi turn flips the sign of psi while the spin returns to itself.

The field vector S of a moving electron follows a modified
Landau-Lifshitz flow

    dS/dt = -gamma/(1 + alpha^2) S x B + const * S x (v x dB/dt),

integrated here with fixed-step classical RK4.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .electron_wave import WaveState, phase, wavefunction
from .ga3 import (
    E2,
    E3,
    GradeError,
    Multivector,
    cross,
    inner,
    reverse,
    vector,
)

__all__ = [
    "LLParams",
    "SpinTrajectory",
    "RampField",
    "spin_sandwich",
    "free_spin",
    "tilted_spin",
    "average_spin",
    "average_spin_quadrature",
    "magnetic_moment",
    "zeeman_potential",
    "larmor_frequency",
    "rotate_wavefunction",
    "induced_spin",
    "modified_ll_rhs",
    "integrate_modified_ll",
]


def _check_unit_vector(a: Multivector, what: str = "axis") -> None:
    if not a.is_grade(1, atol=1e-12):
        raise GradeError(f"{what} must be a vector")
    if abs(a.norm() - 1.0) > 1e-10:
        raise ValueError(f"{what} must have unit length, got |{what}| = {a.norm()!r}")


def spin_sandwich(psi: Multivector, axis: Multivector) -> Multivector:
    _check_unit_vector(axis)
    return 0.5 * (psi * axis * reverse(psi))


def free_spin(state: WaveState, z: float, t: float) -> Multivector:
    """Spin of a free electron, +-rho0/2 along its direction of motion.

    The sign follows the helicity: the sandwich itself is helicity-blind,
    so the E x H orientation enters as an explicit factor.
    """
    psi = wavefunction(state, z, t)
    return state.helicity * spin_sandwich(psi, state.direction)


def _tilt_axis(state: WaveState) -> np.ndarray:
    return math.cos(state.tilt) * E3.vector_part + math.sin(state.tilt) * E2.vector_part


def tilted_spin(state: WaveState, sign: int, z, t) -> np.ndarray:
    """Spin of an electron whose field plane is tilted by ``state.tilt``.

    s = sign * rho0/2 * [cos(tilt) e3 + sin(tilt) e2 + sin(tilt) sin(2 phase) e1]

    At tilt = pi/4 this is rho0/2 [+-(e3 + e2)/sqrt2 +- sin(2 phase) e1/sqrt2].
    Returns Cartesian components with shape ``broadcast(z, t).shape + (3,)``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    osc = np.sin(2.0 * phase(state, z, t))
    const = _tilt_axis(state)
    e1 = np.array([1.0, 0.0, 0.0])
    out = const + math.sin(state.tilt) * osc[..., None] * e1
    return sign * 0.5 * state.rho0 * out


def average_spin(state: WaveState, sign: int) -> Multivector:
    """Average of :func:`tilted_spin` over one period 1/nu.

    The e1 term oscillates at twice the wave frequency and averages to zero.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return vector(sign * 0.5 * state.rho0 * _tilt_axis(state))


def average_spin_quadrature(state: WaveState, sign: int, z: float = 0.0,
                            nodes: int = 64) -> Multivector:
    """Gauss-Legendre time average of :func:`tilted_spin` over one period."""
    if not state.v > 0:
        raise ValueError("an electron at rest has no oscillation period")
    x, w = np.polynomial.legendre.leggauss(nodes)
    tau = state.period
    t = 0.5 * tau * (x + 1.0)
    s = tilted_spin(state, sign, z, t)
    return vector(0.5 * (w[:, None] * s).sum(axis=0))


def magnetic_moment(gamma: float, avg_spin: Multivector) -> Multivector:
    return gamma * avg_spin


def zeeman_potential(mu: Multivector, B: Multivector) -> float:
    """phi_B = -mu . B."""
    return -inner(mu, B).scalar_part


def larmor_frequency(gamma: float, B0: float, rho0: float) -> tuple[float, float]:
    """The two frequency shifts +-(gamma B0 / 2)(rho0 / sqrt2)."""
    w = 0.5 * gamma * B0 * rho0 / math.sqrt(2.0)
    return (w, -w)


def rotate_wavefunction(R: Multivector, psi: Multivector) -> Multivector:
    """One-sided rotation psi -> R psi."""
    return R * psi


def induced_spin(S: Multivector, v: Multivector, B: Multivector,
                 const_ll: float = 1.0) -> Multivector:
    """First-order field-vector change const * S x (v x B) on switching on B."""
    return const_ll * cross(S, cross(v, B))


@dataclass(frozen=True)
class LLParams:
    gamma: float = 1.0
    const_ll: float = 1.0
    alpha_ll: float = 0.0


class RampField:
    """B(t) = B_final * min(t / t_ramp, 1): a field switched on over ``t_ramp``."""

    def __init__(self, B_final, t_ramp: float):
        if not t_ramp > 0:
            raise ValueError("t_ramp must be positive")
        self.B_final = _as_array(B_final)
        self.t_ramp = float(t_ramp)

    def __call__(self, t: float) -> np.ndarray:
        return self.B_final * min(max(t, 0.0) / self.t_ramp, 1.0)

    def derivative(self, t: float) -> np.ndarray:
        # step boundaries computed as n*dt may land an ulp short of t_ramp
        if 0.0 <= t < self.t_ramp * (1.0 - 1e-12):
            return self.B_final / self.t_ramp
        return np.zeros(3)


def _as_array(x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.shape == (3,) and x.dtype == float:
        return x
    if isinstance(x, Multivector):
        if not x.is_grade(1, atol=1e-12):
            raise GradeError("expected a vector")
        return x.vector_part
    a = np.asarray(x, dtype=float).reshape(3)
    return a


def _field_derivative(B_of_t, t: float, dt: float) -> np.ndarray:
    if hasattr(B_of_t, "derivative"):
        return _as_array(B_of_t.derivative(t))
    eps = 1e-3 * dt
    return (_as_array(B_of_t(t + eps)) - _as_array(B_of_t(t - eps))) / (2.0 * eps)


def _cross3(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.cross carries heavy dispatch overhead for single 3-vectors
    return np.array([a[1] * b[2] - a[2] * b[1],
                     a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]])


def modified_ll_rhs(S: np.ndarray, v: np.ndarray, B: np.ndarray, dBdt: np.ndarray,
                    params: LLParams) -> np.ndarray:
    precession = -params.gamma / (1.0 + params.alpha_ll ** 2) * _cross3(S, B)
    induced = params.const_ll * _cross3(S, _cross3(v, dBdt))
    return precession + induced


@dataclass
class SpinTrajectory:
    times: np.ndarray
    spins: np.ndarray  # (n, 3) Cartesian components
    params: LLParams

    def __post_init__(self):
        if self.spins.shape != (len(self.times), 3):
            raise ValueError("spins must have shape (len(times), 3)")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    def spin(self, i: int) -> Multivector:
        return vector(self.spins[i])

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.spins, axis=1)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "Sx", "Sy", "Sz"])
            for t, s in zip(self.times, self.spins):
                w.writerow([repr(float(t))] + [repr(float(c)) for c in s])


def integrate_modified_ll(S0, v, B_of_t: Callable, params: LLParams | None = None,
                          dt: float = 1e-2, steps: int = 1000) -> SpinTrajectory:
    """Fixed-step RK4 integration of the modified Landau-Lifshitz flow.

    ``B_of_t`` maps time to a field vector; if it has a ``derivative``
    method that is used for dB/dt, otherwise a central difference is taken.
    Precession and induced terms act simultaneously.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    params = params or LLParams()
    S = _as_array(S0).copy()
    vel = _as_array(v)

    def rhs(t, y):
        B = _as_array(B_of_t(t))
        dB = _field_derivative(B_of_t, t, dt)
        if not (np.all(np.isfinite(B)) and np.all(np.isfinite(dB))):
            raise FloatingPointError(f"non-finite field at t = {t!r}")
        return modified_ll_rhs(y, vel, B, dB, params)

    times = dt * np.arange(steps + 1)
    out = np.empty((steps + 1, 3))
    out[0] = S
    for n in range(steps):
        t = times[n]
        k1 = rhs(t, S)
        k2 = rhs(t + 0.5 * dt, S + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, S + 0.5 * dt * k2)
        k4 = rhs(t + dt, S + dt * k3)
        S = S + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[n + 1] = S
    return SpinTrajectory(times=times, spins=out, params=params)

