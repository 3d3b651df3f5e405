"""Closed-form model of a free extended electron travelling along a fixed axis.

Atomic units throughout (hbar = m = 1). An electron of speed v has wave
number k = v, wavelength 2*pi/v, angular frequency omega = v**2/2 and
frequency nu = v**2/(4*pi). The mass density oscillates as

    rho(z, t) = rho0 * cos(k z - omega t)**2

and the internal field energy density fills the gap,

    S(z, t) = S0 * sin(k z - omega t)**2,   S0 = rho0,

so that rho + S = rho0 everywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ga3 import E3, I, Multivector, grade_project

__all__ = [
    "WaveState",
    "FieldAmplitudes",
    "field_amplitudes",
    "phase",
    "density",
    "field_intensity",
    "density_amplitude",
    "field_amplitude",
    "wavefunction",
    "schrodinger_wavefunction",
    "energy_components",
    "total_energy_density",
    "current_density",
    "current_density_fd",
    "group_velocity",
    "hartree_potential",
    "cohesive_potential",
    "wigner_seitz_radius",
]


@dataclass(frozen=True)
class WaveState:
    """Parameters of a free electron wave.

    ``tilt`` is the angle between the velocity and its projection on the
    field plane; it is only read by :mod:`spin_dynamics`.
    """

    v: float = 1.0
    rho0: float = 1.0
    direction: Multivector = field(default=E3)
    helicity: int = 1
    tilt: float = math.pi / 4

    def __post_init__(self):
        if not self.rho0 > 0:
            raise ValueError(f"rho0 must be positive, got {self.rho0!r}")
        if not self.v >= 0:
            raise ValueError(f"speed must be non-negative, got {self.v!r}")
        if self.helicity not in (1, -1):
            raise ValueError("helicity must be +1 or -1")
        d = self.direction
        if not d.is_grade(1, atol=1e-12) or abs(d.norm() - 1.0) > 1e-10:
            raise ValueError("direction must be a unit vector")

    @property
    def k(self) -> float:
        return self.v

    @property
    def omega(self) -> float:
        return 0.5 * self.v * self.v

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.v if self.v > 0 else math.inf

    @property
    def frequency(self) -> float:
        return self.v * self.v / (4.0 * math.pi)

    @property
    def period(self) -> float:
        return 1.0 / self.frequency if self.v > 0 else math.inf

    @property
    def S0(self) -> float:
        return self.rho0 if self.v > 0 else 0.0

    def with_speed(self, v: float) -> "WaveState":
        return WaveState(v=v, rho0=self.rho0, direction=self.direction,
                         helicity=self.helicity, tilt=self.tilt)


@dataclass(frozen=True)
class FieldAmplitudes:
    E0: float
    H0: float
    phase: float = math.pi / 2

    @property
    def S0(self) -> float:
        return self.E0 * self.H0


def field_amplitudes(state: WaveState) -> FieldAmplitudes:
    # only the product E0*H0 = S0 is fixed; split evenly
    a = math.sqrt(state.S0)
    return FieldAmplitudes(E0=a, H0=a)


def phase(state: WaveState, z, t):
    return state.k * np.asarray(z, dtype=float) - state.omega * np.asarray(t, dtype=float)


def density(state: WaveState, z, t):
    return state.rho0 * np.cos(phase(state, z, t)) ** 2


def field_intensity(state: WaveState, z, t):
    return state.S0 * np.sin(phase(state, z, t)) ** 2


def density_amplitude(state: WaveState, z, t):
    """Signed rho**(1/2), i.e. sqrt(rho0) cos(phase)."""
    return math.sqrt(state.rho0) * np.cos(phase(state, z, t))


def field_amplitude(state: WaveState, z, t):
    """Signed S**(1/2), i.e. sqrt(S0) sin(phase)."""
    return math.sqrt(state.S0) * np.sin(phase(state, z, t))


def wavefunction(state: WaveState, z: float, t: float) -> Multivector:
    """Multivector wavefunction rho^(1/2) + h S^(1/2) (i d).

    ``i d`` is the bivector normal to the direction of motion d (e1e2 for
    d = e3) and h is the helicity; flipping h gives the reverse of psi.
    """
    plane = grade_project(I * state.direction, 2)
    a = float(density_amplitude(state, z, t))
    b = float(field_amplitude(state, z, t))
    return a + (state.helicity * b) * plane


def schrodinger_wavefunction(state: WaveState, z, t):
    return math.sqrt(state.rho0) * np.exp(1j * phase(state, z, t))


def energy_components(state: WaveState, z, t):
    """(kinetic, field) energy densities; their sum is rho0 v^2 / 2."""
    c2 = np.cos(phase(state, z, t)) ** 2
    s2 = np.sin(phase(state, z, t)) ** 2
    q = 0.25 * state.rho0 * state.v ** 2
    kinetic = q * (1.0 + 2.0 * c2 - 1.0)
    # field amplitude fixed by E0^2/2 + H0^2/2 = rho0 v^2 / 2
    fields = 2.0 * q * s2
    return kinetic, fields


def total_energy_density(state: WaveState, z, t):
    kinetic, fields = energy_components(state, z, t)
    return kinetic + fields


def current_density(state: WaveState, z=0.0, t=0.0) -> Multivector:
    """J = (1/2i)(psi* grad psi - psi grad psi*) with analytic gradients.

    Reduces to rho^(1/2) grad S^(1/2) - S^(1/2) grad rho^(1/2) along the
    direction of motion, which is rho0 v for every (z, t).
    """
    ph = float(phase(state, z, t))
    amp = math.sqrt(state.rho0)
    rho_h, s_h = amp * math.cos(ph), amp * math.sin(ph)
    d_rho_h, d_s_h = -state.k * s_h, state.k * rho_h
    magnitude = rho_h * d_s_h - s_h * d_rho_h
    return magnitude * state.direction


def current_density_fd(psi_samples, h: float):
    """Current along the grid axis from sampled complex psi by central differences.

    Returns Im(conj(psi) dpsi/dz) at the interior points.
    """
    psi = np.asarray(psi_samples, dtype=complex)
    if psi.shape[0] < 3:
        raise ValueError("need at least three samples for a central difference")
    dpsi = (psi[2:] - psi[:-2]) / (2.0 * h)
    return np.imag(np.conj(psi[1:-1]) * dpsi)


def group_velocity(state: WaveState, dk: float = 1e-4) -> float:
    """d(omega)/dk by a central difference over neighbouring wave states."""
    lo = state.with_speed(max(state.k - dk, 0.0))
    hi = state.with_speed(state.k + dk)
    return (hi.omega - lo.omega) / (hi.k - lo.k)


def hartree_potential(rs: float) -> float:
    """Self-repulsion 3/(5 rs) of one electron spread over a sphere of radius rs."""
    if not rs > 0:
        raise ValueError(f"Wigner-Seitz radius must be positive, got {rs!r}")
    return 3.0 / (5.0 * rs)


def cohesive_potential(rs: float) -> float:
    """Attractive potential -3/(5 rs) that cancels the Hartree self-repulsion."""
    return -hartree_potential(rs)


def wigner_seitz_radius(rho):
    """(3 / (4 pi rho))^(1/3); infinite where rho = 0."""
    rho = np.asarray(rho, dtype=float)
    with np.errstate(divide="ignore"):
        return np.cbrt(3.0 / (4.0 * math.pi * rho))

