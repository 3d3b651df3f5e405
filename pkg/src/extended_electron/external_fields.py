"""Extended electron in electrostatic, vector and dynamic electromagnetic fields.

* An electrostatic potential phi lowers the wave frequency, omega -> omega0 - phi,
  at fixed wavelength.
* A region-constant vector potential A changes the wave number,
  k -> k0 - A, at fixed frequency. Two paths with opposite A interfere with
  modulation cos((z1 - z0) A).
* A photon pulse S0(t) sin^2(phi0 - 2 pi nu t) is absorbed at a point until
  the local mass density has been converted completely into field energy.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .electron_wave import WaveState, schrodinger_wavefunction
from .ga3 import I, Multivector, grade_project, scalar, vector

__all__ = [
    "PotentialEnvironment",
    "PhotonPulse",
    "AbsorptionResult",
    "AbsorptionIncomplete",
    "shifted_frequency",
    "photoelectron_speed",
    "wavefunction_in_potential",
    "schrodinger_residual",
    "box_superposition",
    "shifted_wavevector",
    "vector_potential_wavefunction",
    "ab_superposition",
    "ab_intensity_scan",
    "vector_schrodinger_residual",
    "vector_potential_laplacian_factor",
    "newton_acceleration",
    "lorentz_acceleration",
    "absorb_photon",
    "post_absorption_density",
]


@dataclass(frozen=True)
class PotentialEnvironment:
    phi: float = 0.0
    A: Multivector = field(default_factory=lambda: vector(0.0, 0.0, 0.0))
    region: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        z0, z1 = self.region
        if z1 < z0:
            raise ValueError("region must satisfy z1 >= z0")


# electrostatic potential -------------------------------------------------

def shifted_frequency(omega0: float, phi: float) -> float:
    return omega0 - phi


def photoelectron_speed(omega_ph: float, phi_m: float) -> float:
    """Speed of an electron emitted with v^2/2 = omega_ph - phi_m."""
    omega = shifted_frequency(omega_ph, phi_m)
    if omega < 0:
        raise ValueError("photon frequency below the work function: no emission")
    return math.sqrt(2.0 * omega)


def wavefunction_in_potential(state: WaveState, phi: float, z, t):
    """sqrt(rho0) exp i[k z - (omega0 - phi) t]; wavelength unchanged."""
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    omega = shifted_frequency(state.omega, phi)
    return math.sqrt(state.rho0) * np.exp(1j * (state.k * z - omega * t))


def schrodinger_residual(psi_of: Callable, V, z, t: float, h: float, dt: float) -> float:
    """Max-norm of i dpsi/dt - [-1/2 d2/dz2 + V] psi with central differences.

    ``psi_of(z, t)`` is sampled on ``z - h, z, z + h`` and ``t - dt, t + dt``.
    """
    z = np.asarray(z, dtype=float)
    dpsi_dt = (psi_of(z, t + dt) - psi_of(z, t - dt)) / (2.0 * dt)
    psi = psi_of(z, t)
    d2psi = (psi_of(z + h, t) - 2.0 * psi + psi_of(z - h, t)) / (h * h)
    r = 1j * dpsi_dt - (-0.5 * d2psi + np.asarray(V) * psi)
    return float(np.max(np.abs(r)))


def box_superposition(rho0: float, L: float, n: int, z, t):
    """Left and right travellers in a well of length L with k = 2 pi n / L.

    Returns ``(psi_plus, psi_minus, psi_sum)``. The travellers share the time
    factor exp(-i omega t); ``psi_sum`` is their mean with that common phase
    removed, the real standing amplitude sqrt(rho0) cos(k z).
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or np.any(z > L):
        raise ValueError("z must lie inside the well [0, L]")
    t = np.asarray(t, dtype=float)
    k = 2.0 * math.pi * n / L
    omega = 0.5 * k * k
    amp = math.sqrt(rho0)
    psi_plus = amp * np.exp(1j * (k * z - omega * t))
    psi_minus = amp * np.exp(1j * (-k * z - omega * t))
    psi_sum = 0.5 * (psi_plus + psi_minus) * np.exp(1j * omega * t)
    # the mean is real up to rounding in the exponentials
    return psi_plus, psi_minus, psi_sum.real + 0j


# vector potential --------------------------------------------------------

def shifted_wavevector(k0: float, A_parallel: float) -> float:
    """k(A) = k0 - A for the (negatively charged) electron."""
    return k0 - A_parallel


def vector_potential_wavefunction(state: WaveState, A_parallel: float, z, t):
    """Free wave after a region of constant A along the direction of motion."""
    k = shifted_wavevector(state.k, A_parallel)
    return math.sqrt(state.rho0) * np.exp(1j * (k * np.asarray(z) - state.omega * np.asarray(t)))


def ab_superposition(state: WaveState, A: float, z0: float, z1: float, z, t):
    """Mean of the two partial waves that crossed [z0, z1] with potentials +A and -A."""
    z = np.asarray(z, dtype=float)
    if np.any(z < z1):
        raise ValueError("the detector point must lie beyond the field region (z >= z1)")
    base = schrodinger_wavefunction(state, z, t)
    shift = (z1 - z0) * A
    psi_plus = base * np.exp(-1j * shift)
    psi_minus = base * np.exp(1j * shift)
    return 0.5 * (psi_plus + psi_minus)


def ab_intensity_scan(state: WaveState, A_values, z0: float, z1: float,
                      z: float | None = None, t: float = 0.0):
    """|psi|^2 at a detector point beyond the region for each A in ``A_values``."""
    A_values = np.asarray(A_values, dtype=float)
    z = z1 if z is None else z
    return np.array([abs(complex(ab_superposition(state, a, z0, z1, z, t))) ** 2
                     for a in A_values])


def _directions(ndim: int) -> np.ndarray:
    if ndim == 1:
        return np.array([[0.0, 0.0, 1.0]])
    return np.eye(3)[:ndim]


def vector_schrodinger_residual(psi_samples, A, V, h, dt: float) -> float:
    """Max-norm residual of i dpsi/dt = 1/2 (i grad - A)^2 psi + V psi.

    ``psi_samples`` has shape ``(3, n1[, n2[, n3]])``: the field on a uniform
    grid at times t - dt, t, t + dt. A 1-D grid runs along e3, 2-D and 3-D
    grids along (e1, e2[, e3]). ``A`` is a constant vector. The residual is
    evaluated on interior points with second-order central differences, using

        (i grad - A)^2 psi = -lap psi - 2 i A.grad psi + |A|^2 psi.
    """
    psi = np.asarray(psi_samples, dtype=complex)
    if psi.shape[0] != 3:
        raise ValueError("need three time levels (t - dt, t, t + dt)")
    ndim = psi.ndim - 1
    if ndim < 1 or ndim > 3:
        raise ValueError("grid must have 1 to 3 dimensions")
    if any(n < 3 for n in psi.shape[1:]):
        raise ValueError("grid too small for a three-point stencil")
    h = np.broadcast_to(np.asarray(h, dtype=float), (ndim,))
    A = A.vector_part if isinstance(A, Multivector) else np.asarray(A, dtype=float).reshape(3)
    dirs = _directions(ndim)

    mid = psi[1]
    inner_sl = tuple(slice(1, -1) for _ in range(ndim))
    lap = np.zeros(mid[inner_sl].shape, dtype=complex)
    a_grad = np.zeros_like(lap)
    for ax in range(ndim):
        fwd = tuple(slice(2, None) if a == ax else slice(1, -1) for a in range(ndim))
        bwd = tuple(slice(None, -2) if a == ax else slice(1, -1) for a in range(ndim))
        lap += (mid[fwd] - 2.0 * mid[inner_sl] + mid[bwd]) / h[ax] ** 2
        a_grad += float(A @ dirs[ax]) * (mid[fwd] - mid[bwd]) / (2.0 * h[ax])
    c = mid[inner_sl]
    V = np.asarray(V, dtype=float)
    if V.ndim:
        V = V[inner_sl]
    dpsi_dt = (psi[2][inner_sl] - psi[0][inner_sl]) / (2.0 * dt)
    rhs = 0.5 * (-lap - 2j * a_grad + float(A @ A) * c) + V * c
    return float(np.max(np.abs(1j * dpsi_dt - rhs)))


def vector_potential_laplacian_factor(k, A) -> Multivector:
    """-(k - iA)^2 in the algebra, with A read as the bivector iA.

    The scalar part is -k^2 + A^2; the cross terms -(kA + Ak) carry the
    pseudoscalar and appear as 2 (k.A) i.
    """
    kv = k if isinstance(k, Multivector) else vector(k)
    Av = A if isinstance(A, Multivector) else vector(A)
    q = kv - I * Av
    return -(q * q)


# forces ------------------------------------------------------------------

def newton_acceleration(rho0: float, grad_phi) -> Multivector:
    """dv/dt = -grad(phi) / rho0; internal rho/S exchange drops out."""
    if not rho0 > 0:
        raise ValueError("rho0 must be positive")
    g = grad_phi if isinstance(grad_phi, Multivector) else vector(grad_phi)
    return -g / rho0


def lorentz_acceleration(E, B, v) -> Multivector:
    """Grade-1 part of F (1 + v) with the Faraday multivector F = E + iB.

    Equals E + v x B.
    """
    E = E if isinstance(E, Multivector) else vector(E)
    B = B if isinstance(B, Multivector) else vector(B)
    v = v if isinstance(v, Multivector) else vector(v)
    F = E + I * B
    return grade_project(F * (scalar(1.0) + v), 1)


# photon absorption -------------------------------------------------------

@dataclass(frozen=True)
class PhotonPulse:
    """Photon field S_em(z, t) = S0(t) sin^2(2 pi z / lambda - 2 pi nu t)."""

    S0_of_t: Callable[[float], float]
    wavelength: float
    frequency: float

    def amplitude(self, t):
        return self.S0_of_t(t)


@dataclass
class AbsorptionResult:
    final: WaveState
    t_final: float
    phase_final: float  # phi0 - 2 pi nu t_f reduced into (-pi/2, pi/2]
    times: np.ndarray
    rho_el: np.ndarray
    S_el: np.ndarray
    rho0: float
    wavelength: float

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "rho_el", "S_el"])
            for row in zip(self.times, self.rho_el, self.S_el):
                w.writerow([repr(float(x)) for x in row])


class AbsorptionIncomplete(RuntimeError):
    """The pulse never reached S0 = rho0 within the integration window."""

    def __init__(self, max_amplitude: float, rho0: float, t_end: float):
        self.max_amplitude = max_amplitude
        self.rho0 = rho0
        self.t_end = t_end
        super().__init__(
            f"pulse amplitude peaked at {max_amplitude:.6g} < rho0 = {rho0:.6g} "
            f"before t = {t_end:.6g}; absorption incomplete")


def _reduce_half_pi(x: float) -> float:
    # representative of x modulo pi in (-pi/2, pi/2]
    r = math.remainder(x, math.pi)
    return math.pi / 2 if abs(r + math.pi / 2) < 1e-12 else r


def absorb_photon(state0: WaveState, pulse: PhotonPulse, z0: float = 0.0,
                  periods: float = 64.0, steps_per_period: int = 1024) -> AbsorptionResult:
    """Absorb ``pulse`` at ``z0`` until the local mass density reaches zero.

    The density follows d rho_el = -d S_em with rho_el(0) = rho0, stepped
    with dt = 1/(nu * steps_per_period); field amplitude beyond rho0 is not
    taken up. Absorption ends at the first t_f with S0(t_f) = rho0 and
    phi0 - 2 pi nu t_f = pi/2 (mod pi), found exactly. The returned state
    has gained omega = 2 pi nu, i.e. v^2/2 = omega0 + 2 pi nu.
    """
    rho0 = state0.rho0
    nu = pulse.frequency
    if not nu > 0:
        raise ValueError("pulse frequency must be positive")
    phi0 = 2.0 * math.pi * z0 / pulse.wavelength
    dt = 1.0 / (nu * steps_per_period)
    n_max = int(round(periods * steps_per_period))
    grid = dt * np.arange(n_max + 1)
    amp = np.array([min(float(pulse.S0_of_t(t)), rho0) for t in grid])

    full = np.nonzero(amp >= rho0)[0]
    if full.size == 0:
        raise AbsorptionIncomplete(float(amp.max()), rho0, float(grid[-1]))
    j = int(full[0])
    if j == 0:
        t_sat = 0.0
    else:
        t_sat = brentq(lambda t: float(pulse.S0_of_t(t)) - rho0, grid[j - 1], grid[j],
                       xtol=1e-15, rtol=4 * np.finfo(float).eps)
    # smallest t >= t_sat with phi0 - 2 pi nu t = pi/2 - m pi
    m = math.ceil((2.0 * math.pi * nu * t_sat - phi0 + math.pi / 2) / math.pi)
    t_f = (phi0 - math.pi / 2 + m * math.pi) / (2.0 * math.pi * nu)
    if t_f < t_sat:
        t_f += 1.0 / (2.0 * nu)
    if t_f > grid[-1]:
        raise AbsorptionIncomplete(float(amp.max()), rho0, float(grid[-1]))

    times = np.append(grid[grid < t_f], t_f)
    S_em = np.array([min(float(pulse.S0_of_t(t)), rho0) for t in times])
    S_em *= np.sin(phi0 - 2.0 * math.pi * nu * times) ** 2
    S_em[-1] = min(float(pulse.S0_of_t(t_f)), rho0)
    # explicit Euler on d rho_el = -d S_em; increments telescope exactly
    rho_el = np.empty_like(times)
    rho_el[0] = rho0 - S_em[0]
    for n in range(1, len(times)):
        rho_el[n] = rho_el[n - 1] - (S_em[n] - S_em[n - 1])
    S_el = rho0 - rho_el

    omega = state0.omega + 2.0 * math.pi * nu
    final = state0.with_speed(math.sqrt(2.0 * omega))
    return AbsorptionResult(final=final, t_final=t_f,
                            phase_final=_reduce_half_pi(phi0 - 2.0 * math.pi * nu * t_f),
                            times=times, rho_el=rho_el, S_el=S_el, rho0=rho0,
                            wavelength=pulse.wavelength)


def post_absorption_density(result: AbsorptionResult, dz):
    """rho_el(z0 + dz, t_f) = S0(z0) - S0(z0 + dz) sin^2(pi/2 + 2 pi dz / lambda).

    Evaluated with S0(z0 + dz) ~ S0(z0) = rho0.
    """
    dz = np.asarray(dz, dtype=float)
    s0 = result.rho0
    return s0 - s0 * np.sin(math.pi / 2 + 2.0 * math.pi * dz / result.wavelength) ** 2
