"""Hydrogen eigenfunctions split into density and field components.

Writing psi_nlm = U_nlm(r, theta) exp(i m phi) with real U gives

    rho^(1/2) = U cos(m phi),   S^(1/2) = U sin(m phi),   rho + S = U^2,

so states with m != 0 carry field energy. Spin enters through a multivector
built on the local spherical frame (e_r, e_theta, e_phi).

Standard conventions: psi ~ (2r/n)^l exp(-r/n) L^(2l+1)_(n-l-1)(2r/n) Y_lm
in atomic units with Condon-Shortley phases in P_l^m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .ga3 import I, ONE, Multivector, vector

__all__ = [
    "QuantumNumbers",
    "TwoCenterGeometry",
    "MAX_N",
    "assoc_laguerre",
    "assoc_legendre",
    "normalization_constant",
    "radial_function",
    "angular_amplitude",
    "U_nlm",
    "hydrogen_wavefunction",
    "hydrogen_wavefunction_cartesian",
    "bohr_energy",
    "local_energy",
    "decompose_density_field",
    "spherical_frame",
    "spin_multivector_solution",
    "h2_ground_density_sqrt",
    "h2_spin_bracket",
    "h2_spin_wavefunction",
    "slater_determinant_2",
    "h2_singlet",
]

MAX_N = 10


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int
    m: int
    spin_sign: int = 1

    def __post_init__(self):
        for name in ("n", "l", "m", "spin_sign"):
            if int(getattr(self, name)) != getattr(self, name):
                raise ValueError(f"{name} must be an integer")
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n must lie in 1..{MAX_N}, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"l must lie in 0..n-1, got l={self.l} for n={self.n}")
        if abs(self.m) > self.l:
            raise ValueError(f"|m| must not exceed l, got m={self.m} for l={self.l}")
        if self.spin_sign not in (1, -1):
            raise ValueError("spin_sign must be +1 or -1")


@dataclass(frozen=True)
class TwoCenterGeometry:
    R1: Multivector = field(default_factory=lambda: vector(0.0, 0.0, -0.7))
    R2: Multivector = field(default_factory=lambda: vector(0.0, 0.0, 0.7))

    def __post_init__(self):
        if not (self.R1.is_grade(1, 1e-12) and self.R2.is_grade(1, 1e-12)):
            raise ValueError("nuclear positions must be vectors")
        if np.allclose(self.R1.vector_part, self.R2.vector_part, rtol=0.0, atol=1e-12):
            raise ValueError("the two nuclei must not coincide")

    @property
    def bond_length(self) -> float:
        return float(np.linalg.norm(self.R2.vector_part - self.R1.vector_part))


# special functions --------------------------------------------------------

def assoc_laguerre(k: int, alpha: float, x):
    """Generalized Laguerre polynomial L_k^alpha(x) by upward recurrence."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 1.0 + alpha - x
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def assoc_legendre(l: int, m: int, x):
    """P_l^m(x) with the Condon-Shortley phase, for -l <= m <= l.

    Built from P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2) and the upward recurrence
    in degree.
    """
    if l < 0 or abs(m) > l:
        raise ValueError(f"need 0 <= |m| <= l, got l={l}, m={m}")
    x = np.asarray(x, dtype=float)
    if m < 0:
        mm = -m
        scale = (-1) ** mm * math.factorial(l - mm) / math.factorial(l + mm)
        return scale * assoc_legendre(l, mm, x)
    somx2 = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.ones_like(x)
    for j in range(1, m + 1):
        pmm = -pmm * (2 * j - 1) * somx2
    if l == m:
        return pmm
    pm1 = x * (2 * m + 1) * pmm
    for ll in range(m + 2, l + 1):
        pmm, pm1 = pm1, (x * (2 * ll - 1) * pm1 - (ll + m - 1) * pmm) / (ll - m)
    return pm1


# eigenfunctions -----------------------------------------------------------

def normalization_constant(qn: QuantumNumbers) -> float:
    """C_nlm making the full 3-D integral of |psi|^2 equal to one."""
    # signed m: P_l^(-m) already carries the (l-m)!/(l+m)! rescale
    n, l, m = qn.n, qn.l, qn.m
    radial = math.sqrt((2.0 / n) ** 3 * math.factorial(n - l - 1)
                       / (2.0 * n * math.factorial(n + l)))
    angular = math.sqrt((2 * l + 1) / (4.0 * math.pi)
                        * math.factorial(l - m) / math.factorial(l + m))
    return radial * angular


def radial_function(n: int, l: int, r):
    """Unnormalised radial shape (2r/n)^l exp(-r/n) L^(2l+1)_(n-l-1)(2r/n)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    rho = 2.0 * r / n
    return rho ** l * np.exp(-r / n) * assoc_laguerre(n - l - 1, 2 * l + 1, rho)


def angular_amplitude(l: int, m: int, theta):
    return assoc_legendre(l, m, np.cos(np.asarray(theta, dtype=float)))


def U_nlm(qn: QuantumNumbers, r, theta):
    """Real amplitude U with psi_nlm = U exp(i m phi)."""
    return (normalization_constant(qn) * radial_function(qn.n, qn.l, r)
            * angular_amplitude(qn.l, qn.m, theta))


def hydrogen_wavefunction(qn: QuantumNumbers, r, theta, phi):
    return U_nlm(qn, r, theta) * np.exp(1j * qn.m * np.asarray(phi, dtype=float))


def _to_spherical(x, y, z):
    r = np.sqrt(x * x + y * y + z * z)
    theta = np.arccos(np.clip(np.divide(z, r, out=np.ones_like(r), where=r > 0), -1.0, 1.0))
    phi = np.arctan2(y, x)
    return r, theta, phi


def hydrogen_wavefunction_cartesian(qn: QuantumNumbers, x, y, z):
    x, y, z = (np.asarray(c, dtype=float) for c in np.broadcast_arrays(x, y, z))
    return hydrogen_wavefunction(qn, *_to_spherical(x, y, z))


def bohr_energy(n: int) -> float:
    return -0.5 / (n * n)


def local_energy(qn: QuantumNumbers, point, h: float) -> complex:
    """[-1/2 lap - 1/r] psi / psi at ``point`` with the 7-point Cartesian stencil.

    The point must avoid the nucleus and the nodes of psi. The error is
    O(h^2) relative to the eigenvalue -1/(2 n^2).
    """
    p = np.asarray(point, dtype=float).reshape(3)
    r = float(np.linalg.norm(p))
    if r <= 3.0 * h:
        raise ValueError("stencil reaches the nucleus; move the point or reduce h")
    offsets = np.vstack([np.zeros(3), np.eye(3) * h, -np.eye(3) * h])
    pts = p + offsets
    vals = hydrogen_wavefunction_cartesian(qn, pts[:, 0], pts[:, 1], pts[:, 2])
    centre = vals[0]
    if abs(centre) < 1e-10:
        raise ValueError("psi vanishes at the point; local energy undefined")
    lap = (vals[1:4].sum() + vals[4:7].sum() - 6.0 * centre) / (h * h)
    return complex((-0.5 * lap - centre / r) / centre)


# density / field decomposition --------------------------------------------

def decompose_density_field(qn: QuantumNumbers, r, theta, phi):
    """(rho_half, S_half) = (U cos(m phi), U sin(m phi))."""
    U = U_nlm(qn, r, theta)
    mp = qn.m * np.asarray(phi, dtype=float)
    return U * np.cos(mp), U * np.sin(mp)


def spherical_frame(point, atol: float = 1e-12):
    """Unit vectors (e_r, e_theta, e_phi) at a Cartesian point.

    Raises ValueError at the origin and on the polar axis, where the frame
    is undefined.
    """
    x, y, z = np.asarray(point.vector_part if isinstance(point, Multivector) else point,
                         dtype=float).reshape(3)
    r = math.sqrt(x * x + y * y + z * z)
    rho = math.hypot(x, y)
    if r <= atol or rho <= atol * max(r, 1.0):
        raise ValueError("spherical frame undefined at the origin or on the polar axis")
    st, ct = rho / r, z / r
    sp, cp = y / rho, x / rho
    e_r = vector(st * cp, st * sp, ct)
    e_theta = vector(ct * cp, ct * sp, -st)
    e_phi = vector(-sp, cp, 0.0)
    return e_r, e_theta, e_phi


def spin_multivector_solution(qn: QuantumNumbers, point) -> Multivector:
    """(U/sqrt2) {cos m phi + i[(e_phi -+ e_theta) sin m phi -+ e_r cos m phi]}.

    The upper sign is taken for ``qn.spin_sign = +1``. The reverse of the
    result times itself is the scalar U^2.
    """
    e_r, e_theta, e_phi = spherical_frame(point)
    p = np.asarray(point.vector_part if isinstance(point, Multivector) else point, dtype=float)
    r, theta, phi = _to_spherical(*p)
    U = float(U_nlm(qn, r, theta))
    s = qn.spin_sign
    c, sn = math.cos(qn.m * phi), math.sin(qn.m * phi)
    w = sn * (e_phi - s * e_theta) - s * c * e_r
    return (U / math.sqrt(2.0)) * (c * ONE + I * w)


# H2 ----------------------------------------------------------------------

def _psi_100(d):
    return np.exp(-np.asarray(d, dtype=float)) / math.sqrt(math.pi)


def h2_ground_density_sqrt(geom: TwoCenterGeometry, r) -> float:
    """psi_100(|r - R1|) psi_100(|r - R2|)."""
    p = r.vector_part if isinstance(r, Multivector) else np.asarray(r, dtype=float).reshape(3)
    d1 = np.linalg.norm(p - geom.R1.vector_part)
    d2 = np.linalg.norm(p - geom.R2.vector_part)
    return float(_psi_100(d1) * _psi_100(d2))


def _radial_unit(p: np.ndarray, centre: np.ndarray) -> Multivector:
    d = p - centre
    n = float(np.linalg.norm(d))
    if n < 1e-12:
        raise ValueError("point coincides with a nucleus; radial direction undefined")
    return vector(d / n)


def h2_spin_bracket(e1: Multivector, e2: Multivector) -> Multivector:
    """(1 + i e1)(1 - i e2) - (1 - i e1)(1 + i e2), kept as the literal difference."""
    a = (ONE + I * e1) * (ONE - I * e2)
    b = (ONE - I * e1) * (ONE + I * e2)
    return a - b


def h2_spin_wavefunction(geom: TwoCenterGeometry, r) -> Multivector:
    p = r.vector_part if isinstance(r, Multivector) else np.asarray(r, dtype=float).reshape(3)
    er1 = _radial_unit(p, geom.R1.vector_part)
    er2 = _radial_unit(p, geom.R2.vector_part)
    return 0.5 * h2_ground_density_sqrt(geom, p) * h2_spin_bracket(er1, er2)


def slater_determinant_2(orb1: Callable, orb2: Callable, x1, x2):
    """det [[orb1(x1), orb2(x1)], [orb1(x2), orb2(x2)]]."""
    return orb1(x1) * orb2(x2) - orb1(x2) * orb2(x1)


def h2_singlet(x1, x2, spatial: Callable | None = None) -> float:
    """Two-electron singlet from one spatial orbital and the spins alpha, beta.

    Each coordinate is ``(position, sigma)`` with sigma = +1 (alpha) or -1
    (beta). The default spatial orbital is the 1s function at the origin.
    """
    if spatial is None:
        def spatial(p):
            return float(_psi_100(np.linalg.norm(np.asarray(p, dtype=float))))

    def alpha_orbital(x):
        pos, sigma = x
        return spatial(pos) * (1.0 if sigma == 1 else 0.0)

    def beta_orbital(x):
        pos, sigma = x
        return spatial(pos) * (1.0 if sigma == -1 else 0.0)

    for _, sigma in (x1, x2):
        if sigma not in (1, -1):
            raise ValueError("spin label must be +1 or -1")
    return slater_determinant_2(alpha_orbital, beta_orbital, x1, x2)
