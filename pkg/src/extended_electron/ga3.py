"""Dense arithmetic in the geometric algebra of Euclidean 3-space, Cl(3,0).

Coefficients are stored in the fixed blade order

    1, e1, e2, e3, e1e2, e2e3, e3e1, e1e2e3

with a right-handed frame, so that e1e2 = i e3, e2e3 = i e1 and
e3e1 = i e2 for the pseudoscalar i = e1e2e3.

Rotation orientation: ``rotor_exp(e1e2, theta)`` rotates e1 toward e2 for
theta > 0. Every spin-precession sign in the package follows from this.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = [
    "BLADES",
    "GRADES",
    "GradeError",
    "Multivector",
    "Rotor",
    "scalar",
    "vector",
    "bivector",
    "pseudoscalar",
    "E1",
    "E2",
    "E3",
    "E12",
    "E23",
    "E31",
    "I",
    "ONE",
    "geometric_product",
    "wedge",
    "inner",
    "cross",
    "reverse",
    "grade_project",
    "rotor_exp",
    "rotate_vector",
]

BLADES = ("1", "e1", "e2", "e3", "e1e2", "e2e3", "e3e1", "e1e2e3")
GRADES = np.array([0, 1, 1, 1, 2, 2, 2, 3])

UNIT_TOL = 1e-10

# bitmask of each stored blade and its sign relative to the ascending-index
# canonical blade (e3e1 = -e1e3)
_MASKS = (0b000, 0b001, 0b010, 0b100, 0b011, 0b110, 0b101, 0b111)
_ORIENT = (1, 1, 1, 1, 1, 1, -1, 1)
_INDEX = {m: k for k, m in enumerate(_MASKS)}


def _reorder_sign(a: int, b: int) -> int:
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _build_tables() -> tuple[np.ndarray, np.ndarray]:
    gp = np.zeros((8, 8, 8))
    outer = np.zeros((8, 8, 8))
    for i, mi in enumerate(_MASKS):
        for j, mj in enumerate(_MASKS):
            mk = mi ^ mj
            k = _INDEX[mk]
            sign = _ORIENT[i] * _ORIENT[j] * _ORIENT[k] * _reorder_sign(mi, mj)
            gp[i, j, k] = sign
            if mi & mj == 0:
                outer[i, j, k] = sign
    return gp, outer


_GP, _OUTER = _build_tables()
_REVERSE_SIGN = np.array([1, 1, 1, 1, -1, -1, -1, -1], dtype=float)


class GradeError(ValueError):
    """Raised when an operation receives a multivector of the wrong grade."""


class Multivector:
    """Immutable element of Cl(3,0) with eight real coefficients.

    Supports ``+``, ``-``, scalar ``*``, geometric product ``*``, outer
    product ``^`` and reversion ``~``.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients=None):
        if coefficients is None:
            c = np.zeros(8)
        else:
            c = np.array(coefficients, dtype=float).reshape(-1)
            if c.shape != (8,):
                raise ValueError(f"a multivector needs 8 coefficients, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @property
    def coefficients(self) -> np.ndarray:
        return self._c

    def __getitem__(self, blade):
        if isinstance(blade, str):
            blade = BLADES.index(blade)
        return float(self._c[blade])

    # grade helpers ---------------------------------------------------------

    @property
    def scalar_part(self) -> float:
        return float(self._c[0])

    @property
    def vector_part(self) -> np.ndarray:
        return self._c[1:4].copy()

    @property
    def bivector_part(self) -> np.ndarray:
        """(e2e3, e3e1, e1e2) coefficients, i.e. the dual vector of the bivector."""
        return np.array([self._c[5], self._c[6], self._c[4]])

    @property
    def pseudoscalar_part(self) -> float:
        return float(self._c[7])

    def grades(self, atol: float = 0.0) -> set[int]:
        return {int(g) for g in GRADES[np.abs(self._c) > atol]}

    def is_grade(self, k: int, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self._c[GRADES != k]) <= atol))

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector, equal to sqrt(<a~a>_0)."""
        return float(np.sqrt(np.dot(self._c, self._c)))

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self._c, _as_mv(other)._c, rtol=0.0, atol=atol))

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        return Multivector(self._c + _as_mv(other)._c)

    __radd__ = __add__

    def __sub__(self, other):
        return Multivector(self._c - _as_mv(other)._c)

    def __rsub__(self, other):
        return Multivector(_as_mv(other)._c - self._c)

    def __neg__(self):
        return Multivector(-self._c)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return Multivector(self._c * float(other))

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(other, self)
        return Multivector(self._c * float(other))

    def __truediv__(self, other):
        return Multivector(self._c / float(other))

    def __xor__(self, other):
        return wedge(self, _as_mv(other))

    def __invert__(self):
        return reverse(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        terms = [f"{c:+.6g}{'' if b == '1' else '*' + b}" for c, b in zip(self._c, BLADES) if c != 0.0]
        return f"Multivector({' '.join(terms) if terms else '0'})"


def _as_mv(x) -> Multivector:
    if isinstance(x, Multivector):
        return x
    return scalar(float(x))


class Rotor(Multivector):
    """Even, unit multivector acting on vectors by ``R v ~R``."""

    __slots__ = ()

    def __init__(self, coefficients, atol: float = UNIT_TOL):
        super().__init__(coefficients)
        c = self._c
        if np.any(np.abs(c[GRADES % 2 == 1]) > atol):
            raise GradeError("a rotor has only grade-0 and grade-2 parts")
        if abs(float(np.dot(c, c)) - 1.0) > atol:
            raise ValueError(f"rotor is not unit: R~R = {float(np.dot(c, c))!r}")

    def __mul__(self, other):
        out = super().__mul__(other)
        if isinstance(other, Rotor):
            return Rotor(out.coefficients)
        return out

    @classmethod
    def identity(cls) -> "Rotor":
        return cls([1, 0, 0, 0, 0, 0, 0, 0])


def scalar(a: float) -> Multivector:
    return Multivector([a, 0, 0, 0, 0, 0, 0, 0])


def vector(x, y=None, z=None) -> Multivector:
    """Grade-1 element from three components or a length-3 sequence."""
    if y is None and z is None:
        x, y, z = np.asarray(x, dtype=float).reshape(3)
    return Multivector([0, x, y, z, 0, 0, 0, 0])


def bivector(b23, b31, b12) -> Multivector:
    """Grade-2 element b23 e2e3 + b31 e3e1 + b12 e1e2 (dual to the vector (b23, b31, b12))."""
    return Multivector([0, 0, 0, 0, b12, b23, b31, 0])


def pseudoscalar(a: float) -> Multivector:
    return Multivector([0, 0, 0, 0, 0, 0, 0, a])


ONE = scalar(1.0)
E1 = vector(1.0, 0.0, 0.0)
E2 = vector(0.0, 1.0, 0.0)
E3 = vector(0.0, 0.0, 1.0)
E12 = Multivector([0, 0, 0, 0, 1, 0, 0, 0])
E23 = Multivector([0, 0, 0, 0, 0, 1, 0, 0])
E31 = Multivector([0, 0, 0, 0, 0, 0, 1, 0])
I = pseudoscalar(1.0)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return Multivector(np.einsum("i,j,ijk->k", a.coefficients, b.coefficients, _GP))


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Outer product. For vectors this is the antisymmetric part (ab - ba)/2."""
    return Multivector(np.einsum("i,j,ijk->k", a.coefficients, b.coefficients, _OUTER))


def inner(a: Multivector, b: Multivector) -> Multivector:
    """Symmetric part (ab + ba)/2 of two vectors, returned as a scalar multivector."""
    if not (a.is_grade(1) and b.is_grade(1)):
        raise GradeError("inner() is defined here for grade-1 arguments only")
    return scalar(float(np.dot(a.coefficients[1:4], b.coefficients[1:4])))


def cross(a: Multivector, b: Multivector) -> Multivector:
    """Gibbs cross product through duality: a x b = -i (a ^ b)."""
    if not (a.is_grade(1) and b.is_grade(1)):
        raise GradeError("cross() needs grade-1 arguments")
    return grade_project(-(I * wedge(a, b)), 1)


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.coefficients * _REVERSE_SIGN)


def grade_project(a: Multivector, k: int) -> Multivector:
    if k not in (0, 1, 2, 3):
        raise ValueError(f"grade must be 0, 1, 2 or 3, got {k!r}")
    return Multivector(np.where(GRADES == k, a.coefficients, 0.0))


def rotor_exp(plane: Multivector, theta: float) -> Rotor:
    """R = exp(-plane*theta/2) = cos(theta/2) - plane*sin(theta/2).

    ``plane`` must be a unit bivector (plane*plane = -1 within 1e-10).
    """
    if not plane.is_grade(2, atol=UNIT_TOL):
        raise GradeError("rotation plane must be a bivector")
    sq = plane * plane
    if not sq.allclose(-ONE, atol=UNIT_TOL):
        raise ValueError("rotation plane must square to -1")
    half = 0.5 * theta
    return Rotor((math.cos(half) * ONE - math.sin(half) * plane).coefficients)


def rotate_vector(R: Multivector, v: Multivector) -> Multivector:
    """Two-sided rotation R v ~R of a grade-1 element."""
    if not v.is_grade(1):
        raise GradeError("rotate_vector() needs a grade-1 argument")
    return grade_project(R * v * reverse(R), 1)
