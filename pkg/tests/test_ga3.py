import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extended_electron.ga3 import (
    E1,
    E2,
    E3,
    E12,
    I,
    ONE,
    GradeError,
    Multivector,
    Rotor,
    bivector,
    cross,
    geometric_product,
    grade_project,
    inner,
    reverse,
    rotate_vector,
    rotor_exp,
    scalar,
    vector,
    wedge,
)

# Pauli representation: e_k -> sigma_k, an independent oracle for the product
SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]], dtype=complex),
]
ID2 = np.eye(2, dtype=complex)


def to_matrix(a: Multivector) -> np.ndarray:
    s1, s2, s3 = SIGMA
    c = a.coefficients
    blades = [ID2, s1, s2, s3, s1 @ s2, s2 @ s3, s3 @ s1, s1 @ s2 @ s3]
    return sum(ci * b for ci, b in zip(c, blades))


coeff = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
multivectors = st.lists(coeff, min_size=8, max_size=8).map(Multivector)
vectors = st.lists(coeff, min_size=3, max_size=3).map(vector)


def random_mv(rng):
    return Multivector(rng.normal(size=8))


def random_rotor(rng):
    b = rng.normal(size=3)
    plane = bivector(*(b / np.linalg.norm(b)))
    return rotor_exp(plane, rng.uniform(-2 * math.pi, 2 * math.pi))


class TestProducts:
    def test_basis_examples(self):
        assert (E1 * E1) == ONE
        assert (E1 * E2).allclose(E12)
        assert (E1 * E2).allclose(I * E3)
        assert (E12 * E12).allclose(-ONE)

    def test_basis_table_exhaustive(self):
        basis = [E1, E2, E3]
        for i, j in itertools.product(range(3), repeat=2):
            expected = scalar(float(i == j))
            for k in range(3):
                eps = np.linalg.det(np.eye(3)[[i, j, k]]) if len({i, j, k}) == 3 else 0.0
                expected = expected + eps * (I * basis[k])
            assert (basis[i] * basis[j]).allclose(expected, atol=1e-15)

    def test_pseudoscalar_squares_to_minus_one(self):
        assert (I * I).allclose(-ONE)

    @given(multivectors, multivectors)
    def test_matches_pauli_matrices(self, a, b):
        np.testing.assert_allclose(to_matrix(a * b), to_matrix(a) @ to_matrix(b), atol=1e-10)

    def test_associativity_random(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(1000):
            a, b, c = (random_mv(rng) for _ in range(3))
            d = ((a * b) * c).coefficients - (a * (b * c)).coefficients
            worst = max(worst, float(np.abs(d).max()))
        assert worst < 1e-12

    @settings(max_examples=200)
    @given(multivectors, multivectors, multivectors)
    def test_distributive(self, a, b, c):
        assert (a * (b + c)).allclose(a * b + a * c, atol=1e-10)

    @given(multivectors)
    def test_pseudoscalar_central(self, a):
        assert (I * a).allclose(a * I, atol=1e-12)

    @given(multivectors, multivectors)
    def test_reverse_anti_automorphism(self, a, b):
        assert reverse(a * b).allclose(reverse(b) * reverse(a), atol=1e-10)

    def test_operator_aliases(self):
        rng = np.random.default_rng(2)
        a, b = random_mv(rng), random_mv(rng)
        assert (a * b) == geometric_product(a, b)
        assert (a ^ b) == wedge(a, b)
        assert (~a) == reverse(a)
        assert (2 * a).allclose(a + a)
        assert (a / 2).allclose(0.5 * a)


class TestWedgeInner:
    def test_wedge_examples(self):
        assert wedge(E1, E2).allclose(E12)
        assert wedge(E1, E1).allclose(Multivector())
        assert wedge(2 * E1 + E2, E2).allclose(2 * E12)

    @given(vectors, vectors)
    def test_wedge_antisymmetric_part_for_vectors(self, a, b):
        assert wedge(a, b).allclose(0.5 * (a * b - b * a), atol=1e-10)
        assert wedge(a, b).allclose(-wedge(b, a), atol=1e-10)

    @given(vectors, vectors)
    def test_duality_with_cross_product(self, a, b):
        classical = np.cross(a.vector_part, b.vector_part)
        assert wedge(a, b).allclose(I * vector(classical), atol=1e-10)
        np.testing.assert_allclose(cross(a, b).vector_part, classical, atol=1e-10)

    def test_wedge_is_outer_product_beyond_vectors(self):
        # e1 ^ e23 is the pseudoscalar, e1 ^ e12 vanishes
        assert wedge(E1, E2 * E3).allclose(I)
        assert wedge(E1, E12).allclose(Multivector())

    def test_inner_examples(self):
        assert inner(E1, E2).allclose(Multivector())
        assert inner(E3, E3).allclose(ONE)
        assert inner(E2 + E3, E2).allclose(ONE)

    @given(vectors, vectors)
    def test_inner_symmetric_part(self, a, b):
        assert inner(a, b).allclose(0.5 * (a * b + b * a), atol=1e-10)

    @pytest.mark.parametrize("bad", [E12, ONE, I, E1 + E12])
    def test_inner_rejects_non_vectors(self, bad):
        with pytest.raises(GradeError):
            inner(bad, E1)
        with pytest.raises(GradeError):
            cross(E1, bad)


class TestGrades:
    def test_reverse_examples(self):
        assert reverse(E12).allclose(-E12)
        assert reverse(I).allclose(-I)
        assert reverse(0.7 + 0.3 * E12).allclose(0.7 - 0.3 * E12)

    def test_project_examples(self):
        a = ONE + E1 + E12
        assert grade_project(a, 2).allclose(E12)
        assert grade_project(0.2 + 0.9 * E12, 1).allclose(Multivector())

    @given(multivectors)
    def test_projections_reconstruct(self, a):
        total = sum((grade_project(a, k) for k in range(4)), Multivector())
        assert total == a

    @pytest.mark.parametrize("k", [-1, 4, 1.5])
    def test_invalid_grade(self, k):
        with pytest.raises(ValueError):
            grade_project(ONE, k)

    def test_immutable(self):
        a = vector(1, 2, 3)
        with pytest.raises(AttributeError):
            a.foo = 1
        with pytest.raises(ValueError):
            a.coefficients[0] = 5.0

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            Multivector([1, 2, 3])

    def test_blade_access(self):
        a = Multivector(np.arange(8.0))
        assert a["e3e1"] == 6.0
        np.testing.assert_array_equal(a.bivector_part, [5.0, 6.0, 4.0])


class TestRotors:
    def test_identity_and_full_turns(self):
        assert rotor_exp(E12, 0.0).allclose(ONE)
        assert rotor_exp(E12, 2 * math.pi).allclose(-ONE)
        assert rotor_exp(E12, 4 * math.pi).allclose(ONE)

    def test_orientation_e1_towards_e2(self):
        R = rotor_exp(E12, math.pi / 2)
        assert rotate_vector(R, E1).allclose(E2)
        small = rotate_vector(rotor_exp(E12, 1e-3), E1)
        assert small["e2"] > 0

    def test_identity_rotation(self):
        assert rotate_vector(Rotor.identity(), E3) == E3

    @given(vectors)
    def test_full_turn_returns_vector(self, v):
        assert rotate_vector(rotor_exp(E12, 2 * math.pi), v).allclose(v, atol=1e-10)

    def test_norm_preserved_and_composition_stays_unit(self):
        rng = np.random.default_rng(3)
        R = Rotor.identity()
        for _ in range(100):
            R = random_rotor(rng) * R
            v = vector(rng.normal(size=3))
            assert abs(rotate_vector(R, v).norm() - v.norm()) < 1e-12 * max(1.0, v.norm())
        assert isinstance(R, Rotor)
        assert (R * reverse(R)).allclose(ONE, atol=1e-12)

    def test_rotation_matches_rodrigues(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            n = rng.normal(size=3)
            n /= np.linalg.norm(n)
            theta = rng.uniform(0, 2 * math.pi)
            v = rng.normal(size=3)
            # the plane dual to the axis n, rotating by theta about n
            R = rotor_exp(bivector(*n), theta)
            rodrigues = (v * math.cos(theta) + np.cross(n, v) * math.sin(theta)
                         + n * np.dot(n, v) * (1 - math.cos(theta)))
            np.testing.assert_allclose(rotate_vector(R, vector(v)).vector_part, rodrigues, atol=1e-12)

    def test_non_unit_plane_rejected(self):
        with pytest.raises(ValueError):
            rotor_exp(2 * E12, 1.0)
        with pytest.raises(GradeError):
            rotor_exp(E1, 1.0)

    def test_rotor_validation(self):
        with pytest.raises(GradeError):
            Rotor(E1.coefficients)
        with pytest.raises(ValueError):
            Rotor((2 * ONE).coefficients)

    def test_rotate_vector_grade_error(self):
        with pytest.raises(GradeError):
            rotate_vector(Rotor.identity(), E12)
