import itertools
import math

import numpy as np
import pytest
from scipy import integrate, special

from extended_electron.ga3 import E3, I, ONE, grade_project, reverse, vector
from extended_electron.hydrogen import (
    QuantumNumbers,
    TwoCenterGeometry,
    U_nlm,
    assoc_laguerre,
    assoc_legendre,
    bohr_energy,
    decompose_density_field,
    h2_ground_density_sqrt,
    h2_singlet,
    h2_spin_bracket,
    h2_spin_wavefunction,
    hydrogen_wavefunction,
    local_energy,
    normalization_constant,
    radial_function,
    slater_determinant_2,
    spherical_frame,
    spin_multivector_solution,
)


def states(n_max):
    for n in range(1, n_max + 1):
        for l in range(n):
            for m in range(-l, l + 1):
                yield QuantumNumbers(n, l, m)


@pytest.fixture
def rng():
    return np.random.default_rng(23)


class TestSpecialFunctions:
    def test_laguerre_against_scipy(self):
        x = np.linspace(0, 30, 301)
        for k in range(10):
            for alpha in (0, 1, 3, 7, 19):
                np.testing.assert_allclose(assoc_laguerre(k, alpha, x),
                                           special.eval_genlaguerre(k, alpha, x),
                                           rtol=1e-11, atol=1e-11)

    def test_legendre_against_scipy(self):
        # scipy's lpmv includes the Condon-Shortley phase as well
        x = np.linspace(-0.99, 0.99, 199)
        for l in range(8):
            for m in range(-l, l + 1):
                np.testing.assert_allclose(assoc_legendre(l, m, x), special.lpmv(m, l, x),
                                           rtol=1e-10, atol=1e-12)

    def test_condon_shortley_sign(self):
        assert assoc_legendre(1, 1, 0.0) == pytest.approx(-1.0)

    def test_invalid_degrees(self):
        with pytest.raises(ValueError):
            assoc_laguerre(-1, 0, 1.0)
        with pytest.raises(ValueError):
            assoc_legendre(1, 2, 0.3)


class TestQuantumNumbers:
    @pytest.mark.parametrize("args", [(0, 0, 0), (11, 0, 0), (2, 2, 0), (2, 1, 2), (1, 0, 0, 0), (1.5, 0, 0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            QuantumNumbers(*args)

    def test_geometry(self):
        assert TwoCenterGeometry().bond_length == pytest.approx(1.4)
        with pytest.raises(ValueError):
            TwoCenterGeometry(E3, E3)


def _radial_overlap(a, b):
    f = lambda r: (radial_function(a.n, a.l, r) * radial_function(b.n, b.l, r) * r * r)
    return integrate.quad(f, 0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)[0]


def _angular_overlap(a, b):
    f = lambda t: (assoc_legendre(a.l, a.m, math.cos(t)) * assoc_legendre(b.l, b.m, math.cos(t))
                   * math.sin(t))
    return integrate.quad(f, 0, math.pi, epsabs=1e-13, epsrel=1e-12)[0]


def overlap(a, b):
    if a.m != b.m:
        return 0.0  # the phi integral of exp(i (m' - m) phi) vanishes
    c = normalization_constant(a) * normalization_constant(b)
    return c * 2 * math.pi * _radial_overlap(a, b) * _angular_overlap(a, b)


class TestEigenfunctions:
    @pytest.mark.parametrize("qn", list(states(3)), ids=str)
    def test_normalized(self, qn):
        assert overlap(qn, qn) == pytest.approx(1.0, abs=1e-8)

    def test_orthonormal_n_le_2(self):
        basis = list(states(2))
        for a, b in itertools.combinations(basis, 2):
            assert abs(overlap(a, b)) < 1e-6

    def test_phi_integral_orthogonality(self):
        a, b = QuantumNumbers(2, 1, -1), QuantumNumbers(2, 1, 1)
        f = lambda p: (hydrogen_wavefunction(a, 1.0, 0.8, p).conjugate()
                       * hydrogen_wavefunction(b, 1.0, 0.8, p))
        re = integrate.quad(lambda p: f(p).real, 0, 2 * math.pi)[0]
        im = integrate.quad(lambda p: f(p).imag, 0, 2 * math.pi)[0]
        assert abs(re) < 1e-12 and abs(im) < 1e-12

    def test_ground_state_shape(self):
        r = np.linspace(0.1, 5, 20)
        psi = hydrogen_wavefunction(QuantumNumbers(1, 0, 0), r, 0.3, 0.2)
        np.testing.assert_allclose(psi.real, np.exp(-r) / math.sqrt(math.pi), rtol=1e-13)

    @pytest.mark.parametrize("n,l", [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (4, 0), (5, 2)])
    def test_radial_nodes(self, n, l):
        r = np.linspace(1e-3, 80, 80_001)
        f = radial_function(n, l, r)
        assert np.count_nonzero(np.diff(np.sign(f)) != 0) == n - l - 1

    def test_angular_node_2p0(self):
        qn = QuantumNumbers(2, 1, 0)
        assert U_nlm(qn, 1.0, math.pi / 2) == pytest.approx(0.0, abs=1e-16)
        assert U_nlm(qn, 1.0, 0.3) * U_nlm(qn, 1.0, math.pi - 0.3) < 0

    def test_bohr(self):
        assert [bohr_energy(n) for n in (1, 2, 3)] == [-0.5, -0.125, pytest.approx(-1 / 18)]

    @pytest.mark.parametrize("qn", [q for q in states(3) if q.m >= 0], ids=str)
    def test_local_energy_second_order(self, qn):
        point = (0.7, 0.4, 1.1)
        errs = [abs(local_energy(qn, point, h) - bohr_energy(qn.n)) for h in (0.04, 0.02, 0.01)]
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(orders >= 1.9), orders
        assert errs[-1] < 1e-3

    def test_local_energy_guards(self):
        with pytest.raises(ValueError):
            local_energy(QuantumNumbers(1, 0, 0), (0.01, 0, 0), 0.01)
        with pytest.raises(ValueError):
            local_energy(QuantumNumbers(2, 1, 0), (1.0, 0.5, 0.0), 0.01)


class TestDecomposition:
    def test_m_zero_has_no_field(self, rng):
        r, th, ph = rng.uniform(0.1, 5, 20), rng.uniform(0.1, 3, 20), rng.uniform(0, 6, 20)
        _, S = decompose_density_field(QuantumNumbers(3, 2, 0), r, th, ph)
        assert np.all(S == 0.0)

    def test_m_one_quarter_turn(self):
        qn = QuantumNumbers(2, 1, 1)
        rho_h, S_h = decompose_density_field(qn, 1.3, 0.9, math.pi / 2)
        assert rho_h == pytest.approx(0.0, abs=1e-16)
        assert S_h == pytest.approx(U_nlm(qn, 1.3, 0.9))

    def test_pythagorean(self, rng):
        r, th, ph = rng.uniform(0.1, 8, 1000), rng.uniform(0.05, 3.1, 1000), rng.uniform(0, 6.3, 1000)
        for qn in (QuantumNumbers(3, 2, -2), QuantumNumbers(2, 1, 1), QuantumNumbers(4, 3, 3)):
            rho_h, S_h = decompose_density_field(qn, r, th, ph)
            psi = hydrogen_wavefunction(qn, r, th, ph)
            np.testing.assert_allclose(rho_h ** 2 + S_h ** 2, np.abs(psi) ** 2, rtol=1e-12, atol=1e-300)
            np.testing.assert_allclose(rho_h ** 2 + S_h ** 2, U_nlm(qn, r, th) ** 2, rtol=1e-12)


class TestSpinSolutions:
    def test_frame_orthonormal_right_handed(self, rng):
        for p in rng.normal(size=(20, 3)):
            e_r, e_t, e_p = spherical_frame(p)
            M = np.array([e_r.vector_part, e_t.vector_part, e_p.vector_part])
            np.testing.assert_allclose(M @ M.T, np.eye(3), atol=1e-14)
            assert np.linalg.det(M) == pytest.approx(1.0)
            # the bivector e_theta e_phi is dual to e_r
            assert (e_t * e_p).allclose(I * e_r, atol=1e-14)

    @pytest.mark.parametrize("p", [(0, 0, 0), (0, 0, 2.0), (0, 0, -1.0)])
    def test_frame_singular(self, p):
        with pytest.raises(ValueError):
            spherical_frame(p)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_m_zero_form(self, sign):
        p = np.array([0.6, -0.3, 0.9])
        qn = QuantumNumbers(3, 1, 0, sign)
        e_r, _, _ = spherical_frame(p)
        r, theta = np.linalg.norm(p), math.acos(p[2] / np.linalg.norm(p))
        U = float(U_nlm(qn, r, theta))
        expected = (U / math.sqrt(2)) * (ONE - sign * (I * e_r))
        assert spin_multivector_solution(qn, p).allclose(expected, atol=1e-15)

    def test_norm_is_U_squared(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 5))
            l = int(rng.integers(0, n))
            qn = QuantumNumbers(n, l, int(rng.integers(-l, l + 1)), int(rng.choice([-1, 1])))
            p = rng.normal(size=3) * 2
            psi = spin_multivector_solution(qn, vector(p))
            prod = reverse(psi) * psi
            r, theta = np.linalg.norm(p), math.acos(p[2] / np.linalg.norm(p))
            U2 = float(U_nlm(qn, r, theta)) ** 2
            assert prod.scalar_part == pytest.approx(U2, rel=1e-12, abs=1e-300)
            for k in (1, 2, 3):
                assert grade_project(prod, k).norm() < 1e-12 * max(U2, 1e-300) + 1e-300

    def test_spin_flip_negates_field_part(self):
        p = np.array([0.4, 0.8, -0.5])
        up = spin_multivector_solution(QuantumNumbers(2, 1, 0, 1), p)
        down = spin_multivector_solution(QuantumNumbers(2, 1, 0, -1), p)
        assert up.scalar_part == down.scalar_part
        assert grade_project(up, 2).allclose(-grade_project(down, 2), atol=1e-15)


class TestH2:
    def test_density_examples(self, rng):
        geom = TwoCenterGeometry()
        mid = h2_ground_density_sqrt(geom, vector(0, 0, 0))
        assert mid == pytest.approx((math.exp(-0.7) / math.sqrt(math.pi)) ** 2)
        swapped = TwoCenterGeometry(geom.R2, geom.R1)
        for p in rng.normal(size=(20, 3)):
            assert h2_ground_density_sqrt(geom, p) == h2_ground_density_sqrt(swapped, p)
        assert h2_ground_density_sqrt(geom, (0, 0, 60.0)) < 1e-50

    def test_bracket_identities(self, rng):
        for _ in range(100):
            a, b = rng.normal(size=(2, 3))
            e1, e2 = vector(a / np.linalg.norm(a)), vector(b / np.linalg.norm(b))
            br = h2_spin_bracket(e1, e2)
            assert br.allclose(-h2_spin_bracket(e2, e1), atol=1e-14)
            assert abs(br.scalar_part) < 1e-15
            assert br.allclose(2 * (I * (e1 - e2)), atol=1e-14)
        assert h2_spin_bracket(E3, E3).norm() < 1e-15

    def test_spin_wavefunction_antisymmetry(self, rng):
        geom = TwoCenterGeometry()
        swapped = TwoCenterGeometry(geom.R2, geom.R1)
        for p in rng.normal(size=(1000, 3)) * 1.5:
            a = h2_spin_wavefunction(geom, p)
            b = h2_spin_wavefunction(swapped, p)
            assert a.allclose(-b, atol=1e-15)
            assert abs(a.scalar_part) < 1e-15

    def test_spin_wavefunction_vanishes_on_outer_axis(self):
        assert h2_spin_wavefunction(TwoCenterGeometry(), (0, 0, 3.0)).norm() < 1e-15

    def test_spin_wavefunction_at_nucleus(self):
        with pytest.raises(ValueError):
            h2_spin_wavefunction(TwoCenterGeometry(), (0, 0, 0.7))

    def test_slater(self, rng):
        f = lambda x: math.exp(-x * x)
        g = lambda x: x * math.exp(-x)
        for x1, x2 in rng.normal(size=(20, 2)):
            assert slater_determinant_2(f, g, x1, x1) == 0.0
            assert slater_determinant_2(f, g, x1, x2) == pytest.approx(-slater_determinant_2(f, g, x2, x1))

    def test_singlet(self, rng):
        psi = lambda p: math.exp(-np.linalg.norm(p)) / math.sqrt(math.pi)
        for p1, p2 in rng.normal(size=(20, 2, 3)):
            for s1, s2 in itertools.product((1, -1), repeat=2):
                alpha_beta = (s1 == 1) * (s2 == -1) - (s1 == -1) * (s2 == 1)
                expected = psi(p1) * psi(p2) * alpha_beta
                assert h2_singlet((p1, s1), (p2, s2)) == pytest.approx(expected, abs=1e-15)
        with pytest.raises(ValueError):
            h2_singlet(((0, 0, 1), 0), ((0, 0, 1), 1))
