import math

import numpy as np
import pytest

from extended_electron.electron_wave import WaveState, phase, wavefunction
from extended_electron.ga3 import (
    E1,
    E2,
    E3,
    E12,
    GradeError,
    bivector,
    grade_project,
    inner,
    rotate_vector,
    rotor_exp,
    scalar,
    vector,
)
from extended_electron.spin_dynamics import (
    LLParams,
    RampField,
    SpinTrajectory,
    average_spin,
    average_spin_quadrature,
    free_spin,
    induced_spin,
    integrate_modified_ll,
    larmor_frequency,
    magnetic_moment,
    rotate_wavefunction,
    spin_sandwich,
    tilted_spin,
    zeeman_potential,
)

R2 = math.sqrt(2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(5)


class TestSandwich:
    def test_axis_e3_constant(self, rng):
        s = WaveState(v=1.2, rho0=1.7)
        for z, t in rng.uniform(-4, 4, (20, 2)):
            out = spin_sandwich(wavefunction(s, z, t), E3)
            assert out.allclose(0.5 * s.rho0 * E3, atol=1e-12)
            for k in (0, 2, 3):
                assert grade_project(out, k).norm() < 1e-15

    def test_axis_e2_hand_expansion(self, rng):
        # (a + b e12) e2 (a - b e12) = (a^2 - b^2) e2 + 2ab e1
        s = WaveState(v=0.7, rho0=1.3)
        for z, t in rng.uniform(-4, 4, (20, 2)):
            ph = float(phase(s, z, t))
            expected = 0.5 * s.rho0 * (math.cos(2 * ph) * E2 + math.sin(2 * ph) * E1)
            assert spin_sandwich(wavefunction(s, z, t), E2).allclose(expected, atol=1e-12)

    def test_axis_e2_where_density_peaks(self):
        # where cos(2 phase) = 1 the e2 component is the full rho0/2
        s = WaveState(v=1.0, rho0=2.0)
        assert spin_sandwich(wavefunction(s, 0.0, 0.0), E2).allclose(0.5 * s.rho0 * E2)

    def test_scalar_psi(self):
        axis = vector(0.6, 0.0, 0.8)
        assert spin_sandwich(scalar(math.sqrt(3.0)), axis).allclose(1.5 * axis)

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            spin_sandwich(scalar(1.0), 2 * E3)
        with pytest.raises(GradeError):
            spin_sandwich(scalar(1.0), E12)

    @pytest.mark.parametrize("h", [1, -1])
    def test_free_spin_follows_helicity(self, h):
        s = WaveState(v=1.0, rho0=1.4, helicity=h)
        assert free_spin(s, 0.3, 0.2).allclose(h * 0.5 * s.rho0 * E3, atol=1e-12)


class TestTiltedSpin:
    def test_formula_at_45_degrees(self, rng):
        s = WaveState(v=1.1, rho0=1.3)
        z, t = rng.uniform(-3, 3, (2, 30))
        osc = np.sin(2 * phase(s, z, t))
        for sign in (1, -1):
            expected = 0.5 * s.rho0 * np.stack(
                [sign * osc / R2, np.full_like(z, sign / R2), np.full_like(z, sign / R2)], axis=-1)
            np.testing.assert_allclose(tilted_spin(s, sign, z, t), expected, atol=1e-14)

    def test_at_zero_oscillation(self):
        s = WaveState(v=1.0, rho0=1.0)
        np.testing.assert_allclose(tilted_spin(s, 1, 0.0, 0.0), 0.5 * np.array([0, 1, 1]) / R2, atol=1e-15)

    def test_signs_antiparallel(self):
        s = WaveState(v=0.9)
        assert (average_spin(s, 1) + average_spin(s, -1)).norm() == 0.0
        np.testing.assert_array_equal(tilted_spin(s, 1, 0.4, 0.1), -tilted_spin(s, -1, 0.4, 0.1))

    @pytest.mark.parametrize("sign", [1, -1])
    def test_average(self, sign):
        s = WaveState(v=1.3, rho0=0.8)
        expected = sign * 0.5 * s.rho0 * (E3 + E2) / R2
        assert average_spin(s, sign).allclose(expected, atol=1e-15)
        assert (average_spin_quadrature(s, sign, z=0.37) - expected).norm() < 1e-10

    def test_general_tilt(self):
        s = WaveState(v=1.0, tilt=0.3)
        expected = 0.5 * (math.cos(0.3) * E3 + math.sin(0.3) * E2)
        assert average_spin(s, 1).allclose(expected)
        assert (average_spin_quadrature(s, 1) - expected).norm() < 1e-10

    def test_invalid_sign(self):
        with pytest.raises(ValueError):
            tilted_spin(WaveState(), 0, 0.0, 0.0)
        with pytest.raises(ValueError):
            average_spin(WaveState(), 2)


class TestMomentAndZeeman:
    def test_magnetic_moment(self):
        avg = average_spin(WaveState(rho0=1.0), 1)
        assert magnetic_moment(1.0, avg) == avg
        assert magnetic_moment(2.0, avg).allclose((E3 + E2) / R2)
        assert magnetic_moment(0.0, avg).norm() == 0.0

    def test_zeeman_examples(self):
        assert zeeman_potential(E1, E3) == 0.0
        assert zeeman_potential(2 * E3, -3 * E3) == pytest.approx(6.0)
        gamma, B0, rho0 = 1.5, 0.4, 1.2
        for sign in (1, -1):
            mu = magnetic_moment(gamma, average_spin(WaveState(rho0=rho0), sign))
            assert zeeman_potential(mu, B0 * E2) == pytest.approx(-sign * gamma * B0 * rho0 / (2 * R2))

    def test_larmor(self):
        w = larmor_frequency(1.0, 1.0, 1.0)
        assert w[0] == pytest.approx(1 / (2 * R2), abs=1e-15) and w[1] == -w[0]
        assert round(w[0], 6) == 0.353553
        assert larmor_frequency(1.0, 0.0, 1.0) == (0.0, -0.0)
        assert larmor_frequency(1.0, 1.0, 2.0)[0] == pytest.approx(2 * w[0])


class TestRotations:
    def test_sign_change_and_four_pi(self, rng):
        psi = wavefunction(WaveState(v=1.0), 0.2, 0.1)
        for _ in range(10):
            n = rng.normal(size=3)
            plane = bivector(*(n / np.linalg.norm(n)))
            assert rotate_wavefunction(rotor_exp(plane, 2 * math.pi), psi).allclose(-psi, atol=1e-12)
            assert rotate_wavefunction(rotor_exp(plane, 4 * math.pi), psi).allclose(psi, atol=1e-12)
            theta = rng.uniform(0, 4 * math.pi)
            a = rotate_wavefunction(rotor_exp(plane, theta), psi)
            b = rotate_wavefunction(rotor_exp(plane, theta + 4 * math.pi), psi)
            assert a.allclose(b, atol=1e-12)

    def test_spin_follows_two_sided_rotation(self, rng):
        psi = wavefunction(WaveState(v=1.3, rho0=1.1), 0.7, 0.3)
        for _ in range(10):
            n = rng.normal(size=3)
            R = rotor_exp(bivector(*(n / np.linalg.norm(n))), rng.uniform(0, 2 * math.pi))
            left = spin_sandwich(rotate_wavefunction(R, psi), E3)
            right = rotate_vector(R, spin_sandwich(psi, E3))
            assert left.allclose(right, atol=1e-12)


class TestInducedSpin:
    def test_hand_example(self):
        assert induced_spin(E3, E3, E1, 1.0).allclose(-E1)

    def test_parallel_field(self):
        assert induced_spin(E1, E3, 2 * E3).norm() == 0.0

    def test_two_solutions(self, rng):
        S, v, B = (vector(rng.normal(size=3)) for _ in range(3))
        assert induced_spin(-S, v, B).allclose(-induced_spin(S, v, B))

    def test_perpendicular(self, rng):
        for _ in range(100):
            S, v, B = (vector(rng.normal(size=3)) for _ in range(3))
            assert abs(inner(induced_spin(S, v, B, 0.7), S).scalar_part) < 1e-12

    def test_matches_numpy(self, rng):
        S, v, B = rng.normal(size=(3, 3))
        expected = 0.3 * np.cross(S, np.cross(v, B))
        np.testing.assert_allclose(induced_spin(vector(S), vector(v), vector(B), 0.3).vector_part,
                                   expected, atol=1e-12)


class TestModifiedLL:
    def test_norm_preserved_pure_precession(self):
        traj = integrate_modified_ll(vector(0.3, -0.5, 0.8), E3, lambda t: np.array([0.2, 0.5, 1.0]),
                                     LLParams(gamma=1.0, const_ll=0.0), dt=1e-2, steps=10_000)
        assert np.abs(traj.norms - traj.norms[0]).max() < 1e-9

    def test_circular_solution(self):
        gamma, B0 = 1.3, 0.8
        p = LLParams(gamma=gamma, const_ll=0.0, alpha_ll=0.5)
        traj = integrate_modified_ll(E1, E3, lambda t: B0 * E3.vector_part, p, dt=1e-2, steps=500)
        rate = gamma * B0 / (1 + 0.25)
        expected = np.stack([np.cos(rate * traj.times), np.sin(rate * traj.times),
                             np.zeros_like(traj.times)], axis=1)
        np.testing.assert_allclose(traj.spins, expected, atol=1e-8)

    def test_fourth_order(self):
        gamma, B0, T = 1.0, 1.0, 10.0
        errs = []
        for steps in (100, 200, 400):
            traj = integrate_modified_ll(E1, E3, lambda t: B0 * E3.vector_part,
                                         LLParams(gamma=gamma, const_ll=0.0), dt=T / steps, steps=steps)
            sx, sy = traj.spins[-1, :2]
            errs.append(abs(math.atan2(sy, sx) - math.remainder(gamma * B0 * T, 2 * math.pi)))
        ratios = np.array(errs[:-1]) / np.array(errs[1:])
        np.testing.assert_allclose(ratios, 16.0, rtol=0.1)

    def test_ramp_first_order(self):
        S0, v, B = E3, vector(1.0, 0.0, 0.0), vector(0.0, 1e-3, 0.0)
        t_ramp = 1e-3
        field = RampField(B, t_ramp)
        p = LLParams(gamma=0.0, const_ll=1.0)
        traj = integrate_modified_ll(S0, v, field, p, dt=t_ramp / 100, steps=100)
        dS = traj.spins[-1] - S0.vector_part
        np.testing.assert_allclose(dS, induced_spin(S0, v, B).vector_part, rtol=1e-5, atol=1e-14)

    def test_finite_difference_derivative_path(self):
        B = vector(0.0, 0.5, 0.0)
        ramp = RampField(B, 1.0)
        plain = lambda t: ramp(t)
        p = LLParams(gamma=0.3, const_ll=0.7)
        a = integrate_modified_ll(E3, E1, ramp, p, dt=1e-3, steps=200)
        b = integrate_modified_ll(E3, E1, plain, p, dt=1e-3, steps=200)
        np.testing.assert_allclose(a.spins, b.spins, atol=1e-8)

    def test_errors(self):
        with pytest.raises(ValueError):
            integrate_modified_ll(E3, E1, lambda t: np.zeros(3), dt=0.0)
        with pytest.raises(FloatingPointError):
            integrate_modified_ll(E3, E1, lambda t: np.full(3, np.nan), steps=2)
        with pytest.raises(ValueError):
            RampField(E1, 0.0)

    def test_trajectory_csv(self, tmp_path):
        traj = integrate_modified_ll(E1, E3, lambda t: np.array([0, 0, 1.0]), dt=0.1, steps=3)
        assert len(traj) == 4
        assert traj.spin(0) == E1
        path = tmp_path / "traj.csv"
        traj.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,Sx,Sy,Sz" and len(lines) == 5

    def test_trajectory_validation(self):
        with pytest.raises(ValueError):
            SpinTrajectory(np.array([0.0, 0.0]), np.zeros((2, 3)), LLParams())
        with pytest.raises(ValueError):
            SpinTrajectory(np.array([0.0, 1.0]), np.zeros((3, 3)), LLParams())
