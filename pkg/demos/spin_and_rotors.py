"""Spin as a sandwich of the wavefunction, and why psi needs 4 pi to return.

The spin s = psi e3 ~psi / 2 of a free electron is constant. Tilting the
field plane gives two possible time averages, one per sign, and a field
splits their energies by +- the Larmor frequency. A rotor acting on psi
from one side flips its sign after a full turn while the spin it
produces turns with the two-sided rotation.
"""
import math

import numpy as np

from extended_electron import electron_wave as ew
from extended_electron import spin_dynamics as sd
from extended_electron.ga3 import E1, E2, E3, E12, rotate_vector, rotor_exp, vector

state = ew.WaveState(v=1.0, rho0=1.0)
psi = ew.wavefunction(state, 0.4, 0.1)
print(f"s = psi e3 ~psi / 2 = {sd.spin_sandwich(psi, E3)}")

for sign in (1, -1):
    avg = sd.average_spin(state, sign)
    quad = sd.average_spin_quadrature(state, sign)
    print(f"<s{'+' if sign > 0 else '-'}> = {avg}   (64-node quadrature differs by {(avg - quad).norm():.1e})")
print("Larmor shifts for gamma = B0 = rho0 = 1:", sd.larmor_frequency(1.0, 1.0, 1.0))

print("\nrotating psi about e1e2")
for theta in (0.0, math.pi, 2 * math.pi, 3 * math.pi, 4 * math.pi):
    R = rotor_exp(E12, theta)
    rotated = sd.rotate_wavefunction(R, psi)
    print(f"theta = {theta / math.pi:.0f} pi: <R psi>_0 = {rotated.scalar_part:+.4f}, "
          f"spin = {np.round(sd.spin_sandwich(rotated, E2).vector_part, 4)}")

# the spin of the rotated psi is the rotated spin
R = rotor_exp(E12, 0.8)
left = sd.spin_sandwich(sd.rotate_wavefunction(R, psi), E2)
right = rotate_vector(R, sd.spin_sandwich(psi, E2))
print(f"|s(R psi) - R s ~R| = {(left - right).norm():.1e}")

# switching on a weak field while the electron moves along e3 tips S by S x (v x B)
params = sd.LLParams(gamma=1.0, const_ll=1.0)
S0 = vector(0.6, 0.0, 0.8)
B = 1e-3 * vector(0.3, 0.2, 1.0)
t_ramp = 1e-3 / state.frequency
traj = sd.integrate_modified_ll(S0, state.direction, sd.RampField(B, t_ramp), params,
                                dt=t_ramp / 1000, steps=1000)
print(f"\nafter the ramp:  dS = {np.round(traj.spins[-1] - S0.vector_part, 9)}")
print(f"first order:     dS = {np.round(sd.induced_spin(S0, state.direction, B).vector_part, 9)}")
print(f"opposite S gives dS = {np.round(sd.induced_spin(-1 * S0, state.direction, B).vector_part, 9)}")
