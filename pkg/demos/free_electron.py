"""A free electron as a wave of mass density and internal field.

The density rho and the field energy S trade places along the wave while
their sum stays at rho0. The multivector wavefunction carries both, and
its reverse-product recovers the constant rho0.
"""
import numpy as np

from extended_electron import electron_wave as ew
from extended_electron.ga3 import reverse

state = ew.WaveState(v=1.5, rho0=1.0)
print(f"v = {state.v}  wavelength = {state.wavelength:.4f}  nu = {state.frequency:.4f}  "
      f"omega = {state.omega:.4f} Ha")

# one wavelength at t = 0
z = np.linspace(0.0, state.wavelength, 9)
rho = ew.density(state, z, 0.0)
S = ew.field_intensity(state, z, 0.0)
print("\n   z        rho       S      rho+S   E_tot")
for zi, r, s in zip(z, rho, S):
    e = ew.total_energy_density(state, zi, 0.0)
    print(f"{zi:6.3f}  {r:8.5f} {s:8.5f} {r + s:8.5f} {e:7.4f}")

psi = ew.wavefunction(state, 0.7, 0.2)
print(f"\npsi(0.7, 0.2) = {psi}")
print(f"~psi psi       = {reverse(psi) * psi}")

# the complex wave carries the same energy and a uniform current
print(f"\nJ = {ew.current_density(state, 0.3, 0.1)}  (rho0 v = {state.rho0 * state.v})")
print(f"group velocity d(omega)/dk = {ew.group_velocity(state):.8f}")

# one electron per Wigner-Seitz sphere: self-repulsion and cohesion cancel
for rs in (1.0, 2.0, 4.0):
    vh, vc = ew.hartree_potential(rs), ew.cohesive_potential(rs)
    print(f"r_s = {rs}: V_H = {vh:.4f}, V_coh = {vc:.4f} Ha ({vc * 27.2114:.3f} eV), sum = {vh + vc}")
