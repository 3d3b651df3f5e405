"""An electron at rest absorbing a photon pulse.

The pulse field S_em grows until its amplitude reaches the electron's
density rho0. Mass density is converted into field as d rho_el = -d S_em,
and absorption completes when the phase reaches pi/2. The electron leaves
with its frequency raised by that of the photon.
"""
import math

import numpy as np

from extended_electron import electron_wave as ew
from extended_electron import external_fields as ef

rho0, nu, wavelength, rise = 1.0, 0.25, 2.0, 10.0
pulse = ef.PhotonPulse(lambda t: rho0 * min(t / rise, 1.0), wavelength, nu)
electron = ew.WaveState(v=0.0, rho0=rho0)

res = ef.absorb_photon(electron, pulse, z0=0.0)
print(f"absorption ends at t_f = {res.t_final:.4f} with phase {res.phase_final:.6f} (pi/2 = {math.pi / 2:.6f})")
print(f"rho_el + S_el stays at rho0 to {np.abs(res.rho_el + res.S_el - rho0).max():.1e}")
print(f"final speed {res.final.v:.6f}, omega {res.final.omega:.6f} = 2 pi nu = {2 * math.pi * nu:.6f}")

print("\n   t      rho_el    S_el")
for i in np.linspace(0, len(res.times) - 1, 8).astype(int):
    print(f"{res.times[i]:7.3f}  {res.rho_el[i]:7.4f}  {res.S_el[i]:7.4f}")

# density left behind around the absorption point
dz = np.linspace(-0.5, 0.5, 5) * wavelength
print("\nrho_el(z0 + dz):", np.round(ef.post_absorption_density(res, dz), 6))

# a second identical photon adds the same frequency again
second = ef.absorb_photon(res.final, pulse)
print(f"after two photons omega = {second.final.omega:.6f}")

# too weak a pulse never empties the mass density
weak = ef.PhotonPulse(lambda t: 0.5 * rho0 * min(t / rise, 1.0), wavelength, nu)
try:
    ef.absorb_photon(electron, weak, periods=16)
except ef.AbsorptionIncomplete as exc:
    print(f"weak pulse: {exc}")
