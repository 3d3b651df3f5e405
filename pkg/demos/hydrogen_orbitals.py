"""Hydrogen eigenfunctions split into density and field components.

psi_nlm = U exp(i m phi) splits into rho^(1/2) = U cos(m phi) and
S^(1/2) = U sin(m phi); states with m = 0 carry no field. The spin
solutions add the pseudoscalar-weighted frame vectors. For H2 the spin
bracket is antisymmetric in the two radial directions.
"""
import math

import numpy as np

from extended_electron import hydrogen as hy
from extended_electron.ga3 import reverse

point = (0.7, 0.4, 1.1)
print("n l m   E_n        local energy (h = 0.01)")
for n in (1, 2, 3):
    for l in range(n):
        qn = hy.QuantumNumbers(n, l, 0)
        print(f"{n} {l} 0  {hy.bohr_energy(n):+.6f}  {hy.local_energy(qn, point, 0.01).real:+.6f}")

qn = hy.QuantumNumbers(2, 1, 1)
print("\nphi/pi  rho_half   S_half   (2,1,1) at r = 2, theta = 1")
for phi in np.linspace(0, math.pi, 5):
    a, b = hy.decompose_density_field(qn, 2.0, 1.0, phi)
    print(f"{phi / math.pi:5.2f}  {a:+.5f}  {b:+.5f}")

for sign in (1, -1):
    psi = hy.spin_multivector_solution(hy.QuantumNumbers(2, 1, 1, sign), point)
    print(f"\nspin {sign:+d}: psi = {psi}")
    print(f"         ~psi psi = {reverse(psi) * psi}")

geom = hy.TwoCenterGeometry()
print(f"\nH2 bond length {geom.bond_length:.2f} bohr")
print(f"rho^(1/2) at the bond midpoint: {hy.h2_ground_density_sqrt(geom, (0, 0, 0)):.6f}")
p = (0.3, -0.2, 0.1)
print(f"spin wavefunction at {p}: {hy.h2_spin_wavefunction(geom, p)}")
swapped = hy.TwoCenterGeometry(geom.R2, geom.R1)
print(f"with the nuclei exchanged:    {hy.h2_spin_wavefunction(swapped, p)}")
print(f"singlet (alpha, beta) = {hy.h2_singlet((p, 1), ((0, 0, 1.0), -1)):+.6f}, "
      f"(beta, alpha) = {hy.h2_singlet((p, -1), ((0, 0, 1.0), 1)):+.6f}")
