"""Extended-electron model in the geometric algebra of 3-space.

Submodules: :mod:`ga3` (algebra), :mod:`electron_wave` (free electron),
:mod:`spin_dynamics`, :mod:`external_fields`, :mod:`hydrogen` and the
:mod:`ofdft` solver package.
"""
from . import electron_wave, external_fields, ga3, hydrogen, ofdft, spin_dynamics
from .electron_wave import WaveState
from .ga3 import Multivector, Rotor, rotor_exp

__version__ = "0.1.0"

__all__ = ["electron_wave", "external_fields", "ga3", "hydrogen", "ofdft", "spin_dynamics",
           "Multivector", "Rotor", "WaveState", "rotor_exp", "__version__"]
