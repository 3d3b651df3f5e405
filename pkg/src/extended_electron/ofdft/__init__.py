"""Real-space orbital-free solver for the density amplitude and its coupled field."""
from .coupled import (
    GridField,
    PotentialSet,
    chemical_potential,
    coupled_operator,
    coupled_residual,
    linear_response,
    manufacture_potentials,
)
from .functionals import C_TF, kinetic_functionals, thomas_fermi, von_weizsaecker
from .grid import Grid, gradient, integrate, laplacian, laplacian_matrix, pairwise_sum
from .lps import LPSConvergenceError, LPSResult, lps_solve
from .problem import Problem, ProblemError, load_problem, parse_problem, run_problem
from .scf import (
    SCFConfig,
    SCFResult,
    cohesive_potential_field,
    hartree_potential_field,
    scf_solve,
)

__all__ = [
    "Grid", "gradient", "integrate", "laplacian", "laplacian_matrix", "pairwise_sum",
    "LPSConvergenceError", "LPSResult", "lps_solve",
    "GridField", "PotentialSet", "chemical_potential", "coupled_operator",
    "coupled_residual", "linear_response", "manufacture_potentials",
    "C_TF", "kinetic_functionals", "thomas_fermi", "von_weizsaecker",
    "SCFConfig", "SCFResult", "cohesive_potential_field", "hartree_potential_field",
    "scf_solve",
    "Problem", "ProblemError", "load_problem", "parse_problem", "run_problem",
]
