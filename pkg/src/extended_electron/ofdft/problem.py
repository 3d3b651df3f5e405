"""JSON problem files for archived solver runs.

A problem file looks like::

    {
      "grid": {"boundary": "dirichlet", "points": [512], "length": [1.0]},
      "v_ext": {"preset": "box"},
      "Pi": {"kind": "zero"},
      "N": 1.0,
      "solver": "lps",
      "scf": {"mixing": 0.3, "tol": 1e-10, "hartree": false, "cohesive": false},
      "check": {"mu": 4.934802200544679, "rtol": 5e-4}
    }

``grid`` takes either ``length`` or ``spacing`` per axis. ``v_ext`` presets
are ``box`` (zero inside the walls), ``coulomb`` (-Z / sqrt(r^2 + a^2) about
``centre``, default the grid centre) and ``uniform`` (constant ``value``).
``Pi`` is ``zero``, ``constant`` with a ``vector``, or ``table`` with a CSV
``path`` (columns Pix, Piy, Piz, one row per grid point in C order,
resolved relative to the problem file). An optional ``check`` block
compares the resulting mu against a reference value.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, fields as dc_fields
from pathlib import Path

import numpy as np

from .coupled import GridField
from .grid import BOUNDARIES, Grid
from .lps import LPSConvergenceError, lps_solve
from .scf import SCFConfig, SCFResult, scf_solve

__all__ = ["ProblemError", "Problem", "RunOutcome", "load_problem", "parse_problem",
           "run_problem", "summary_json", "write_fields_csv"]

SOLVERS = ("scf", "lps")


class ProblemError(ValueError):
    """Malformed or inconsistent problem definition."""


@dataclass
class Problem:
    grid: Grid
    v_ext: np.ndarray
    Pi: np.ndarray
    N: float
    solver: str
    scf: SCFConfig
    check_mu: float | None = None
    check_rtol: float = 5e-4


@dataclass
class RunOutcome:
    summary: dict
    fields: GridField
    passed: bool


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ProblemError(f"missing '{key}' in {where}")
    return obj[key]


def _parse_grid(section: dict) -> Grid:
    boundary = section.get("boundary", "dirichlet")
    if boundary not in BOUNDARIES:
        raise ProblemError(f"grid.boundary must be one of {BOUNDARIES}")
    points = _require(section, "points", "grid")
    try:
        if "spacing" in section:
            return Grid(tuple(points), tuple(np.broadcast_to(section["spacing"], (len(points),))), boundary)
        if "length" in section:
            return Grid.box(points, section["length"], boundary)
    except (TypeError, ValueError) as exc:
        raise ProblemError(f"invalid grid: {exc}") from exc
    raise ProblemError("grid needs 'length' or 'spacing'")


def _distance(grid: Grid, centre) -> np.ndarray:
    if grid.boundary == "radial":
        return grid.radius.copy()
    c = grid.centre() if centre is None else np.asarray(centre, dtype=float)
    if c.shape != (grid.ndim,):
        raise ProblemError(f"coulomb centre needs {grid.ndim} components")
    coords = grid.coordinates()
    return np.sqrt(sum((x - ci) ** 2 for x, ci in zip(coords, c)))


def _parse_potential(section: dict, grid: Grid) -> np.ndarray:
    preset = _require(section, "preset", "v_ext")
    if preset == "box":
        return np.zeros(grid.shape)
    if preset == "uniform":
        return np.full(grid.shape, float(section.get("value", 0.0)))
    if preset == "coulomb":
        Z = float(section.get("Z", 1.0))
        a = float(section.get("softening", 0.0))
        r = _distance(grid, section.get("centre"))
        d = np.sqrt(r * r + a * a)
        if np.any(d == 0):
            raise ProblemError("coulomb potential is singular on a grid point; add softening")
        return -Z / d
    raise ProblemError(f"unknown v_ext preset {preset!r}")


def _parse_pi(section: dict, grid: Grid, base: Path) -> np.ndarray:
    kind = section.get("kind", "zero")
    if kind == "zero":
        return np.zeros(grid.shape + (3,))
    if kind == "constant":
        vec = np.asarray(_require(section, "vector", "Pi"), dtype=float)
        if vec.shape != (3,):
            raise ProblemError("Pi.vector needs three components")
        return np.broadcast_to(vec, grid.shape + (3,)).copy()
    if kind == "table":
        path = base / _require(section, "path", "Pi")
        try:
            table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except OSError as exc:
            raise ProblemError(f"cannot read Pi table {path}: {exc}") from exc
        if table.shape != (grid.size, 3):
            raise ProblemError(f"Pi table needs {grid.size} rows of 3 values, got {table.shape}")
        return table.reshape(grid.shape + (3,))
    raise ProblemError(f"unknown Pi kind {kind!r}")


def _parse_scf(section: dict) -> SCFConfig:
    known = {f.name for f in dc_fields(SCFConfig)}
    unknown = set(section) - known
    if unknown:
        raise ProblemError(f"unknown scf options {sorted(unknown)}")
    try:
        return SCFConfig(**section)
    except (TypeError, ValueError) as exc:
        raise ProblemError(f"invalid scf config: {exc}") from exc


def parse_problem(data: dict, base: Path | None = None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("problem file must contain a JSON object")
    base = base or Path(".")
    grid = _parse_grid(_require(data, "grid", "problem"))
    v_ext = _parse_potential(_require(data, "v_ext", "problem"), grid)
    Pi = _parse_pi(data.get("Pi", {"kind": "zero"}), grid, base)
    N = float(data.get("N", 1.0))
    if not N > 0:
        raise ProblemError("N must be positive")
    solver = data.get("solver", "scf")
    if solver not in SOLVERS:
        raise ProblemError(f"solver must be one of {SOLVERS}")
    if solver == "lps" and np.any(Pi):
        raise ProblemError("the lps solver has no bivector coupling; use solver 'scf'")
    check = data.get("check", {})
    mu_ref = check.get("mu")
    return Problem(grid=grid, v_ext=v_ext, Pi=Pi, N=N, solver=solver,
                   scf=_parse_scf(data.get("scf", {})),
                   check_mu=None if mu_ref is None else float(mu_ref),
                   check_rtol=float(check.get("rtol", 5e-4)))


def load_problem(path) -> Problem:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ProblemError(f"cannot read problem file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemError(f"problem file {path} is not valid JSON: {exc}") from exc
    return parse_problem(data, path.parent)


def run_problem(problem: Problem) -> RunOutcome:
    if problem.solver == "lps":
        try:
            res = lps_solve(problem.grid, problem.v_ext, N=problem.N)
        except LPSConvergenceError as exc:
            summary = {"solver": "lps", "converged": False, "message": str(exc),
                       "residual_history": [[r, 0.0] for r in exc.residual_history]}
            return RunOutcome(summary, GridField.density_only(np.zeros(problem.grid.shape)), False)
        fields = GridField.density_only(res.rho_half)
        summary = {"solver": "lps", "mu": res.mu, "iterations": res.iterations,
                   "converged": True, "message": "converged",
                   "residual_history": [[r, 0.0] for r in res.residual_history]}
        mu, ok = res.mu, True
    else:
        out: SCFResult = scf_solve(problem.grid, problem.v_ext, problem.Pi, problem.N, problem.scf)
        fields = out.fields
        summary = {"solver": "scf", **out.summary()}
        mu, ok = out.mu, out.converged
    if problem.check_mu is not None:
        rel = abs(mu - problem.check_mu) / max(abs(problem.check_mu), 1e-300)
        summary["check"] = {"mu_reference": problem.check_mu, "relative_error": rel,
                            "rtol": problem.check_rtol, "passed": bool(rel <= problem.check_rtol)}
        ok = ok and rel <= problem.check_rtol
    summary["passed"] = bool(ok)
    summary["grid"] = {"shape": list(problem.grid.shape), "spacing": list(problem.grid.spacing),
                       "boundary": problem.grid.boundary}
    return RunOutcome(summary, fields, bool(ok))


def write_fields_csv(path, fields: GridField, grid: Grid) -> None:
    """Per-point table x, y, z, rho_half, S_half, eSx, eSy, eSz (radial grids put r in x)."""
    coords = grid.coordinates()
    cols = [c.ravel() for c in coords] + [np.zeros(grid.size)] * (3 - grid.ndim)
    e = fields.e_S.reshape(-1, 3)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "z", "rho_half", "S_half", "eSx", "eSy", "eSz"])
        for i in range(grid.size):
            row = (cols[0][i], cols[1][i], cols[2][i], fields.rho_half.flat[i],
                   fields.S_half.flat[i], e[i, 0], e[i, 1], e[i, 2])
            w.writerow([repr(float(v)) for v in row])


def summary_json(summary: dict) -> str:
    def clean(x):
        if isinstance(x, float) and not math.isfinite(x):
            return repr(x)
        if isinstance(x, dict):
            return {k: clean(v) for k, v in x.items()}
        if isinstance(x, list):
            return [clean(v) for v in x]
        return x
    return json.dumps(clean(summary), indent=2, sort_keys=True) + "\n"
