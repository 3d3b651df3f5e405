"""Command-line front end: scenario demos, solver runs and the acceptance suite.

Exit status is 0 when everything passed, 1 when a check or solver run
failed and 2 for unusable input. Errors are reported on stderr as a JSON
object. Data files are in atomic units; electronvolts appear only in the
printed summaries.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import electron_wave as ew
from . import external_fields as ef
from . import hydrogen as hy
from . import spin_dynamics as sd
from .ga3 import vector
from .ofdft.problem import ProblemError, load_problem, run_problem, summary_json, write_fields_csv
from .verification import HARTREE_EV, run_all

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def to_ev(hartree: float) -> float:
    return hartree * HARTREE_EV


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(x)) for x in row])


def _positive(name: str, value: float) -> float:
    if not (value > 0 and math.isfinite(value)):
        raise InputError(f"--{name} must be positive and finite, got {value!r}")
    return value


# demos ---------------------------------------------------------------------

def demo_free_electron(args, out: Path) -> int:
    state = ew.WaveState(v=_positive("v", args.v), rho0=_positive("rho0", args.rho0))
    z = np.linspace(0.0, 2.0 * state.wavelength, args.nz)
    t = np.linspace(0.0, state.period, args.nt)
    rows = []
    for ti in t:
        rho = ew.density(state, z, ti)
        S = ew.field_intensity(state, z, ti)
        E = ew.total_energy_density(state, z, ti)
        rows.extend(zip(z, np.full_like(z, ti), rho, S, E))
    write_csv(out / "free_electron.csv", ["z", "t", "rho", "S", "E_tot"], rows)
    dev = max(abs(r[2] + r[3] - state.rho0) for r in rows)
    print(f"free electron v={state.v:g}: wavelength {state.wavelength:.6f} bohr, "
          f"omega {state.omega:.6f} Ha ({to_ev(state.omega):.4f} eV), "
          f"max |rho + S - rho0| = {dev:.1e}")
    return EXIT_OK


def demo_spin(args, out: Path) -> int:
    state = ew.WaveState(v=_positive("v", args.v))
    params = sd.LLParams(gamma=args.gamma, const_ll=args.const_ll, alpha_ll=args.alpha)
    B = vector(0.0, 0.0, args.B)
    traj = sd.integrate_modified_ll(vector(1.0, 0.0, 0.0), state.direction,
                                    lambda t: B.vector_part, params,
                                    dt=_positive("dt", args.dt), steps=args.steps)
    traj.to_csv(out / "spin_trajectory.csv")
    rng = np.random.default_rng(args.seed)
    rows = []
    for _ in range(args.samples):
        S, v, Bv = (vector(rng.normal(size=3)) for _ in range(3))
        dS = sd.induced_spin(S, v, Bv, params.const_ll)
        rows.append([*S.vector_part, *v.vector_part, *Bv.vector_part, *dS.vector_part])
    write_csv(out / "induced_spin.csv",
              ["Sx", "Sy", "Sz", "vx", "vy", "vz", "Bx", "By", "Bz", "dSx", "dSy", "dSz"], rows)
    w_plus, w_minus = sd.larmor_frequency(args.gamma, args.B, state.rho0)
    avg = sd.average_spin(state, 1)
    print(f"average spin +-{avg.vector_part.round(6).tolist()}, "
          f"Larmor shifts {w_plus:+.6f} / {w_minus:+.6f} Ha; "
          f"|S| drift {np.max(np.abs(traj.norms - 1.0)):.1e} over {args.steps} steps")
    return EXIT_OK


def demo_ab(args, out: Path) -> int:
    state = ew.WaveState(v=_positive("v", args.v), rho0=_positive("rho0", args.rho0))
    length = _positive("path-length", args.path_length)
    A = np.linspace(0.0, args.A_max, args.points)
    intensity = ef.ab_intensity_scan(state, A, 0.0, length)
    write_csv(out / "ab_scan.csv", ["A", "intensity"], zip(A, intensity))
    inner = intensity[1:-1]
    zeros = A[1:-1][(inner < intensity[:-2]) & (inner <= intensity[2:]) & (inner < 1e-3 * state.rho0)]
    print(f"intensity zeros near A = {np.round(zeros, 4).tolist()} "
          f"(expected (pi/2 + k pi)/{length:g})")
    return EXIT_OK


def demo_photon(args, out: Path) -> int:
    rho0 = _positive("rho0", args.rho0)
    nu = _positive("nu", args.nu)
    rise = _positive("rise", args.rise)
    pulse = ef.PhotonPulse(lambda t: rho0 * min(t / rise, 1.0),
                           wavelength=_positive("wavelength", args.wavelength), frequency=nu)
    try:
        res = ef.absorb_photon(ew.WaveState(v=0.0, rho0=rho0), pulse, z0=args.z0)
    except ef.AbsorptionIncomplete as exc:
        raise InputError(str(exc)) from exc
    res.to_csv(out / "absorption_history.csv")
    dz = np.linspace(-0.5, 0.5, 101) * pulse.wavelength
    write_csv(out / "post_absorption_profile.csv", ["dz", "rho_el"],
              zip(dz, ef.post_absorption_density(res, dz)))
    print(f"absorbed at t_f = {res.t_final:.6f}: v = {res.final.v:.6f}, "
          f"omega = {res.final.omega:.6f} Ha ({to_ev(res.final.omega):.4f} eV)")
    return EXIT_OK


def demo_hydrogen(args, out: Path) -> int:
    try:
        qn = hy.QuantumNumbers(args.n, args.l, args.m, args.spin)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    r = np.linspace(0.0, 6.0 * args.n ** 2, 301)
    theta = math.pi / 3
    U = hy.U_nlm(qn, r, theta)
    write_csv(out / "hydrogen_radial.csv", ["r", "U", "radial_density"],
              zip(r, U, r * r * hy.radial_function(qn.n, qn.l, r) ** 2
                  * hy.normalization_constant(qn) ** 2))
    rng = np.random.default_rng(args.seed)
    rows = []
    for _ in range(args.samples):
        ri, th, ph = rng.uniform(0.1, 4.0 * args.n ** 2), rng.uniform(0.05, math.pi - 0.05), \
            rng.uniform(0.0, 2.0 * math.pi)
        a, b = hy.decompose_density_field(qn, ri, th, ph)
        rows.append([ri, th, ph, a, b])
    write_csv(out / "hydrogen_decomposition.csv", ["r", "theta", "phi", "rho_half", "S_half"], rows)
    E = hy.bohr_energy(qn.n)
    print(f"hydrogen {qn.n}{qn.l}{qn.m}: E = {E:.6f} Ha ({to_ev(E):.4f} eV), "
          f"local energy at (0.7, 0.4, 1.1): {hy.local_energy(qn, [0.7, 0.4, 1.1], 0.01).real:.6f} Ha")
    return EXIT_OK


def solve_ofdft(args, out: Path) -> int:
    try:
        problem = load_problem(args.problem)
    except ProblemError as exc:
        raise InputError(str(exc)) from exc
    outcome = run_problem(problem)
    (out / "results.json").write_text(summary_json(outcome.summary))
    write_fields_csv(out / "fields.csv", outcome.fields, problem.grid)
    mu = outcome.summary.get("mu")
    if mu is not None:
        print(f"{outcome.summary['solver']}: mu = {mu:.10f} Ha ({to_ev(mu):.6f} eV), "
              f"{outcome.summary['iterations']} iterations, {outcome.summary['message']}")
    check = outcome.summary.get("check")
    if check:
        print(f"check against mu = {check['mu_reference']:.10f}: relative error "
              f"{check['relative_error']:.2e} ({'PASS' if check['passed'] else 'FAIL'})")
    return EXIT_OK if outcome.passed else EXIT_FAILED


def verify(args, out: Path) -> int:
    results = run_all(args.seed)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    report = [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
              for r in results]
    (out / "verify.json").write_text(json.dumps(report, indent=2) + "\n")
    return EXIT_FAILED if failed else EXIT_OK


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("."), help="output directory (created if missing)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised samples")

    p = _Parser(prog="extended-electron", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("demo-free-electron", parents=[common], help="rho, S and E_tot of a free electron")
    s.add_argument("--v", type=float, default=1.0, help="speed (a.u.)")
    s.add_argument("--rho0", type=float, default=1.0, help="density amplitude")
    s.add_argument("--nz", type=int, default=64, help="points over two wavelengths")
    s.add_argument("--nt", type=int, default=16, help="time slices over one period")
    s.set_defaults(func=demo_free_electron)

    s = sub.add_parser("demo-spin", parents=[common], help="spin precession and induced spin")
    s.add_argument("--v", type=float, default=1.0, help="electron speed (a.u.)")
    s.add_argument("--B", type=float, default=1.0, help="field along e3 (a.u.)")
    s.add_argument("--gamma", type=float, default=1.0, help="gyromagnetic factor")
    s.add_argument("--const-ll", type=float, default=1.0, help="induced-term coupling")
    s.add_argument("--alpha", type=float, default=0.0, help="damping parameter alpha")
    s.add_argument("--dt", type=float, default=1e-2, help="RK4 step")
    s.add_argument("--steps", type=int, default=2000, help="number of RK4 steps")
    s.add_argument("--samples", type=int, default=20, help="rows in the induced-spin table")
    s.set_defaults(func=demo_spin)

    s = sub.add_parser("demo-ab", parents=[common], help="Aharonov-Bohm intensity scan")
    s.add_argument("--A-max", dest="A_max", type=float, default=2 * math.pi, help="largest vector potential")
    s.add_argument("--path-length", dest="path_length", type=float, default=1.0, help="z1 - z0 (bohr)")
    s.add_argument("--points", type=int, default=401, help="scan points")
    s.add_argument("--v", type=float, default=1.0, help="electron speed (a.u.)")
    s.add_argument("--rho0", type=float, default=1.0, help="density amplitude")
    s.set_defaults(func=demo_ab)

    s = sub.add_parser("demo-photon", parents=[common], help="absorption of a photon pulse")
    s.add_argument("--nu", type=float, default=0.25, help="photon frequency (a.u.)")
    s.add_argument("--wavelength", type=float, default=2.0, help="photon wavelength (bohr)")
    s.add_argument("--rise", type=float, default=20.0, help="time for the pulse amplitude to reach rho0")
    s.add_argument("--rho0", type=float, default=1.0, help="density of the electron at rest")
    s.add_argument("--z0", type=float, default=0.0, help="absorption point")
    s.set_defaults(func=demo_photon)

    s = sub.add_parser("demo-hydrogen", parents=[common], help="hydrogen profiles and density/field split")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--l", type=int, default=1)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--spin", type=int, default=1, choices=(1, -1))
    s.add_argument("--samples", type=int, default=200, help="random decomposition points")
    s.set_defaults(func=demo_hydrogen)

    s = sub.add_parser("solve-ofdft", parents=[common], help="run a JSON problem file")
    s.add_argument("problem", type=Path, help="problem definition (JSON)")
    s.set_defaults(func=solve_ofdft)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.set_defaults(func=verify)
    return p


def _report(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message, "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        return _report("UsageError", str(exc), EXIT_INPUT)
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    try:
        args.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        return _report("OutputError", f"cannot create {args.out}: {exc}", EXIT_INPUT)
    try:
        return args.func(args, args.out)
    except (InputError, ValueError) as exc:
        return _report(type(exc).__name__, str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
