"""Command-line front end: phase-shift sweeps, zero-energy reports,
and the two bundled figure presets.

Exit codes: 0 success, 1 usage or file-format problems, 2 numeric
failures (including indeterminate condition verdicts in reports).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .effective_range import effective_range
from .errors import PotentialFormatError, ScatteringError
from .potentials import Potential, check_conditions, load_potential
from .radial_solver import align_branch, phase_shift_by_matching
from .variable_phase import phase_shift_variable_phase
from .zero_energy import (
    ZERO_ENERGY_RESONANCE,
    born_phase_shift,
    zero_energy_report,
)

_METHODS = ("matching", "variable_phase", "born")


@dataclass(frozen=True)
class SweepSpec:
    """One phase-shift sweep: a potential, a dimension, and a k grid."""

    potential_path: str
    dimension: int
    k_min: float
    k_max: float
    count: int
    log_spacing: bool
    methods: tuple[str, ...]
    out_path: str

    def __post_init__(self):
        if self.k_min <= 0:
            raise ValueError("k_min must be > 0")
        if self.count < 2:
            raise ValueError("count must be >= 2")
        if self.k_max <= self.k_min:
            raise ValueError("k_max must exceed k_min")
        bad = [m for m in self.methods if m not in _METHODS]
        if bad:
            raise ValueError(f"unknown methods: {bad}")

    def k_grid(self) -> np.ndarray:
        if self.log_spacing:
            return np.geomspace(self.k_min, self.k_max, self.count)
        return np.linspace(self.k_min, self.k_max, self.count)


def _fmt(x: Optional[float]) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return format(float(x), ".15g")


def _sweep_rows(potential: Potential, spec: SweepSpec):
    """Rows ordered by k; per-row failures are marked, not fatal."""
    rows = []
    failures = 0
    for k in spec.k_grid():
        k = float(k)
        row = {"k": k, "delta_matching": None, "delta_variable_phase": None,
               "delta_born": None, "err_estimate": None, "branch_n": 0,
               "error": None}
        try:
            delta_vp = None
            err = 0.0
            if "variable_phase" in spec.methods:
                vp = phase_shift_variable_phase(potential, k, spec.dimension)
                delta_vp = vp.delta
                row["delta_variable_phase"] = vp.delta
                err = max(err, vp.err_estimate)
            if "matching" in spec.methods:
                m = phase_shift_by_matching(potential, k, spec.dimension)
                delta_m = m.delta
                if delta_vp is not None:
                    aligned = align_branch(delta_m, delta_vp)
                    row["branch_n"] = int(round((aligned - delta_m) / math.pi))
                    delta_m = aligned
                row["delta_matching"] = delta_m
                err = max(err, m.err_estimate)
            if "born" in spec.methods and spec.dimension == 2:
                row["delta_born"] = born_phase_shift(potential, k).delta
            row["err_estimate"] = err
        except ScatteringError as exc:
            row["error"] = str(exc).splitlines()[0]
            failures += 1
        rows.append(row)
    return rows, failures


def write_sweep_csv(spec: SweepSpec, potential: Potential, rows, out) -> None:
    out.write(f"# swave {__version__}\n")
    out.write(f"# sweep: dim={spec.dimension} kmin={_fmt(spec.k_min)} "
              f"kmax={_fmt(spec.k_max)} n={spec.count} "
              f"spacing={'log' if spec.log_spacing else 'linear'} "
              f"methods={','.join(spec.methods)}\n")
    for line in potential.to_text().splitlines():
        out.write(f"# potential: {line}\n")
    out.write("k,delta_matching,delta_variable_phase,delta_born,err_estimate,branch_n\n")
    for row in rows:
        if row["error"] is not None:
            out.write(f"{_fmt(row['k'])},ERROR,ERROR,ERROR,ERROR,0 # {row['error']}\n")
        else:
            out.write(",".join([
                _fmt(row["k"]),
                _fmt(row["delta_matching"]),
                _fmt(row["delta_variable_phase"]),
                _fmt(row["delta_born"]),
                _fmt(row["err_estimate"]),
                str(row["branch_n"]),
            ]) + "\n")


def cmd_phase_sweep(spec: SweepSpec) -> int:
    """Run one sweep and write its CSV; deterministic for a fixed spec."""
    try:
        potential = load_potential(spec.potential_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PotentialFormatError as exc:
        print(f"error: {spec.potential_path}: {exc}", file=sys.stderr)
        return 1
    rows, failures = _sweep_rows(potential, spec)
    with open(spec.out_path, "w", encoding="utf-8") as fh:
        write_sweep_csv(spec, potential, rows, fh)
    if failures:
        print(f"{failures} of {len(rows)} rows failed; see error markers in "
              f"{spec.out_path}", file=sys.stderr)
        return 2
    return 0


def cmd_report(potential_path: str, dimension: int, out=None) -> int:
    """Conditions, zero-energy summary, and effective range for one potential."""
    out = out if out is not None else sys.stdout
    try:
        potential = load_potential(potential_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PotentialFormatError as exc:
        print(f"error: {potential_path}: {exc}", file=sys.stderr)
        return 1

    status = 0
    machine: list[tuple[str, str]] = [("dimension", str(dimension)),
                                      ("kind", potential.kind)]
    out.write(f"# swave {__version__} report\n")
    out.write(f"potential file: {potential_path}\n")
    out.write(f"dimension: {dimension}\n\nconditions:\n")
    try:
        conditions = check_conditions(potential, dimension)
        for rec in conditions.records:
            extra = f", value {_fmt(rec.value)}" if rec.value is not None else ""
            out.write(f"  {rec.name}: {rec.verdict}{extra} (cutoff {_fmt(rec.cutoff)})\n")
            machine.append((rec.name, rec.verdict))
            if rec.verdict == "indeterminate":
                status = 2

        out.write("\nzero energy:\n")
        report = zero_energy_report(potential, dimension)
        if dimension == 2:
            out.write(f"  X1 = {_fmt(report.X1)}\n  X2 = {_fmt(report.X2)}\n")
            machine.append(("x1", _fmt(report.X1)))
            machine.append(("x2", _fmt(report.X2)))
        if report.scattering_length is ZERO_ENERGY_RESONANCE:
            out.write("  scattering length: zero-energy resonance\n")
            machine.append(("a", "zero_energy_resonance"))
        else:
            out.write(f"  scattering length a = {_fmt(report.scattering_length)}\n")
            machine.append(("a", _fmt(report.scattering_length)))
        out.write(f"  bound states n = {report.bound_state_count}\n")
        machine.append(("bound_states", str(report.bound_state_count)))

        out.write("\neffective range:\n")
        er = effective_range(potential, dimension)
        if er.convergent:
            label = "coefficient of k^2" if dimension == 2 else "r0"
            out.write(f"  convergent: {label} = {_fmt(er.value)}\n")
            machine.append(("effective_range", _fmt(er.value)))
        else:
            an = er.anomaly
            out.write("  divergent; anomaly:"
                      f" exponent {_fmt(an.exponent)},"
                      f" log power {_fmt(an.log_power)},"
                      f" coefficient {_fmt(an.coefficient)}\n")
            machine.append(("effective_range", "divergent"))
            machine.append(("anomaly_exponent", _fmt(an.exponent)))
            machine.append(("anomaly_log_power", _fmt(an.log_power)))
            machine.append(("anomaly_coefficient", _fmt(an.coefficient)))
    except ScatteringError as exc:
        out.write(f"\nnumeric failure: {exc}\n")
        machine.append(("error", str(exc).splitlines()[0]))
        status = 2

    out.write("\nmachine:\n")
    for key, value in machine:
        out.write(f"{key} = {value}\n")
    return status


_PRESETS = {
    "fig1": {"dimension": 2, "couplings": (0.5, 1.0, 2.0), "sign": +1.0},
    "fig2": {"dimension": 2, "couplings": (0.5, 1.0, 2.0, 3.0, 6.0), "sign": -1.0},
}


def cmd_preset(name: str, out_dir: str, count: int = 21) -> int:
    """Phase-shift curves for the bundled exponential-potential figures.

    fig1: repulsive g exp(-r), g in {0.5, 1, 2}; fig2: attractive,
    g in {0.5, 1, 2, 3, 6}.  One CSV per coupling, k log-spaced on
    [0.05, 5].
    """
    if name not in _PRESETS:
        print(f"error: unknown preset {name!r}", file=sys.stderr)
        return 1
    preset = _PRESETS[name]
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    status = 0
    for g in preset["couplings"]:
        potential = Potential.exponential(strength=preset["sign"], rate=1.0, coupling=g)
        pot_file = out_path / f"{name}_g{g:g}.potential"
        pot_file.write_text(potential.to_text(), encoding="utf-8")
        spec = SweepSpec(
            potential_path=str(pot_file), dimension=preset["dimension"],
            k_min=0.05, k_max=5.0, count=count, log_spacing=True,
            methods=_METHODS, out_path=str(out_path / f"{name}_g{g:g}.csv"))
        status = max(status, cmd_phase_sweep(spec))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swave",
        description="Low-energy S-wave scattering: phase shifts, scattering "
                    "lengths, effective ranges for central potentials in 2D/3D.")
    parser.add_argument("--version", action="version", version=f"swave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="phase-shift sweep over a momentum grid")
    sweep.add_argument("--potential", required=True, help="potential file")
    sweep.add_argument("--dim", type=int, choices=(2, 3), required=True)
    sweep.add_argument("--kmin", type=float, required=True)
    sweep.add_argument("--kmax", type=float, required=True)
    sweep.add_argument("--n", type=int, required=True, help="number of k points")
    sweep.add_argument("--log", action="store_true", help="log-spaced k grid")
    sweep.add_argument("--methods", default="matching,variable_phase,born",
                       help="comma-separated subset of matching,variable_phase,born")
    sweep.add_argument("--out", required=True, help="output CSV path")

    report = sub.add_parser("report", help="conditions, scattering length, "
                                           "effective range")
    report.add_argument("--potential", required=True)
    report.add_argument("--dim", type=int, choices=(2, 3), required=True)

    preset = sub.add_parser("preset", help="bundled figure sweeps")
    preset.add_argument("name", choices=sorted(_PRESETS))
    preset.add_argument("--out", required=True, help="output directory")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the documented contract is 1
        if exc.code not in (0, None):
            return 1
        raise
    if args.command == "sweep":
        try:
            spec = SweepSpec(
                potential_path=args.potential, dimension=args.dim,
                k_min=args.kmin, k_max=args.kmax, count=args.n,
                log_spacing=args.log,
                methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
                out_path=args.out)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        return cmd_phase_sweep(spec)
    if args.command == "report":
        return cmd_report(args.potential, args.dim)
    return cmd_preset(args.name, args.out)


if __name__ == "__main__":
    sys.exit(main())
