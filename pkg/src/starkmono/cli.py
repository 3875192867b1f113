"""Command-line entry point: ``starkmono {state,charge,oscillate,experiment}``.

Every subcommand writes its report into the output directory (``--out-dir``,
else ``$STARKMONO_OUT``, else the current directory) and prints the written
paths.  Run settings come from built-in defaults, then an optional JSON config
file (``--config``), then explicit flags.

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .dynamics import MixedPair, charge_series
from .errors import DomainError, NumericalError
from .experiment import squid_signal
from .monopole import (
    Measure,
    StarkConfig,
    dirac_charge,
    electric_dipole_conventional,
    monopole_report,
    solve_magnetic_charge,
)
from .parabolic import (
    DEFAULT_ORDER,
    ParabolicPoint,
    QuantumNumbers,
    apply_h0,
    bound_energy,
    expectation,
    norm,
    parabolic_wavefunction,
    rule_for,
)
from .scenario import default_scenario, run_scenario
from .units import UnitSystem, make_unit_system

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3
OUT_ENV = "STARKMONO_OUT"
MIN_ORDER = 16


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    units: str = UnitSystem.GAUSSIAN_CGS.value
    order: int = DEFAULT_ORDER
    step: float = 1.0 / 200.0  # finite-difference step in Bohr radii
    mode: str = Measure.FLAT.value
    out_dir: str | None = None
    format: str = "json"

    def validate(self) -> "RunConfig":
        try:
            UnitSystem.parse(self.units)
            Measure.parse(self.mode)
        except (ValueError, DomainError) as exc:
            raise UsageError(str(exc)) from None
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < MIN_ORDER:
            raise UsageError(f"quadrature order must be an integer >= {MIN_ORDER}, got {self.order!r}")
        if not (isinstance(self.step, (int, float)) and math.isfinite(self.step) and self.step > 0):
            raise UsageError(f"step must be positive, got {self.step!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        return self

    def output_dir(self) -> Path:
        path = Path(self.out_dir or os.environ.get(OUT_ENV) or ".")
        try:
            path.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise UsageError(f"cannot create output directory {path}: {exc}") from None
        if not os.access(path, os.W_OK):
            raise UsageError(f"output directory {path} is not writable")
        return path


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    return doc


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged = asdict(RunConfig())
    merged.update(load_config(args.config))
    for name in merged:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return RunConfig(**merged).validate()


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def dumps_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for key in sorted(record):
        value = record[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            for i, v in enumerate(value):
                flat[f"{name}.{i}"] = v
        else:
            flat[name] = value
    return flat


def write_record(out: Path, stem: str, record: dict, fmt: str) -> Path:
    if fmt == "json":
        path = out / f"{stem}.json"
        path.write_text(dumps_json(record), encoding="utf-8")
    else:
        flat = _flatten(record)
        path = out / f"{stem}.csv"
        path.write_text(dumps_csv(list(flat), [list(flat.values())]), encoding="utf-8")
    return path


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def cmd_state(args, cfg: RunConfig) -> list[Path]:
    c = make_unit_system(cfg.units)
    qn = QuantumNumbers(args.n1, args.n2, args.m)
    rule = rule_for(qn, c=c, order=cfg.order)
    a0 = c.bohr_radius
    energy = bound_energy(qn.n, c)
    z_mean = expectation(qn, lambda xi, eta: 0.5 * (xi - eta), rule, c)
    dipole = electric_dipole_conventional(qn, rule, c)
    probe = ParabolicPoint(0.7 * qn.n * a0, 1.3 * qn.n * a0, 0.4)
    psi = parabolic_wavefunction(qn, probe, c)
    local = apply_h0(lambda p: parabolic_wavefunction(qn, p, c), probe, c, cfg.step * a0) / psi
    record = {
        "qn": [qn.n1, qn.n2, qn.m],
        "n": qn.n,
        "units": cfg.units,
        "order": cfg.order,
        "energy": energy,
        "energy_ev": c.to_ev(energy),
        "norm": norm(qn, rule, c),
        "z_expectation_a0": z_mean / a0,
        "z_closed_form_a0": 1.5 * qn.n * (qn.n1 - qn.n2),
        "dipole": {"dx": dipole.dx, "dy": dipole.dy, "dz": dipole.dz},
        "dz_over_e_a0": dipole.dz / (c.elementary_charge * a0),
        "local_energy": float(np.real(local)),
        "local_energy_relative_error": abs(float(np.real(local)) - energy) / abs(energy),
        "step_a0": cfg.step,
    }
    return [write_record(cfg.output_dir(), "state", record, cfg.format)]


def cmd_charge(args, cfg: RunConfig) -> list[Path]:
    c = make_unit_system(cfg.units)
    if args.n < 1:
        raise DomainError(f"n must be >= 1, got {args.n}")
    if not (math.isfinite(args.field) and args.field >= 0):
        raise DomainError(f"field must be finite and >= 0, got {args.field}")
    g = solve_magnetic_charge(args.n, c)
    g_dirac = dirac_charge(1, c)
    qn = QuantumNumbers(0, args.n - 1, 0)
    field = args.field * c.atomic_field
    StarkConfig(field).warn_if_strong(c)
    routes = monopole_report(qn, c, field, cfg.mode, cfg.order)
    record = {
        "n": args.n,
        "units": cfg.units,
        "g": g.g,
        "eg_over_hbar_c": g.coupling(c),
        "sqrt3_n": math.sqrt(3.0) * args.n,
        "deviation_from_sqrt3n": g.coupling(c) - math.sqrt(3.0) * args.n,
        "ratio_to_dirac": g.g / g_dirac.g,
        "squid_flux_quanta": squid_signal(4.0 * math.pi * g.g, c),
        "field": field,
        "field_over_atomic": args.field,
        "state": routes,
    }
    return [write_record(cfg.output_dir(), "charge", record, cfg.format)]


def cmd_oscillate(args, cfg: RunConfig) -> list[Path]:
    c = make_unit_system(cfg.units)
    if args.steps < 1:
        raise DomainError(f"steps must be >= 1, got {args.steps}")
    if not (math.isfinite(args.t_max) and args.t_max >= 0):
        raise DomainError(f"t-max must be finite and >= 0, got {args.t_max}")
    pair = MixedPair.for_level(args.n, c)
    t_max = args.t_max / c.time_unit_s
    table = charge_series(pair, t_max, args.steps)
    header = ["t", "g_n", "g_0", "sum"]
    out = cfg.output_dir()
    if cfg.format == "csv":
        path = out / "oscillate.csv"
        path.write_text(dumps_csv(header, table.tolist()), encoding="utf-8")
    else:
        path = out / "oscillate.json"
        doc = {"n": args.n, "omega_n": pair.omega_n, "g_n": pair.g_n.g, "columns": header,
               "rows": table.tolist()}
        path.write_text(dumps_json(doc), encoding="utf-8")
    return [path]


def cmd_experiment(args, cfg: RunConfig) -> list[Path]:
    if args.scenario:
        try:
            with open(args.scenario, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read scenario {args.scenario}: {exc}") from None
        if isinstance(doc, dict):
            doc.setdefault("units", cfg.units)
    else:
        doc = default_scenario(make_unit_system(cfg.units), level=args.level)
    result = run_scenario(doc)
    out = cfg.output_dir()
    written = []
    for label, traj in result.trajectories.items():
        path = out / f"trajectory_{label}.csv"
        path.write_text(dumps_csv(["t", "x", "y", "z", "vx", "vy", "vz"], traj.rows().tolist()),
                        encoding="utf-8")
        written.append(path)
    for stem, payload in (("events", result.events), ("separation", result.separation)):
        path = out / f"{stem}.json"
        path.write_text(dumps_json(payload), encoding="utf-8")
        written.append(path)
    return written


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--units", choices=[u.value for u in UnitSystem],
                        help="unit system (default gaussian-cgs)")
    common.add_argument("--order", type=int,
                        help=f"Gauss-Laguerre order per axis, >= {MIN_ORDER} (default {DEFAULT_ORDER})")
    common.add_argument("--step", type=float,
                        help="finite-difference step in Bohr radii (default 0.005)")
    common.add_argument("--mode", choices=[m.value for m in Measure],
                        help="integration measure for the magnetic-current shift (default flat)")
    common.add_argument("--out-dir", dest="out_dir",
                        help=f"output directory (default ${OUT_ENV} or the current directory)")
    common.add_argument("--format", choices=["csv", "json"], help="report format (default json)")
    common.add_argument("--config", help="JSON file with RunConfig defaults; flags override it")

    parser = _Parser(prog="starkmono", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("state", parents=[common], help="energy, norm, <z> and dipole of one state")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("charge", parents=[common], help="magnetic charge of level n and both shift routes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", type=float, default=1e-4,
                   help="field strength as a fraction of the atomic field e/a0^2 (default 1e-4)")
    p.set_defaults(func=cmd_charge)

    p = sub.add_parser("oscillate", parents=[common], help="charge exchange time series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-max", dest="t_max", type=float, required=True, help="final time in seconds")
    p.add_argument("--steps", type=int, default=100, help="number of samples (default 100)")
    p.set_defaults(func=cmd_oscillate)

    p = sub.add_parser("experiment", parents=[common], help="beam deflection and SQUID readout")
    p.add_argument("scenario", nargs="?", help="scenario JSON (default: built-in scenario)")
    p.add_argument("--level", type=int, default=2, help="level of the built-in scenario (default 2)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
        written = args.func(args, cfg)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, DomainError) as exc:
        print(f"starkmono: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, FloatingPointError, ZeroDivisionError, OverflowError) as exc:
        print(f"starkmono: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
