"""Command-line front end.

Subcommands: ``dynamics``, ``steady``, ``plane``, ``point`` write CSV grids;
``verify`` runs the oracle cross-checks. Exit status is 0 on success, 1 on
usage or validation errors and 2 when a verification check fails.

Parameters may also come from a flat ``key = value`` file given with
``--config``; keys are the long flag names (dashes or underscores) and
command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import math
import sys
from contextlib import contextmanager

from . import kernels
from .errors import ModelError
from .params import SYMMETRIC_ZETA, ModelParams
from .sweeps import AxisSpec, point_grid, sweep_dynamics, sweep_steady, sweep_transfer_plane
from .verification import format_table, run_checks

EXIT_OK, EXIT_INVALID, EXIT_VERIFY_FAILED = 0, 1, 2

PARAM_DEFAULTS = {
    "lam": 1.0,
    "R": 0.0,
    "zeta1": SYMMETRIC_ZETA,
    "theta": 0.5 * math.pi,
    "phi": 0.0,
    "omega0": 1.0,
}

DEFAULTS = {
    "dynamics": {
        **PARAM_DEFAULTS,
        "R_min": 0.0, "R_max": 1.0, "R_points": 11,
        "lt_min": 0.0, "lt_max": 10.0, "lt_points": 2001,
        "no_densify": False,
    },
    "steady": {
        **PARAM_DEFAULTS,
        "theta_min": 0.25 * math.pi, "theta_max": 0.5 * math.pi, "theta_points": 201,
        "zeta1_min": 0.0, "zeta1_max": 1.0, "zeta1_points": 201,
    },
    "plane": {
        "a_min": 0.0, "a_max": 1.0, "a_points": 201,
        "b_min": 0.0, "b_max": 1.0, "b_points": 201,
    },
    "point": {**PARAM_DEFAULTS, "lt": None},
    "verify": {"samples": 2000, "seed": 12345, "tol": []},
}
COMMON_DEFAULTS = {"output": "-", "workers": 1}

# Alternative spellings of one quantity; setting one discards the other.
ALIASES = (("theta", "theta_pi"), ("phi", "phi_pi"), ("zeta1", "zeta2"))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _add(parser, cmd, flag, dest, type_, help_):
    default = DEFAULTS.get(cmd, {}).get(dest, COMMON_DEFAULTS.get(dest))
    shown = default is not None and not isinstance(default, (bool, list))
    suffix = f" (default: {_fmt(default)})" if shown else ""
    parser.add_argument(flag, dest=dest, type=type_, help=help_ + suffix)


def _add_params(p, cmd):
    _add(p, cmd, "--lambda", "lam", float, "reservoir spectral width lambda > 0")
    _add(p, cmd, "--R", "R", float, "coupling ratio R = L/lambda >= 0")
    _add(p, cmd, "--zeta1", "zeta1", float, "charger-reservoir relative coupling in [0, 1]")
    p.add_argument("--zeta2", dest="zeta2", type=float,
                   help="battery-reservoir relative coupling (default: sqrt(1 - zeta1^2))")
    _add(p, cmd, "--theta", "theta", float, "initial-state angle in radians, [0, pi/2]")
    p.add_argument("--theta-pi", dest="theta_pi", type=float, help="theta given in units of pi")
    _add(p, cmd, "--phi", "phi", float, "relative phase in radians")
    p.add_argument("--phi-pi", dest="phi_pi", type=float, help="phi given in units of pi")
    _add(p, cmd, "--omega0", "omega0", float, "qubit transition frequency (energy unit)")


def _add_axis(p, cmd, name, label):
    _add(p, cmd, f"--{name}-min", f"{name}_min", float, f"lower end of the {label} axis")
    _add(p, cmd, f"--{name}-max", f"{name}_max", float, f"upper end of the {label} axis")
    _add(p, cmd, f"--{name}-points", f"{name}_points", int, f"number of {label} samples")


def _add_common(p, cmd):
    p.add_argument("--config", dest="config", help="key = value parameter file")
    p.add_argument("-o", "--output", dest="output",
                   help="destination file, '-' for standard output (default: -)")
    _add(p, cmd, "--workers", "workers", int, "parallel workers for grid evaluation")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qbcharge",
        description="Charger-battery qubits in a common Lorentzian reservoir.",
        epilog="CSV columns: lt,R,zeta1,theta,phi,delta_e_b,delta_e_a,power,transfer_rate,"
        "concurrence,u_left_xz,u_right_2,tightness_xz,u_left_xyz,u_right_3,tightness_xyz. "
        "Empty cells are undefined values. Exit codes: 0 ok, 1 invalid input, 2 verification failed.",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    parser.subcommands = {}

    def subparser(name, help_):
        p = sub.add_parser(name, help=help_, description=help_,
                           argument_default=argparse.SUPPRESS)
        parser.subcommands[name] = p
        return p

    p = subparser("dynamics", "stored energy, power and information measures over (R, lt)")
    _add_params(p, "dynamics")
    _add_axis(p, "dynamics", "R", "coupling ratio")
    _add_axis(p, "dynamics", "lt", "dimensionless time lambda*t")
    p.add_argument("--no-densify", dest="no_densify", action="store_true",
                   help="keep lt-points as given instead of multiplying it by max(1, R_max)")
    _add_common(p, "dynamics")

    p = subparser("steady", "steady-state observables over (theta, zeta1) at fixed phi")
    _add_params(p, "steady")
    _add_axis(p, "steady", "theta", "theta (radians)")
    _add_axis(p, "steady", "zeta1", "zeta1")
    _add_common(p, "steady")

    p = subparser("plane", "observables over battery/charger populations (a, b), theta = pi/2")
    _add_axis(p, "plane", "a", "charger population |eta1|^2")
    _add_axis(p, "plane", "b", "battery population |eta2|^2")
    _add_common(p, "plane")

    p = subparser("point", "full report for one parameter set and time, as one CSV row")
    _add_params(p, "point")
    _add(p, "point", "--lt", "lt", float, "dimensionless time lambda*t (required)")
    _add_common(p, "point")

    p = subparser("verify", "run the oracle cross-check suite and print a pass/fail table")
    _add(p, "verify", "--samples", "samples", int, "random states per sampled check")
    _add(p, "verify", "--seed", "seed", int, "base seed")
    p.add_argument("--tol", dest="tol", action="append", metavar="CHECK=VALUE",
                   help="override one check's tolerance (repeatable)")
    _add_common(p, "verify")
    return parser


def read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _config_layer(parser, command, raw: dict[str, str]) -> dict:
    sub = parser.subcommands[command]
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    actions.pop("output", None)
    layer = {}
    for key, value in raw.items():
        if key == "output":
            layer["output"] = value
            continue
        action = actions.get(key)
        if action is None:
            raise UsageError(f"unknown config key {key!r} for '{command}'")
        if action.nargs == 0:
            if value.lower() not in ("1", "0", "true", "false", "yes", "no"):
                raise UsageError(f"config key {key!r} expects a boolean, got {value!r}")
            layer[key] = value.lower() in ("1", "true", "yes")
        elif isinstance(action, argparse._AppendAction):
            layer[key] = [v.strip() for v in value.split(",") if v.strip()]
        else:
            try:
                layer[key] = action.type(value) if action.type else value
            except ValueError:
                raise UsageError(f"config key {key!r}: invalid value {value!r}") from None
    return layer


def resolve(argv) -> dict:
    """Merge defaults, config file and command-line flags into one dict."""
    parser = build_parser()
    ns = vars(parser.parse_args(argv))
    command = ns.pop("command")
    merged = {**COMMON_DEFAULTS, **DEFAULTS[command]}
    layers = []
    if "config" in ns:
        layers.append(_config_layer(parser, command, read_config(ns.pop("config"))))
    layers.append(ns)
    for layer in layers:
        for a, b in ALIASES:
            if a in layer:
                merged.pop(b, None)
            if b in layer:
                merged.pop(a, None)
        merged.update(layer)
    merged["command"] = command
    return merged


def params_from(cfg: dict) -> ModelParams:
    theta = cfg["theta_pi"] * math.pi if "theta_pi" in cfg else cfg["theta"]
    phi = cfg["phi_pi"] * math.pi if "phi_pi" in cfg else cfg["phi"]
    if "zeta2" in cfg:
        z2 = cfg["zeta2"]
        z1 = cfg["zeta1"] if "zeta1" in cfg else math.sqrt(max(0.0, 1.0 - z2 * z2))
    else:
        z1, z2 = cfg["zeta1"], None
    return ModelParams(
        lam=cfg["lam"], coupling_ratio=cfg["R"], zeta1=z1, zeta2=z2,
        theta=theta, phi=phi, omega0=cfg["omega0"],
    )


def _axis(cfg, name, label=None) -> AxisSpec:
    return AxisSpec(label or name, cfg[f"{name}_min"], cfg[f"{name}_max"], cfg[f"{name}_points"])


@contextmanager
def _open_output(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _run_grid(cfg):
    command = cfg["command"]
    workers = cfg["workers"]
    if workers < 1:
        raise UsageError("--workers must be >= 1")
    if command == "dynamics":
        grid = sweep_dynamics(
            params_from(cfg), _axis(cfg, "R"), _axis(cfg, "lt"),
            densify=not cfg["no_densify"], workers=workers,
        )
    elif command == "steady":
        params = params_from(cfg)
        grid = sweep_steady(params.phi, _axis(cfg, "theta"), _axis(cfg, "zeta1"), workers=workers)
    elif command == "plane":
        grid = sweep_transfer_plane(_axis(cfg, "a"), _axis(cfg, "b"), workers=workers)
    else:
        if cfg["lt"] is None:
            raise UsageError("point: --lt is required")
        grid = point_grid(params_from(cfg), cfg["lt"])
    with _open_output(cfg["output"]) as fh:
        grid.to_csv(fh)
    return EXIT_OK


def _run_verify(cfg):
    tolerances = {}
    for item in cfg["tol"] or []:
        name, sep, value = item.partition("=")
        try:
            tolerances[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--tol expects CHECK=VALUE, got {item!r}") from None
        if not sep:
            raise UsageError(f"--tol expects CHECK=VALUE, got {item!r}")
    try:
        results = run_checks(cfg["samples"], cfg["seed"], tolerances)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    with _open_output(cfg["output"]) as fh:
        fh.write(f"backend: {kernels.BACKEND}\n")
        fh.write(format_table(results) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def run(argv=None) -> int:
    try:
        cfg = resolve(sys.argv[1:] if argv is None else list(argv))
        if cfg["command"] == "verify":
            return _run_verify(cfg)
        return _run_grid(cfg)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, ModelError, OSError) as exc:
        print(str(exc) if isinstance(exc, UsageError) else f"qbcharge: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
