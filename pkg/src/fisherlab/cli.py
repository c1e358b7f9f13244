"""Command-line front end.

Experiments are described by a JSON config with complex numbers written
as ``[re, im]`` pairs::

    {
      "generator": [[[0.5, 0.0], [0.0, 0.0]],
                    [[0.0, 0.0], [-0.5, 0.0]]],
      "input_state": [[0.7071067811865476, 0.0],
                      [0.7071067811865476, 0.0]],
      "lambda": 0.7,
      "measurement": "rotated:phi=0.7"
    }

Measurements are either a constructor spec string ("sld",
"q_family:q=0.3", "rotated:phi=1.57") or an explicit list of effect
matrices. Audit sweeps replace "measurement" with
``"sweep": {"param": "q" | "phi", "grid": [...]}``; simulations add a
``"sim": {"n", "trials", "seed", "interval"?}`` block.

Exit codes: 0 success, 1 golden-check mismatch, 2 malformed config,
3 degenerate physics (stationary state, constant generator spectrum,
flat likelihood), 4 violation found while --fail-on-violation is set.

Human-readable tables go to stdout with 6 significant digits; CSV files
carry full double precision and are the only machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .audit import audit, reproduce_counterexample, sweep_phi, sweep_q, write_sweep_csv
from .errors import (
    ConfigError,
    DegenerateGeneratorError,
    FisherlabError,
    FlatLikelihoodError,
    StationaryStateError,
)
from .estimation import crb_experiment
from .measurement import (
    Povm,
    q_family_measurement,
    rotated_qubit_measurement,
    sld_measurement,
)
from .metrology import qfi_report, sld
from .state_family import StateFamily, derivative

__all__ = [
    "ExperimentConfig",
    "SweepSpec",
    "SimSpec",
    "parse_config",
    "parse_config_text",
    "load_config",
    "serialize_config",
    "build_family",
    "build_povm",
    "main",
    "entry_point",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SweepSpec:
    param: str
    grid: tuple


@dataclass(frozen=True)
class SimSpec:
    n: int
    trials: int
    seed: int
    interval: tuple | None


@dataclass(frozen=True)
class ExperimentConfig:
    generator: np.ndarray
    input_state: np.ndarray
    lam: float
    measurement: object | None
    sweep: SweepSpec | None
    sim: SimSpec | None


def _complex_scalar(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(part, (int, float)) for part in value)
    ):
        raise ConfigError(f"field '{where}': expected a [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def _complex_vector(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"field '{where}': expected a non-empty list of [re, im] pairs")
    return np.array([_complex_scalar(v, f"{where}[{i}]") for i, v in enumerate(value)])


def _complex_matrix(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"field '{where}': expected a non-empty list of rows")
    rows = [_complex_vector(row, f"{where}[{i}]") for i, row in enumerate(value)]
    if len({row.size for row in rows}) != 1:
        raise ConfigError(f"field '{where}': rows have unequal lengths")
    return np.array(rows)


def _real_number(value, where: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"field '{where}': expected a number, got {value!r}")
    return float(value)


def _integer(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"field '{where}': expected an integer, got {value!r}")
    return value


def _parse_sweep(data) -> SweepSpec:
    if not isinstance(data, dict):
        raise ConfigError("field 'sweep': expected an object")
    param = data.get("param")
    if param not in ("q", "phi"):
        raise ConfigError(f"field 'sweep.param': expected \"q\" or \"phi\", got {param!r}")
    grid = data.get("grid")
    if not isinstance(grid, list) or not grid:
        raise ConfigError("field 'sweep.grid': expected a non-empty list of numbers")
    values = tuple(_real_number(v, f"sweep.grid[{i}]") for i, v in enumerate(grid))
    unknown = set(data) - {"param", "grid"}
    if unknown:
        raise ConfigError(f"field 'sweep': unknown keys {sorted(unknown)}")
    return SweepSpec(param=param, grid=values)


def _parse_sim(data) -> SimSpec:
    if not isinstance(data, dict):
        raise ConfigError("field 'sim': expected an object")
    n = _integer(data.get("n"), "sim.n")
    trials = _integer(data.get("trials"), "sim.trials")
    seed = _integer(data.get("seed"), "sim.seed")
    if n < 1:
        raise ConfigError(f"field 'sim.n': must be >= 1, got {n}")
    if trials < 2:
        raise ConfigError(f"field 'sim.trials': must be >= 2, got {trials}")
    interval = None
    if "interval" in data and data["interval"] is not None:
        raw = data["interval"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise ConfigError("field 'sim.interval': expected [low, high]")
        lo = _real_number(raw[0], "sim.interval[0]")
        hi = _real_number(raw[1], "sim.interval[1]")
        if not hi > lo:
            raise ConfigError("field 'sim.interval': high must exceed low")
        interval = (lo, hi)
    unknown = set(data) - {"n", "trials", "seed", "interval"}
    if unknown:
        raise ConfigError(f"field 'sim': unknown keys {sorted(unknown)}")
    return SimSpec(n=n, trials=trials, seed=seed, interval=interval)


def parse_config(data: dict) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from decoded JSON, naming bad fields."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    for required in ("generator", "input_state", "lambda"):
        if required not in data:
            raise ConfigError(f"missing required field '{required}'")
    known = {"generator", "input_state", "lambda", "measurement", "sweep", "sim"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")

    generator = _complex_matrix(data["generator"], "generator")
    input_state = _complex_vector(data["input_state"], "input_state")
    lam = _real_number(data["lambda"], "lambda")

    measurement = data.get("measurement")
    if measurement is not None and not isinstance(measurement, str):
        if not isinstance(measurement, list) or not measurement:
            raise ConfigError(
                "field 'measurement': expected a constructor string or a list of matrices"
            )
        measurement = tuple(
            _complex_matrix(m, f"measurement[{i}]") for i, m in enumerate(measurement)
        )

    sweep = _parse_sweep(data["sweep"]) if data.get("sweep") is not None else None
    sim = _parse_sim(data["sim"]) if data.get("sim") is not None else None
    return ExperimentConfig(
        generator=generator,
        input_state=input_state,
        lam=lam,
        measurement=measurement,
        sweep=sweep,
        sim=sim,
    )


def parse_config_text(text: str) -> ExperimentConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return parse_config(data)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}")
    return parse_config_text(text)


def _encode_complex_vector(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in vec]


def _encode_complex_matrix(mat: np.ndarray) -> list:
    return [_encode_complex_vector(row) for row in mat]


def config_to_dict(config: ExperimentConfig) -> dict:
    data = {
        "generator": _encode_complex_matrix(config.generator),
        "input_state": _encode_complex_vector(config.input_state),
        "lambda": config.lam,
    }
    if config.measurement is not None:
        if isinstance(config.measurement, str):
            data["measurement"] = config.measurement
        else:
            data["measurement"] = [_encode_complex_matrix(m) for m in config.measurement]
    if config.sweep is not None:
        data["sweep"] = {"param": config.sweep.param, "grid": list(config.sweep.grid)}
    if config.sim is not None:
        sim = {"n": config.sim.n, "trials": config.sim.trials, "seed": config.sim.seed}
        if config.sim.interval is not None:
            sim["interval"] = list(config.sim.interval)
        data["sim"] = sim
    return data


def serialize_config(config: ExperimentConfig) -> str:
    return json.dumps(config_to_dict(config), indent=2)


def build_family(config: ExperimentConfig) -> StateFamily:
    return StateFamily(generator=config.generator, input_state=config.input_state)


def _parse_spec_args(arg_text: str, spec: str) -> dict:
    args = {}
    for part in arg_text.split(","):
        key, sep, raw = part.partition("=")
        if not sep or not key:
            raise ConfigError(f"measurement spec {spec!r}: expected name:key=value")
        try:
            args[key] = float(raw)
        except ValueError:
            raise ConfigError(f"measurement spec {spec!r}: {raw!r} is not a number")
    return args


def build_povm(config: ExperimentConfig, family: StateFamily) -> Povm:
    """Materialize the configured measurement for the family at its lambda."""
    measurement = config.measurement
    if measurement is None:
        raise ConfigError("missing required field 'measurement'")
    if not isinstance(measurement, str):
        return Povm(effects=measurement)

    name, _, arg_text = measurement.partition(":")
    args = _parse_spec_args(arg_text, measurement) if arg_text else {}
    if name == "sld":
        if args:
            raise ConfigError("measurement spec 'sld' takes no arguments")
        return sld_measurement(sld(derivative(family, config.lam)))
    if name == "q_family":
        if set(args) != {"q"}:
            raise ConfigError("measurement spec 'q_family' needs exactly q=<value>")
        sd = derivative(family, config.lam)
        return q_family_measurement(sld(sd), sd.state, args["q"])
    if name == "rotated":
        if set(args) != {"phi"}:
            raise ConfigError("measurement spec 'rotated' needs exactly phi=<value>")
        return rotated_qubit_measurement(args["phi"])
    raise ConfigError(f"unknown measurement constructor {name!r}")


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def cmd_qfi(args) -> int:
    config = load_config(args.config)
    family = build_family(config)
    sldd = sld(derivative(family, config.lam))
    report = qfi_report(family, config.lam)
    print(f"F_Q     = {_fmt(report.qfi)}")
    print(f"||h||^2 = {_fmt(report.seminorm_sq)}")
    print(f"ratio   = {_fmt(report.ratio)}")
    print(f"N       = {_fmt(sldd.normalization)}")
    print(
        f"SLD eigenvalues = {_fmt(sldd.eigenvalue_plus)}, {_fmt(sldd.eigenvalue_minus)}"
    )
    return 0


def _print_audit_table(report, bits: bool) -> None:
    scale = 1.0 / _LN2 if bits else 1.0
    unit = " bits" if bits else " nats"
    print(f"entropy S   = {_fmt(report.entropy * scale)}{unit}")
    print(f"fisher F    = {_fmt(report.fisher)}")
    print(f"qfi F_Q     = {_fmt(report.qfi)}")
    print(f"||h||^2     = {_fmt(report.seminorm_sq)}")
    print(f"rhs         = {_fmt(report.rhs * scale)}{unit}")
    print(f"measurement_optimal = {'true' if report.measurement_optimal else 'false'}")
    if report.violated:
        print(f"VIOLATED: S = {report.entropy * scale:.6f} < {report.rhs * scale:.6f}")
    else:
        print(f"OK: S = {report.entropy * scale:.6f} ≥ {report.rhs * scale:.6f}")


def cmd_audit(args) -> int:
    config = load_config(args.config)
    family = build_family(config)
    has_measurement = config.measurement is not None
    has_sweep = config.sweep is not None
    if has_measurement == has_sweep:
        raise ConfigError("audit needs exactly one of 'measurement' or 'sweep'")

    if has_measurement:
        report = audit(family, config.lam, build_povm(config, family))
        _print_audit_table(report, args.bits)
        if args.fail_on_violation and report.violated:
            return 4
        return 0

    if args.out is None:
        raise ConfigError("sweep audits write CSV; pass --out PATH")
    if config.sweep.param == "q":
        reports = sweep_q(family, config.lam, config.sweep.grid)
    else:
        reports = sweep_phi(family, config.lam, config.sweep.grid)
    write_sweep_csv(args.out, config.sweep.grid, reports)
    violations = sum(1 for r in reports if r.violated)
    print(
        f"wrote {len(reports)} rows to {args.out} "
        f"({violations} violated, sweep over {config.sweep.param})"
    )
    if args.fail_on_violation and violations:
        return 4
    return 0


def cmd_simulate(args) -> int:
    config = load_config(args.config)
    if config.sim is None:
        raise ConfigError("missing required field 'sim'")
    if config.measurement is None:
        raise ConfigError("simulate needs a 'measurement' (sweeps are audit-only)")
    family = build_family(config)
    povm = build_povm(config, family)
    report = crb_experiment(
        family,
        povm,
        config.lam,
        config.sim.n,
        config.sim.trials,
        config.sim.seed,
        search_interval=config.sim.interval,
        csv_path=args.out,
    )
    print(f"empirical_std = {_fmt(report.empirical_std)}")
    print(f"crb           = {_fmt(report.crb)}")
    print(f"ratio         = {_fmt(report.ratio)}")
    print(f"trials        = {report.trials}")
    if args.out is not None:
        print(f"wrote per-trial estimates to {args.out}")
    return 0


def cmd_golden(args) -> int:
    report = reproduce_counterexample()
    checks = [
        ("qfi", report.qfi, 1.0),
        ("seminorm_sq", report.seminorm_sq, 1.0),
        ("fisher at phi=lambda", report.fisher, 1.0),
        ("entropy", report.entropy, 0.0),
        ("rhs", report.rhs, _LN2),
    ]
    ok = True
    for name, got, want in checks:
        if abs(got - want) <= 1e-9:
            print(f"PASS {name}: {_fmt(got)}")
        else:
            ok = False
            print(f"FAIL {name}: expected {want:.17g}, got {got:.17g}")
    if report.violated:
        print("PASS violated: true")
    else:
        ok = False
        print("FAIL violated: expected true, got false")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fisherlab",
        description="Pure-state quantum metrology toolbox and inequality auditor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_qfi = sub.add_parser("qfi", help="QFI, generator ceiling and SLD spectrum")
    p_qfi.add_argument("--config", required=True, help="path to JSON config")
    p_qfi.set_defaults(func=cmd_qfi)

    p_audit = sub.add_parser("audit", help="evaluate the entropy inequality")
    p_audit.add_argument("--config", required=True, help="path to JSON config")
    p_audit.add_argument("--out", help="CSV output path (required for sweeps)")
    p_audit.add_argument(
        "--fail-on-violation",
        action="store_true",
        help="exit 4 if any audited point violates the inequality",
    )
    p_audit.add_argument(
        "--bits",
        action="store_true",
        help="display entropies in bits (internal values stay in nats)",
    )
    p_audit.set_defaults(func=cmd_audit)

    p_sim = sub.add_parser("simulate", help="Monte-Carlo Cramer-Rao check")
    p_sim.add_argument("--config", required=True, help="path to JSON config")
    p_sim.add_argument("--out", help="CSV path for per-trial estimates")
    p_sim.set_defaults(func=cmd_simulate)

    p_golden = sub.add_parser("golden", help="run the built-in counterexample checks")
    p_golden.set_defaults(func=cmd_golden)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (StationaryStateError, DegenerateGeneratorError, FlatLikelihoodError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except FisherlabError as exc:
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
