"""Command-line interface: demo, sweep, validate, and mc subcommands.

Output is deterministic: identical configuration and seed produce
byte-identical bytes on stdout and in ``--out`` files.  CSV cells render
floats with 12 significant digits; JSON keeps full double precision.
Exit codes: 0 success, 1 a physics identity or invariant check failed,
2 bad configuration or arguments.

The optional ``--config`` file is JSON with nested sections; any flag
given on the command line overrides the corresponding file value::

    {
      "source": {"alpha": 100.0, "r": 1.0, "mode": "deamp",
                 "excess_noise": 0.0, "efficiency": 1.0},
      "chain": {"hwp_angle_deg": 22.5, "qwp_angle_deg": 0.0,
                "arm_efficiency": 1.0, "extinction_angle": 0.0,
                "electronic_noise": 0.0},
      "noise": {"common_phase": 0.0, "differential_phase": 0.0,
                "common_phase_rms": 0.0, "differential_phase_rms": 0.0},
      "detection": "direct",
      "mc": {"samples": 1000000, "seed": 12345, "batch_size": 250000}
    }
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from .montecarlo import McConfig, mc_current_variance, mc_photon_stats
from .optics import PumpPhase, SourceSpec
from .scenarios import (
    SCHEMA_VERSION,
    SWEEPABLE,
    DemoReport,
    ScenarioConfig,
    detected_state,
    noisy_source_state,
    run_demo,
    run_sweep,
    run_validate,
)

DEFAULT_SEED = 12345
DEFAULT_MC_SAMPLES = 1_000_000

__all__ = ["main", "ConfigError", "load_config"]


class ConfigError(Exception):
    """A configuration file or parameter combination that cannot be used."""


def _take_section(data: dict, name: str, allowed: tuple[str, ...]) -> dict:
    section = data.pop(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f"config section {name!r} must be an object")
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown keys in config section {name!r}: {sorted(unknown)}")
    return section


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse the JSON configuration file into a scenario configuration."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    source_raw = _take_section(
        data, "source", ("alpha", "r", "mode", "excess_noise", "efficiency")
    )
    chain_raw = _take_section(
        data,
        "chain",
        ("hwp_angle_deg", "qwp_angle_deg", "arm_efficiency", "extinction_angle", "electronic_noise"),
    )
    noise_raw = _take_section(
        data,
        "noise",
        ("common_phase", "differential_phase", "common_phase_rms", "differential_phase_rms"),
    )
    mc_requested = "mc" in data
    mc_raw = _take_section(data, "mc", ("samples", "seed", "batch_size"))
    detection = data.pop("detection", "direct")
    if data:
        raise ConfigError(f"unknown top-level config keys: {sorted(data)}")
    try:
        mode = PumpPhase(source_raw.pop("mode", "deamp"))
    except ValueError as exc:
        raise ConfigError(f"source.mode must be 'deamp' or 'amp': {exc}") from exc
    try:
        source = SourceSpec(pump_phase=mode, **source_raw)
        mc = None
        if mc_requested:
            mc = McConfig(
                n_samples=int(mc_raw.get("samples", DEFAULT_MC_SAMPLES)),
                seed=int(mc_raw.get("seed", DEFAULT_SEED)),
                batch_size=int(mc_raw.get("batch_size", 250_000)),
            )
        return ScenarioConfig(
            source=source, detection=detection, mc=mc, **chain_raw, **noise_raw
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    """Command-line flags win over config-file values."""
    source = config.source
    if args.alpha is not None:
        source = replace(source, alpha=args.alpha)
    if args.r is not None:
        source = replace(source, r=args.r)
    if args.mode is not None:
        source = replace(source, pump_phase=PumpPhase(args.mode))
    config = replace(config, source=source)
    if args.eta is not None:
        config = replace(config, arm_efficiency=args.eta)
    mc = config.mc
    if args.samples is not None:
        seed = args.seed if args.seed is not None else (mc.seed if mc else DEFAULT_SEED)
        batch = mc.batch_size if mc else 250_000
        mc = McConfig(n_samples=args.samples, seed=seed, batch_size=batch)
    elif args.seed is not None and mc is not None:
        mc = replace(mc, seed=args.seed)
    return replace(config, mc=mc)


def _build_scenario(args: argparse.Namespace) -> ScenarioConfig:
    config = load_config(args.config) if args.config else ScenarioConfig()
    try:
        return _apply_overrides(config, args)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid parameter value: {exc}") from exc


# ---------------------------------------------------------------------------
# serialization


def _csv_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def rows_to_csv(rows: list[dict]) -> str:
    """Render homogeneous record dicts as CSV (12 significant digits)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if rows:
        header = list(rows[0])
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row[key]) for key in header])
    return buffer.getvalue()


def payload_to_json(payload: dict) -> str:
    """Render a payload as JSON with full double precision."""
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _format_records(rows: list[dict], fmt: str, envelope_key: str) -> str:
    if fmt == "csv":
        return rows_to_csv(rows)
    return payload_to_json({envelope_key: rows})


# ---------------------------------------------------------------------------
# rendering


def _render_demo(report: DemoReport) -> str:
    record = report.record
    lines = [
        "bright twin-beam inseparability measurement - canonical demonstration",
        "",
        "configuration:",
        f"  alpha = {record.alpha:g}   r = {record.r:g}   mode = {record.mode}",
        f"  source efficiency = {record.source_efficiency:g}   "
        f"excess noise = {record.excess_noise:g}   arm efficiency = {record.arm_efficiency:g}",
        f"  plates: half-wave @ {record.hwp_angle_deg:g} deg, "
        f"quarter-wave @ {record.qwp_angle_deg:g} deg",
        "",
        "dc calibration:",
        f"  dc_c = {record.dc_c:.12g}   dc_d = {record.dc_d:.12g}   "
        f"alpha^2 (calibrated) = {record.alpha_sq_calibrated:.12g}",
        "",
        "rf current variances:",
        f"  var(i_sum)  = {record.i_sum_variance:.12g}   "
        f"normalized = {record.norm_sum_variance:.12g}",
        f"  var(i_diff) = {record.i_diff_variance:.12g}   "
        f"normalized = {record.norm_diff_variance:.12g}",
        "",
        "inseparability witness:",
        f"  measured total = {record.measured_total:.12g}   "
        f"state total = {record.state_total:.12g}   bound = {record.bound:g}",
        f"  margin = {record.margin_db:.6f} dB   "
        f"entangled = {'yes' if record.entangled else 'no'}",
        "",
        "identity checks:",
    ]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"  [{status}] {check.name}: {check.detail}")
    lines.append("")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_demo(args: argparse.Namespace) -> int:
    config = _build_scenario(args)
    report = run_demo(config)
    sys.stdout.write(_render_demo(report))
    if args.out:
        rows = [report.record.to_dict()]
        if args.format == "csv":
            _emit(rows_to_csv(rows), args.out)
        else:
            payload = {
                "records": rows,
                "checks": [check.to_dict() for check in report.checks],
            }
            _emit(payload_to_json(payload), args.out)
    return 0 if report.passed else 1


def _parse_grid(args: argparse.Namespace, parser: argparse.ArgumentParser) -> list[float]:
    if (args.grid is None) == (args.values is None):
        parser.error("sweep needs exactly one of --grid or --values")
    if args.grid is not None:
        parts = args.grid.split(":")
        if len(parts) != 3:
            parser.error("--grid must look like start:stop:count")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            parser.error("--grid must look like start:stop:count with numeric fields")
        if count < 1:
            parser.error("--grid count must be >= 1")
        if count == 1:
            return [start]
        step = (stop - start) / (count - 1)
        return [start + k * step for k in range(count)]
    try:
        return [float(token) for token in args.values.split(",") if token.strip()]
    except ValueError:
        parser.error("--values must be a comma-separated list of numbers")
    raise AssertionError("unreachable")


def _cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = _build_scenario(args)
    values = _parse_grid(args, parser)
    try:
        records = run_sweep(config, args.parameter, values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [record.to_dict() for record in records]
    _emit(_format_records(rows, args.format, "records"), args.out)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    checks = run_validate(seed=seed, include_mc=args.mc)
    lines = []
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"[{status}] {check.name}: {check.detail}")
    passed = sum(1 for c in checks if c.passed)
    lines.append(f"{passed}/{len(checks)} checks passed")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        rows = [check.to_dict() for check in checks]
        _emit(_format_records(rows, args.format, "checks"), args.out)
    return 0 if passed == len(checks) else 1


def _cmd_mc(args: argparse.Namespace) -> int:
    config = _build_scenario(args)
    if config.mc is None:
        seed = args.seed if args.seed is not None else DEFAULT_SEED
        config = replace(config, mc=McConfig(n_samples=DEFAULT_MC_SAMPLES, seed=seed))
    detected = detected_state(config, noisy_source_state(config))
    mc_sum, mc_diff = mc_current_variance(detected, ("c", "d"), config.mc)
    photon = mc_photon_stats(detected, "c", config.mc)
    rows = []
    for kind, rep in (("current_sum", mc_sum), ("current_diff", mc_diff), ("photon_flux_c", photon)):
        rows.append(
            {
                "schema_version": SCHEMA_VERSION,
                "kind": kind,
                "alpha": config.source.alpha,
                "r": config.source.r,
                "mode": config.source.pump_phase.value,
                "samples": rep.n_samples,
                "seed": config.mc.seed,
                "mc_mean": rep.mc_mean,
                "mc_variance": rep.mc_variance,
                "linearized_mean": rep.linearized_mean,
                "linearized_variance": rep.linearized_variance,
                "relative_error": rep.relative_error,
                "standard_error": rep.standard_error,
            }
        )
    _emit(_format_records(rows, args.format, "records"), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_shared_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="JSON configuration file")
    sub.add_argument("--alpha", type=float, help="coherent amplitude per beam")
    sub.add_argument("--r", type=float, help="squeezing parameter")
    sub.add_argument("--mode", choices=["deamp", "amp"], help="pump phase regime")
    sub.add_argument("--eta", type=float, help="detection-arm efficiency in (0, 1]")
    sub.add_argument("--seed", type=int, help="random seed for sampling/validation")
    sub.add_argument("--samples", type=int, help="Monte Carlo sample count")
    sub.add_argument(
        "--format", choices=["csv", "json"], default="csv", help="record output format"
    )
    sub.add_argument("--out", metavar="PATH", help="write records to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eprsim",
        description="Simulate phase-lock-free inseparability measurement on bright twin beams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="canonical demonstration with identity checks")
    _add_shared_flags(demo)

    sweep = sub.add_parser("sweep", help="sweep one parameter across a grid")
    sweep.add_argument("parameter", choices=list(SWEEPABLE), help="parameter to sweep")
    sweep.add_argument("--grid", metavar="START:STOP:COUNT", help="inclusive linear grid")
    sweep.add_argument("--values", metavar="V1,V2,...", help="explicit grid values")
    _add_shared_flags(sweep)

    validate = sub.add_parser("validate", help="run the cross-module invariant suite")
    validate.add_argument("--mc", action="store_true", help="include Monte Carlo checks")
    _add_shared_flags(validate)

    mc = sub.add_parser("mc", help="Monte Carlo cross-check of the linearized model")
    _add_shared_flags(mc)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "demo":
            return _cmd_demo(args)
        if args.command == "sweep":
            return _cmd_sweep(args, parser)
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "mc":
            return _cmd_mc(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
