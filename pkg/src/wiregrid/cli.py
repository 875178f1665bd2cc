"""Command-line surface: config parsing, dispatch, CSV/JSON emission.

Exit codes: 0 success, 1 configuration or parse error, 2 numeric/domain
error, 3 I/O error.  Errors are written to stderr as a one-line JSON
object so scripted callers can branch on them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .budget import (
    absorbed_fraction_quadrature,
    absorbed_fraction_two_beams,
    coverage_fraction,
    single_beam_budget,
    two_beam_budget,
)
from .complementarity import grid_metrics, sweep_thickness, worst_case_intensity_pair
from .config import DEFAULTS, ExperimentConfig, derive_geometry, validate_config
from .diffraction import (
    detector_windows,
    far_field_amplitude,
    fringe_field_profile,
    symmetric_grid,
    two_beam_grid_intensity,
    wire_strip_complement_profile,
)
from .errors import (
    BandRangeError,
    ConfigError,
    ConfigParseError,
    DomainError,
    PeakNotFoundError,
    SamplingError,
)
from .montecarlo import estimate_metrics, sample_fates
from .scenarios import truth_table

LENGTH_UNITS = {"nm": 1e-9, "um": 1e-6, "mm": 1e-3, "m": 1.0}
ANGLE_UNITS = {"rad": 1.0, "mrad": 1e-3}

_LENGTH_KEYS = ("wavelength", "wire_thickness", "wire_pitch", "beam_side")
_ANGLE_KEYS = ("crossing_angle", "detector_half_width")
_COUNT_KEYS = ("wire_count", "photon_count")

_VALUE_RE = re.compile(r"^([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*([A-Za-z]*)$")


@dataclass
class RunRequest:
    """One CLI invocation after argument parsing."""

    subcommand: str
    config_path: str | None = None
    output_format: str = "json"
    output_path: str = "-"
    overrides: list[str] = field(default_factory=list)
    options: dict = field(default_factory=dict)


def _parse_value(key: str, raw: str, line: int | None = None) -> float | int:
    raw = raw.strip()
    m = _VALUE_RE.match(raw)
    if not m:
        raise ConfigParseError(f"cannot parse value {raw!r} for {key}", line)
    number, unit = m.group(1), m.group(2)
    if key in _COUNT_KEYS:
        if unit:
            raise ConfigParseError(f"{key} takes a bare integer, got unit {unit!r}", line)
        try:
            return int(number)
        except ValueError:
            raise ConfigParseError(f"{key} must be an integer, got {number!r}", line) from None
    units = LENGTH_UNITS if key in _LENGTH_KEYS else ANGLE_UNITS
    if unit not in units:
        kind = "length" if key in _LENGTH_KEYS else "angle"
        problem = "missing" if not unit else f"unknown {kind}"
        raise ConfigParseError(
            f"{problem} unit {unit!r} for {key} "
            f"(expected one of {', '.join(sorted(units))})",
            line,
        )
    try:
        return float(number) * units[unit]
    except ValueError:
        raise ConfigParseError(f"bad number {number!r} for {key}", line) from None


def parse_config(text: str) -> ExperimentConfig:
    """Parse line-oriented ``key = value`` text with unit suffixes.

    Comments start with '#'; missing keys fall back to the built-in
    defaults; unknown keys are errors carrying the line number.
    """
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ConfigParseError(
                f"unknown key {key!r} (expected one of {', '.join(DEFAULTS)})", lineno
            )
        if key in values:
            raise ConfigParseError(f"duplicate key {key!r}", lineno)
        values[key] = _parse_value(key, value, lineno)
    return validate_config(ExperimentConfig(**values))


def apply_overrides(config: ExperimentConfig, overrides: list[str]) -> ExperimentConfig:
    """Apply ``key=value`` overrides after file parsing, then revalidate."""
    changes: dict = {}
    for item in overrides:
        if "=" not in item:
            raise ConfigParseError(f"override must look like key=value, got {item!r}")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in DEFAULTS:
            raise ConfigParseError(f"unknown override key {key!r}")
        changes[key] = _parse_value(key, value)
    return validate_config(config.replace(**changes))


def load_config(request: RunRequest) -> ExperimentConfig:
    if request.config_path:
        with open(request.config_path, encoding="utf-8") as fh:
            config = parse_config(fh.read())
    else:
        config = validate_config(ExperimentConfig())
    return apply_overrides(config, request.overrides)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    if value is None:
        return ""
    return str(value)


def _config_echo(config: ExperimentConfig) -> dict:
    geo = derive_geometry(config)
    echo = config.as_dict()
    echo["fringe_spacing"] = geo.fringe_spacing
    echo["fringe_consistency"] = geo.fringe_consistency
    return echo


def emit_rows(header: list[str], rows: list[list], fmt: str, out: io.TextIOBase) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    else:
        out.write(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
        out.write("\n")


def emit_report(sections: dict, fmt: str, out: io.TextIOBase) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["quantity", "value"])
        for section, payload in sections.items():
            if isinstance(payload, dict):
                for key, value in payload.items():
                    writer.writerow([f"{section}.{key}", _fmt(value)])
            else:
                writer.writerow([section, _fmt(payload)])
    else:
        out.write(json.dumps(sections, indent=2, default=float))
        out.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_pattern(request: RunRequest, config: ExperimentConfig, out) -> int:
    half_range_mrad = request.options.get("theta_range", 10.0)
    samples = request.options.get("samples", 4001)
    if samples < 3:
        raise DomainError("samples must be at least 3")
    theta = symmetric_grid(half_range_mrad * 1e-3, samples)
    intensity = two_beam_grid_intensity(theta, config)
    if request.output_format == "json":
        emit_report(
            {
                "config": _config_echo(config),
                "scale_note": "relative intensity; overall scale arbitrary",
                "pattern": {
                    "theta_rad": [float(t) for t in theta],
                    "intensity_rel": [float(v) for v in intensity],
                },
            },
            "json",
            out,
        )
    else:
        emit_rows(
            ["theta_rad", "intensity_rel"],
            [[float(t), float(v)] for t, v in zip(theta, intensity)],
            "csv",
            out,
        )
    return 0


def _cmd_budget(request: RunRequest, config: ExperimentConfig, out) -> int:
    two = two_beam_budget(config)
    single = single_beam_budget(config)
    windows = detector_windows(config)
    n = config.photon_count
    sections = {
        "config": _config_echo(config),
        "detector_windows_rad": {
            "negative": list(windows[0]),
            "positive": list(windows[1]),
            "half_width": config.detector_half_width,
        },
        "two_beam_fractions": {
            "absorbed": two.absorbed,
            "covered": two.covered,
            "diffracted_total": two.diffracted_total,
            "diffracted_to_detectors": two.diffracted_to_detectors,
            "diffracted_away": two.diffracted_away,
            "detected": two.detected,
            "undisturbed_detected": two.undisturbed_detected,
        },
        "two_beam_counts": two.expected_counts(n),
        "single_beam": {
            "blocked": single.blocked,
            "own_detector_decrease": single.own_detector_decrease,
            "wrong_detector": single.wrong_detector,
            "detector_half_width_rad": single.detector_half_width,
        },
        "single_beam_counts": {
            "blocked": single.blocked * n,
            "own_detector_decrease": single.own_detector_decrease * n,
            "wrong_detector": single.wrong_detector * n,
        },
    }
    emit_report(sections, request.output_format, out)
    return 0


def _cmd_metrics(request: RunRequest, config: ExperimentConfig, out) -> int:
    x = absorbed_fraction_two_beams(config)
    y = coverage_fraction(config)
    report = grid_metrics(config)
    area_mm2 = (config.beam_side * 1e3) ** 2
    pair = worst_case_intensity_pair(x, y, config.photon_count, area_mm2)
    sections = {
        "config": _config_echo(config),
        "fractions": {"absorbed": x, "covered": y},
        "worst_case_intensities_per_mm2": {"i_min": pair.i_min, "i_max": pair.i_max},
        "report": report.as_dict(),
    }
    emit_report(sections, request.output_format, out)
    return 0


def _cmd_sweep(request: RunRequest, config: ExperimentConfig, out) -> int:
    b_min = request.options.get("b_min", 1.0) * 1e-6
    b_max = request.options.get("b_max", 150.0) * 1e-6
    steps = request.options.get("steps", 150)
    if steps < 1:
        raise DomainError("steps must be at least 1")
    rows = sweep_thickness(config, list(np.linspace(b_min, b_max, steps)))
    header = [
        "wire_thickness_um",
        "absorbed",
        "covered",
        "visibility_lower",
        "classical_whichway_lower",
        "visibility_sq",
        "classical_sq",
        "quantum_sum",
        "classical_sum",
        "in_domain",
        "note",
    ]
    table = [
        [
            row.wire_thickness * 1e6,
            row.absorbed,
            row.covered,
            row.visibility_lower,
            row.classical_whichway_lower,
            row.visibility_sq,
            row.classical_sq,
            row.quantum_sum,
            row.classical_sum,
            row.in_domain,
            row.note,
        ]
        for row in rows
    ]
    if request.output_format == "json":
        emit_report(
            {"config": _config_echo(config), "sweep": [dict(zip(header, r)) for r in table]},
            "json",
            out,
        )
    else:
        emit_rows(header, table, "csv", out)
    return 0


def _cmd_simulate(request: RunRequest, config: ExperimentConfig, out) -> int:
    seed = request.options.get("seed", 0)
    counts = sample_fates(two_beam_budget(config), config.photon_count, seed)
    metrics = estimate_metrics(counts, config)
    sections = {
        "config": _config_echo(config),
        "counts": counts.as_dict(),
        "estimates": metrics.as_dict(),
    }
    emit_report(sections, request.output_format, out)
    return 0


def _cmd_scenario(request: RunRequest, config: ExperimentConfig, out) -> int:
    labels = ("bare_beams", "wire_grid", "output_splitter")
    header = [
        "scenario",
        "grid",
        "output_beam_splitter",
        "visibility_measured",
        "quantum_whichway",
        "visibility",
        "classical_whichway",
        "quantum_sum",
        "classical_sum",
        "rationale",
    ]
    table = []
    for label, sr in zip(labels, truth_table(config)):
        table.append(
            [
                label,
                sr.scenario.grid,
                sr.scenario.output_beam_splitter,
                sr.scenario.visibility_measured,
                sr.report.quantum_whichway,
                sr.report.visibility_lower,
                sr.report.classical_whichway_lower,
                sr.report.quantum_sum,
                sr.report.classical_sum,
                sr.rationale,
            ]
        )
    if request.output_format == "json":
        emit_report(
            {"config": _config_echo(config), "scenarios": [dict(zip(header, r)) for r in table]},
            "json",
            out,
        )
    else:
        emit_rows(header, table, "csv", out)
    return 0


def _cmd_validate(request: RunRequest, config: ExperimentConfig, out) -> int:
    checks: list[tuple[str, bool, str]] = []
    geo = derive_geometry(config)
    checks.append(("config_invariants", True, "all invariants hold"))
    checks.append(
        (
            "fringe_pitch_match",
            geo.fringe_consistency <= 0.01,
            f"|fringe spacing - pitch| / pitch = {geo.fringe_consistency:.3g}",
        )
    )

    x_closed = absorbed_fraction_two_beams(config)
    x_quad = absorbed_fraction_quadrature(config)
    rel = abs(x_quad - x_closed) / x_closed
    checks.append(
        (
            "absorbed_closed_vs_quadrature",
            rel < 1e-10,
            f"relative difference {rel:.3g}",
        )
    )

    theta = np.linspace(-0.0025, 0.0025, 1501)
    complement = wire_strip_complement_profile(config, max_sin_theta=0.0025)
    numeric = np.abs(far_field_amplitude(complement, theta)) ** 2
    closed = two_beam_grid_intensity(theta, config)
    scale = float(np.dot(numeric, closed) / np.dot(closed, closed))
    nrms = float(
        np.sqrt(np.mean((numeric - scale * closed) ** 2))
        / np.sqrt(np.mean((scale * closed) ** 2))
    )
    checks.append(
        ("fourier_oracle_vs_closed_form", nrms < 0.01, f"normalized RMS {nrms:.3g}")
    )

    full = fringe_field_profile(config, grid_present=False, max_sin_theta=0.0025)
    masked = fringe_field_profile(config, grid_present=True, max_sin_theta=0.0025)
    a_full = far_field_amplitude(full, theta)
    a_sum = far_field_amplitude(masked, theta) + far_field_amplitude(complement, theta)
    peak = float(np.max(np.abs(a_full)))
    linearity = float(np.max(np.abs(a_full - a_sum))) / peak
    checks.append(
        ("babinet_amplitude_linearity", linearity < 1e-10, f"max deviation {linearity:.3g} of peak")
    )

    header = ["check", "status", "detail"]
    table = [[name, "pass" if ok else "FAIL", detail] for name, ok, detail in checks]
    if request.output_format == "json":
        emit_report(
            {
                "config": _config_echo(config),
                "checks": [
                    {"check": n, "passed": ok, "detail": det} for n, ok, det in checks
                ],
            },
            "json",
            out,
        )
    else:
        emit_rows(header, table, "csv", out)
    return 0 if all(ok for _, ok, _ in checks) else 2


_COMMANDS = {
    "pattern": _cmd_pattern,
    "budget": _cmd_budget,
    "metrics": _cmd_metrics,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "scenario": _cmd_scenario,
    "validate": _cmd_validate,
}


def run(request: RunRequest) -> int:
    """Execute a request, writing the artifact to its output destination."""
    if request.subcommand not in _COMMANDS:
        raise ConfigParseError(f"unknown subcommand {request.subcommand!r}")
    if request.output_format not in ("csv", "json"):
        raise ConfigParseError(f"unknown output format {request.output_format!r}")
    config = load_config(request)
    if request.output_path == "-":
        return _COMMANDS[request.subcommand](request, config, sys.stdout)
    with open(request.output_path, "w", encoding="utf-8", newline="") as fh:
        return _COMMANDS[request.subcommand](request, config, fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wiregrid",
        description=(
            "Crossed-beam wire-grid interferometry: diffraction patterns, "
            "photon budgets, visibility and which-way reports"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="experiment config file")
    common.add_argument(
        "--format", choices=("csv", "json"), default="json", help="output format"
    )
    common.add_argument(
        "--out", metavar="PATH", default="-", help="output file, '-' for stdout"
    )
    common.add_argument(
        "--override",
        metavar="KEY=VALUE",
        action="append",
        default=[],
        help="parameter override applied after the config file (repeatable)",
    )

    sub = parser.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("pattern", parents=[common], help="two-beam diffraction pattern rows")
    p.add_argument("--theta-range", type=float, default=10.0, metavar="MRAD",
                   help="half-range of the angular grid in mrad")
    p.add_argument("--samples", type=int, default=4001, help="number of angular samples")
    sub.add_parser("budget", parents=[common], help="photon-fate budgets and counts")
    sub.add_parser("metrics", parents=[common], help="visibility and which-way report")
    p = sub.add_parser("sweep", parents=[common], help="wire-thickness sweep table")
    p.add_argument("--b-min", type=float, default=1.0, metavar="UM")
    p.add_argument("--b-max", type=float, default=150.0, metavar="UM")
    p.add_argument("--steps", type=int, default=150)
    p = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo run")
    p.add_argument("--seed", type=int, default=0)
    sub.add_parser("scenario", parents=[common], help="scenario truth table")
    sub.add_parser("validate", parents=[common], help="config check and cross-validation suite")
    return parser


def _request_from_args(args: argparse.Namespace) -> RunRequest:
    options = {}
    for name in ("theta_range", "samples", "b_min", "b_max", "steps", "seed"):
        if hasattr(args, name):
            options[name] = getattr(args, name)
    return RunRequest(
        subcommand=args.subcommand,
        config_path=args.config,
        output_format=args.format,
        output_path=args.out,
        overrides=list(args.override),
        options=options,
    )


def _emit_error(exc: Exception, code: int) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
    print(json.dumps(payload), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    request = _request_from_args(args)
    try:
        return run(request)
    except (ConfigParseError, ConfigError) as exc:
        return _emit_error(exc, 1)
    except (DomainError, SamplingError, BandRangeError, PeakNotFoundError, ValueError) as exc:
        return _emit_error(exc, 2)
    except OSError as exc:
        return _emit_error(exc, 3)


if __name__ == "__main__":
    sys.exit(main())
