"""Command-line front end and CSV serialisation.

Subcommands: simulate (run + snapshots/diagnostics CSVs), converge
(refinement study + convergence CSV), profile (write the initial
profile), validate (print the stability report). Configuration is a flat
JSON document; unknown keys are rejected. Floats are serialised as the
shortest decimal string that round-trips binary64, so identical runs
produce byte-identical files.

Exit codes: 0 success, 1 configuration/I-O/validation error, 2 stability
rejection.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .convergence import choose_time_step, refinement_study
from .mesh import GridSpec
from .profiles import ProfileError, ProfileSpec, build_profile, validate_profile
from .solver import StabilityError, StabilityReport, run, validate_stability

__all__ = [
    "ConfigError",
    "RunConfig",
    "load_config",
    "fmt_float",
    "simulate",
    "converge",
    "emit_profile",
    "validate",
    "main",
]


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


_CONFIG_KEYS = {
    "rho0",
    "T",
    "n",
    "dt_policy",
    "profile",
    "snapshots",
    "output_dir",
    "allow_unstable",
    "derivative_bound_B",
}
_PROFILE_KEYS = {"kind", "r1", "r2", "path", "literal_coefficients"}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration (defaults mirror the standard setup)."""

    rho0: float = 3.0
    T: float = 4.0
    n: int = 160
    dt_policy: str | float = "auto"
    profile: ProfileSpec = ProfileSpec(kind="inflection")
    snapshots: int = 9
    output_dir: str = "."
    allow_unstable: bool = False
    derivative_bound_B: float | None = None


def _time_steps(config: RunConfig) -> int:
    """Number of time steps implied by the dt policy."""
    if config.T == 0.0:
        return 1
    if config.dt_policy == "auto":
        m, _ = choose_time_step(config.rho0 / config.n, config.T)
        return m
    dt = float(config.dt_policy)
    if not dt > 0:
        raise ConfigError(f"explicit dt must be positive, got {dt}")
    m = round(config.T / dt)
    if m < 1 or abs(m * dt - config.T) > math.ulp(config.T):
        raise ConfigError(
            f"explicit dt {dt} does not divide T={config.T} into whole steps"
        )
    return m


def make_grid(config: RunConfig) -> GridSpec:
    return GridSpec(rho0=config.rho0, n=config.n, T_final=config.T, m=_time_steps(config))


def load_config(path: str | None) -> RunConfig:
    """Read a JSON config; omitted keys take defaults, unknown keys fail."""
    if path is None:
        return RunConfig()
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs: dict = {}
    if "profile" in raw:
        prof = raw["profile"]
        if not isinstance(prof, dict):
            raise ConfigError("profile must be a JSON object")
        unknown = set(prof) - _PROFILE_KEYS
        if unknown:
            raise ConfigError(f"unknown profile keys: {sorted(unknown)}")
        try:
            kwargs["profile"] = ProfileSpec(**prof)
        except (ProfileError, TypeError) as exc:
            raise ConfigError(f"bad profile spec: {exc}") from exc
    for key in ("rho0", "T"):
        if key in raw:
            kwargs[key] = _as_float(raw[key], key)
    for key in ("n", "snapshots"):
        if key in raw:
            kwargs[key] = _as_int(raw[key], key)
    if "dt_policy" in raw:
        policy = raw["dt_policy"]
        if policy != "auto":
            policy = _as_float(policy, "dt_policy")
        kwargs["dt_policy"] = policy
    if "output_dir" in raw:
        if not isinstance(raw["output_dir"], str):
            raise ConfigError("output_dir must be a string")
        kwargs["output_dir"] = raw["output_dir"]
    if "allow_unstable" in raw:
        if not isinstance(raw["allow_unstable"], bool):
            raise ConfigError("allow_unstable must be a boolean")
        kwargs["allow_unstable"] = raw["allow_unstable"]
    if "derivative_bound_B" in raw and raw["derivative_bound_B"] is not None:
        kwargs["derivative_bound_B"] = _as_float(
            raw["derivative_bound_B"], "derivative_bound_B"
        )
    config = RunConfig(**kwargs)
    if config.snapshots < 2:
        raise ConfigError(f"snapshots must be >= 2, got {config.snapshots}")
    if config.T < 0:
        raise ConfigError(f"T must be >= 0, got {config.T}")
    _time_steps(config)  # validates an explicit dt against T
    return config


def _as_float(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _as_int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def fmt_float(x: float) -> str:
    """Shortest decimal string that parses back to the same binary64."""
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def _write_lines(path: Path, lines: list[str]) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _stability_lines(report: StabilityReport) -> list[str]:
    def line(name: str, ok: bool | None, margin: float | None) -> str:
        if ok is None:
            return f"{name},NOT-EVALUATED,"
        return f"{name},{'PASS' if ok else 'FAIL'},{fmt_float(margin)}"

    return [
        line("cfl", report.cfl_ok, report.cfl_margin),
        line("domain", report.domain_ok, report.domain_margin),
        line("gradient", report.gradient_ok, report.gradient_margin),
        line("d0_nonvanishing", report.d0_nonvanishing, report.d0_sup),
        line(
            "convergence_cond1",
            report.convergence_cond1_ok,
            report.convergence_cond1_margin,
        ),
        line(
            "convergence_cond2",
            report.convergence_cond2_ok,
            report.convergence_cond2_margin,
        ),
    ]


def _snapshot_times(config: RunConfig) -> list[float]:
    count = config.snapshots
    if config.T == 0.0:
        return [0.0] * count
    return [i * config.T / (count - 1) for i in range(count)]


def simulate(config: RunConfig) -> None:
    """Run the scheme and write snapshots.csv, diagnostics.csv, stability.txt."""
    grid = make_grid(config)
    w0 = build_profile(config.profile, grid)
    for warning in validate_profile(w0):
        print(f"warning: {warning}", file=sys.stderr)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = validate_stability(grid, w0, config.derivative_bound_B)
    _write_lines(out / "stability.txt", _stability_lines(report))
    if not report.hard_ok and not config.allow_unstable:
        raise StabilityError("; ".join(report.hard_failures()))
    snapshots, diagnostics = run(
        grid,
        w0,
        _snapshot_times(config),
        allow_unstable=config.allow_unstable,
        derivative_bound_B=config.derivative_bound_B,
    )
    lines = ["t,u,h"]
    for t, prof in snapshots:
        ts = fmt_float(t)
        for k in range(grid.n + 1):
            lines.append(f"{ts},{fmt_float(grid.node(k))},{fmt_float(prof.values[k])}")
    _write_lines(out / "snapshots.csv", lines)
    lines = ["t,sup_h,sup_dplus,length,area"]
    for rec in diagnostics:
        lines.append(
            ",".join(
                fmt_float(v)
                for v in (rec.t, rec.sup_h, rec.sup_dplus, rec.length, rec.area)
            )
        )
    _write_lines(out / "diagnostics.csv", lines)


def converge(
    config: RunConfig, base_n: int, levels: int, eval_time: float | None
) -> None:
    """Run the refinement study, write convergence.csv, print the table."""
    if levels < 2:
        raise ConfigError(f"levels must be >= 2, got {levels}")
    if eval_time is None:
        eval_time = config.T
    if not 0.0 <= eval_time <= config.T:
        raise ConfigError(f"eval_time {eval_time} outside [0, {config.T}]")
    report = refinement_study(
        config.profile,
        config.rho0,
        config.T,
        base_n,
        levels,
        eval_time,
        allow_unstable=config.allow_unstable,
    )
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["level,n,delta_u,log2_linf_error,rate"]
    for row in report.rows:
        err = "" if row.log2_linf_error is None else fmt_float(row.log2_linf_error)
        rate = "" if row.rate is None else fmt_float(row.rate)
        lines.append(f"{row.level},{row.n},{fmt_float(row.delta_u)},{err},{rate}")
    _write_lines(out / "convergence.csv", lines)
    print(f"{'delta_u':>14}  {'log2 Linf error':>16}  {'rate':>8}")
    for row in report.rows:
        err = "" if row.log2_linf_error is None else f"{row.log2_linf_error:.6f}"
        rate = "" if row.rate is None else f"{row.rate:.4f}"
        print(f"{row.delta_u:>14.10g}  {err:>16}  {rate:>8}")


def emit_profile(config: RunConfig) -> None:
    """Write the constructed initial profile as headerless u,h rows."""
    grid = make_grid(config)
    prof = build_profile(config.profile, grid)
    for warning in validate_profile(prof):
        print(f"warning: {warning}", file=sys.stderr)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = [
        f"{fmt_float(grid.node(k))},{fmt_float(prof.values[k])}"
        for k in range(grid.n + 1)
    ]
    _write_lines(out / "profile.csv", lines)


def validate(config: RunConfig) -> bool:
    """Print the stability report; True when the hard conditions pass."""
    grid = make_grid(config)
    w0 = build_profile(config.profile, grid)
    for warning in validate_profile(w0):
        print(f"warning: {warning}", file=sys.stderr)
    report = validate_stability(grid, w0, config.derivative_bound_B)
    for line in _stability_lines(report):
        print(line)
    return report.hard_ok


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcflow",
        description="Explicit finite-difference solver for the nonlocal graph flow",
    )
    parser.add_argument("--config", help="path to a JSON run configuration")
    parser.add_argument(
        "--allow-unstable",
        action="store_true",
        help="run even when a hard stability condition fails",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", help="run and write snapshot/diagnostic CSVs")
    conv = sub.add_parser("converge", help="grid-refinement convergence study")
    conv.add_argument("--base-n", type=int, default=20)
    conv.add_argument("--levels", type=int, default=8)
    conv.add_argument("--eval-time", type=float, default=None)
    sub.add_parser("profile", help="write the initial profile CSV")
    sub.add_parser("validate", help="print the stability report")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.allow_unstable:
            config = replace(config, allow_unstable=True)
        if args.command == "simulate":
            simulate(config)
        elif args.command == "converge":
            converge(config, args.base_n, args.levels, args.eval_time)
        elif args.command == "profile":
            emit_profile(config)
        elif args.command == "validate":
            if not validate(config):
                return 2
        return 0
    except StabilityError as exc:
        print(f"stability rejection: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ProfileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
