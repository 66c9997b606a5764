"""Nested grid-refinement study with errors against the finest level.

Levels run the same initial condition on n = base_n * 2^i cells. The time
step per level is the largest dt with 2 dt <= du^2 that divides T exactly
in step count, so every level lands on the evaluation time without
temporal interpolation. Errors are max-norm differences at coincident
nodes against the finest (reference) level, reported in log2 together
with their consecutive differences (the convergence rates).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .mesh import GridSpec, MeshProfile, restrict
from .profiles import ProfileSpec, build_profile, validate_profile
from .solver import StabilityError, run

__all__ = [
    "ConvergenceRow",
    "ConvergenceReport",
    "choose_time_step",
    "refinement_study",
    "compute_rates",
]

# beyond this many steps a study level is a configuration error
_MAX_STEPS = 2**53


@dataclass(frozen=True)
class ConvergenceRow:
    """One refinement level; error and rate are None where undefined."""

    level: int
    n: int
    delta_u: float
    log2_linf_error: float | None
    rate: float | None


@dataclass(frozen=True)
class ConvergenceReport:
    """All rows of one study, sorted by level; the last row is the reference."""

    profile: ProfileSpec
    rho0: float
    T: float
    base_n: int
    levels: int
    eval_time: float
    reference_level: int
    rows: list[ConvergenceRow]


def choose_time_step(delta_u: float, T: float) -> tuple[int, float]:
    """Largest dt with 2 dt <= du^2 such that m dt = T for integer m.

    m = ceil(2 T / du^2), dt = T/m. The ceiling preserves the parabolic
    step bound; the count is checked against a hard overflow limit
    rather than silently truncated.
    """
    if not delta_u > 0:
        raise ValueError(f"delta_u must be positive, got {delta_u}")
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    ratio = 2.0 * T / (delta_u * delta_u)
    if not ratio < _MAX_STEPS:
        raise OverflowError(
            f"step count 2T/du^2 = {ratio:.3g} exceeds the supported limit"
        )
    m = math.ceil(ratio)
    if 2.0 * (T / m) > delta_u * delta_u:
        m += 1
    return m, T / m


def compute_rates(log2_errors: list[float]) -> list[float]:
    """Consecutive differences of log2 errors (positive when shrinking)."""
    if len(log2_errors) < 2:
        raise ValueError("need at least 2 log2 errors to form a rate")
    return [prev - cur for prev, cur in zip(log2_errors, log2_errors[1:])]


def _run_level(
    spec: ProfileSpec,
    rho0: float,
    T: float,
    n: int,
    eval_time: float,
    allow_unstable: bool,
) -> MeshProfile:
    m, _ = choose_time_step(rho0 / n, T)
    grid = GridSpec(rho0=rho0, n=n, T_final=T, m=m)
    w0 = build_profile(spec, grid)
    validate_profile(w0)
    snapshots, _ = run(grid, w0, [eval_time], allow_unstable=allow_unstable)
    return snapshots[0][1]


def refinement_study(
    profile: ProfileSpec,
    rho0: float,
    T: float,
    base_n: int,
    levels: int,
    eval_time: float,
    *,
    parallel: bool = True,
    allow_unstable: bool = False,
) -> ConvergenceReport:
    """Run all levels and tabulate log2 max-norm errors and rates.

    Levels are independent and run concurrently when parallel is set (the
    compiled kernel releases the GIL); the report is assembled in level
    order afterwards, so the output does not depend on scheduling. A
    level that fails stability validation aborts the study unless
    allow_unstable is set (steep profiles can violate the gradient
    condition on coarse levels while every finer level passes).
    """
    if levels < 2:
        raise ValueError(f"need at least 2 levels, got {levels}")
    if not 0.0 <= eval_time <= T:
        raise ValueError(f"eval_time {eval_time} outside [0, {T}]")

    sizes = [base_n * 2**i for i in range(levels)]

    def level_job(n: int) -> MeshProfile:
        return _run_level(profile, rho0, T, n, eval_time, allow_unstable)

    solutions: list[MeshProfile] = []
    if parallel:
        with ThreadPoolExecutor(max_workers=min(levels, 8)) as pool:
            futures = [pool.submit(level_job, n) for n in sizes]
            for i, fut in enumerate(futures):
                try:
                    solutions.append(fut.result())
                except StabilityError as exc:
                    raise StabilityError(f"level {i}: {exc}") from exc
    else:
        for i, n in enumerate(sizes):
            try:
                solutions.append(level_job(n))
            except StabilityError as exc:
                raise StabilityError(f"level {i}: {exc}") from exc

    reference = solutions[-1]
    log2_errors: list[float] = []
    rows: list[ConvergenceRow] = []
    for i in range(levels - 1):
        factor = 2 ** (levels - 1 - i)
        err = float(
            np.max(np.abs(solutions[i].values - restrict(reference, factor).values))
        )
        log2_err = math.log2(err) if err > 0.0 else -math.inf
        rate = None if i == 0 else log2_errors[-1] - log2_err
        log2_errors.append(log2_err)
        rows.append(
            ConvergenceRow(
                level=i,
                n=sizes[i],
                delta_u=rho0 / sizes[i],
                log2_linf_error=log2_err,
                rate=rate,
            )
        )
    rows.append(
        ConvergenceRow(
            level=levels - 1,
            n=sizes[-1],
            delta_u=rho0 / sizes[-1],
            log2_linf_error=None,
            rate=None,
        )
    )
    return ConvergenceReport(
        profile=profile,
        rho0=rho0,
        T=T,
        base_n=base_n,
        levels=levels,
        eval_time=eval_time,
        reference_level=levels - 1,
        rows=rows,
    )
