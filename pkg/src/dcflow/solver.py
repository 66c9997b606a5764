"""Explicit time stepping for the graph flow, with stability validation.

The update at interior nodes k = 1..n-1 is

    w_k^{j+1} = w_k^j + dt * (Dt w)_k^j,
    (Dt w)_k  = 1/(1 + d0^2) * (d2 + d0 / L[w^j]),

with d0, d2 the centred first and second differences and L the discrete
length of the current level (computed once per step). The last node is
pinned to zero; the first node copies the increment of node 1, which is
algebraically the displayed boundary rule w_0^{j+1} = w_0^j + dt*(Dt w)_1^j.

Three grid conditions back the scheme's maximum principles and are hard
errors by default: the parabolic step bound du^2 >= 2 dt, the domain
bound 2 rho0 >= du, and the gradient bound rho0 >= du*(1 + |D+ w0|_inf^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .diagnostics import DiagnosticsRecord, record
from .mesh import GridSpec, MeshProfile, d_zero_array, dplus_sup_norm

__all__ = [
    "SolverState",
    "StabilityError",
    "StabilityReport",
    "dt_interior",
    "step",
    "validate_stability",
    "run",
]


class StabilityError(RuntimeError):
    """A hard stability condition failed and was not overridden."""


@dataclass(frozen=True)
class SolverState:
    """Profile at time level j of a run."""

    grid: GridSpec
    j: int
    profile: MeshProfile

    def __post_init__(self) -> None:
        if not 0 <= self.j <= self.grid.m:
            raise ValueError(f"time index {self.j} outside 0..{self.grid.m}")

    @property
    def t(self) -> float:
        return self.j * self.grid.delta_t


@dataclass(frozen=True)
class StabilityReport:
    """Pass/fail plus numeric margin for every validated condition.

    The two convergence-analysis conditions need a bound B on derivatives
    of the exact solution; the second is reported as not evaluated
    (None) when B is not supplied.
    """

    cfl_ok: bool
    cfl_margin: float
    domain_ok: bool
    domain_margin: float
    gradient_ok: bool
    gradient_margin: float
    d0_nonvanishing: bool
    d0_sup: float
    convergence_cond1_ok: bool
    convergence_cond1_margin: float
    convergence_cond2_ok: bool | None
    convergence_cond2_margin: float | None

    @property
    def hard_ok(self) -> bool:
        """The conditions the run driver enforces."""
        return self.cfl_ok and self.domain_ok and self.gradient_ok

    def hard_failures(self) -> list[str]:
        """Names and margins of failed hard conditions."""
        out = []
        if not self.cfl_ok:
            out.append(f"CFL (du^2 >= 2 dt) violated, margin {self.cfl_margin:.6g}")
        if not self.domain_ok:
            out.append(
                f"domain (2 rho0 >= du) violated, margin {self.domain_margin:.6g}"
            )
        if not self.gradient_ok:
            out.append(
                "gradient (rho0 >= du*(1 + |D+ w0|^2)) violated, "
                f"margin {self.gradient_margin:.6g}"
            )
        return out


def dt_interior(f: MeshProfile, k: int, L: float) -> float:
    """Scheme right-hand side (Dt w)_k at an interior node.

    L is the discrete length of the level, passed in so one evaluation
    serves every node of the level.
    """
    if not 1 <= k <= f.grid.n - 1:
        raise IndexError(f"dt_interior needs 1 <= k <= {f.grid.n - 1}, got {k}")
    if not L > 0:
        raise ValueError(f"length must be positive, got {L}")
    du = f.grid.delta_u
    v = f.values
    d0 = (v[k + 1] - v[k - 1]) / (2.0 * du)
    d2 = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (du * du)
    a = 1.0 / (1.0 + d0 * d0)
    return a * (d2 + d0 / L)


def step(state: SolverState) -> SolverState:
    """Advance one time level.

    Callers are expected to have validated stability (or to have chosen
    to override it); step itself only refuses to run past the last level.
    """
    if state.j >= state.grid.m:
        raise ValueError(f"cannot step past the final level j={state.grid.m}")
    new_values = _kernels.step_once(
        state.profile.values, state.grid.delta_u, state.grid.delta_t
    )
    return SolverState(
        grid=state.grid,
        j=state.j + 1,
        profile=MeshProfile(state.grid, new_values),
    )


def validate_stability(
    grid: GridSpec, w0: MeshProfile, derivative_bound_B: float | None = None
) -> StabilityReport:
    """Evaluate every stability and convergence condition on this grid and profile."""
    du, dt = grid.delta_u, grid.delta_t
    cfl_margin = du * du - 2.0 * dt
    domain_margin = 2.0 * grid.rho0 - du
    nd_plus = dplus_sup_norm(w0)
    gradient_margin = grid.rho0 - du * (1.0 + nd_plus * nd_plus)
    d0_sup = float(np.max(np.abs(d_zero_array(w0))))
    a0 = 1.0 / (1.0 + d0_sup * d0_sup)
    cond1_margin = (1.0 - a0) - du
    if derivative_bound_B is None:
        cond2_ok, cond2_margin = None, None
    else:
        B = derivative_bound_B
        rhs = (du / 2.0) * (1.0 / grid.rho0) + (du / 2.0) * (
            (1.0 / grid.rho0) * (1.0 + du * du / 6.0) * B
            + (1.0 + du * du / 12.0) * B
        )
        cond2_margin = a0 - rhs
        cond2_ok = cond2_margin >= 0.0
    return StabilityReport(
        cfl_ok=cfl_margin >= 0.0,
        cfl_margin=cfl_margin,
        domain_ok=domain_margin >= 0.0,
        domain_margin=domain_margin,
        gradient_ok=gradient_margin >= 0.0,
        gradient_margin=gradient_margin,
        d0_nonvanishing=d0_sup > 0.0,
        d0_sup=d0_sup,
        convergence_cond1_ok=cond1_margin >= 0.0,
        convergence_cond1_margin=cond1_margin,
        convergence_cond2_ok=cond2_ok,
        convergence_cond2_margin=cond2_margin,
    )


def _level_at_or_after(t: float, grid: GridSpec) -> int:
    """Smallest time index j with j*dt >= t (exact in binary64)."""
    if grid.T_final == 0.0 or grid.delta_t == 0.0:
        return 0
    j = math.ceil(t / grid.delta_t)
    while j > 0 and (j - 1) * grid.delta_t >= t:
        j -= 1
    while j * grid.delta_t < t:
        j += 1
    return min(j, grid.m)


def run(
    grid: GridSpec,
    w0: MeshProfile,
    snapshot_times: list[float],
    *,
    allow_unstable: bool = False,
    derivative_bound_B: float | None = None,
) -> tuple[list[tuple[float, MeshProfile]], list[DiagnosticsRecord]]:
    """Drive the scheme to T_final, recording snapshots and diagnostics.

    Snapshots are taken at the first time level at or after each
    requested time (requests that land on the same level coalesce);
    diagnostics are recorded at every snapshot plus the initial and final
    levels. T_final = 0 performs no steps and returns the initial profile.
    Identical inputs give bit-identical outputs.
    """
    if w0.values[-1] != 0.0:
        raise StabilityError(
            f"initial profile violates the boundary pin: w_n = {w0.values[-1]!r}"
        )
    for t in snapshot_times:
        if not 0.0 <= t <= grid.T_final:
            raise ValueError(
                f"snapshot time {t} outside [0, {grid.T_final}]"
            )
    report = validate_stability(grid, w0, derivative_bound_B)
    if not report.hard_ok and not allow_unstable:
        raise StabilityError("; ".join(report.hard_failures()))

    snap_levels = sorted({_level_at_or_after(t, grid) for t in snapshot_times})
    final_level = 0 if grid.T_final == 0.0 else grid.m
    diag_levels = sorted(set(snap_levels) | {0, final_level})

    values = np.array(w0.values, dtype=np.float64)
    snapshots: list[tuple[float, MeshProfile]] = []
    diagnostics: list[DiagnosticsRecord] = []
    j = 0
    snap_set = set(snap_levels)
    for target in diag_levels:
        if target > j:
            _kernels.advance(values, grid.delta_u, grid.delta_t, target - j)
            j = target
        state = SolverState(grid, j, MeshProfile(grid, values.copy()))
        if j in snap_set:
            snapshots.append((state.t, state.profile))
        diagnostics.append(record(state))
    return snapshots, diagnostics
