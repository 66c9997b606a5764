"""Run observables and the monitors derived from the analytic estimates.

A DiagnosticsRecord carries the scalar observables of one time level.
The monitors turn the continuous-theory statements (area decays at least
exponentially, length never increases, the gradient evolution identity)
into runtime checks with explicit tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .mesh import (
    MeshProfile,
    d_plus_array,
    discrete_area,
    discrete_length,
    dplus_sup_norm,
    sup_norm,
)

if TYPE_CHECKING:
    from .solver import SolverState

__all__ = [
    "DiagnosticsRecord",
    "record",
    "graphicality_constant",
    "dtdplus_coefficients",
    "check_dtdplus_identity",
    "area_decay_margin",
    "fit_decay_rate",
    "check_length_monotone",
]


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Scalar observables of one time level."""

    t: float
    sup_h: float
    sup_dplus: float
    length: float
    area: float


def record(state: "SolverState") -> DiagnosticsRecord:
    """Populate a record from a solver state."""
    f = state.profile
    return DiagnosticsRecord(
        t=state.t,
        sup_h=sup_norm(f),
        sup_dplus=dplus_sup_norm(f),
        length=discrete_length(f),
        area=discrete_area(f),
    )


def graphicality_constant(sup_dplus0: float) -> float:
    """Lower bound on the downward normal component of a graph.

    1/sqrt(1 + g^2) for initial gradient bound g; controls the area-decay
    exponent.
    """
    return 1.0 / math.sqrt(1.0 + sup_dplus0 * sup_dplus0)


def dtdplus_coefficients(f: MeshProfile, k: int, L: float) -> tuple[float, float]:
    """Coefficients (X_k, Y_k) of the discrete gradient-evolution identity.

    With A_k = 1/(1+d0_k^2):

        X_k = (A_k + A_{k+1})/2
        Y_k = (D+ A)_k + (A_k + A_{k+1})/(2L)
              - (d0_{k+1} + d0_k)^2 A_k A_{k+1} / (2L)

    Defined for 1 <= k <= n-2 (both centred differences must exist).
    """
    n = f.grid.n
    if not 1 <= k <= n - 2:
        raise IndexError(f"dtdplus_coefficients needs 1 <= k <= {n - 2}, got {k}")
    du = f.grid.delta_u
    v = f.values

    def d0(i: int) -> float:
        return (v[i + 1] - v[i - 1]) / (2.0 * du)

    a_k = 1.0 / (1.0 + d0(k) ** 2)
    a_k1 = 1.0 / (1.0 + d0(k + 1) ** 2)
    x = (a_k + a_k1) / 2.0
    y = (
        (a_k1 - a_k) / du
        + (a_k + a_k1) / (2.0 * L)
        - (d0(k + 1) + d0(k)) ** 2 * a_k * a_k1 / (2.0 * L)
    )
    return x, y


def check_dtdplus_identity(
    state_j: "SolverState", state_j1: "SolverState"
) -> float | None:
    """Residual of the gradient-evolution identity across one step.

    Checks (D+ w^{j+1} - D+ w^j)/dt = X (D2 D+ w)_k + Y (D0 D+ w)_k at
    every node k in 1..n-2 with all right-hand data at level j. The
    identity is algebraic, so the residual is pure roundoff (it scales
    like eps/du^3, not like a discretisation error). Returns None when no
    node admits the full stencil (n < 3).
    """
    if state_j1.j != state_j.j + 1 or state_j1.grid != state_j.grid:
        raise ValueError("states must be consecutive levels of one run")
    grid = state_j.grid
    n = grid.n
    if n < 3:
        return None
    du, dt = grid.delta_u, grid.delta_t
    g0 = d_plus_array(state_j.profile)
    g1 = d_plus_array(state_j1.profile)
    L = discrete_length(state_j.profile)
    residual = 0.0
    for k in range(1, n - 1):
        lhs = (g1[k] - g0[k]) / dt
        d2g = (g0[k + 1] - 2.0 * g0[k] + g0[k - 1]) / (du * du)
        d0g = (g0[k + 1] - g0[k - 1]) / (2.0 * du)
        x, y = dtdplus_coefficients(state_j.profile, k, L)
        residual = max(residual, abs(lhs - (x * d2g + y * d0g)))
    return residual


def area_decay_margin(
    history: list[DiagnosticsRecord], rho0: float, *, slack: float = 1.1
) -> float:
    """Minimum slack of the exponential area bound over a run's records.

    The bound is A(0) * exp(-C_G^2 t / (rho0 L(0))) with C_G computed
    from the initial gradient; the slack factor absorbs quadrature and
    time-discretisation error. Positive result means the bound held at
    every record.
    """
    if not history:
        raise ValueError("history is empty")
    first = history[0]
    if first.t != 0.0:
        raise ValueError("history must start with the t=0 record")
    cg = graphicality_constant(first.sup_dplus)
    decay = cg * cg / (rho0 * first.length)
    return min(
        slack * first.area * math.exp(-decay * rec.t) - rec.area for rec in history
    )


def fit_decay_rate(
    history: list[DiagnosticsRecord],
    window: tuple[float, float] | None = None,
) -> tuple[float, float]:
    """Least-squares decay rate of ln(area) over a time window.

    The window defaults to [T/4, T] (T = last record) to skip the initial
    transient. Returns (rate, r_squared) with rate = -slope. If every
    area in the window is zero or below, closure has been achieved and
    the rate is reported as inf.
    """
    if window is None:
        t_end = history[-1].t
        window = (t_end / 4.0, t_end)
    bounds_lo, bounds_hi = window
    in_window = [r for r in history if bounds_lo <= r.t <= bounds_hi]
    positive = [r for r in in_window if r.area > 0.0]
    if not positive:
        return math.inf, 1.0
    if len(positive) < 3:
        raise ValueError(
            f"need at least 3 positive-area records in the window, got {len(positive)}"
        )
    t = np.array([r.t for r in positive])
    ln_a = np.log([r.area for r in positive])
    slope, intercept = np.polyfit(t, ln_a, 1)
    fitted = slope * t + intercept
    ss_res = float(np.sum((ln_a - fitted) ** 2))
    ss_tot = float(np.sum((ln_a - np.mean(ln_a)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return -float(slope), r_squared


def check_length_monotone(
    history: list[DiagnosticsRecord], *, tolerance: float = 1e-9
) -> list[DiagnosticsRecord]:
    """Records whose length exceeds the previous record's by > tolerance.

    The continuous length never increases; whether the discrete length
    shares this is checked empirically, so violations are reported for
    the caller to treat as warnings.
    """
    violations = []
    for prev, cur in zip(history, history[1:]):
        if cur.length > prev.length + tolerance:
            violations.append(cur)
    return violations
