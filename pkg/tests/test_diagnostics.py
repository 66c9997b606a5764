from __future__ import annotations

import math

import numpy as np
import pytest

from dcflow import (
    DiagnosticsRecord,
    GridSpec,
    MeshProfile,
    SolverState,
    area_decay_margin,
    check_dtdplus_identity,
    check_length_monotone,
    discrete_length,
    dtdplus_coefficients,
    fit_decay_rate,
    graphicality_constant,
    inflection_profile,
    record,
    step,
)

from .conftest import make_grid

# frozen outputs of tests/oracles/dtdplus_coeffs.py (mpmath, 50 digits)
ORACLE_PROFILE = [0.9, 0.85, 0.72, 0.9, 0.4, 0.33, 0.21, 0.05, 0.0]
ORACLE_L = 3.3774107649806358
ORACLE_XY = {
    1: (0.97055614314594406, 0.41661500756216668),
    2: (0.92078354985845233, -0.14241852769148459),
    3: (0.7399330589144397, -0.45835666451838786),
    4: (0.78678342772757801, 0.95792211356749274),
    5: (0.90868231991044585, 0.055710019130492008),
    6: (0.90248586349037171, 0.34812382165183978),
}


def make_history(times, areas, length=3.0, sup_dplus=0.0):
    return [
        DiagnosticsRecord(t=t, sup_h=a, sup_dplus=sup_dplus, length=length, area=a)
        for t, a in zip(times, areas)
    ]


class TestRecord:
    def test_zero_profile(self):
        grid = make_grid(3.0, 6)
        state = SolverState(grid, 0, MeshProfile(grid, np.zeros(7)))
        rec = record(state)
        assert rec == DiagnosticsRecord(
            t=0.0, sup_h=0.0, sup_dplus=0.0, length=pytest.approx(3.0), area=0.0
        )

    def test_tent(self):
        grid = GridSpec(rho0=2.0, n=2, T_final=1.0, m=4)
        state = SolverState(grid, 2, MeshProfile(grid, [0.0, 1.0, 0.0]))
        rec = record(state)
        assert rec.t == 0.5
        assert rec.sup_h == 1.0
        assert rec.sup_dplus == 1.0
        assert rec.length == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-15)
        assert rec.area == pytest.approx(1.0, rel=1e-15)

    def test_inflection_initial_height(self):
        grid = make_grid(3.0, 20, T=4.0)
        state = SolverState(grid, 0, inflection_profile(grid))
        assert record(state).sup_h == pytest.approx(1.5, rel=1e-12)


class TestDtDplusCoefficients:
    def test_zero_profile(self):
        grid = make_grid(3.0, 6)
        f = MeshProfile(grid, np.zeros(7))
        L = discrete_length(f)
        for k in range(1, 5):
            x, y = dtdplus_coefficients(f, k, L)
            assert x == 1.0
            assert y == pytest.approx(1.0 / L, rel=1e-15)

    def test_constant_slope_closed_form(self):
        grid = make_grid(2.0, 8)
        s = -0.8
        f = MeshProfile(grid, s * grid.nodes())
        L = discrete_length(f)
        a = 1.0 / (1.0 + s * s)
        for k in range(1, 7):
            x, y = dtdplus_coefficients(f, k, L)
            assert x == pytest.approx(a, rel=1e-14)
            expected_y = a / L - (2.0 * s) ** 2 * a * a / (2.0 * L)
            assert y == pytest.approx(expected_y, rel=1e-13)

    def test_frozen_oracle_values(self):
        grid = make_grid(3.0, 8)
        f = MeshProfile(grid, ORACLE_PROFILE)
        L = discrete_length(f)
        assert L == pytest.approx(ORACLE_L, rel=1e-15)
        for k, (x_exp, y_exp) in ORACLE_XY.items():
            x, y = dtdplus_coefficients(f, k, L)
            assert x == pytest.approx(x_exp, rel=1e-13)
            assert y == pytest.approx(y_exp, rel=1e-12)

    def test_index_range(self):
        grid = make_grid(3.0, 8)
        f = MeshProfile(grid, ORACLE_PROFILE)
        with pytest.raises(IndexError):
            dtdplus_coefficients(f, 0, 3.0)
        with pytest.raises(IndexError):
            dtdplus_coefficients(f, 7, 3.0)


class TestDtDplusIdentity:
    def test_zero_profile_residual_zero(self):
        grid = make_grid(2.0, 8, T=0.01)
        s0 = SolverState(grid, 0, MeshProfile(grid, np.zeros(9)))
        s1 = step(s0)
        assert check_dtdplus_identity(s0, s1) == 0.0

    def test_minimal_grid_has_no_interior(self):
        grid = GridSpec(rho0=2.0, n=2, T_final=0.5, m=1)
        s0 = SolverState(grid, 0, MeshProfile(grid, [1.0, 1.0, 0.0]))
        s1 = step(s0)
        assert check_dtdplus_identity(s0, s1) is None

    def test_inflection_residual_tiny(self):
        grid = make_grid(3.0, 40, T=1.0)
        s0 = SolverState(grid, 0, inflection_profile(grid))
        s1 = step(s0)
        residual = check_dtdplus_identity(s0, s1)
        assert residual is not None and residual < 1e-9

    def test_rejects_non_consecutive(self):
        grid = make_grid(3.0, 8, T=1.0)
        s0 = SolverState(grid, 0, inflection_profile(grid))
        s1 = step(s0)
        s2 = step(s1)
        with pytest.raises(ValueError):
            check_dtdplus_identity(s0, s2)

    def test_residual_stays_roundoff_under_refinement(self):
        # algebraic identity: residuals grow at most ~8x per halving (eps/du^3)
        residuals = []
        for n in (40, 80):
            grid = make_grid(3.0, n, T=0.5)
            state = SolverState(grid, 0, inflection_profile(grid))
            worst = 0.0
            for _ in range(10):
                nxt = step(state)
                worst = max(worst, check_dtdplus_identity(state, nxt))
                state = nxt
            residuals.append(worst)
        assert residuals[1] <= 10.0 * max(residuals[0], 1e-13)


class TestAreaDecay:
    def test_single_record_margin(self):
        history = make_history([0.0], [2.0])
        assert area_decay_margin(history, rho0=3.0) == pytest.approx(0.2)

    def test_zero_profile_history(self):
        history = make_history([0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
        assert area_decay_margin(history, rho0=3.0) >= 0.0

    def test_violating_history_is_negative(self):
        history = make_history([0.0, 5.0], [1.0, 1.0], sup_dplus=1.0)
        # constant area cannot satisfy an exponential decay bound forever
        assert area_decay_margin(history, rho0=1.0) < 0.0

    def test_requires_t0_first(self):
        history = make_history([1.0, 2.0], [1.0, 0.5])
        with pytest.raises(ValueError):
            area_decay_margin(history, rho0=3.0)

    def test_graphicality_constant(self):
        assert graphicality_constant(0.0) == 1.0
        assert graphicality_constant(1.0) == pytest.approx(1.0 / math.sqrt(2.0))


class TestFitDecayRate:
    def test_exact_exponential(self):
        times = np.linspace(0.0, 4.0, 41)
        history = make_history(times, np.exp(-2.0 * times))
        rate, r2 = fit_decay_rate(history)
        assert rate == pytest.approx(2.0, abs=1e-10)
        assert r2 == pytest.approx(1.0, abs=1e-10)

    def test_constant_history(self):
        times = np.linspace(0.0, 4.0, 11)
        history = make_history(times, np.ones(11))
        rate, r2 = fit_decay_rate(history)
        assert rate == pytest.approx(0.0, abs=1e-14)

    def test_closed_area_reports_inf(self):
        history = make_history([0.0, 2.0, 3.0, 4.0], [1.0, 0.0, 0.0, 0.0])
        rate, r2 = fit_decay_rate(history)
        assert math.isinf(rate)

    def test_too_few_points(self):
        history = make_history([0.0, 3.9, 4.0], [1.0, 0.4, 0.39])
        with pytest.raises(ValueError):
            fit_decay_rate(history)

    def test_explicit_window(self):
        times = np.linspace(0.0, 4.0, 41)
        areas = np.exp(-2.0 * times)
        areas[: 10] = 1.0  # corrupt the early transient
        history = make_history(times, areas)
        rate, r2 = fit_decay_rate(history, window=(1.5, 4.0))
        assert rate == pytest.approx(2.0, abs=1e-9)


class TestLengthMonotone:
    def test_constant_history_clean(self):
        history = make_history([0.0, 1.0, 2.0], [1.0, 0.5, 0.2], length=3.0)
        assert check_length_monotone(history) == []

    def test_increase_flagged(self):
        records = [
            DiagnosticsRecord(t=0.0, sup_h=1.0, sup_dplus=0.5, length=3.5, area=1.0),
            DiagnosticsRecord(t=1.0, sup_h=0.9, sup_dplus=0.4, length=3.6, area=0.8),
        ]
        violations = check_length_monotone(records)
        assert violations == [records[1]]

    def test_tolerance(self):
        records = [
            DiagnosticsRecord(t=0.0, sup_h=1.0, sup_dplus=0.5, length=3.5, area=1.0),
            DiagnosticsRecord(
                t=1.0, sup_h=0.9, sup_dplus=0.4, length=3.5 + 5e-10, area=0.8
            ),
        ]
        assert check_length_monotone(records) == []
