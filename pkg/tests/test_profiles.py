from __future__ import annotations

import math

import numpy as np
import pytest

from dcflow import (
    MeshProfile,
    ProfileError,
    ProfileSpec,
    bump_profile,
    d_second,
    inflection_profile,
    load_experimental,
    validate_profile,
)
from dcflow.profiles import build_profile, load_profile_csv

from .conftest import make_grid

# frozen outputs of tests/oracles/profile_values.py (mpmath, 50 digits)
ORACLE_B = 0.74799825085471268
ORACLE_A = 0.92393558510971239
ORACLE_D = 0.57606441489028761
ORACLE_G1_AT_MID = 0.97694504126145848
ORACLE_G2_AT_MID = 2.9769450412614585
ORACLE_DPLUS_SUP_N20 = 0.68965309160008105


class TestInflection:
    def test_right_endpoint_is_exactly_zero(self):
        for n in (2, 7, 40):
            prof = inflection_profile(make_grid(3.0, n))
            assert prof.values[-1] == 0.0

    def test_height_at_origin(self):
        prof = inflection_profile(make_grid(3.0, 20))
        assert prof.values[0] == pytest.approx(1.5, rel=1e-12)

    def test_oracle_coefficients(self):
        # mid-domain node lands exactly on u = 1.5 for n = 2
        prof = inflection_profile(make_grid(3.0, 2))
        assert prof.values[0] == pytest.approx(ORACLE_A + ORACLE_D, rel=1e-15)
        assert prof.values[1] == pytest.approx(ORACLE_G1_AT_MID, rel=1e-14)

    def test_single_inflection_at_r1_rho0(self):
        grid = make_grid(3.0, 300)
        prof = inflection_profile(grid, r1=0.7, r2=2.0)
        curv = np.array([d_second(prof, k) for k in range(1, grid.n)])
        signs = np.sign(curv[np.abs(curv) > 1e-12])
        flips = np.nonzero(np.diff(signs))[0]
        assert len(flips) == 1
        u_flip = grid.node(int(flips[0]) + 1)
        assert u_flip == pytest.approx(0.7 * 3.0, abs=2 * grid.delta_u)

    def test_height_identity_random_parameters(self, rng):
        for _ in range(100):
            rho0 = float(rng.uniform(0.5, 8.0))
            r1 = float(rng.uniform(0.51, 0.99))
            r2 = float(rng.uniform(0.2, 5.0))
            prof = inflection_profile(make_grid(rho0, 16), r1, r2)
            assert prof.values[0] == pytest.approx(rho0 / r2, rel=1e-12)

    def test_parameter_validation(self):
        grid = make_grid(3.0, 8)
        with pytest.raises(ProfileError):
            inflection_profile(grid, r1=0.5)
        with pytest.raises(ProfileError):
            inflection_profile(grid, r1=1.0)
        with pytest.raises(ProfileError):
            inflection_profile(grid, r2=0.0)

    def test_literal_reading_still_roots_at_rho0(self):
        prof = inflection_profile(make_grid(3.0, 40), literal_coefficients=True)
        assert prof.values[-1] == 0.0
        # the literal frequency is not domain-normalised, so the shapes differ
        default = inflection_profile(make_grid(3.0, 40))
        assert not np.allclose(prof.values, default.values)


class TestBump:
    def test_equals_base_outside_support(self):
        grid = make_grid(3.0, 60)
        base = inflection_profile(grid)
        bump = bump_profile(grid)
        u = grid.nodes()
        c, r = 1.5, 0.5
        outside = np.abs(u - c) >= math.sqrt(r)
        assert np.array_equal(bump.values[outside], base.values[outside])
        assert np.all(bump.values >= base.values)
        # strictly above the base away from the support edge, where the
        # increment is large enough not to underflow
        core = np.abs(u - c) <= 0.5 * math.sqrt(r)
        assert np.all(bump.values[core] > base.values[core])

    def test_peak_increment_is_two(self):
        # node 1 of the n = 2 grid sits exactly at the bump centre c = 1.5
        grid = make_grid(3.0, 2)
        base = inflection_profile(grid)
        bump = bump_profile(grid)
        assert bump.values[1] - base.values[1] == pytest.approx(2.0, rel=1e-15)
        assert bump.values[1] == pytest.approx(ORACLE_G2_AT_MID, rel=1e-14)

    def test_right_endpoint_zero(self):
        assert bump_profile(make_grid(3.0, 30)).values[-1] == 0.0


class TestValidateProfile:
    def test_constructed_profiles_clean(self):
        grid = make_grid(3.0, 20)
        assert validate_profile(inflection_profile(grid)) == []
        assert validate_profile(bump_profile(grid)) == []

    def test_dirichlet_violation_is_error(self):
        grid = make_grid(3.0, 4)
        prof = MeshProfile(grid, [1.0, 0.8, 0.5, 0.2, 0.1])
        with pytest.raises(ProfileError):
            validate_profile(prof)

    def test_negative_value_warns(self):
        grid = make_grid(3.0, 4)
        prof = MeshProfile(grid, [0.1, 0.1, -0.01, 0.1, 0.0])
        warnings = validate_profile(prof)
        assert len(warnings) == 1
        assert "negative" in warnings[0]

    def test_steep_edge_warns(self):
        grid = make_grid(3.0, 4)
        prof = MeshProfile(grid, [0.0, 9.0, 9.0, 9.0, 0.0])
        warnings = validate_profile(prof)
        assert any("slope" in w for w in warnings)


class TestLoadExperimental:
    def write_csv(self, path, rows, header="x,y"):
        lines = [header] + [f"{a},{b}" for a, b in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    def test_two_point_affine_map(self, tmp_path):
        src = tmp_path / "pts.csv"
        self.write_csv(src, [(0.0, 1.0), (1.0, 0.0)])
        grid = make_grid(3.0, 3)
        prof = load_experimental(str(src), grid)
        assert prof.values == pytest.approx([1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0], rel=1e-14)

    def test_values_reproduced_at_knots(self, tmp_path, rng):
        grid = make_grid(3.0, 6)
        heights = np.abs(rng.uniform(0.1, 1.0, 7))
        heights[-1] = 0.0
        src = tmp_path / "grid.csv"
        self.write_csv(src, list(zip(grid.nodes(), heights)))
        prof = load_experimental(str(src), grid)
        assert prof.values == pytest.approx(heights, abs=1e-12)
        assert prof.values[-1] == 0.0

    def test_translates_last_point_to_zero(self, tmp_path):
        src = tmp_path / "shift.csv"
        self.write_csv(src, [(0.0, 1.2), (0.5, 0.7), (1.0, 0.2)])
        grid = make_grid(3.0, 2)
        prof = load_experimental(str(src), grid)
        assert prof.values == pytest.approx([1.0, 0.5, 0.0], abs=1e-14)

    def test_negative_clamped(self, tmp_path):
        src = tmp_path / "neg.csv"
        self.write_csv(src, [(0.0, 0.5), (0.5, -0.4), (1.0, 0.0)])
        prof = load_experimental(str(src), make_grid(3.0, 4))
        assert np.all(prof.values >= 0.0)

    def test_unsorted_input_sorted(self, tmp_path):
        src = tmp_path / "unsorted.csv"
        self.write_csv(src, [(1.0, 0.0), (0.0, 1.0)])
        prof = load_experimental(str(src), make_grid(3.0, 3))
        assert prof.values[0] == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "rows,header",
        [
            ([(0.0, 1.0)], "x,y"),                      # too few points
            ([(0.0, 1.0), (0.0, 0.5)], "x,y"),          # duplicate x
            ([(0.0, 1.0), (1.0, 0.0)], "u,h"),          # wrong header
        ],
    )
    def test_rejects_bad_input(self, tmp_path, rows, header):
        src = tmp_path / "bad.csv"
        self.write_csv(src, rows, header=header)
        with pytest.raises(ProfileError):
            load_experimental(str(src), make_grid(3.0, 4))

    def test_rejects_non_numeric(self, tmp_path):
        src = tmp_path / "nn.csv"
        src.write_text("x,y\n0.0,1.0\nfoo,0.0\n", encoding="utf-8")
        with pytest.raises(ProfileError):
            load_experimental(str(src), make_grid(3.0, 4))

    def test_missing_file(self):
        with pytest.raises(ProfileError):
            load_experimental("/nonexistent/data.csv", make_grid(3.0, 4))

    def test_reimport_idempotent(self, tmp_path):
        src = tmp_path / "src.csv"
        self.write_csv(
            src, [(0.0, 1.1), (0.3, 0.9), (0.8, 0.55), (1.7, 0.2), (2.0, 0.0)]
        )
        grid = make_grid(3.0, 24)
        first = load_experimental(str(src), grid)
        again = tmp_path / "again.csv"
        self.write_csv(again, list(zip(grid.nodes(), first.values)))
        second = load_experimental(str(again), grid)
        assert np.max(np.abs(second.values - first.values)) <= 1e-12


class TestProfileSpec:
    def test_dispatch(self, tmp_path):
        grid = make_grid(3.0, 8)
        inf = build_profile(ProfileSpec(kind="inflection"), grid)
        assert inf.values[0] == pytest.approx(1.5, rel=1e-12)
        bmp = build_profile(ProfileSpec(kind="bump"), grid)
        assert np.all(bmp.values >= inf.values)

    def test_kind_validation(self):
        with pytest.raises(ProfileError):
            ProfileSpec(kind="mystery")
        with pytest.raises(ProfileError):
            ProfileSpec(kind="experimental")  # no path
        with pytest.raises(ProfileError):
            ProfileSpec(kind="inflection", r1=0.3)

    def test_file_kind_reads_u_h_rows(self, tmp_path):
        grid = make_grid(3.0, 3)
        path = tmp_path / "profile.csv"
        rows = [f"{grid.node(k)},{v}" for k, v in zip(range(4), (0.9, 0.5, 0.2, 0.0))]
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        prof = load_profile_csv(str(path), grid)
        assert np.array_equal(prof.values, [0.9, 0.5, 0.2, 0.0])

    def test_file_kind_rejects_wrong_rows(self, tmp_path):
        grid = make_grid(3.0, 3)
        path = tmp_path / "short.csv"
        path.write_text("0.0,1.0\n", encoding="utf-8")
        with pytest.raises(ProfileError):
            load_profile_csv(str(path), grid)

    def test_file_kind_rejects_wrong_nodes(self, tmp_path):
        grid = make_grid(3.0, 3)
        path = tmp_path / "shifted.csv"
        rows = [f"{grid.node(k) + 0.5},1.0" for k in range(4)]
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        with pytest.raises(ProfileError):
            load_profile_csv(str(path), grid)


def test_oracle_gradient_norm_matches():
    from dcflow import dplus_sup_norm

    prof = inflection_profile(make_grid(3.0, 20))
    assert dplus_sup_norm(prof) == pytest.approx(ORACLE_DPLUS_SUP_N20, rel=1e-13)
