from __future__ import annotations

import math

import numpy as np
import pytest

from dcflow import GridSpec, MeshProfile, validate_stability


def make_grid(rho0: float, n: int, T: float = 1.0, m: int | None = None) -> GridSpec:
    """Grid with the largest CFL-compliant time step unless m is given."""
    if m is None:
        du = rho0 / n
        m = max(1, math.ceil(2.0 * T / (du * du))) if T > 0 else 1
        if T > 0 and 2.0 * (T / m) > du * du:
            m += 1
    return GridSpec(rho0=rho0, n=n, T_final=T, m=m)


def random_valid_case(rng: np.random.Generator) -> tuple[GridSpec, MeshProfile]:
    """Random grid and profile satisfying every hard stability condition.

    Profiles are sums of decaying cosine arches a_k*(1+cos((2k-1) pi u/rho0))/2:
    nonnegative, zero-slope at u=0, exact zero at u=rho0, maximum at the
    first node. Amplitudes are scaled to keep the initial gradient inside
    the gradient condition with margin.
    """
    rho0 = float(rng.uniform(1.0, 5.0))
    n = int(rng.integers(8, 65))
    du = rho0 / n
    # gradient condition needs rho0 >= du*(1 + G^2), i.e. G^2 <= n - 1
    target_grad = min(2.0, 0.6 * math.sqrt(n - 1.0))
    T = float(rng.uniform(0.05, 0.3))
    T = min(T, 1500.0 * du * du / 2.0)  # caps the step count per case
    grid = make_grid(rho0, n, T)
    u = grid.nodes()
    w = np.zeros(n + 1)
    slope_bound = 0.0
    for k in range(1, int(rng.integers(2, 5))):
        amp = float(rng.uniform(0.1, 1.0))
        freq = (2 * k - 1) * math.pi / rho0
        w += amp * (1.0 + np.cos(freq * u)) / 2.0
        slope_bound += amp * freq / 2.0
    scale = target_grad / slope_bound
    w *= scale
    w[-1] = 0.0
    profile = MeshProfile(grid, w)
    report = validate_stability(grid, profile)
    assert report.hard_ok, "generator produced an invalid case"
    return grid, profile


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
