"""Uniform space-time grids, mesh profiles, and discrete operators.

Profiles store the n+1 node heights w_0..w_n on [0, rho0]. Operators are
pointwise (scalar at a node) with array conveniences built on top; each
is undefined where its stencil leaves the grid and raises IndexError
there. All arithmetic is binary64 and every reduction is a fixed
left-to-right sum so results are bit-reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridSpec",
    "MeshProfile",
    "d_plus",
    "d_minus",
    "d_zero",
    "d_second",
    "d_plus_array",
    "d_zero_array",
    "discrete_length",
    "discrete_area",
    "sup_norm",
    "dplus_sup_norm",
    "restrict",
]


@dataclass(frozen=True)
class GridSpec:
    """Space-time discretisation: n cells on [0, rho0], m steps to T_final."""

    rho0: float
    n: int
    T_final: float
    m: int
    delta_u: float = field(init=False)
    delta_t: float = field(init=False)

    def __post_init__(self) -> None:
        if not (np.isfinite(self.rho0) and self.rho0 > 0):
            raise ValueError(f"rho0 must be finite and positive, got {self.rho0}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        if not (np.isfinite(self.T_final) and self.T_final >= 0):
            raise ValueError(f"T_final must be finite and >= 0, got {self.T_final}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "delta_u", self.rho0 / self.n)
        object.__setattr__(self, "delta_t", self.T_final / self.m)

    def node(self, k: int) -> float:
        """Coordinate of node k."""
        return k * self.delta_u

    def nodes(self) -> np.ndarray:
        """All n+1 node coordinates."""
        return np.arange(self.n + 1) * self.delta_u


@dataclass(frozen=True)
class MeshProfile:
    """Heights at the n+1 nodes of a grid at one time level."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=np.float64)
        if vals.shape != (self.grid.n + 1,):
            raise ValueError(
                f"expected {self.grid.n + 1} node values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("profile values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def _check_index(k: int, lo: int, hi: int, op: str) -> None:
    if not lo <= k <= hi:
        raise IndexError(f"{op} is defined for {lo} <= k <= {hi}, got k={k}")


def d_plus(f: MeshProfile, k: int) -> float:
    """Forward difference (f_{k+1} - f_k)/du, defined for 0 <= k <= n-1."""
    _check_index(k, 0, f.grid.n - 1, "d_plus")
    return (f.values[k + 1] - f.values[k]) / f.grid.delta_u


def d_minus(f: MeshProfile, k: int) -> float:
    """Backward difference (f_k - f_{k-1})/du, defined for 1 <= k <= n."""
    _check_index(k, 1, f.grid.n, "d_minus")
    return (f.values[k] - f.values[k - 1]) / f.grid.delta_u


def d_zero(f: MeshProfile, k: int) -> float:
    """Centred difference (f_{k+1} - f_{k-1})/(2 du), interior nodes only."""
    _check_index(k, 1, f.grid.n - 1, "d_zero")
    return (f.values[k + 1] - f.values[k - 1]) / (2.0 * f.grid.delta_u)


def d_second(f: MeshProfile, k: int) -> float:
    """Second difference (f_{k+1} - 2 f_k + f_{k-1})/du^2, interior only."""
    _check_index(k, 1, f.grid.n - 1, "d_second")
    du = f.grid.delta_u
    return (f.values[k + 1] - 2.0 * f.values[k] + f.values[k - 1]) / (du * du)


def d_plus_array(f: MeshProfile) -> np.ndarray:
    """Forward differences at nodes 0..n-1."""
    return (f.values[1:] - f.values[:-1]) / f.grid.delta_u


def d_zero_array(f: MeshProfile) -> np.ndarray:
    """Centred differences at nodes 1..n-1."""
    return (f.values[2:] - f.values[:-2]) / (2.0 * f.grid.delta_u)


def _seq_sum(terms: np.ndarray) -> float:
    # np.cumsum accumulates strictly left to right; np.sum would not
    return float(np.cumsum(terms)[-1]) if len(terms) else 0.0


def discrete_length(f: MeshProfile) -> float:
    """Polygonal arclength du * sum_i sqrt(1 + (D+ f)_i^2).

    Always >= rho0, with equality exactly for constant profiles.
    """
    d = d_plus_array(f)
    return f.grid.delta_u * _seq_sum(np.sqrt(1.0 + d * d))


def discrete_area(f: MeshProfile) -> float:
    """Trapezoid-rule area du * (f_0/2 + f_1 + ... + f_{n-1} + f_n/2)."""
    v = f.values
    terms = np.concatenate(([0.5 * v[0]], v[1:-1], [0.5 * v[-1]]))
    return f.grid.delta_u * _seq_sum(terms)


def sup_norm(f: MeshProfile) -> float:
    """max_k |f_k|."""
    return float(np.max(np.abs(f.values)))


def dplus_sup_norm(f: MeshProfile) -> float:
    """max_k |(D+ f)_k| over 0 <= k <= n-1."""
    return float(np.max(np.abs(d_plus_array(f))))


def restrict(fine: MeshProfile, factor: int) -> MeshProfile:
    """Inject a fine profile onto the coarse grid sharing every factor-th node.

    Pure index picking (coarse_k = fine_{k*factor}); no interpolation, so
    no error beyond the fine values themselves enters. The coarse grid
    keeps the fine grid's time discretisation.
    """
    if int(factor) != factor or factor < 1:
        raise ValueError(f"factor must be an integer >= 1, got {factor}")
    factor = int(factor)
    if fine.grid.n % factor != 0:
        raise ValueError(f"factor {factor} does not divide n={fine.grid.n}")
    coarse_grid = GridSpec(
        rho0=fine.grid.rho0,
        n=fine.grid.n // factor,
        T_final=fine.grid.T_final,
        m=fine.grid.m,
    )
    return MeshProfile(coarse_grid, fine.values[::factor])
