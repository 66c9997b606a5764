"""Initial-condition constructors and their boundary-compatibility checks.

Three families: a single-inflection sinusoid, the same sinusoid plus a
compactly supported bump, and measured data ingested from CSV. All
constructors pin the last node to exactly zero, which the stepping
scheme requires.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .mesh import GridSpec, MeshProfile, d_plus

__all__ = [
    "ProfileError",
    "ProfileSpec",
    "PROFILE_KINDS",
    "inflection_profile",
    "bump_profile",
    "load_experimental",
    "load_profile_csv",
    "build_profile",
    "validate_profile",
]

PROFILE_KINDS = ("inflection", "bump", "experimental", "file")


class ProfileError(ValueError):
    """Invalid profile parameters, data, or boundary values."""


@dataclass(frozen=True)
class ProfileSpec:
    """Declarative description of an initial condition.

    r1 places the sinusoid's inflection (fraction of the domain, in
    (0.5, 1)); r2 is the domain-length to height ratio. path feeds the
    experimental/file kinds. literal_coefficients selects the
    unnormalised sinusoid argument (compatibility reading; produces
    several inflections on typical domains).
    """

    kind: str
    r1: float = 0.7
    r2: float = 2.0
    path: str | None = None
    literal_coefficients: bool = False

    def __post_init__(self) -> None:
        if self.kind not in PROFILE_KINDS:
            raise ProfileError(
                f"unknown profile kind {self.kind!r}; expected one of {PROFILE_KINDS}"
            )
        if self.kind in ("inflection", "bump"):
            _check_sinusoid_params(self.r1, self.r2)
        if self.kind in ("experimental", "file") and not self.path:
            raise ProfileError(f"profile kind {self.kind!r} requires a path")


def _check_sinusoid_params(r1: float, r2: float) -> None:
    if not 0.5 < r1 < 1.0:
        raise ProfileError(f"r1 must lie in (0.5, 1), got {r1}")
    if not r2 > 0:
        raise ProfileError(f"r2 must be positive, got {r2}")


def _sinusoid_coefficients(
    rho0: float, r1: float, r2: float, literal: bool
) -> tuple[float, float, float]:
    """Frequency B, amplitude A, offset D of A*cos(B*u) + D.

    The default (normalised) reading scales the frequency by the domain
    length, which gives a single inflection at u = r1*rho0, zero slope at
    u = 0, height rho0/r2 at u = 0, and an exact root at u = rho0. The
    literal reading keeps B = pi/(2 r1) independent of the domain.
    """
    if literal:
        B = math.pi / (2.0 * r1)
        A = rho0 / (r2 * (1.0 + abs(math.cos(B))))
    else:
        B = math.pi / (2.0 * r1 * rho0)
        A = rho0 / (r2 * (1.0 + abs(math.cos(B * rho0))))
    D = -A * math.cos(B * rho0)
    return B, A, D


def inflection_profile(
    grid: GridSpec,
    r1: float = 0.7,
    r2: float = 2.0,
    *,
    literal_coefficients: bool = False,
) -> MeshProfile:
    """Single-inflection sinusoid sampled at the grid nodes."""
    _check_sinusoid_params(r1, r2)
    B, A, D = _sinusoid_coefficients(grid.rho0, r1, r2, literal_coefficients)
    w = A * np.cos(B * grid.nodes()) + D
    w[-1] = 0.0  # analytic zero; pin against the sampling roundoff
    return MeshProfile(grid, w)


def bump_profile(
    grid: GridSpec,
    r1: float = 0.7,
    r2: float = 2.0,
    *,
    literal_coefficients: bool = False,
) -> MeshProfile:
    """Inflection profile plus a compactly supported smooth bump.

    The bump m*exp(-r / (r - (u-c)^2)) is centred at c = rho0/2 with
    radius-squared r = (rho0-c)/3 and height scale m = 2e; it is zero by
    continuous extension wherever r - (u-c)^2 <= 0.
    """
    base = inflection_profile(
        grid, r1, r2, literal_coefficients=literal_coefficients
    )
    c = grid.rho0 / 2.0
    r = (grid.rho0 - c) / 3.0
    mheight = 2.0 * math.exp(1.0)
    u = grid.nodes()
    w = np.array(base.values)
    gap = r - (u - c) ** 2
    inside = gap > 0.0
    w[inside] += mheight * np.exp(-r / gap[inside])
    w[-1] = 0.0
    return MeshProfile(grid, w)


def _read_xy_csv(path: str) -> list[tuple[float, float]]:
    """Parse an x,y CSV with a header line; blank lines ignored."""
    points: list[tuple[float, float]] = []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise ProfileError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ProfileError(f"{path} is empty")
    header = [cell.strip().lower() for cell in rows[0]]
    if header != ["x", "y"]:
        raise ProfileError(f"{path}: expected header 'x,y', got {rows[0]!r}")
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ProfileError(f"{path}:{lineno}: expected two fields, got {row!r}")
        try:
            points.append((float(row[0]), float(row[1])))
        except ValueError as exc:
            raise ProfileError(f"{path}:{lineno}: non-numeric field in {row!r}") from exc
    if len(points) < 2:
        raise ProfileError(f"{path}: need at least 2 points, got {len(points)}")
    return points


def load_experimental(path: str, grid: GridSpec) -> MeshProfile:
    """Ingest measured (x, y) data onto the grid.

    Pipeline: sort by x (duplicates rejected), map the x range affinely
    onto [0, rho0], translate y so the last point lands at zero, linearly
    interpolate onto the nodes, clamp negatives to zero, and pin the last
    node to exactly zero.
    """
    points = sorted(_read_xy_csv(path))
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    if np.any(np.diff(xs) == 0.0):
        raise ProfileError(f"{path}: duplicate x values after sorting")
    xs = (xs - xs[0]) / (xs[-1] - xs[0]) * grid.rho0
    ys = ys - ys[-1]
    w = np.interp(grid.nodes(), xs, ys)
    np.maximum(w, 0.0, out=w)
    w[-1] = 0.0
    return MeshProfile(grid, w)


def load_profile_csv(path: str, grid: GridSpec) -> MeshProfile:
    """Read a solver-ready profile written as headerless u,h rows.

    Heights are taken verbatim (bitwise round trip with the CLI's profile
    export); the u column must match the grid nodes.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise ProfileError(f"cannot read {path}: {exc}") from exc
    if len(rows) != grid.n + 1:
        raise ProfileError(
            f"{path}: expected {grid.n + 1} rows for n={grid.n}, got {len(rows)}"
        )
    w = np.empty(grid.n + 1)
    for k, row in enumerate(rows):
        if len(row) != 2:
            raise ProfileError(f"{path}: row {k + 1} is not a u,h pair: {row!r}")
        try:
            u, h = float(row[0]), float(row[1])
        except ValueError as exc:
            raise ProfileError(f"{path}: non-numeric field in row {k + 1}") from exc
        node = grid.node(k)
        if abs(u - node) > 1e-9 * max(1.0, abs(node)):
            raise ProfileError(
                f"{path}: row {k + 1} has u={u}, expected node {node}"
            )
        w[k] = h
    return MeshProfile(grid, w)


def build_profile(spec: ProfileSpec, grid: GridSpec) -> MeshProfile:
    """Construct the profile a spec describes on the given grid."""
    if spec.kind == "inflection":
        return inflection_profile(
            grid, spec.r1, spec.r2, literal_coefficients=spec.literal_coefficients
        )
    if spec.kind == "bump":
        return bump_profile(
            grid, spec.r1, spec.r2, literal_coefficients=spec.literal_coefficients
        )
    if spec.kind == "experimental":
        return load_experimental(spec.path, grid)
    return load_profile_csv(spec.path, grid)


def validate_profile(f: MeshProfile) -> list[str]:
    """Check solver compatibility; returns warnings, raises on hard errors.

    The Dirichlet node must be exactly zero (error). A visibly nonzero
    left-edge slope or negative heights are only warnings: the scheme
    still runs but the continuous model assumes zero slope at u=0 and
    nonnegative heights.
    """
    if f.values[-1] != 0.0:
        raise ProfileError(
            f"last node must be exactly 0, got {f.values[-1]!r}"
        )
    warnings = []
    edge_slope = d_plus(f, 0)
    if abs(edge_slope) > 10.0 * f.grid.delta_u:
        warnings.append(
            f"left-edge slope {edge_slope:.6g} exceeds the zero-slope "
            f"compatibility threshold {10.0 * f.grid.delta_u:.6g}"
        )
    if np.any(f.values < 0.0):
        k = int(np.argmin(f.values))
        warnings.append(
            f"negative height {f.values[k]:.6g} at node {k}"
        )
    return warnings
