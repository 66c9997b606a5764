"""Pure-numpy stepping kernel (fallback when the compiled core is absent).

Every arithmetic operation here mirrors the compiled kernel in
``_kernels_cy.pyx`` expression for expression, so the two backends produce
bit-identical trajectories. Keep them in sync when editing either one.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def step_once(values: np.ndarray, delta_u: float, delta_t: float) -> np.ndarray:
    """One explicit update of the height profile.

    Interior nodes move by the quasilinear curvature term plus the
    length-coupled drift; the last node is pinned to zero and the first
    node copies the increment of node 1 (discrete zero-slope condition).
    """
    d = (values[1:] - values[:-1]) / delta_u
    terms = np.sqrt(1.0 + d * d)
    # left-to-right summation; np.cumsum accumulates sequentially while
    # np.sum would reduce pairwise
    L = delta_u * float(np.cumsum(terms)[-1])
    two_du = 2.0 * delta_u
    du2 = delta_u * delta_u
    d0 = (values[2:] - values[:-2]) / two_du
    d2 = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / du2
    a = 1.0 / (1.0 + d0 * d0)
    new = np.empty_like(values)
    new[1:-1] = values[1:-1] + delta_t * (a * (d2 + d0 / L))
    new[-1] = 0.0
    new[0] = values[0] + (new[1] - values[1])
    return new


def advance(values: np.ndarray, delta_u: float, delta_t: float, steps: int) -> None:
    """Advance ``values`` in place by ``steps`` updates."""
    for _ in range(steps):
        values[:] = step_once(values, delta_u, delta_t)
