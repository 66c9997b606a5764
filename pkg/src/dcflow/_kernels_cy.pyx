# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernel.

Bit-identical twin of ``_kernels_py``: same expressions, same evaluation
order, strict IEEE double arithmetic (built with -ffp-contract=off).
The time loop runs without the GIL so refinement levels can execute on
worker threads concurrently.
"""
import numpy as np

from libc.math cimport sqrt

BACKEND = "cython"


def advance(double[::1] values, double delta_u, double delta_t, long steps):
    """Advance ``values`` in place by ``steps`` updates."""
    cdef Py_ssize_t n = values.shape[0] - 1
    cdef double[::1] buf = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] terms = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t k
    cdef long s
    cdef double L, acc, d, d0, d2, a
    cdef double two_du = 2.0 * delta_u
    cdef double du2 = delta_u * delta_u
    with nogil:
        for s in range(steps):
            for k in range(n):
                d = (values[k + 1] - values[k]) / delta_u
                terms[k] = sqrt(1.0 + d * d)
            acc = 0.0
            for k in range(n):
                acc = acc + terms[k]
            L = delta_u * acc
            for k in range(1, n):
                d0 = (values[k + 1] - values[k - 1]) / two_du
                d2 = (values[k + 1] - 2.0 * values[k] + values[k - 1]) / du2
                a = 1.0 / (1.0 + d0 * d0)
                buf[k] = values[k] + delta_t * (a * (d2 + d0 / L))
            buf[n] = 0.0
            buf[0] = values[0] + (buf[1] - values[1])
            for k in range(n + 1):
                values[k] = buf[k]


def step_once(values, double delta_u, double delta_t):
    """One explicit update, returned as a fresh array."""
    out = np.array(values, dtype=np.float64)
    advance(out, delta_u, delta_t, 1)
    return out
