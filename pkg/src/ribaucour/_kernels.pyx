# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled R^{4,2} arithmetic kernels (signature -,+,+,+,+,-).

Mirrors ``ribaucour._kernels_py``; selected at import by ``ribaucour.backend``.
"""

from libc.math cimport fabs, sqrt

import numpy as np

BACKEND = "cython"


cdef inline double _inner6(const double[::1] x, const double[::1] y) nogil:
    return (-x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
            + x[3] * y[3] + x[4] * y[4] - x[5] * y[5])


cdef inline double _enorm2(const double[::1] x) nogil:
    cdef double s = 0.0
    cdef int i
    for i in range(6):
        s += x[i] * x[i]
    return s


def inner(const double[::1] x, const double[::1] y):
    """Lorentz inner product of signature (4,2)."""
    return _inner6(x, y)


def enorm2(const double[::1] x):
    """Squared auxiliary (Euclidean) norm."""
    return _enorm2(x)


def enorm(const double[::1] x):
    return sqrt(_enorm2(x))


def lightcone_residual(const double[::1] x):
    """|<x,x>| relative to the auxiliary norm; 0 for exactly lightlike x."""
    cdef double n2 = _enorm2(x)
    if n2 == 0.0:
        return float("inf")
    return fabs(_inner6(x, x)) / n2


def normalize(const double[::1] x):
    """Unit auxiliary norm with canonical sign (largest entry positive)."""
    cdef double n = sqrt(_enorm2(x))
    out = np.empty(6, dtype=np.float64)
    cdef double[::1] o = out
    cdef int i, k = 0
    cdef double best = 0.0, v
    for i in range(6):
        o[i] = x[i] / n
        v = fabs(o[i])
        if v > best:
            best = v
            k = i
    if o[k] < 0.0:
        for i in range(6):
            o[i] = -o[i]
    return out


def inversion_apply(const double[::1] a, const double[::1] x):
    """Reflection of x in the non-degenerate complex a: x - 2<x,a>/<a,a> a."""
    cdef double c = 2.0 * _inner6(x, a) / _inner6(a, a)
    out = np.empty(6, dtype=np.float64)
    cdef double[::1] o = out
    cdef int i
    for i in range(6):
        o[i] = x[i] - c * a[i]
    return out


def inversion_apply_rows(const double[::1] a, const double[:, ::1] rows):
    """Reflect every row of a (k,6) array in the complex a."""
    cdef Py_ssize_t k = rows.shape[0]
    cdef double aa = _inner6(a, a)
    out = np.empty((k, 6), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t r
    cdef int i
    cdef double c
    for r in range(k):
        c = 2.0 * _inner6(rows[r], a) / aa
        for i in range(6):
            o[r, i] = rows[r, i] - c * a[i]
    return out


def proj_distance(const double[::1] x, const double[::1] y):
    """Projective distance: min over signs of |x/|x| -+ y/|y||, in [0, sqrt(2)]."""
    cdef double nx = sqrt(_enorm2(x))
    cdef double ny = sqrt(_enorm2(y))
    cdef double dm = 0.0, dp = 0.0, u, v
    cdef int i
    for i in range(6):
        u = x[i] / nx
        v = y[i] / ny
        dm += (u - v) * (u - v)
        dp += (u + v) * (u + v)
    return sqrt(dm if dm < dp else dp)
