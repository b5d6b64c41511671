"""Pure-python fallback for the R^{4,2} arithmetic kernels.

Same call surface as the compiled extension ``ribaucour._kernels``; every
vector is a contiguous float64 array of length 6.  The bilinear form is

    <x, y> = -x1*y1 + x2*y2 + x3*y3 + x4*y4 + x5*y5 - x6*y6
"""

import numpy as np

BACKEND = "python"

_SIGNS = np.array([-1.0, 1.0, 1.0, 1.0, 1.0, -1.0])


def inner(x, y):
    """Lorentz inner product of signature (4,2)."""
    return float((x * y) @ _SIGNS)


def enorm2(x):
    """Squared auxiliary (Euclidean) norm."""
    return float(x @ x)


def enorm(x):
    return float(np.sqrt(x @ x))


def lightcone_residual(x):
    """|<x,x>| relative to the auxiliary norm; 0 for exactly lightlike x."""
    n2 = enorm2(x)
    if n2 == 0.0:
        return np.inf
    return abs(inner(x, x)) / n2


def normalize(x):
    """Unit auxiliary norm with canonical sign (largest entry positive)."""
    n = enorm(x)
    v = x / n
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0.0:
        v = -v
    return v


def inversion_apply(a, x):
    """Reflection of x in the non-degenerate complex a: x - 2<x,a>/<a,a> a."""
    return x - (2.0 * inner(x, a) / inner(a, a)) * a


def inversion_apply_rows(a, rows):
    """Reflect every row of a (k,6) array in the complex a."""
    aa = inner(a, rows[0] * 0 + a)  # <a,a>
    coeff = 2.0 * ((rows * _SIGNS) @ a) / aa
    return rows - np.outer(coeff, a)


def proj_distance(x, y):
    """Projective distance: min over signs of |x/|x| -+ y/|y||, in [0, sqrt(2)]."""
    u = x / enorm(x)
    v = y / enorm(y)
    d1 = u - v
    d2 = u + v
    return float(min(np.sqrt(d1 @ d1), np.sqrt(d2 @ d2)))
