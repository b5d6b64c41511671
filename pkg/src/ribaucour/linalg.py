"""Subspace utilities for R^{4,2}.

Subspaces are (k,6) arrays whose rows are orthonormal in the auxiliary
(Euclidean) metric; rank decisions go through singular values.  The Lorentz
form only enters through the constant matrix G = diag(-1,1,1,1,1,-1).
"""

import numpy as np

from . import backend as K
from .errors import DegenerateConfiguration, WrongSignature

G = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0, -1.0])


def orthonormal_rows(vectors, tol=1e-12):
    """Euclidean-orthonormal basis of the row span, rank-truncated."""
    a = np.atleast_2d(np.asarray(vectors, dtype=float))
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.empty((0, 6))
    r = int(np.sum(s > tol * s[0]))
    return vt[:r]


def numerical_rank(vectors, tol):
    a = np.atleast_2d(np.asarray(vectors, dtype=float))
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def lorentz_gram(basis):
    b = np.atleast_2d(basis)
    return b @ G @ b.T


def signature(basis, tol=1e-9):
    """(n_plus, n_minus, n_null) of the restricted Lorentz form."""
    gram = lorentz_gram(basis)
    w = np.linalg.eigvalsh(gram)
    scale = max(np.max(np.abs(w)), 1.0)
    pos = int(np.sum(w > tol * scale))
    neg = int(np.sum(w < -tol * scale))
    return pos, neg, basis.shape[0] - pos - neg


def lorentz_complement(basis):
    """Orthonormal basis of {x : <x,b> = 0 for all rows b}."""
    b = np.atleast_2d(basis)
    m = b @ G  # rows are Euclidean normals of the complement
    u, s, vt = np.linalg.svd(m, full_matrices=True)
    r = int(np.sum(s > 1e-12 * s[0])) if s.size else 0
    return vt[r:]


def join_spans(*spans):
    rows = [np.atleast_2d(s) for s in spans if np.size(s)]
    return orthonormal_rows(np.vstack(rows))


def intersect_spans(a, b, tol=1e-9):
    """Orthonormal basis of span(a) rows-space intersected with span(b)."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    m = np.hstack([a.T, -b.T])  # kernel vectors give common elements
    u, s, vt = np.linalg.svd(m)
    if s.size == 0:
        return np.empty((0, 6))
    null = vt[np.sum(s > tol * s[0]):]
    if null.shape[0] == 0:
        return np.empty((0, 6))
    vecs = null[:, : a.shape[0]] @ a
    return orthonormal_rows(vecs)


def project_residual(basis, x):
    """Relative distance of x from the row span of basis."""
    b = np.atleast_2d(basis)
    if b.shape[0] == 0:
        return 1.0
    coeff = b @ x
    res = x - coeff @ b
    return float(np.linalg.norm(res) / np.linalg.norm(x))


def subspace_gap(a, b):
    """Spectral gap |P_a - P_b| between equal-dimension row spans."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    pa = a.T @ a
    pb = b.T @ b
    return float(np.linalg.norm(pa - pb, 2))


def cone_basis(basis, tol=1e-9):
    """Diagonalizing basis (u1, u2, u3) of a (2,1)-plane.

    u1, u2 have Lorentz square +1, u3 has -1; the lightcone conic is
    cos(t) u1 + sin(t) u2 + u3.
    """
    b = np.atleast_2d(basis)
    if b.shape[0] != 3:
        raise WrongSignature("need a 3-dimensional subspace")
    gram = lorentz_gram(b)
    w, v = np.linalg.eigh(gram)
    scale = np.max(np.abs(w))
    if not (w[0] < -1e-9 * scale and w[1] > 1e-9 * scale and w[2] > 1e-9 * scale):
        raise WrongSignature(f"restricted form has eigenvalues {w}, not (2,1)")
    u3 = (v[:, 0] @ b) / np.sqrt(-w[0])
    u1 = (v[:, 1] @ b) / np.sqrt(w[1])
    u2 = (v[:, 2] @ b) / np.sqrt(w[2])
    return u1, u2, u3


def cone_point(basis, t):
    """Lightlike vector at angle t on the conic of a (2,1)-plane."""
    u1, u2, u3 = cone_basis(basis)
    return np.cos(t) * u1 + np.sin(t) * u2 + u3


def null_directions_2d(basis, tol=1e-9):
    """The two lightlike directions of a (1,1)-plane."""
    b = np.atleast_2d(basis)
    if b.shape[0] != 2:
        raise DegenerateConfiguration("need a 2-dimensional subspace")
    gram = lorentz_gram(b)
    w, v = np.linalg.eigh(gram)
    scale = np.max(np.abs(w))
    if not (w[0] < -tol * scale and w[1] > tol * scale):
        raise DegenerateConfiguration(f"plane is not of signature (1,1): {w}")
    um = (v[:, 0] @ b) / np.sqrt(-w[0])
    up = (v[:, 1] @ b) / np.sqrt(w[1])
    return up + um, up - um


def null_vector_in(basis, tol=1e-9):
    """Some lightlike vector in the span, or None if the form is definite."""
    b = np.atleast_2d(basis)
    if b.shape[0] == 0:
        return None
    gram = lorentz_gram(b)
    w, v = np.linalg.eigh(gram)
    scale = max(np.max(np.abs(w)), 1.0)
    if abs(w[0]) <= tol * scale:  # degenerate direction is itself null
        return K.normalize(v[:, 0] @ b)
    if w[0] > 0 or w[-1] < 0:
        return None  # definite: no lightlike vectors
    um = (v[:, 0] @ b) / np.sqrt(-w[0])
    up = (v[:, -1] @ b) / np.sqrt(w[-1])
    return K.normalize(up + um)
