"""Analytic construction helpers: tori, product congruences, channel data.

These builders produce tame, well-conditioned inputs for tests and for the
bundled example scene; everything is derived from circular tori and cones of
(2,1)-planes.
"""

import numpy as np

from . import backend as K
from . import congruence as cg
from . import lie
from . import linalg as la
from .grid import QuadComplex


def torus_tube_sphere(major, minor, phi):
    """Generating sphere of a torus, centered on the center circle."""
    return lie.sphere_encode([major * np.cos(phi), major * np.sin(phi), 0.0], minor)


def torus_axis_sphere(major, minor, u):
    """Curvature sphere of the complementary family, centered on the axis."""
    cu = np.cos(u)
    if abs(cu) < 1e-9:
        raise ValueError("axis sphere degenerates to a plane at u = pi/2")
    rho = (major + minor * cu) / cu
    h = minor * np.sin(u) - (major + minor * cu) * np.tan(u)
    return lie.sphere_encode([0.0, 0.0, h], rho)


def torus_planes(major=2.0, minor=0.8):
    """The two orthogonal (2,1)-planes of a circular torus."""
    d1 = la.orthonormal_rows([torus_tube_sphere(major, minor, t).v
                              for t in (0.0, 1.1, 2.3)])
    d2 = la.lorentz_complement(d1)
    return d1, d2


def torus_point(major, minor, u, v):
    return np.array([(major + minor * np.cos(u)) * np.cos(v),
                     (major + minor * np.cos(u)) * np.sin(v),
                     minor * np.sin(u)])


def torus_implicit_residual(points, major, minor):
    pts = np.atleast_2d(points)
    rho = np.sqrt(pts[:, 0] ** 2 + pts[:, 1] ** 2)
    return (rho - major) ** 2 + pts[:, 2] ** 2 - minor ** 2


def product_congruence(m, n, plane1=None, plane2=None, angles1=None,
                       angles2=None, major=2.0, minor=0.8):
    """Multi-R congruence r(p,q) = A(p) + B(q) from two complementary cones.

    The sphere at (p,q) is the sum of a lightlike vector on the cone of the
    first (2,1)-plane and one on the cone of the complementary plane; every
    parameter rectangle is then closed by construction.
    """
    if plane1 is None or plane2 is None:
        plane1, plane2 = torus_planes(major, minor)
    if angles1 is None:
        angles1 = 0.25 + 2.2 * np.arange(m + 1) / (m + 1)
    if angles2 is None:
        angles2 = -0.9 + 2.0 * np.arange(n + 1) / (n + 1)
    a = [la.cone_point(plane1, t) for t in angles1]
    b = [la.cone_point(plane2, t) for t in angles2]
    spheres = {(p, q): lie.Sphere(a[p] + b[q])
               for p in range(m + 1) for q in range(n + 1)}
    return cg.RCongruence(QuadComplex(m, n), spheres)


def curve_congruence(m, n, cross_ratio=-1.0, major=2.0, minor=0.8):
    """Generic congruence built from two cyclide sphere curves.

    Both initial curves start at a common corner sphere; per-face target
    cross-ratios default to a constant (negative keeps both face complexes
    of one kind).
    """
    plane1, plane2 = torus_planes(major, minor)
    corner = la.cone_point(plane1, 0.1) + la.cone_point(plane2, -0.6)
    c1 = [lie.Sphere(corner)]
    for p in range(1, m + 1):
        c1.append(lie.Sphere(la.cone_point(plane1, 0.35 + 1.9 * p / m)
                             + la.cone_point(plane2, -0.6)))
    c2 = [lie.Sphere(corner)]
    for q in range(1, n + 1):
        c2.append(lie.Sphere(la.cone_point(plane1, 0.1)
                             + la.cone_point(plane2, -0.25 + 1.7 * q / n)))
    if callable(cross_ratio):
        table = cross_ratio
    else:
        table = lambda face: cross_ratio
    return cg.construct_from_curves(QuadComplex(m, n), c1, c2,
                                    cross_ratios=table)


def sphere_grid_congruence(m, n, radius=1.0):
    """Point spheres of a spherical-coordinate grid on a fixed sphere.

    The faces are concircular (hence rank 3) and every sphere is in oriented
    contact with the carrier sphere, a parabolic fixed complex.
    """
    us = np.linspace(0.35, 2.4, m + 1)
    vs = np.linspace(0.2, 4.9, n + 1)
    spheres = {}
    for p, u in enumerate(us):
        for q, v in enumerate(vs):
            x = radius * np.array([np.sin(u) * np.cos(v),
                                   np.sin(u) * np.sin(v),
                                   np.cos(u)])
            spheres[(p, q)] = lie.sphere_encode(x, 0.0)
    return cg.RCongruence(QuadComplex(m, n), spheres)


def carrier_sphere(radius=1.0):
    return lie.sphere_encode([0.0, 0.0, 0.0], radius)


def concentric_complex(big_radius, small_radius, center=(0.0, 0.0, 0.0)):
    """Elliptic complex of spheres meeting s_R at the angle cos g = r/R."""
    c = np.asarray(center, dtype=float)
    b1 = (1.0 + float(c @ c) - big_radius ** 2) / 2.0
    a_vec = np.array([b1, 1.0 - b1, c[0], c[1], c[2], -small_radius])
    return lie.classify_complex(a_vec)


def elliptic_complex_congruence(m, n, big_radius=2.0, small_radius=0.5, seed=11):
    """Congruence inside a fixed elliptic complex (concentric-sphere data).

    Line 0 samples the cone of a (2,1)-plane inside a^perp; subsequent lines
    are images under inversions whose complexes also lie in a^perp, so every
    sphere stays inside the fixed complex.
    """
    a = concentric_complex(big_radius, small_radius)
    space = la.lorentz_complement(a.v.reshape(1, 6))  # signature (3,2)
    gram = la.lorentz_gram(space)
    w, v = np.linalg.eigh(gram)
    units = [(v[:, i] @ space) / np.sqrt(abs(w[i])) for i in range(5)]
    plane_a = la.orthonormal_rows([units[2], units[3], units[0]])  # (2,1)
    base = [la.cone_point(plane_a, 0.3 + 1.7 * p / (m + 1)) for p in range(m + 1)]
    spheres = {(p, 0): lie.Sphere(K.normalize(base[p])) for p in range(m + 1)}
    rng = np.random.default_rng(seed)
    for q in range(n):
        coeff = rng.normal(size=space.shape[0])
        b = coeff @ space
        while abs(lie.inner(b, b)) < 1e-3 * K.enorm2(b):
            coeff = rng.normal(size=space.shape[0])
            b = coeff @ space
        for p in range(m + 1):
            img = K.inversion_apply(b, spheres[(p, q)].v)
            spheres[(p, q + 1)] = lie.Sphere(K.normalize(img))
    return cg.RCongruence(QuadComplex(m, n), spheres), a


def channel_congruence(m, n, major=2.0, minor=0.8, seed=5):
    """Congruence whose family-1 lines each span a (2,1)-plane.

    Line 0 samples the cone of the torus tube-sphere plane; each following
    line is the image of the previous one under a fixed inversion, making the
    family-2 complexes constant along every family-1 ribbon.
    """
    plane1, plane2 = torus_planes(major, minor)
    angles = 0.3 + 2.0 * np.arange(m + 1) / (m + 1)
    line = [la.cone_point(plane1, t) for t in angles]
    spheres = {(p, 0): lie.Sphere(K.normalize(line[p])) for p in range(m + 1)}
    rng = np.random.default_rng(seed)
    ribbon_complexes = []
    for q in range(n):
        b = rng.normal(size=6)
        b = b / K.enorm(b)
        while abs(lie.inner(b, b)) < 0.05:
            b = rng.normal(size=6)
            b = b / K.enorm(b)
        ribbon_complexes.append(lie.classify_complex(b))
        for p in range(m + 1):
            img = K.inversion_apply(b, spheres[(p, q)].v)
            spheres[(p, q + 1)] = lie.Sphere(K.normalize(img))
    return cg.RCongruence(QuadComplex(m, n), spheres), ribbon_complexes
