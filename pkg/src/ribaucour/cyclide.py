"""Dupin cyclides as orthogonal (2,1)+(2,1) splittings and cyclidic nets.

A cyclide is stored as two complementary (2,1)-planes; its oriented spheres
are the two lightcone conics, and contact elements pair one sphere from each
conic.  Face-cyclides of a Legendre map carry the family-1 curvature spheres
in the first plane and the family-2 ones in the second.
"""

from dataclasses import dataclass

import numpy as np

from . import backend as K
from . import congruence as cg
from . import lie
from . import linalg as la
from .config import DEFAULT, Tolerances
from .envelope import LegendreMap
from .errors import (
    DecodeDegenerate,
    IntersectionDegenerate,
    RankDefect,
    UmbilicFace,
    WrongSignature,
)
from .lie import Sphere


@dataclass(frozen=True)
class DupinCyclide:
    plane1: np.ndarray  # (3,6) orthonormal rows, Lorentz signature (2,1)
    plane2: np.ndarray

    def sphere1(self, t) -> Sphere:
        return Sphere(la.cone_point(self.plane1, t))

    def sphere2(self, t) -> Sphere:
        return Sphere(la.cone_point(self.plane2, t))

    def contact_element(self, t1, t2, tol: Tolerances = DEFAULT):
        return lie.contact_element(self.sphere1(t1).v, self.sphere2(t2).v, tol)


def _checked_cyclide(p1, p2, tol: Tolerances = DEFAULT) -> DupinCyclide:
    for pl in (p1, p2):
        sig = la.signature(pl)
        if sig[:2] != (2, 1):
            raise WrongSignature(f"plane signature {sig} is not (2,1)")
    gap = np.max(np.abs(p1 @ la.G @ p2.T))
    if gap > 1e-7:
        raise WrongSignature("planes are not Lorentz-orthogonal")
    return DupinCyclide(p1, p2)


def cyclide_from_face(r: cg.RCongruence, face, tol: Tolerances = DEFAULT) -> DupinCyclide:
    """The cyclide whose first curvature-sphere family spans the face spheres."""
    quad = r.grid.face_vertices(face)
    p1 = la.orthonormal_rows([K.normalize(r.rep(v)) for v in quad])
    if p1.shape[0] != 3:
        raise WrongSignature("face spheres do not span a plane")
    sig = la.signature(p1)
    if sig[:2] != (2, 1):
        raise WrongSignature(f"face signature {sig[:2]} is not (2,1)")
    return _checked_cyclide(p1, la.lorentz_complement(p1), tol)


def face_cyclide_family(f: LegendreMap, face, t, tol: Tolerances = DEFAULT) -> DupinCyclide:
    """The 1-parameter family of face-cyclides of a non-umbilic face.

    plane1 always contains the family-1 curvature spheres and plane2 the
    family-2 ones; the remaining basis sphere of plane1 turns inside the
    2-space orthogonal to all four curvature spheres, with t = 0 at the
    auxiliary-orthogonal member.
    """
    s_ij, s_jk, s_kl, s_il = f.face_curvature_spheres(face, tol)
    if K.proj_distance(s_ij.v, s_kl.v) <= tol.proj * 1e3 or \
       K.proj_distance(s_jk.v, s_il.v) <= tol.proj * 1e3:
        raise UmbilicFace("face is umbilic; no cyclide family")
    pair = la.orthonormal_rows([s_ij.v, s_kl.v])
    if pair.shape[0] != 2:
        raise RankDefect("family-1 curvature spheres coincide")
    hull = la.lorentz_complement(np.stack([s_jk.v, s_il.v]))  # 4-space V
    # the turning directions: inside V, auxiliary-orthogonal to the pair
    proj = hull - (hull @ pair.T) @ pair
    turn = la.orthonormal_rows(proj)
    if turn.shape[0] != 2:
        raise RankDefect("no turning freedom; curvature spheres degenerate")
    extra = np.cos(t) * turn[0] + np.sin(t) * turn[1]
    p1 = la.orthonormal_rows(np.vstack([pair, extra]))
    sig = la.signature(p1)
    if sig[:2] != (2, 1):
        raise WrongSignature(f"member t={t} has signature {sig[:2]}")
    return _checked_cyclide(p1, la.lorentz_complement(p1), tol)


# ---------------------------------------------------------------------------
# cyclidic nets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclidicNet:
    cyclides: dict  # face -> DupinCyclide


def _step_cyclide(d: DupinCyclide, edge_sphere: Sphere, inv_complex,
                  edge_family, tol: Tolerances = DEFAULT) -> DupinCyclide:
    """Propagate a face-cyclide across an edge.

    Crossing a family-2 edge glues the plane1 conics through the edge sphere
    and cuts with the new face's family-1 inversion complex; crossing a
    family-1 edge does the same with the roles of the planes swapped.
    """
    keep = d.plane1 if edge_family == 2 else d.plane2
    hull = la.join_spans(edge_sphere.v.reshape(1, 6), keep)
    if hull.shape[0] != 4:
        raise IntersectionDegenerate("edge sphere lies inside the carried plane")
    cut = la.intersect_spans(hull, la.lorentz_complement(inv_complex.v.reshape(1, 6)),
                             tol.rank)
    if cut.shape[0] != 3:
        raise IntersectionDegenerate("propagation cut is not a plane")
    other = la.lorentz_complement(cut)
    if edge_family == 2:
        return _checked_cyclide(cut, other, tol)
    return _checked_cyclide(other, cut, tol)


def propagate_cyclidic(f: LegendreMap, initial_face, initial: DupinCyclide,
                       r: cg.RCongruence, tol: Tolerances = DEFAULT) -> CyclidicNet:
    """Spread one face-cyclide over the whole grid.

    The inversion complexes come from the given R-congruence of f, but the
    resulting net only depends on f (checked in the validation suite).
    """
    grid = f.grid
    m, n = grid.m, grid.n
    p0, q0 = initial_face
    s_ij, s_jk, s_kl, s_il = f.face_curvature_spheres(initial_face, tol)
    init_res = max(la.project_residual(initial.plane1, K.normalize(s_ij.v)),
                   la.project_residual(initial.plane1, K.normalize(s_kl.v)),
                   la.project_residual(initial.plane2, K.normalize(s_jk.v)),
                   la.project_residual(initial.plane2, K.normalize(s_il.v)))
    if init_res > tol.rank * 1e2:
        raise WrongSignature("initial cyclide does not carry the face's curvature spheres")
    cyclides = {initial_face: initial}

    def step(src, dst):
        # shared edge between the two faces
        shared = set(grid.face_vertices(src)) & set(grid.face_vertices(dst))
        u, w = sorted(shared)
        edge = grid.edge_of(u, w)
        fc = cg.face_complexes(r, dst, tol)
        inv = fc.family1 if edge[0] == 2 else fc.family2
        cyclides[dst] = _step_cyclide(cyclides[src], f.curvature_sphere(edge, tol),
                                      inv, edge[0], tol)

    for p in range(p0, m - 1):
        step((p, q0), (p + 1, q0))
    for p in range(p0, 0, -1):
        step((p, q0), (p - 1, q0))
    for p in range(m):
        for q in range(q0, n - 1):
            step((p, q), (p, q + 1))
        for q in range(q0, 0, -1):
            step((p, q), (p, q - 1))
    return CyclidicNet(cyclides)


@dataclass(frozen=True)
class CyclidicNetReport:
    worst_membership: float
    worst_sharing: float

    def ok(self, gate=1e-8):
        return max(self.worst_membership, self.worst_sharing) <= gate


def validate_cyclidic(net: CyclidicNet, f: LegendreMap,
                      tol: Tolerances = DEFAULT) -> CyclidicNetReport:
    """Curvature-sphere memberships and contact-element sharing across edges."""
    worst_m = 0.0
    for face, d in net.cyclides.items():
        s_ij, s_jk, s_kl, s_il = f.face_curvature_spheres(face, tol)
        worst_m = max(worst_m,
                      la.project_residual(d.plane1, K.normalize(s_ij.v)),
                      la.project_residual(d.plane1, K.normalize(s_kl.v)),
                      la.project_residual(d.plane2, K.normalize(s_jk.v)),
                      la.project_residual(d.plane2, K.normalize(s_il.v)))
    worst_s = 0.0
    for face in f.grid.faces():
        p, q = face
        for other in ((p + 1, q), (p, q + 1)):
            if other not in net.cyclides or face not in net.cyclides:
                continue
            shared = set(f.grid.face_vertices(face)) & set(f.grid.face_vertices(other))
            u, w = sorted(shared)
            edge = f.grid.edge_of(u, w)
            s = f.curvature_sphere(edge, tol).v.reshape(1, 6)
            if edge[0] == 2:  # family-2 edge: plane1 conics glue
                h1 = la.join_spans(s, net.cyclides[face].plane1)
                h2 = la.join_spans(s, net.cyclides[other].plane1)
            else:
                h1 = la.join_spans(s, net.cyclides[face].plane2)
                h2 = la.join_spans(s, net.cyclides[other].plane2)
            worst_s = max(worst_s, la.subspace_gap(h1, h2))
    return CyclidicNetReport(worst_m, worst_s)


def map_cyclidic_pair(net: CyclidicNet, field: dict,
                      tol: Tolerances = DEFAULT) -> CyclidicNet:
    """Image of a cyclidic net under the facewise pair inversions."""
    out = {}
    for face, d in net.cyclides.items():
        inv = field[face]
        p1 = la.orthonormal_rows(K.inversion_apply_rows(
            np.ascontiguousarray(inv.v), np.ascontiguousarray(d.plane1)))
        p2 = la.orthonormal_rows(K.inversion_apply_rows(
            np.ascontiguousarray(inv.v), np.ascontiguousarray(d.plane2)))
        out[face] = _checked_cyclide(p1, p2, tol)
    return CyclidicNet(out)


# ---------------------------------------------------------------------------
# R-cyclides of a Ribaucour pair
# ---------------------------------------------------------------------------

def r_cyclide(f: LegendreMap, fhat: LegendreMap, r: cg.RCongruence, edge,
              t=0.0, tol: Tolerances = DEFAULT) -> DupinCyclide:
    """A cyclide of the vertical face over an edge of a Ribaucour pair.

    plane1 holds the curvature spheres of f and fhat along the edge, plane2
    the two R-spheres; the remaining freedom is an angle, t = 0 at the
    auxiliary-orthogonal member.
    """
    u, w = r.grid.edge_vertices(edge)
    s = f.curvature_sphere(edge, tol)
    sh = fhat.curvature_sphere(edge, tol)
    pair = la.orthonormal_rows([s.v, sh.v])
    if pair.shape[0] != 2:
        raise RankDefect("pair curvature spheres coincide over the edge")
    hull = la.lorentz_complement(np.stack([r.rep(u), r.rep(w)]))
    proj = hull - (hull @ pair.T) @ pair
    turn = la.orthonormal_rows(proj)
    if turn.shape[0] != 2:
        raise RankDefect("no turning freedom over the edge")
    extra = np.cos(t) * turn[0] + np.sin(t) * turn[1]
    p1 = la.orthonormal_rows(np.vstack([pair, extra]))
    sig = la.signature(p1)
    if sig[:2] != (2, 1):
        raise WrongSignature(f"member t={t} has signature {sig[:2]}")
    return _checked_cyclide(p1, la.lorentz_complement(p1), tol)


def canonical_r_cyclide(f: LegendreMap, fhat: LegendreMap, r: cg.RCongruence,
                        net: CyclidicNet, field: dict, edge,
                        tol: Tolerances = DEFAULT) -> DupinCyclide:
    """The R-cyclide induced by a pair of exchanged cyclidic nets.

    Along the curvature line of the face-cyclide through the edge, each
    contact element and its pair image share a sphere fixed by the face
    inversion; those spheres span the R-sphere plane of the R-cyclide.
    """
    u, w = r.grid.edge_vertices(edge)
    faces = r.grid.faces_of_edge(edge)
    face = faces[0]
    d = net.cyclides[face]
    inv = field[face]
    s = f.curvature_sphere(edge, tol)
    # conic of partner spheres: the plane NOT containing the edge sphere
    plane = d.plane2 if la.project_residual(d.plane1, K.normalize(s.v)) < 1e-6 \
        else d.plane1
    fixed = []
    for t in (0.0, 1.3, 2.7):
        partner = la.cone_point(plane, t)
        c = lie.inner(partner, inv.v) * s.v - lie.inner(s.v, inv.v) * partner
        fixed.append(K.normalize(c))
    p2 = la.orthonormal_rows(fixed)
    if p2.shape[0] != 3:
        raise RankDefect("fixed spheres of the curvature line are degenerate")
    sig = la.signature(p2)
    if sig[:2] != (2, 1):
        raise WrongSignature(f"R-sphere plane has signature {sig[:2]}")
    return _checked_cyclide(la.lorentz_complement(p2), p2, tol)


def share_curvature_line(c1: DupinCyclide, c2: DupinCyclide, edge_sphere: Sphere,
                         which=(1, 1)) -> float:
    """Gap between the curvature-line element families through a sphere.

    The cyclides share the line on the given sphere iff the 4-spaces spanned
    by the sphere and the respective transverse planes coincide.
    """
    p1 = c1.plane1 if which[0] == 1 else c1.plane2
    p2 = c2.plane1 if which[1] == 1 else c2.plane2
    h1 = la.join_spans(edge_sphere.v.reshape(1, 6), p1)
    h2 = la.join_spans(edge_sphere.v.reshape(1, 6), p2)
    if h1.shape[0] != h2.shape[0]:
        return 1.0
    return la.subspace_gap(h1, h2)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclideSample:
    points: np.ndarray      # (res, res, 3), nan where decoding degenerates
    valid: np.ndarray       # (res, res) bool


def sample_cyclide(c: DupinCyclide, resolution, frame=lie.DEFAULT_FRAME,
                   tol: Tolerances = DEFAULT,
                   range1=(0.0, 2 * np.pi), range2=(0.0, 2 * np.pi)) -> CyclideSample:
    """Curvature-line point grid: decode the point sphere of each element."""
    t1 = np.linspace(range1[0], range1[1], resolution, endpoint=False)
    t2 = np.linspace(range2[0], range2[1], resolution, endpoint=False)
    pts = np.full((resolution, resolution, 3), np.nan)
    valid = np.zeros((resolution, resolution), dtype=bool)
    u1a, u1b, u1c = la.cone_basis(c.plane1)
    u2a, u2b, u2c = la.cone_basis(c.plane2)
    for i, a in enumerate(t1):
        s1 = np.cos(a) * u1a + np.sin(a) * u1b + u1c
        c1p = lie.inner(s1, frame.p)
        for j, b in enumerate(t2):
            s2 = np.cos(b) * u2a + np.sin(b) * u2b + u2c
            c2p = lie.inner(s2, frame.p)
            if max(abs(c1p), abs(c2p)) <= tol.contact:
                continue  # element inside p^perp: no point sphere
            point = c2p * s1 - c1p * s2
            dec = lie.sphere_decode(Sphere(point), frame, tol)
            if isinstance(dec, lie.EuclideanSphere):
                pts[i, j] = dec.center
                valid[i, j] = True
    return CyclideSample(pts, valid)
