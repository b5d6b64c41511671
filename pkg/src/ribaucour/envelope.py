"""Discrete Legendre maps and the Ribaucour family of an R-congruence.

An envelope assigns to every vertex a contact element containing the vertex
sphere; crossing an edge applies the face inversion of the edge's family, so
one initial contact element determines the whole envelope.  Two envelopes of
the same congruence are exchanged facewise by a third inversion that fixes
the congruence spheres.
"""

from dataclasses import dataclass, field

import numpy as np

from . import backend as K
from . import congruence as cg
from . import lie
from . import linalg as la
from .config import DEFAULT, Tolerances
from .errors import (
    ClosureFailure,
    DegenerateConfiguration,
    InconsistentPartner,
    LightlikeComplex,
    NotAPair,
    NotElliptic,
    PointSphereInput,
    SphereNotInElement,
)
from .grid import QuadComplex
from .lie import ContactElement, LinearComplex, MoebiusFrame, Sphere


@dataclass
class LegendreMap:
    grid: QuadComplex
    elements: dict  # vertex -> ContactElement
    _s_cache: dict = field(default_factory=dict, repr=False)

    def element(self, v) -> ContactElement:
        return self.elements[v]

    def curvature_sphere(self, edge, tol: Tolerances = DEFAULT) -> Sphere:
        """The common sphere of the two contact elements along an edge."""
        if edge not in self._s_cache:
            u, v = self.grid.edge_vertices(edge)
            self._s_cache[edge] = lie.contact_intersect(
                self.elements[u], self.elements[v], tol)
        return self._s_cache[edge]

    def face_curvature_spheres(self, face, tol: Tolerances = DEFAULT):
        """(s_ij, s_jk, s_kl, s_il) around a face."""
        i, j, k, l = self.grid.face_vertices(face)
        return (self.curvature_sphere(self.grid.edge_of(i, j), tol),
                self.curvature_sphere(self.grid.edge_of(j, k), tol),
                self.curvature_sphere(self.grid.edge_of(k, l), tol),
                self.curvature_sphere(self.grid.edge_of(i, l), tol))

    def point_sphere(self, v, frame=lie.DEFAULT_FRAME, tol: Tolerances = DEFAULT):
        return lie.point_sphere(self.elements[v], frame, tol)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LegendreReport:
    edge_failures: dict      # edge -> reason
    circularity: dict        # face -> relative rank-4 residual of point spheres
    worst_circularity: float

    @property
    def ok(self):
        return not self.edge_failures


def validate_legendre(f: LegendreMap, frame=lie.DEFAULT_FRAME,
                      tol: Tolerances = DEFAULT) -> LegendreReport:
    """Adjacent elements must intersect; point spheres are circular per face."""
    failures = {}
    for edge in f.grid.edges():
        try:
            f.curvature_sphere(edge, tol)
        except Exception as e:  # noqa: BLE001 - collected into the report
            failures[edge] = f"{type(e).__name__}: {e}"
    circ = {}
    worst = 0.0
    for face in f.grid.faces():
        try:
            pts = [f.point_sphere(v, frame, tol).v
                   for v in f.grid.face_vertices(face)]
        except DegenerateConfiguration:
            continue
        rows = np.stack([K.normalize(p) for p in pts])
        s = np.linalg.svd(rows, compute_uv=False)
        circ[face] = float(s[3] / s[0])
        worst = max(worst, circ[face])
    return LegendreReport(failures, circ, worst)


# ---------------------------------------------------------------------------
# propagation of envelopes
# ---------------------------------------------------------------------------

def _edge_inversion(r: cg.RCongruence, u, w, tol) -> LinearComplex:
    """The face inversion transporting elements from u to w across their edge."""
    edge = r.grid.edge_of(u, w)
    face = r.grid.faces_of_edge(edge)[0]
    fc = cg.face_complexes(r, face, tol)
    return fc.family1 if edge[0] == 1 else fc.family2


def propagate(r: cg.RCongruence, v0, f0: ContactElement,
              tol: Tolerances = DEFAULT, closure_gate=1e-8) -> LegendreMap:
    """The unique envelope through an initial contact element.

    Elements spread from v0 along its row and then along every column; the
    per-face closure residual is checked afterwards and a ClosureFailure is
    raised when it exceeds the gate (exact R-congruence data closes by
    construction).
    """
    if f0.residual_of(r.rep(v0)) > tol.proj * 1e4:
        raise SphereNotInElement("initial element does not contain the vertex sphere")
    m, n = r.grid.m, r.grid.n
    p0, q0 = v0
    elements = {v0: f0}

    def step(u, w):
        inv = _edge_inversion(r, u, w, tol)
        elements[w] = lie.invert_element(inv, elements[u])

    for p in range(p0, m):
        step((p, q0), (p + 1, q0))
    for p in range(p0, 0, -1):
        step((p, q0), (p - 1, q0))
    for p in range(m + 1):
        for q in range(q0, n):
            step((p, q), (p, q + 1))
        for q in range(q0, 0, -1):
            step((p, q), (p, q - 1))

    env = LegendreMap(r.grid, elements)
    worst = closure_residual(env, r, tol)
    if worst > closure_gate:
        raise ClosureFailure(f"worst face closure residual {worst:.3e}")
    return env


def closure_residual(f: LegendreMap, r: cg.RCongruence,
                     tol: Tolerances = DEFAULT) -> float:
    """Worst gap between transported and stored elements over all faces."""
    worst = 0.0
    for face in r.grid.faces():
        fc = cg.face_complexes(r, face, tol)
        i, j, k, l = r.grid.face_vertices(face)
        for inv, src, dst in ((fc.family1, i, j), (fc.family1, l, k),
                              (fc.family2, i, l), (fc.family2, j, k)):
            moved = lie.invert_element(inv, f.elements[src])
            worst = max(worst, la.subspace_gap(moved.basis, f.elements[dst].basis))
    return worst


@dataclass(frozen=True)
class EnvelopeReport:
    worst_membership: float   # r_v in f_v
    worst_closure: float      # transported vs stored elements
    worst_swap: float         # curvature-sphere swaps across opposite edges

    def ok(self, gate=1e-8):
        return max(self.worst_membership, self.worst_closure, self.worst_swap) <= gate


def verify_envelope(f: LegendreMap, r: cg.RCongruence,
                    tol: Tolerances = DEFAULT) -> EnvelopeReport:
    """Membership, transport and curvature-sphere swap residuals."""
    worst_m = max(f.elements[v].residual_of(r.rep(v)) for v in r.grid.vertices())
    worst_c = closure_residual(f, r, tol)
    worst_s = 0.0
    for face in r.grid.faces():
        fc = cg.face_complexes(r, face, tol)
        s_ij, s_jk, s_kl, s_il = f.face_curvature_spheres(face, tol)
        swaps = (K.proj_distance(lie.lie_inversion(fc.family2, s_ij.v), s_kl.v),
                 K.proj_distance(lie.lie_inversion(fc.family1, s_jk.v), s_il.v))
        worst_s = max(worst_s, *swaps)
    return EnvelopeReport(worst_m, worst_c, worst_s)


def opposite_curvature_complexes(f: LegendreMap, r: cg.RCongruence,
                                 tol: Tolerances = DEFAULT) -> dict:
    """Residuals of curvature spheres against the face complexes.

    Opposite family-1 curvature spheres lie in the complex of the family-1
    inversion, opposite family-2 spheres in the family-2 one; the complexes
    come from the congruence alone, so the membership is uniform over the
    whole Ribaucour family.
    """
    out = {}
    for face in r.grid.faces():
        fc = cg.face_complexes(r, face, tol)
        s_ij, s_jk, s_kl, s_il = f.face_curvature_spheres(face, tol)
        out[face] = max(lie.contact_residual(s_ij.v, fc.family1.v),
                        lie.contact_residual(s_kl.v, fc.family1.v),
                        lie.contact_residual(s_jk.v, fc.family2.v),
                        lie.contact_residual(s_il.v, fc.family2.v))
    return out


# ---------------------------------------------------------------------------
# Moebius transport along edges
# ---------------------------------------------------------------------------

def edge_moebius(r: cg.RCongruence, edge, frame=lie.DEFAULT_FRAME,
                 tol: Tolerances = DEFAULT) -> LinearComplex:
    """The Moebius inversion exchanging the edge spheres and point spheres."""
    u, v = r.grid.edge_vertices(edge)
    ru, rv = r.rep(u), r.rep(v)
    cu = lie.inner(frame.p, ru)
    cv = lie.inner(frame.p, rv)
    if abs(cu) <= tol.contact * K.enorm(ru) or abs(cv) <= tol.contact * K.enorm(rv):
        raise PointSphereInput("edge sphere is a point sphere")
    mvec = cv * ru - cu * rv
    c = lie.classify_complex(mvec, tol)
    if c.is_parabolic:
        raise LightlikeComplex("edge Moebius complex is lightlike")
    return c


# ---------------------------------------------------------------------------
# umbilics and special envelopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UmbilicCertificate:
    face: tuple
    common_sphere: Sphere
    coincidence: float       # worst pairwise gap of the four curvature spheres
    complement_residual: float  # worst contact residual against the R-spheres


def umbilic_faces(f: LegendreMap, r: cg.RCongruence, gate=1e-8,
                  tol: Tolerances = DEFAULT):
    """Faces whose four curvature spheres coincide, with certificates."""
    found = []
    for face in r.grid.faces():
        spheres = f.face_curvature_spheres(face, tol)
        vecs = [s.v for s in spheres]
        worst = max(K.proj_distance(vecs[0], w) for w in vecs[1:])
        if worst <= gate:
            s = Sphere(K.normalize(vecs[0]))
            comp = max(lie.contact_residual(s.v, r.rep(v))
                       for v in r.grid.face_vertices(face))
            found.append(UmbilicCertificate(face, s, worst, comp))
    return found


def spherical_envelope(r: cg.RCongruence, a: LinearComplex, theta: float,
                       v0=None, tol: Tolerances = DEFAULT) -> LegendreMap:
    """Envelope with all contact elements inside a fixed elliptic complex."""
    if a.kind != lie.ELLIPTIC:
        raise NotElliptic(f"fixed complex is {a.kind}")
    if v0 is None:
        v0 = (0, 0)
    within = la.lorentz_complement(a.v.reshape(1, 6))
    pencil = lie.pencil_through(r.sphere(v0), within=within, tol=tol)
    return propagate(r, v0, pencil(theta), tol)


def family_sample(r: cg.RCongruence, v0, initial_elements,
                  tol: Tolerances = DEFAULT):
    """One envelope per initial contact element through the sphere at v0."""
    return [propagate(r, v0, f0, tol) for f0 in initial_elements]


# ---------------------------------------------------------------------------
# Ribaucour pairs
# ---------------------------------------------------------------------------

def sigma3_field(f: LegendreMap, fhat: LegendreMap, r: cg.RCongruence,
                 tol: Tolerances = DEFAULT) -> dict:
    """Per-face inversion complexes exchanging two envelopes of r.

    With curvature-sphere representatives scaled to
    s_ij - s^_ij - s_kl + s^_kl = 0 the complex is s_ij - s^_ij; it swaps all
    four curvature-sphere pairs, fixes the R-spheres and maps corresponding
    contact elements onto each other.
    """
    out = {}
    for face in r.grid.faces():
        i, j, k, l = r.grid.face_vertices(face)
        s_ij = f.curvature_sphere(r.grid.edge_of(i, j), tol)
        s_kl = f.curvature_sphere(r.grid.edge_of(k, l), tol)
        sh_ij = fhat.curvature_sphere(r.grid.edge_of(i, j), tol)
        sh_kl = fhat.curvature_sphere(r.grid.edge_of(k, l), tol)
        if K.proj_distance(s_ij.v, sh_ij.v) <= tol.proj * 1e2:
            raise NotAPair("envelopes share a curvature sphere; no exchanging complex")
        rows = np.stack([K.normalize(s.v) for s in (s_ij, sh_ij, s_kl, sh_kl)])
        u, sv, vt = np.linalg.svd(rows.T, full_matrices=True)
        if sv[3] > tol.rank * sv[0]:
            raise NotAPair("curvature spheres of the pair do not span a system")
        c = vt[3]
        if np.min(np.abs(c)) <= tol.rank * np.max(np.abs(c)):
            raise NotAPair("degenerate curvature-sphere configuration")
        if c[0] < 0:
            c = -c
        scaled = rows * np.array([c[0], -c[1], -c[2], c[3]])[:, None]
        n3 = scaled[0] - scaled[1]
        comp = lie.classify_complex(n3, tol)
        if comp.is_parabolic:
            raise NotAPair("exchanging complex is lightlike")
        out[face] = comp
    return out


def pair_partner(field: dict, g: LegendreMap, gate=1e-8,
                 tol: Tolerances = DEFAULT):
    """The sigma3-image of an envelope, checked across incident faces.

    Returns (partner, worst well-definedness residual).
    """
    elements = {}
    worst = 0.0
    for v in g.grid.vertices():
        faces = g.grid.faces_of_vertex(v)
        images = [lie.invert_element(field[face], g.elements[v]) for face in faces]
        for other in images[1:]:
            worst = max(worst, la.subspace_gap(images[0].basis, other.basis))
        elements[v] = images[0]
    if worst > gate:
        raise InconsistentPartner(f"sigma3 images disagree across faces: {worst:.3e}")
    return LegendreMap(g.grid, elements), worst


@dataclass(frozen=True)
class VertexPermutability:
    cospherical_residual: float
    circular: bool
    circularity_residual: float
    span_rank: int
    span_signature: tuple
    standard_case: bool  # elements of f, f1, f2 span a (2,2) subspace


@dataclass(frozen=True)
class PermutabilityReport:
    vertices: dict

    @property
    def all_cospherical(self):
        return max(v.cospherical_residual for v in self.vertices.values()) <= 1e-8

    @property
    def any_noncircular(self):
        return any(not v.circular for v in self.vertices.values())

    @property
    def all_circular(self):
        return all(v.circular for v in self.vertices.values())


def permutability_report(f, f1, f2, f12, r: cg.RCongruence,
                         frame=lie.DEFAULT_FRAME, tol: Tolerances = DEFAULT,
                         circular_gate=1e-8) -> PermutabilityReport:
    """Point-sphere cosphericity and circularity of four envelopes of r."""
    vertices = {}
    for v in r.grid.vertices():
        pts = [env.point_sphere(v, frame, tol).v for env in (f, f1, f2, f12)]
        cos = max(lie.contact_residual(p, r.rep(v)) for p in pts)
        rows = np.stack([K.normalize(p) for p in pts])
        s = np.linalg.svd(rows, compute_uv=False)
        circ_res = float(s[3] / s[0])
        span = np.vstack([env.elements[v].basis for env in (f, f1, f2)])
        basis = la.orthonormal_rows(span)
        sig = la.signature(basis)
        vertices[v] = VertexPermutability(
            cospherical_residual=cos,
            circular=circ_res <= circular_gate,
            circularity_residual=circ_res,
            span_rank=basis.shape[0],
            span_signature=sig[:2],
            standard_case=(basis.shape[0] == 4 and sig[:2] == (2, 2)),
        )
    return PermutabilityReport(vertices)


# ---------------------------------------------------------------------------
# R-congruences of a given Legendre map
# ---------------------------------------------------------------------------

def congruence_from_legendre(f: LegendreMap, spheres1, spheres2,
                             tol: Tolerances = DEFAULT) -> cg.RCongruence:
    """The congruence through prescribed spheres on two crossing lines.

    spheres1 sits in the elements of the first family-1 line, spheres2 in the
    first family-2 line; both share the corner sphere.  Faces complete one by
    one through the unique inversion of the face's diagonal data.
    """
    m, n = f.grid.m, f.grid.n
    if len(spheres1) != m + 1 or len(spheres2) != n + 1:
        raise DegenerateConfiguration("sphere curve lengths must match the grid")
    if K.proj_distance(spheres1[0].v, spheres2[0].v) > tol.proj * 1e3:
        raise DegenerateConfiguration("curves do not share the corner sphere")
    for p, s in enumerate(spheres1):
        if f.elements[(p, 0)].residual_of(s.v) > tol.proj * 1e4:
            raise SphereNotInElement(f"sphere {p} is not in its contact element")
    for q, s in enumerate(spheres2):
        if f.elements[(0, q)].residual_of(s.v) > tol.proj * 1e4:
            raise SphereNotInElement(f"sphere {q} is not in its contact element")
    spheres = {}
    for p in range(m + 1):
        spheres[(p, 0)] = spheres1[p]
    for q in range(n + 1):
        spheres[(0, q)] = spheres2[q]
    for q in range(n):
        for p in range(m):
            i, j, k, l = f.grid.face_vertices((p, q))
            spheres[k] = cg.complete_face(
                f.elements[i], f.elements[j], f.elements[k], f.elements[l],
                spheres[i], spheres[j], spheres[l], tol)
    return cg.RCongruence(f.grid, spheres)
