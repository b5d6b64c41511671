"""The hexaspherical model: R^{4,2} primitives.

Oriented 2-spheres are lightlike projective points, contact elements are
2-dimensional isotropic subspaces, and reflections in non-degenerate linear
sphere complexes are the basic transformations.  All representatives are
float64 arrays of length 6; the bilinear form has signature (-,+,+,+,+,-).

Euclidean data enters only through a Moebius frame (a timelike point sphere
complex p and a lightlike point at infinity q).  For the default frame
q = (1,-1,0,0,0,0), p = (0,0,0,0,0,1), a sphere with center c and signed
radius r lifts to

    ((1 + |c|^2 - r^2)/2, (1 - |c|^2 + r^2)/2, c1, c2, c3, -r),

the unique convention compatible with the decode formulas
c = (a3,a4,a5),  R = |sqrt(1 + |c|^2 - 2 a1)|,  r = <a,p>
after scaling a representative to <a,q> = -1.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend as K
from . import linalg as la
from .config import DEFAULT, Tolerances
from .errors import (
    DegenerateBasis,
    DegenerateConfiguration,
    DegenerateDenominator,
    DegenerateElement,
    DisjointElements,
    EqualElements,
    LightlikeComplex,
    NotCoplanar,
    NotElliptic,
    NotLightlike,
    ParabolicComplex,
    PlaneComplex,
    RankNot3,
    SphereInComplex,
    TangentSpheres,
    ZeroVector,
)

PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"
ELLIPTIC = "elliptic"


def vec6(values):
    v = np.asarray(values, dtype=float)
    if v.shape != (6,):
        raise ValueError(f"expected 6 components, got shape {v.shape}")
    return v


def inner(x, y):
    """<x,y> = -x1 y1 + x2 y2 + x3 y3 + x4 y4 + x5 y5 - x6 y6."""
    return K.inner(np.ascontiguousarray(x, dtype=float),
                   np.ascontiguousarray(y, dtype=float))


def proj_equal(x, y, tol=None):
    tol = DEFAULT.proj if tol is None else tol
    return K.proj_distance(np.ascontiguousarray(x, dtype=float),
                           np.ascontiguousarray(y, dtype=float)) <= tol


def contact_residual(x, y):
    """|<x,y>| scaled by the auxiliary norms; 0 means oriented contact."""
    return abs(inner(x, y)) / (K.enorm(x) * K.enorm(y))


def in_oriented_contact(x, y, tol=None):
    tol = DEFAULT.contact if tol is None else tol
    return contact_residual(x, y) <= tol


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sphere:
    """An oriented 2-sphere: a lightlike projective point."""

    v: np.ndarray

    def normalized(self):
        return Sphere(K.normalize(self.v))


def sphere(values, tol: Tolerances = DEFAULT) -> Sphere:
    v = vec6(values)
    n = K.enorm(v)
    if n <= 1e-300:
        raise ZeroVector("sphere representative is the zero vector")
    res = K.lightcone_residual(v)
    if res > tol.light * 1e3:  # admit mildly noisy input, reject non-spheres
        raise NotLightlike(f"relative lightcone residual {res:.3e}")
    return Sphere(v)


@dataclass(frozen=True)
class LinearComplex:
    """A linear sphere complex <a>^perp; kind by the sign of <a,a>."""

    v: np.ndarray
    kind: str

    @property
    def is_parabolic(self):
        return self.kind == PARABOLIC


def classify_complex(values, tol: Tolerances = DEFAULT) -> LinearComplex:
    v = vec6(values)
    n2 = K.enorm2(v)
    if n2 <= 1e-300:
        raise ZeroVector("complex representative is the zero vector")
    s = inner(v, v)
    if abs(s) <= tol.light * n2:
        kind = PARABOLIC
    elif s < 0:
        kind = HYPERBOLIC
    else:
        kind = ELLIPTIC
    return LinearComplex(v, kind)


@dataclass(frozen=True)
class ContactElement:
    """A 2-dimensional isotropic subspace, stored as orthonormal basis rows."""

    basis: np.ndarray  # shape (2, 6), Euclidean-orthonormal

    def contains(self, x, tol=None):
        tol = DEFAULT.proj if tol is None else tol
        return la.project_residual(self.basis, np.asarray(x, float)) <= tol * 10

    def residual_of(self, x):
        return la.project_residual(self.basis, np.asarray(x, float))


def contact_element(b1, b2, tol: Tolerances = DEFAULT) -> ContactElement:
    b1 = vec6(b1)
    b2 = vec6(b2)
    for b in (b1, b2):
        if K.lightcone_residual(b) > tol.light * 1e3:
            raise NotLightlike("contact element basis vector is not lightlike")
    if contact_residual(b1, b2) > tol.contact * 1e2:
        raise DegenerateConfiguration("basis spheres are not in oriented contact")
    basis = la.orthonormal_rows([b1, b2])
    if basis.shape[0] != 2:
        raise DegenerateConfiguration("basis spheres are projectively equal")
    return ContactElement(basis)


def element_through(s: Sphere, partner, tol: Tolerances = DEFAULT) -> ContactElement:
    """Contact element spanned by a sphere and a partner sphere."""
    p = partner.v if isinstance(partner, Sphere) else vec6(partner)
    return contact_element(s.v, p, tol)


@dataclass(frozen=True)
class LinearSystem:
    basis: tuple  # three Sphere values spanning the system
    signature: tuple  # (2,1) or (1,2)
    delta: int

    @property
    def span(self):
        return la.orthonormal_rows([s.v for s in self.basis])


@dataclass(frozen=True)
class MoebiusFrame:
    """Point sphere complex p and point at infinity q with an adapted basis.

    ``basis`` columns are the images of the standard coordinate directions,
    so encode/decode in an arbitrary frame reduce to the default formulas.
    """

    p: np.ndarray
    q: np.ndarray
    basis: np.ndarray  # 6x6 Lorentz isometry

    def to_std(self, v):
        return la.G @ self.basis.T @ la.G @ v

    def from_std(self, v):
        return self.basis @ v


def moebius_frame(p=None, q=None, tol: Tolerances = DEFAULT) -> MoebiusFrame:
    if p is None and q is None:
        return MoebiusFrame(_P_STD.copy(), _Q_STD.copy(), np.eye(6))
    p = vec6(p)
    q = vec6(q)
    if abs(inner(p, p) + 1.0) > 1e-6:
        raise DegenerateConfiguration("frame p must satisfy <p,p> = -1")
    if K.lightcone_residual(q) > tol.light * 1e3:
        raise DegenerateConfiguration("frame q must be lightlike")
    if abs(inner(p, q)) > tol.contact * K.enorm(q):
        raise DegenerateConfiguration("frame requires <p,q> = 0")
    # lightlike partner q0 with <q0,q> = -1, inside p^perp
    w = la.lorentz_complement(p.reshape(1, 6))
    gram = la.lorentz_gram(w)
    ww, wv = np.linalg.eigh(gram)
    um = (wv[:, 0] @ w) / np.sqrt(-ww[0])
    cand = None
    for i in range(len(ww) - 1, 0, -1):
        up = (wv[:, i] @ w) / np.sqrt(ww[i])
        for x in (up + um, up - um):
            if abs(inner(x, q)) > 1e-9 * K.enorm(x) * K.enorm(q):
                cand = x
                break
        if cand is not None:
            break
    if cand is None:
        raise DegenerateConfiguration("cannot complete the frame")
    q0 = cand / (-inner(cand, q))
    q0 = q0 - (inner(q0, q0) / (2.0 * inner(q0, q))) * q  # re-polish isotropy
    triad = la.lorentz_complement(np.vstack([p, q, q0]))
    gram = la.lorentz_gram(triad)
    wv, ev = np.linalg.eigh(gram)
    if np.any(wv <= 0):
        raise DegenerateConfiguration("frame triad is not spacelike")
    es = (ev / np.sqrt(wv)).T @ triad
    e1_col = q0 + 0.5 * q
    e2_col = q0 - 0.5 * q
    basis = np.column_stack([e1_col, e2_col, es[0], es[1], es[2], p])
    return MoebiusFrame(p, q, basis)


_Q_STD = np.array([1.0, -1.0, 0.0, 0.0, 0.0, 0.0])
_P_STD = np.array([0.0, 0.0, 0.0, 0.0, 0.0, 1.0])
DEFAULT_FRAME = moebius_frame()


# ---------------------------------------------------------------------------
# Lie inversions
# ---------------------------------------------------------------------------

def lie_inversion(a, x):
    """sigma_a(x) = x - 2<x,a>/<a,a> a for a non-parabolic complex a."""
    av = a.v if isinstance(a, LinearComplex) else vec6(a)
    if isinstance(a, LinearComplex) and a.is_parabolic:
        raise ParabolicComplex("cannot invert in a parabolic complex")
    aa = inner(av, av)
    if abs(aa) <= DEFAULT.light * K.enorm2(av):
        raise ParabolicComplex("complex representative is lightlike")
    return K.inversion_apply(np.ascontiguousarray(av, float),
                             np.ascontiguousarray(x, float))


def invert_sphere(a, s: Sphere) -> Sphere:
    return Sphere(lie_inversion(a, s.v))


def invert_element(a, f: ContactElement) -> ContactElement:
    av = a.v if isinstance(a, LinearComplex) else vec6(a)
    rows = K.inversion_apply_rows(np.ascontiguousarray(av, float),
                                  np.ascontiguousarray(f.basis, float))
    return ContactElement(la.orthonormal_rows(rows))


def inversion_for_pair(r: Sphere, rbar: Sphere, lam: float,
                       tol: Tolerances = DEFAULT) -> LinearComplex:
    """Complex of a Lie inversion mapping r to rbar, one per lambda != 0.

    The representatives are normalized to unit auxiliary norm before taking
    n = r - lambda rbar, so lambda is meaningful across calls.
    """
    if lam == 0.0:
        raise LightlikeComplex("lambda must be non-zero")
    rv = K.normalize(r.v)
    bv = K.normalize(rbar.v)
    if contact_residual(rv, bv) <= tol.contact:
        raise TangentSpheres("spheres are in oriented contact")
    n = rv - lam * bv
    c = classify_complex(n, tol)
    if c.is_parabolic:
        raise LightlikeComplex("resulting complex is lightlike")
    return c


def unique_inversion(s: Sphere, r: Sphere, t: Sphere, rbar: Sphere,
                     tbar: Sphere, tol: Tolerances = DEFAULT) -> LinearComplex:
    """The unique inversion with r -> rbar, t -> tbar.

    (r, t) must span a contact element with s, and likewise (rbar, tbar);
    the complex is the intersection point of the lines <r,rbar> and <t,tbar>.
    When both pairs coincide projectively, any complex orthogonal to the
    element works; a non-lightlike one is returned.
    """
    lam, mu, res1 = _decompose(s.v, r.v, t.v)
    lamb, mub, res2 = _decompose(s.v, rbar.v, tbar.v)
    if max(res1, res2) > tol.rank * 1e2:
        raise DegenerateConfiguration("shared sphere does not lie in both elements")
    for coeff in (lam, mu, lamb, mub):
        if abs(coeff) < tol.rank:
            raise DegenerateConfiguration("a chosen sphere coincides with the shared sphere")
    a = lam * r.v - lamb * rbar.v
    scale = max(K.enorm(lam * r.v), K.enorm(lamb * rbar.v))
    if K.enorm(a) <= tol.proj * 1e2 * scale:
        # identity case: r ~ rbar and t ~ tbar; pick a fixing complex
        comp = la.lorentz_complement(la.orthonormal_rows([s.v, r.v, t.v]))
        gram = la.lorentz_gram(comp)
        w, v = np.linalg.eigh(gram)
        k = int(np.argmax(np.abs(w)))
        return classify_complex(v[:, k] @ comp, tol)
    c = classify_complex(a, tol)
    if c.is_parabolic:
        raise DegenerateConfiguration("induced complex is lightlike")
    return c


def _decompose(x, b1, b2):
    """Coefficients of x in span{b1, b2} plus the relative residual."""
    a = np.stack([b1, b2], axis=1)
    coeff, *_ = np.linalg.lstsq(a, x, rcond=None)
    res = np.linalg.norm(a @ coeff - x) / np.linalg.norm(x)
    return float(coeff[0]), float(coeff[1]), float(res)


def commute(a: LinearComplex, b: LinearComplex, tol: Tolerances = DEFAULT) -> bool:
    """Inversions commute iff the complexes are involutive (<a,b> = 0)."""
    if a.is_parabolic or b.is_parabolic:
        raise ParabolicComplex("commutation test needs non-parabolic complexes")
    return contact_residual(a.v, b.v) <= tol.contact


# ---------------------------------------------------------------------------
# linear systems and cross-ratios
# ---------------------------------------------------------------------------

def span_system(r1: Sphere, r2: Sphere, r3: Sphere, r4: Sphere,
                tol: Tolerances = DEFAULT) -> LinearSystem:
    """The unique linear system through four pairwise non-tangent spheres."""
    spheres = (r1, r2, r3, r4)
    for i in range(4):
        for j in range(i + 1, 4):
            if in_oriented_contact(spheres[i].v, spheres[j].v, tol.contact):
                raise TangentSpheres(f"spheres {i} and {j} are in oriented contact")
    rows = np.stack([s.v for s in spheres])
    rank = la.numerical_rank(rows, tol.rank)
    if rank != 3:
        raise RankNot3(f"span has rank {rank}")
    triple = _independent_triple(rows, tol.rank)
    d = inner(spheres[triple[0]].v, spheres[triple[1]].v) \
        * inner(spheres[triple[1]].v, spheres[triple[2]].v) \
        * inner(spheres[triple[2]].v, spheres[triple[0]].v)
    delta = -1 if d < 0 else 1
    basis_rows = la.orthonormal_rows(rows)
    pos, neg, _ = la.signature(basis_rows)
    if (pos, neg) not in ((2, 1), (1, 2)):
        raise RankNot3(f"span signature {(pos, neg)} is degenerate")
    return LinearSystem(tuple(spheres[i] for i in triple), (pos, neg), delta)


def _independent_triple(rows, tol):
    """Greedy maximally independent triple of row indices."""
    norms = np.linalg.norm(rows, axis=1)
    first = int(np.argmax(norms))
    chosen = [first]
    for _ in range(2):
        basis = la.orthonormal_rows(rows[chosen])
        resid = [la.project_residual(basis, rows[i]) if i not in chosen else -1.0
                 for i in range(4)]
        nxt = int(np.argmax(resid))
        if resid[nxt] <= tol:
            raise RankNot3("no independent sphere triple")
        chosen.append(nxt)
    return sorted(chosen)


def cross_ratio_contact(r1: Sphere, r2: Sphere, r3: Sphere, r4: Sphere,
                        tol: Tolerances = DEFAULT) -> float:
    """Cross-ratio of four spheres in a common contact element.

    With r3 = a r1 + b r2 and r4 = a' r1 + b' r2 the value is (a b')/(b a');
    it matches the radii formula on every sphere pencil.
    """
    rows = np.stack([r1.v, r2.v, r3.v, r4.v])
    if la.numerical_rank(rows, tol.rank) > 2:
        raise NotCoplanar("spheres do not share a contact element")
    if la.numerical_rank(rows[:2], tol.rank) < 2:
        raise DegenerateBasis("r1 and r2 are projectively equal")
    al, be, res3 = _decompose(r3.v, r1.v, r2.v)
    alb, beb, res4 = _decompose(r4.v, r1.v, r2.v)
    if max(res3, res4) > tol.rank * 1e2:
        raise NotCoplanar("r3/r4 are outside the pencil of r1, r2")
    den = be * alb
    num = al * beb
    scale = max(abs(al), abs(be)) * max(abs(alb), abs(beb))
    if abs(den) <= tol.rank * scale:
        raise DegenerateDenominator("cross-ratio is infinite for this ordering")
    return num / den


def cross_ratio_radii(radii, tol: Tolerances = DEFAULT) -> float:
    """(R1-R4)(R2-R3) / ((R1-R3)(R2-R4)) with one infinite radius allowed."""
    r = [float(x) for x in radii]
    if len(r) != 4:
        raise ValueError("need four radii")
    inf_idx = [i for i, x in enumerate(r) if math.isinf(x)]
    if len(inf_idx) > 1:
        raise DegenerateDenominator("more than one infinite radius")
    skip = inf_idx[0] if inf_idx else None
    num, den = 1.0, 1.0
    for i, j in ((0, 3), (1, 2)):  # factors with an infinite radius cancel
        if skip not in (i, j):
            num *= r[i] - r[j]
    for k, l in ((0, 2), (1, 3)):
        if skip not in (k, l):
            f = r[k] - r[l]
            if f == 0.0:
                raise DegenerateDenominator("coincident radii in the denominator")
            den *= f
    return num / den


def partner_null(s: Sphere) -> np.ndarray:
    """Deterministic lightlike vector orthogonal to s, not parallel to s."""
    comp = la.lorentz_complement(s.v.reshape(1, 6))
    gram = la.lorentz_gram(comp)
    w, v = np.linalg.eigh(gram)
    um = (v[:, 0] @ comp) / np.sqrt(-w[0])
    up = (v[:, -1] @ comp) / np.sqrt(w[-1])
    return K.normalize(up + um)


def cross_ratio_system(r1: Sphere, r2: Sphere, r3: Sphere, r4: Sphere,
                       f: ContactElement | None = None,
                       tol: Tolerances = DEFAULT) -> float:
    """Cross-ratio of four spheres of a linear system.

    Traced back to a contact element f through r1: for i = 2,3,4 the sphere
    r_i is replaced by the unique sphere of f in oriented contact with it.
    The value does not depend on the choice of f, agrees with the closed
    form of ``cross_ratio_inversion`` on reflection quadruples, and equals
    -(<n1,n1>/<n2,n2>) on R-congruence faces; on quadruples that already
    share a contact element it reduces to ``cross_ratio_contact``.
    """
    rows = np.stack([r1.v, r2.v, r3.v, r4.v])
    if la.numerical_rank(rows, tol.rank) <= 2:
        return cross_ratio_contact(r1, r2, r3, r4, tol)
    if f is None:
        f = element_through(r1, partner_null(r1), tol)
    if f.residual_of(r1.v) > tol.proj * 1e3:
        raise DegenerateConfiguration("f does not contain r1")
    # a direction of f independent of r1
    r1n = K.normalize(r1.v)
    cand = [f.basis[0], f.basis[1], f.basis[0] + f.basis[1]]
    w = max(cand, key=lambda b: K.proj_distance(np.ascontiguousarray(b), r1n))
    subs = []
    for ri in (r2, r3, r4):
        ip_r = inner(r1.v, ri.v)
        ip_w = inner(w, ri.v)
        subs.append(Sphere(ip_w * r1.v - ip_r * w))
    # the cyclic order below evaluates the quadrilateral (edge-product)
    # invariant rather than the diagonal-product one of the pencil formulas
    s2, s3, s4 = subs
    return cross_ratio_contact(r1, s3, s4, s2, tol)


def cross_ratio_inversion(a: LinearComplex, s1: Sphere, s2: Sphere,
                          tol: Tolerances = DEFAULT) -> float:
    """cr(s1, s2, sigma_a(s2), sigma_a(s1)) in closed form."""
    sa1 = inner(s1.v, a.v)
    sa2 = inner(s2.v, a.v)
    if abs(sa1) <= tol.contact * K.enorm(s1.v) * K.enorm(a.v) or \
       abs(sa2) <= tol.contact * K.enorm(s2.v) * K.enorm(a.v):
        raise SphereInComplex("sphere lies in the complex")
    return inner(s1.v, s2.v) * inner(a.v, a.v) / (2.0 * sa1 * sa2)


# ---------------------------------------------------------------------------
# incidence
# ---------------------------------------------------------------------------

def contact_intersect(f: ContactElement, g: ContactElement,
                      tol: Tolerances = DEFAULT) -> Sphere:
    """The common curvature sphere of two contact elements."""
    rows = np.vstack([f.basis, g.basis])
    rank = la.numerical_rank(rows, tol.rank)
    if rank <= 2:
        raise EqualElements("contact elements coincide")
    if rank >= 4:
        raise DisjointElements("contact elements do not intersect")
    common = la.intersect_spans(f.basis, g.basis, tol.rank)
    if common.shape[0] != 1:
        raise DisjointElements("intersection is not a single sphere")
    return Sphere(K.normalize(common[0]))


def point_sphere(f: ContactElement, frame: MoebiusFrame = DEFAULT_FRAME,
                 tol: Tolerances = DEFAULT) -> Sphere:
    """The unique element of f orthogonal to the point sphere complex."""
    b1, b2 = f.basis
    c1 = inner(b1, frame.p)
    c2 = inner(b2, frame.p)
    if max(abs(c1), abs(c2)) <= tol.contact:
        raise DegenerateElement("contact element lies inside p^perp")
    return Sphere(K.normalize(c2 * b1 - c1 * b2))


# ---------------------------------------------------------------------------
# Euclidean encode / decode
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EuclideanSphere:
    center: np.ndarray
    radius: float


@dataclass(frozen=True)
class EuclideanPlane:
    normal: np.ndarray  # unit
    offset: float       # plane {x . normal = offset}


@dataclass(frozen=True)
class PointAtInfinity:
    pass


def sphere_encode(center, radius, frame: MoebiusFrame = DEFAULT_FRAME) -> Sphere:
    c = np.asarray(center, dtype=float)
    if c.shape != (3,):
        raise ValueError("center must be a 3-vector")
    r = float(radius)
    cc = float(c @ c)
    std = np.array([(1.0 + cc - r * r) / 2.0,
                    (1.0 - cc + r * r) / 2.0,
                    c[0], c[1], c[2], -r])
    v = frame.from_std(std)
    if K.lightcone_residual(v) > 1e-8:
        raise NotLightlike("encode produced a non-lightlike vector")
    return Sphere(v)


def plane_encode(normal, offset, frame: MoebiusFrame = DEFAULT_FRAME) -> Sphere:
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    d = float(offset)
    std = np.array([d, -d, n[0], n[1], n[2], -1.0])
    return Sphere(frame.from_std(std))


def sphere_decode(s: Sphere, frame: MoebiusFrame = DEFAULT_FRAME,
                  tol: Tolerances = DEFAULT):
    """Center/radius of a sphere, or its Plane / PointAtInfinity variant."""
    std = frame.to_std(s.v)
    scale = K.enorm(std)
    sq = -std[0] - std[1]  # <s, q>
    if abs(sq) > tol.contact * scale:
        b = std / (-sq)
        center = b[2:5].copy()
        return EuclideanSphere(center, -float(b[5]))
    n = std[2:5]
    nn = np.linalg.norm(n)
    if nn <= tol.contact * scale:
        return PointAtInfinity()
    b = std / (-std[5]) if abs(std[5]) > tol.contact * scale else std / nn
    normal = b[2:5]
    nrm = np.linalg.norm(normal)
    return EuclideanPlane(normal / nrm, float(b[0]) / nrm)


def sphere_radius(s: Sphere, frame: MoebiusFrame = DEFAULT_FRAME) -> float:
    """Signed radius; planes give +inf, the point at infinity raises."""
    dec = sphere_decode(s, frame)
    if isinstance(dec, EuclideanSphere):
        return dec.radius
    if isinstance(dec, EuclideanPlane):
        return math.inf
    raise DegenerateDenominator("point at infinity has no radius")


@dataclass(frozen=True)
class ComplexDecode:
    center: np.ndarray
    big_radius: float     # radius of the fixed sphere s_R
    signed_radius: float  # r = <a,p> of the concentric sphere s_r
    cos_angle: float      # every complex sphere meets s_R at this angle


def decode_complex(a: LinearComplex, frame: MoebiusFrame = DEFAULT_FRAME,
                   tol: Tolerances = DEFAULT) -> ComplexDecode:
    """Concentric-sphere data (c, R, r) of an elliptic complex."""
    if a.kind != ELLIPTIC:
        raise NotElliptic(f"complex is {a.kind}")
    std = frame.to_std(a.v)
    sq = -std[0] - std[1]
    if abs(sq) <= tol.contact * K.enorm(std):
        raise PlaneComplex("the fixed sphere of this complex is a plane")
    b = std / (-sq)
    c = b[2:5].copy()
    r2 = 1.0 + float(c @ c) - 2.0 * b[0]
    if r2 <= 0:
        raise NotElliptic("no real fixed sphere")
    big_r = math.sqrt(r2)
    r = -float(b[5])
    return ComplexDecode(c, big_r, r, r / big_r)


# ---------------------------------------------------------------------------
# pencils of contact elements
# ---------------------------------------------------------------------------

def pencil_through(r0: Sphere, within=None, tol: Tolerances = DEFAULT):
    """Angle parametrization of contact elements through r0.

    Without a constraint the partner spheres run over the cone of a fixed
    (2,1)-subspace orthogonal to r0; with ``within`` (a subspace basis, e.g.
    a^perp for an elliptic complex a) partners stay inside that subspace.
    Returns theta -> ContactElement.
    """
    if within is None:
        space = la.lorentz_complement(r0.v.reshape(1, 6))
    else:
        space = la.intersect_spans(np.atleast_2d(within),
                                   la.lorentz_complement(r0.v.reshape(1, 6)),
                                   tol.rank)
    gram = la.lorentz_gram(space)
    w, v = np.linalg.eigh(gram)
    scale = np.max(np.abs(w))
    pos = [i for i in range(len(w)) if w[i] > 1e-9 * scale]
    neg = [i for i in range(len(w)) if w[i] < -1e-9 * scale]
    if len(pos) < 2 or len(neg) < 1:
        raise DegenerateConfiguration("no cone of partner spheres in the subspace")
    u1 = (v[:, pos[-1]] @ space) / math.sqrt(w[pos[-1]])
    u2 = (v[:, pos[-2]] @ space) / math.sqrt(w[pos[-2]])
    u3 = (v[:, neg[0]] @ space) / math.sqrt(-w[neg[0]])

    def at(theta):
        partner = math.cos(theta) * u1 + math.sin(theta) * u2 + u3
        return element_through(r0, partner, tol)

    return at
