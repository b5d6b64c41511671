"""Discrete R-congruences on quad complexes.

A congruence assigns an oriented sphere to every vertex so that the four
spheres of each face span a unique linear system.  Each face then carries two
reflection complexes: with face representatives scaled to
r_i - r_j + r_k - r_l = 0, the complex r_i - r_j exchanges spheres across
family-1 edges and r_i - r_l across family-2 edges.
"""

from dataclasses import dataclass, field

import numpy as np

from . import backend as K
from . import lie
from . import linalg as la
from .config import DEFAULT, Tolerances
from .errors import (
    BadId,
    DegenerateChoice,
    DegenerateConfiguration,
    InvalidLambda,
    KernelDegenerate,
    LightlikeDiagonal,
    ParabolicComplex,
    RankNot3,
    TangencyCreated,
    TangentSpheres,
    UmbilicFace,
)
from .grid import QuadComplex
from .lie import ContactElement, LinearComplex, Sphere

BOTH_ELLIPTIC = "both-elliptic"
BOTH_HYPERBOLIC = "both-hyperbolic"
MIXED = "mixed"


@dataclass
class RCongruence:
    grid: QuadComplex
    spheres: dict  # vertex -> Sphere
    _face_cache: dict = field(default_factory=dict, repr=False)

    def sphere(self, v) -> Sphere:
        try:
            return self.spheres[v]
        except KeyError:
            raise BadId(f"no sphere at vertex {v}") from None

    def rep(self, v) -> np.ndarray:
        return self.sphere(v).v


@dataclass(frozen=True)
class FaceComplexes:
    """Scaled face representatives and the two induced inversion complexes."""

    face: tuple
    scaled: np.ndarray     # rows r_i, r_j, r_k, r_l with r_i - r_j + r_k - r_l = 0
    coeffs: np.ndarray     # homogeneous scalings applied to the stored spheres
    family1: LinearComplex  # swaps r_i <-> r_j and r_l <-> r_k
    family2: LinearComplex  # swaps r_i <-> r_l and r_j <-> r_k


def quad_complexes(reps, tol: Tolerances = DEFAULT):
    """FaceComplexes data for four sphere representatives (rows of a (4,6))."""
    rows = np.stack([K.normalize(np.asarray(v, float)) for v in reps])
    u, s, vt = np.linalg.svd(rows.T, full_matrices=True)
    if s[2] <= tol.rank * s[0]:
        raise KernelDegenerate("face spheres span less than a plane")
    if rows.shape[0] == 4 and s[3] > tol.rank * s[0]:
        raise RankNot3("face spheres do not lie in a linear system")
    c = vt[3]
    if np.min(np.abs(c)) <= tol.rank * np.max(np.abs(c)):
        raise KernelDegenerate("a face sphere lies in the span of two others")
    if c[0] < 0:
        c = -c
    scale = np.array([c[0], -c[1], c[2], -c[3]])
    scaled = rows * scale[:, None]
    n1 = scaled[0] - scaled[1]
    n2 = scaled[0] - scaled[3]
    return scaled, scale, lie.classify_complex(n1, tol), lie.classify_complex(n2, tol)


def face_complexes(r: RCongruence, face, tol: Tolerances = DEFAULT) -> FaceComplexes:
    """The two inversion complexes of a face, cached on the congruence."""
    if face in r._face_cache:
        return r._face_cache[face]
    quad = r.grid.face_vertices(face)
    scaled, coeffs, n1, n2 = quad_complexes([r.rep(v) for v in quad], tol)
    fc = FaceComplexes(face, scaled, coeffs, n1, n2)
    r._face_cache[face] = fc
    return fc


def face_cross_ratio(r: RCongruence, face, tol: Tolerances = DEFAULT) -> float:
    """cr = -<n1,n1>/<n2,n2>, the Lie-invariant cross-ratio of the face."""
    fc = face_complexes(r, face, tol)
    n2sq = lie.inner(fc.family2.v, fc.family2.v)
    if fc.family1.is_parabolic or fc.family2.is_parabolic:
        raise ParabolicComplex("face complex is parabolic")
    return -lie.inner(fc.family1.v, fc.family1.v) / n2sq


def classify_face(r: RCongruence, face, tol: Tolerances = DEFAULT) -> str:
    """Both face complexes share a kind iff the cross-ratio is negative."""
    fc = face_complexes(r, face, tol)
    if fc.family1.is_parabolic or fc.family2.is_parabolic:
        raise ParabolicComplex("face complex is parabolic")
    if fc.family1.kind == fc.family2.kind:
        return BOTH_ELLIPTIC if fc.family1.kind == lie.ELLIPTIC else BOTH_HYPERBOLIC
    return MIXED


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceCheck:
    face: tuple
    ok: bool
    signature: tuple | None = None
    delta: int | None = None
    cross_ratio: float | None = None
    classification: str | None = None
    error: str | None = None


@dataclass(frozen=True)
class CongruenceReport:
    faces: dict

    @property
    def ok(self):
        return all(c.ok for c in self.faces.values())

    def failures(self):
        return {f: c for f, c in self.faces.items() if not c.ok}


def validate(r: RCongruence, tol: Tolerances = DEFAULT) -> CongruenceReport:
    """Per-face linear-system report for a sphere-valued vertex map."""
    checks = {}
    for face in r.grid.faces():
        quad = r.grid.face_vertices(face)
        try:
            system = lie.span_system(*[r.sphere(v) for v in quad], tol=tol)
            cr = face_cross_ratio(r, face, tol)
            cls = classify_face(r, face, tol)
            checks[face] = FaceCheck(face, True, system.signature, system.delta, cr, cls)
        except (TangentSpheres, RankNot3, KernelDegenerate, ParabolicComplex) as e:
            checks[face] = FaceCheck(face, False, error=f"{type(e).__name__}: {e}")
    return CongruenceReport(checks)


# ---------------------------------------------------------------------------
# construction from two initial sphere curves
# ---------------------------------------------------------------------------

def lambda_for_cross_ratio(ci, cj, cl, cr_target):
    """The family parameter hitting a prescribed face cross-ratio.

    With the face completed as r_k = sigma(c_l) for the complex c_i - lam c_j,
    the face cross-ratio is 1 - lam <c_j,c_l>/<c_i,c_l>.
    """
    denom = lie.inner(cj, cl)
    if abs(denom) < 1e-300:
        raise InvalidLambda("curve spheres are in oriented contact")
    return (1.0 - cr_target) * lie.inner(ci, cl) / denom


def construct_from_curves(grid: QuadComplex, curve1, curve2, lambdas=None,
                          cross_ratios=None, tol: Tolerances = DEFAULT) -> RCongruence:
    """Ribbon-by-ribbon completion of a congruence from two boundary curves.

    curve1 runs along the first family-1 line, curve2 along the first
    family-2 line; both must carry the same corner sphere.  Per face either a
    raw family parameter (``lambdas``) or a target cross-ratio
    (``cross_ratios``) is consumed, each a (face -> value) mapping or a
    callable ``f(face) -> value``.
    """
    if (lambdas is None) == (cross_ratios is None):
        raise InvalidLambda("provide exactly one of lambdas / cross_ratios")
    m, n = grid.m, grid.n
    if len(curve1) != m + 1 or len(curve2) != n + 1:
        raise BadId("curve lengths must match the grid dimensions")
    if K.proj_distance(curve1[0].v, curve2[0].v) > tol.proj * 1e3:
        raise DegenerateConfiguration("curves do not share the corner sphere")

    def pick(table, face):
        return table(face) if callable(table) else table[face]

    spheres = {}
    for p in range(m + 1):
        spheres[(p, 0)] = Sphere(K.normalize(curve1[p].v))
    for q in range(1, n + 1):
        spheres[(0, q)] = Sphere(K.normalize(curve2[q].v))

    for q in range(n):
        for p in range(m):
            ci = spheres[(p, q)].v
            cj = spheres[(p + 1, q)].v
            cl = spheres[(p, q + 1)].v
            if lambdas is not None:
                lam = float(pick(lambdas, (p, q)))
            else:
                lam = lambda_for_cross_ratio(ci, cj, cl, float(pick(cross_ratios, (p, q))))
            if lam == 0.0:
                raise InvalidLambda(f"lambda = 0 at face {(p, q)}")
            nvec = ci - lam * cj
            if K.lightcone_residual(nvec) <= tol.light:
                raise InvalidLambda(f"lightlike complex at face {(p, q)}")
            rk = K.normalize(K.inversion_apply(nvec, cl))
            for v in ((p + 1, q), (p, q + 1), (p, q)):
                if lie.in_oriented_contact(rk, spheres[v].v, tol.contact):
                    raise TangencyCreated(f"face {(p, q)}: new sphere tangent to {v}")
            spheres[(p + 1, q + 1)] = Sphere(rk)
    return RCongruence(grid, spheres)


# ---------------------------------------------------------------------------
# face completion inside a Legendre quad (used by the Legendre-side builder)
# ---------------------------------------------------------------------------

def complete_face(f_i: ContactElement, f_j: ContactElement, f_k: ContactElement,
                  f_l: ContactElement, r_i: Sphere, r_j: Sphere, r_l: Sphere,
                  tol: Tolerances = DEFAULT) -> Sphere:
    """The unique fourth sphere r_k in f_k completing an R-congruence quad."""
    s_ij = lie.contact_intersect(f_i, f_j, tol)
    s_kl = lie.contact_intersect(f_k, f_l, tol)
    s_il = lie.contact_intersect(f_i, f_l, tol)
    s_jk = lie.contact_intersect(f_j, f_k, tol)
    if K.proj_distance(s_ij.v, s_kl.v) <= tol.proj * 1e3 or \
       K.proj_distance(s_il.v, s_jk.v) <= tol.proj * 1e3:
        raise UmbilicFace("opposite curvature spheres coincide")
    for chosen, forbidden in ((r_i, (s_ij, s_il)), (r_j, (s_ij, s_jk)),
                              (r_l, (s_il, s_kl))):
        for s in forbidden:
            if K.proj_distance(chosen.v, s.v) <= tol.proj * 1e3:
                raise DegenerateChoice("chosen sphere coincides with a curvature sphere")
    inv = lie.unique_inversion(s_il, r_i, s_ij, r_l, s_kl, tol)
    r_k = lie.invert_sphere(inv, r_j)
    if f_k.residual_of(r_k.v) > tol.proj * 1e4:
        raise DegenerateChoice("completed sphere left its contact element")
    return Sphere(K.normalize(r_k.v))


# ---------------------------------------------------------------------------
# fixed complexes and diagnostics
# ---------------------------------------------------------------------------

def fixed_complex_space(r: RCongruence, tol: Tolerances = DEFAULT):
    """Basis of all complexes containing every congruence sphere (maybe empty)."""
    rows = np.stack([K.normalize(r.rep(v)) for v in r.grid.vertices()])
    u, s, vt = np.linalg.svd(rows, full_matrices=True)
    rank = int(np.sum(s > tol.rank * s[0]))
    return vt[rank:]


def detect_fixed_complex(r: RCongruence, tol: Tolerances = DEFAULT):
    """A complex containing every congruence sphere, if one exists.

    For a multi-dimensional space of fixed complexes a parabolic generator is
    preferred (it certifies a totally umbilic envelope).
    """
    comp = fixed_complex_space(r, tol)
    if comp.shape[0] == 0:
        return None
    if comp.shape[0] == 1:
        return lie.classify_complex(comp[0], tol)
    null = la.null_vector_in(comp)
    if null is not None:
        return lie.classify_complex(null, tol)
    gram = la.lorentz_gram(comp)
    w, v = np.linalg.eigh(gram)
    k = int(np.argmax(np.abs(w)))
    return lie.classify_complex(v[:, k] @ comp, tol)


def vertex_osculating_complex(r: RCongruence, v, tol: Tolerances = DEFAULT):
    """Diagnostic: the complex through a vertex sphere and its four neighbours.

    Returns (complex, worst residual of the four diagonal spheres against it).
    """
    p, q = v
    m, n = r.grid.m, r.grid.n
    if not (0 < p < m and 0 < q < n):
        raise BadId("osculating complex needs an interior vertex")
    star = [(p, q), (p - 1, q), (p + 1, q), (p, q - 1), (p, q + 1)]
    rows = np.stack([K.normalize(r.rep(w)) for w in star])
    u, s, vt = np.linalg.svd(rows, full_matrices=True)
    if s[4] <= tol.rank * s[0]:
        raise DegenerateConfiguration("vertex star spans less than five dimensions")
    t = vt[-1]
    diag = [(p - 1, q - 1), (p + 1, q - 1), (p + 1, q + 1), (p - 1, q + 1)]
    worst = max(lie.contact_residual(t, r.rep(w)) for w in diag)
    return lie.classify_complex(t, tol), worst


# ---------------------------------------------------------------------------
# Moutard lifts, edge labels, multi-congruence lifts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MoutardLift:
    """Global lightlike representatives with parallel face diagonals."""

    mu: dict          # vertex -> 6-vector
    lam: dict         # face -> scalar with (mu_k - mu_i) = lam (mu_l - mu_j)
    worst_residual: float

    def diagonal(self, grid: QuadComplex, face):
        i, j, k, l = grid.face_vertices(face)
        return self.mu[k] - self.mu[i]

    def induced_complexes(self, grid: QuadComplex, face):
        """The face inversion complexes written in the Moutard coordinates."""
        i, j, k, l = grid.face_vertices(face)
        lam = self.lam[face]
        return self.mu[i] - lam * self.mu[j], self.mu[i] + lam * self.mu[l]


def _face_kernel_coeffs(r: RCongruence, tol):
    reps = {v: K.normalize(r.rep(v)) for v in r.grid.vertices()}
    coeffs = {}
    for face in r.grid.faces():
        quad = r.grid.face_vertices(face)
        rows = np.stack([reps[v] for v in quad])
        u, s, vt = np.linalg.svd(rows.T, full_matrices=True)
        if s[3] > tol.rank * s[0] or s[2] <= tol.rank * s[0]:
            raise RankNot3(f"face {face} is not a linear system")
        c = vt[3]
        if np.min(np.abs(c)) <= tol.rank * np.max(np.abs(c)):
            raise KernelDegenerate(f"degenerate kernel at face {face}")
        coeffs[face] = c
    return reps, coeffs


def moutard_lift(r: RCongruence, residual_gate=1e-8, tol: Tolerances = DEFAULT):
    """Propagated Moutard lift, or None when the closing residual is too big."""
    m, n = r.grid.m, r.grid.n
    try:
        reps, coeffs = _face_kernel_coeffs(r, tol)
    except (RankNot3, KernelDegenerate):
        return None
    x = {(0, 0): 1.0}
    if m >= 1:
        x[(1, 0)] = 1.0
    # first row: equality of the two diagonal rules fixes every second value
    for p in range(1, m):
        a0, b0, c0, d0 = coeffs[(p - 1, 0)]
        a1, b1, c1, d1 = coeffs[(p, 0)]
        x[(p + 1, 0)] = (c0 / a0) * (b1 / d1) * x[(p - 1, 0)]
    for q in range(n):
        for p in range(m):
            a, b, c, d = coeffs[(p, q)]
            x[(p, q + 1)] = -(d / b) * x[(p + 1, q)]
        a, b, c, d = coeffs[(m - 1, q)]
        x[(m, q + 1)] = -(c / a) * x[(m - 1, q)]
    mu = {v: x[v] * reps[v] for v in r.grid.vertices()}
    lam = {}
    worst = 0.0
    for face in r.grid.faces():
        i, j, k, l = r.grid.face_vertices(face)
        d1 = mu[k] - mu[i]
        d2 = mu[l] - mu[j]
        denom = float(d2 @ d2)
        lam_f = float(d1 @ d2) / denom
        res = np.linalg.norm(d1 - lam_f * d2) / max(np.linalg.norm(d1),
                                                    np.linalg.norm(d2))
        lam[face] = lam_f
        worst = max(worst, res)
    if worst > residual_gate:
        return None
    return MoutardLift(mu, lam, worst)


def sigma_delta(lift: MoutardLift, grid: QuadComplex, face,
                tol: Tolerances = DEFAULT) -> LinearComplex:
    """The diagonal inversion complex of a face of a Moutard lift."""
    d = lift.diagonal(grid, face)
    if K.lightcone_residual(d) <= tol.light * 1e3:
        raise LightlikeDiagonal("face diagonal is lightlike")
    return lie.classify_complex(d, tol)


@dataclass(frozen=True)
class EdgeLabels:
    values: dict  # edge -> scalar

    def __getitem__(self, edge):
        return self.values[edge]


def edge_labels(lift: MoutardLift, grid: QuadComplex) -> EdgeLabels:
    """Edge function factorizing the cross-ratio: cr = e1(ij) / e2(jk).

    Every edge carries -<mu_u, mu_v>; on a face this equals <n1,n1>/(2 lam)
    on family-1 edges and -<n2,n2>/(2 lam) on family-2 edges, and the values
    are constant across opposite edges.
    """
    values = {}
    for edge in grid.edges():
        u, v = grid.edge_vertices(edge)
        values[edge] = -lie.inner(lift.mu[u], lift.mu[v])
    return EdgeLabels(values)


def multi_r_lift(r: RCongruence, residual_gate=1e-8, tol: Tolerances = DEFAULT):
    """Global representatives closing over every parameter rectangle, or None."""
    m, n = r.grid.m, r.grid.n
    try:
        reps, coeffs = _face_kernel_coeffs(r, tol)
    except (RankNot3, KernelDegenerate):
        return None
    x = {(0, 0): 1.0}
    for p in range(m):
        a, b, c, d = coeffs[(p, 0)]
        x[(p + 1, 0)] = -(b / a) * x[(p, 0)]
    for q in range(n):
        for p in range(m):
            a, b, c, d = coeffs[(p, q)]
            x[(p, q + 1)] = -(d / a) * x[(p, q)]
        a, b, c, d = coeffs[(m - 1, q)]
        x[(m, q + 1)] = -(c / b) * x[(m, q)]
    lift = {v: x[v] * reps[v] for v in r.grid.vertices()}
    worst = 0.0
    for (i, j, jp, ip) in r.grid.parameter_rectangles():
        res = lift[i] - lift[j] + lift[jp] - lift[ip]
        scale = max(np.linalg.norm(lift[v]) for v in (i, j, jp, ip))
        worst = max(worst, np.linalg.norm(res) / scale)
    if worst > residual_gate:
        return None
    return lift


def multi_to_moutard(r: RCongruence, lift: dict,
                     residual_gate=1e-8) -> MoutardLift:
    """Sign-flip of a multi-congruence lift along every second family-1 line."""
    mu = {(p, q): ((-1.0) ** q) * lift[(p, q)] for (p, q) in lift}
    lam = {}
    worst = 0.0
    for face in r.grid.faces():
        i, j, k, l = r.grid.face_vertices(face)
        d1 = mu[k] - mu[i]
        d2 = mu[l] - mu[j]
        lam_f = float(d1 @ d2) / float(d2 @ d2)
        res = np.linalg.norm(d1 - lam_f * d2) / max(np.linalg.norm(d1),
                                                    np.linalg.norm(d2))
        lam[face] = lam_f
        worst = max(worst, res)
    if worst > residual_gate:
        raise DegenerateConfiguration("sign flip did not produce a Moutard lift")
    return MoutardLift(mu, lam, worst)
