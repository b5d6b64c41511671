"""Osculating complexes, spherical curvature lines and channel detectors.

Four consecutive non-circular contact elements along a coordinate line span
a 5-space; its orthogonal point is the osculating complex of the middle
edge.  A coordinate line is spherical iff its osculating complexes agree,
and channel behaviour of an R-congruence shows up as (2,1)-planes spanned by
the spheres of each line together with ribbon-constant transverse inversion
complexes.
"""

from dataclasses import dataclass

import numpy as np

from . import backend as K
from . import congruence as cg
from . import envelope as ev
from . import lie
from . import linalg as la
from .config import DEFAULT, Tolerances
from .errors import BadId, CircularQuadruple, NotTwoChannel
from .lie import LinearComplex, Sphere


def osculating_complex(f: ev.LegendreMap, edge, frame=lie.DEFAULT_FRAME,
                       tol: Tolerances = DEFAULT) -> LinearComplex:
    """Complex orthogonal to four consecutive contact elements along a line.

    Built from the two oriented spheres through the four point spheres; the
    input edge must be interior to its coordinate line.
    """
    fam, p, q = edge
    if fam == 1:
        if not (1 <= p <= f.grid.m - 2):
            raise BadId("edge is not interior to its family-1 line")
        run = [(p - 1, q), (p, q), (p + 1, q), (p + 2, q)]
    elif fam == 2:
        if not (1 <= q <= f.grid.n - 2):
            raise BadId("edge is not interior to its family-2 line")
        run = [(p, q - 1), (p, q), (p, q + 1), (p, q + 2)]
    else:
        raise BadId(f"bad edge {edge}")
    pts = np.stack([K.normalize(f.point_sphere(v, frame, tol).v) for v in run])
    u, sv, vt = np.linalg.svd(pts, full_matrices=True)
    if sv[3] <= tol.rank * sv[0]:
        raise CircularQuadruple("the four point spheres are concircular")
    comp = vt[4:]
    s, st = la.null_directions_2d(comp)
    s_mid = f.curvature_sphere(edge, tol).v
    t = lie.inner(st, s_mid) * s - lie.inner(s, s_mid) * st
    return lie.classify_complex(t, tol)


@dataclass(frozen=True)
class LineVerdict:
    index: int
    spherical: bool
    worst_gap: float
    fixed_complex: LinearComplex | None
    decoded: object | None


def detect_spherical_lines(f: ev.LegendreMap, direction=1,
                           frame=lie.DEFAULT_FRAME, gate=1e-7,
                           tol: Tolerances = DEFAULT):
    """Per-line verdicts: constant osculating complexes mean spherical lines."""
    count = f.grid.n + 1 if direction == 1 else f.grid.m + 1
    span = f.grid.m if direction == 1 else f.grid.n
    verdicts = []
    for idx in range(count):
        complexes = []
        for a in range(1, span - 1):
            edge = (1, a, idx) if direction == 1 else (2, idx, a)
            complexes.append(osculating_complex(f, edge, frame, tol))
        worst = 0.0
        for c in complexes[1:]:
            worst = max(worst, K.proj_distance(complexes[0].v, c.v))
        spherical = worst <= gate and complexes
        decoded = None
        if spherical and complexes[0].kind == lie.ELLIPTIC:
            try:
                decoded = lie.decode_complex(complexes[0], frame, tol)
            except Exception:  # noqa: BLE001 - plane complexes stay undecoded
                decoded = None
        verdicts.append(LineVerdict(idx, bool(spherical), worst,
                                    complexes[0] if complexes else None, decoded))
    return verdicts


# ---------------------------------------------------------------------------
# channel structure of R-congruences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantCurvatureReport:
    verdict: bool
    line_spheres: list        # per family-1 line: Sphere or None
    ribbon_complexes: list    # per family-1 ribbon: LinearComplex or None
    worst_ribbon_gap: float
    worst_membership: float
    worst_crosscheck: float


def detect_constant_curvature_envelope(r: cg.RCongruence, gate=1e-7,
                                       tol: Tolerances = DEFAULT) -> ConstantCurvatureReport:
    """Envelope with line-constant curvature spheres exists iff the line
    spheres sit in parabolic complexes and the transverse inversion complexes
    are ribbon-constant."""
    m, n = r.grid.m, r.grid.n
    ribbons = []
    worst_ribbon = 0.0
    for q in range(n):
        reps = [cg.face_complexes(r, (p, q), tol).family2 for p in range(m)]
        gap = max((K.proj_distance(reps[0].v, c.v) for c in reps[1:]), default=0.0)
        worst_ribbon = max(worst_ribbon, gap)
        ribbons.append(reps[0] if gap <= gate else None)
    line_ok = True
    generators = []
    for q in range(n + 1):
        rows = np.stack([K.normalize(r.rep(v)) for v in r.grid.coordinate_line(1, q)])
        u, sv, vt = np.linalg.svd(rows, full_matrices=True)
        rank = int(np.sum(sv > tol.rank * sv[0]))
        if rank > 5:
            line_ok = False
            generators.append(None)
            continue
        null = la.null_vector_in(vt[rank:])
        if null is None:
            line_ok = False
            generators.append(None)
        else:
            generators.append(Sphere(null))
    verdict = line_ok and all(c is not None for c in ribbons)
    worst_membership = 0.0
    worst_cross = 0.0
    spheres = [None] * (n + 1)
    if verdict:
        spheres[0] = generators[0]
        for q in range(n):
            nxt = Sphere(K.normalize(lie.lie_inversion(ribbons[q], spheres[q].v)))
            spheres[q + 1] = nxt
            worst_membership = max(worst_membership,
                                   max(lie.contact_residual(nxt.v, r.rep(v))
                                       for v in r.grid.coordinate_line(1, q + 1)))
            # the ribbon complex is the meet of the line through the constant
            # spheres with the line through a transverse sphere pair
            j, k = (0, q), (0, q + 1)
            meet = la.intersect_spans(np.stack([spheres[q].v, nxt.v]),
                                      np.stack([K.normalize(r.rep(j)),
                                                K.normalize(r.rep(k))]), tol.rank)
            if meet.shape[0] == 1:
                worst_cross = max(worst_cross,
                                  K.proj_distance(meet[0], ribbons[q].v))
            else:
                worst_cross = max(worst_cross, 1.0)
    return ConstantCurvatureReport(verdict, spheres, ribbons, worst_ribbon,
                                   worst_membership, worst_cross)


@dataclass(frozen=True)
class TwoChannelReport:
    verdict: bool
    line_planes: list        # per family-1 line: (3,6) basis or None
    ribbon_complexes: list
    worst_ribbon_gap: float


def detect_two_channel(r: cg.RCongruence, gate=1e-7,
                       tol: Tolerances = DEFAULT) -> TwoChannelReport:
    """Two channel envelopes exist iff every family-1 line spans a (2,1)-plane
    and the transverse complexes are ribbon-constant."""
    m, n = r.grid.m, r.grid.n
    ribbons = []
    worst_ribbon = 0.0
    for q in range(n):
        reps = [cg.face_complexes(r, (p, q), tol).family2 for p in range(m)]
        gap = max((K.proj_distance(reps[0].v, c.v) for c in reps[1:]), default=0.0)
        worst_ribbon = max(worst_ribbon, gap)
        ribbons.append(reps[0] if gap <= gate else None)
    planes = []
    for q in range(n + 1):
        rows = np.stack([K.normalize(r.rep(v)) for v in r.grid.coordinate_line(1, q)])
        rank = la.numerical_rank(rows, tol.rank)
        if rank != 3:
            planes.append(None)
            continue
        basis = la.orthonormal_rows(rows)
        planes.append(basis if la.signature(basis)[:2] == (2, 1) else None)
    verdict = all(p is not None for p in planes) and all(c is not None for c in ribbons)
    return TwoChannelReport(verdict, planes, ribbons, worst_ribbon)


def construct_channel_envelopes(r: cg.RCongruence, line_index, angles,
                                tol: Tolerances = DEFAULT):
    """Channel envelopes from cone samples orthogonal to one line's plane."""
    report = detect_two_channel(r, tol=tol)
    if not report.verdict:
        raise NotTwoChannel("congruence does not satisfy the channel conditions")
    plane = report.line_planes[line_index]
    perp = la.lorentz_complement(plane)
    v0 = (0, line_index)
    envelopes = []
    for t in np.atleast_1d(angles):
        s0 = la.cone_point(perp, float(t))
        f0 = lie.element_through(r.sphere(v0), Sphere(s0), tol)
        envelopes.append(ev.propagate(r, v0, f0, tol))
    return envelopes


@dataclass(frozen=True)
class ChannelVerdict:
    direction: int
    is_channel: bool
    worst_line_gap: float      # constancy of the line-family curvature spheres
    worst_plane_defect: float  # (2,1)-plane quality of the transverse spheres


def channel_check(f: ev.LegendreMap, direction=1, gate=1e-7,
                  tol: Tolerances = DEFAULT) -> ChannelVerdict:
    """Channel iff one curvature-sphere family is line-constant and the other
    spans a fixed (2,1)-plane along each ribbon of that family."""
    grid = f.grid
    if direction == 1:
        lines = [[(1, p, q) for p in range(grid.m)] for q in range(grid.n + 1)]
        ribbons = [[(2, p, q) for p in range(grid.m + 1)] for q in range(grid.n)]
    else:
        lines = [[(2, p, q) for q in range(grid.n)] for p in range(grid.m + 1)]
        ribbons = [[(1, p, q) for q in range(grid.n + 1)] for p in range(grid.m)]
    worst_line = 0.0
    for line in lines:
        spheres = [f.curvature_sphere(e, tol) for e in line]
        for s in spheres[1:]:
            worst_line = max(worst_line, K.proj_distance(spheres[0].v, s.v))
    worst_plane = 0.0
    for ribbon in ribbons:
        rows = np.stack([K.normalize(f.curvature_sphere(e, tol).v) for e in ribbon])
        sv = np.linalg.svd(rows, compute_uv=False)
        defect = float(sv[3] / sv[0]) if rows.shape[0] >= 4 else 0.0
        basis = la.orthonormal_rows(rows)
        if basis.shape[0] != 3 or la.signature(basis)[:2] != (2, 1):
            defect = max(defect, 1.0)
        worst_plane = max(worst_plane, defect)
    return ChannelVerdict(direction, worst_line <= gate and worst_plane <= gate,
                          worst_line, worst_plane)
