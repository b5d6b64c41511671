"""Rectangular quad complexes with two labelled edge families.

Vertices are (p, q) pairs with 0 <= p <= m, 0 <= q <= n; faces are named by
their lower-left corner.  Family-1 edges run in the p-direction, family-2
edges in the q-direction; a face (i, j, k, l) is ordered counter-clockwise
from the lower-left corner so that (ij), (kl) are family-1 edges and
(jk), (il) are family-2 edges.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import BadId


@dataclass(frozen=True)
class QuadComplex:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise BadId("grid needs at least one face in each direction")

    # --- enumeration -----------------------------------------------------
    def vertices(self):
        return [(p, q) for q in range(self.n + 1) for p in range(self.m + 1)]

    def faces(self):
        return [(p, q) for q in range(self.n) for p in range(self.m)]

    def edges(self, family=None):
        e1 = [(1, p, q) for q in range(self.n + 1) for p in range(self.m)]
        e2 = [(2, p, q) for q in range(self.n) for p in range(self.m + 1)]
        if family == 1:
            return e1
        if family == 2:
            return e2
        return e1 + e2

    def vertex_count(self):
        return (self.m + 1) * (self.n + 1)

    def vertex_index(self, v):
        p, q = v
        self._check_vertex(v)
        return q * (self.m + 1) + p

    # --- incidence -------------------------------------------------------
    def face_vertices(self, face):
        """Counter-clockwise corners (i, j, k, l) from the lexicographic min."""
        p, q = face
        if not (0 <= p < self.m and 0 <= q < self.n):
            raise BadId(f"no face {face}")
        return (p, q), (p + 1, q), (p + 1, q + 1), (p, q + 1)

    def edge_vertices(self, edge):
        fam, p, q = edge
        if fam == 1:
            if not (0 <= p < self.m and 0 <= q <= self.n):
                raise BadId(f"no edge {edge}")
            return (p, q), (p + 1, q)
        if fam == 2:
            if not (0 <= p <= self.m and 0 <= q < self.n):
                raise BadId(f"no edge {edge}")
            return (p, q), (p, q + 1)
        raise BadId(f"bad edge family in {edge}")

    def edge_of(self, u, v):
        """The edge joining two adjacent vertices."""
        (pu, qu), (pv, qv) = u, v
        if qu == qv and abs(pu - pv) == 1:
            return (1, min(pu, pv), qu)
        if pu == pv and abs(qu - qv) == 1:
            return (2, pu, min(qu, qv))
        raise BadId(f"{u} and {v} are not adjacent")

    def faces_of_edge(self, edge):
        fam, p, q = edge
        self.edge_vertices(edge)
        if fam == 1:
            cands = [(p, q - 1), (p, q)]
        else:
            cands = [(p - 1, q), (p, q)]
        return [f for f in cands if 0 <= f[0] < self.m and 0 <= f[1] < self.n]

    def faces_of_vertex(self, v):
        p, q = v
        self._check_vertex(v)
        cands = [(p - 1, q - 1), (p, q - 1), (p - 1, q), (p, q)]
        return [f for f in cands if 0 <= f[0] < self.m and 0 <= f[1] < self.n]

    # --- lines, ribbons, rectangles --------------------------------------
    def coordinate_line(self, direction, index):
        """Ordered vertices of a coordinate line of the given family."""
        if direction == 1:
            if not 0 <= index <= self.n:
                raise BadId(f"no family-1 line {index}")
            return [(p, index) for p in range(self.m + 1)]
        if direction == 2:
            if not 0 <= index <= self.m:
                raise BadId(f"no family-2 line {index}")
            return [(index, q) for q in range(self.n + 1)]
        raise BadId(f"bad direction {direction}")

    def coordinate_ribbon(self, direction, index):
        """Ordered faces bounded by two adjacent coordinate lines."""
        if direction == 1:
            if not 0 <= index < self.n:
                raise BadId(f"no family-1 ribbon {index}")
            return [(p, index) for p in range(self.m)]
        if direction == 2:
            if not 0 <= index < self.m:
                raise BadId(f"no family-2 ribbon {index}")
            return [(index, q) for q in range(self.n)]
        raise BadId(f"bad direction {direction}")

    def parameter_rectangles(self, limit=None):
        """Corner quadruples (i, j, j', i') of all axis-aligned rectangles."""
        count = 0
        for p, pp in combinations(range(self.m + 1), 2):
            for q, qq in combinations(range(self.n + 1), 2):
                if limit is not None and count >= limit:
                    return
                yield (p, q), (pp, q), (pp, qq), (p, qq)
                count += 1

    def _check_vertex(self, v):
        p, q = v
        if not (0 <= p <= self.m and 0 <= q <= self.n):
            raise BadId(f"no vertex {v}")
