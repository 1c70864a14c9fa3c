"""Dart-based plane maps.

A plane map is stored as three parallel dart tables: ``twin`` (the opposite
half of the same edge), ``next_cw`` (next dart clockwise around the origin
vertex) and ``origin``.  Face orbits follow the fixed convention

    next dart along a face  =  next_cw[twin[d]]

which keeps the face on the *left* of each dart.  With clockwise rotation
systems this means internal face orbits run counterclockwise as drawn, while
the orbit of the outer face lists the external vertices in clockwise order.
The outer face is identified by one designated dart.

Corners are in bijection with darts: ``corner(d)`` is the angular sector swept
clockwise from d to next_cw[d] at origin[d].  That corner lies in the face on
the right of d, i.e. the face orbit containing next_cw[d].

Maps are immutable after validation; loops are rejected, multi-edges allowed.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import MapError


class PlaneMap:
    __slots__ = (
        "twin", "next_cw", "origin", "outer_dart", "root_vertex",
        "vertex_bipartition",
        "prev_cw", "n_vertices", "n_edges", "n_faces",
        "face_of", "faces", "vertex_darts", "outer_face",
        "_frozen",
    )

    def __init__(self, twin, next_cw, origin, outer_dart, root_vertex=None,
                 vertex_bipartition=None):
        self.twin = tuple(twin)
        self.next_cw = tuple(next_cw)
        self.origin = tuple(origin)
        self.outer_dart = outer_dart
        self.root_vertex = root_vertex
        self._validate_permutations()
        self._build_derived()
        self._validate_topology()
        self.vertex_bipartition = (
            tuple(vertex_bipartition) if vertex_bipartition is not None else None
        )
        if self.vertex_bipartition is not None:
            self._validate_bipartition()
        self._frozen = True

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError("PlaneMap is immutable")
        object.__setattr__(self, name, value)

    # -- validation -------------------------------------------------------

    def _validate_permutations(self):
        n = len(self.twin)
        if n == 0 or n % 2 != 0:
            raise MapError("MalformedRotation", "dart count must be positive and even")
        if len(self.next_cw) != n or len(self.origin) != n:
            raise MapError("MalformedRotation", "dart tables have unequal lengths")
        seen = [False] * n
        for d in range(n):
            t = self.twin[d]
            if not (0 <= t < n) or self.twin[t] != d or t == d:
                raise MapError("MalformedRotation",
                               f"twin is not a fixed-point-free involution at dart {d}")
            if self.origin[t] == self.origin[d]:
                raise MapError("MalformedRotation", f"loop edge at dart {d}")
            nc = self.next_cw[d]
            if not (0 <= nc < n) or seen[nc]:
                raise MapError("MalformedRotation", "next_cw is not a permutation")
            seen[nc] = True
            if self.origin[nc] != self.origin[d]:
                raise MapError("MalformedRotation",
                               f"next_cw leaves the vertex at dart {d}")
        if not (0 <= self.outer_dart < n):
            raise MapError("MalformedRotation", "outer dart out of range")

    def _build_derived(self):
        n = len(self.twin)
        prev = [0] * n
        for d in range(n):
            prev[self.next_cw[d]] = d
        self.prev_cw = tuple(prev)

        # vertex orbits must match the origin table
        n_vertices = max(self.origin) + 1
        vertex_darts = [None] * n_vertices
        dart_seen = [False] * n
        for d in range(n):
            v = self.origin[d]
            if vertex_darts[v] is None:
                vertex_darts[v] = d
        for v, d0 in enumerate(vertex_darts):
            if d0 is None:
                raise MapError("MalformedRotation", f"vertex {v} has no dart")
            d = d0
            while True:
                if dart_seen[d]:
                    raise MapError("MalformedRotation",
                                   f"rotation orbits disagree with origins at vertex {v}")
                dart_seen[d] = True
                d = self.next_cw[d]
                if d == d0:
                    break
        if not all(dart_seen):
            raise MapError("MalformedRotation", "rotation orbit missing darts")
        self.vertex_darts = tuple(vertex_darts)
        self.n_vertices = n_vertices
        self.n_edges = n // 2

        # face orbits under next_cw . twin
        face_of = [-1] * n
        faces = []
        for d0 in range(n):
            if face_of[d0] >= 0:
                continue
            orbit = []
            d = d0
            while face_of[d] < 0:
                face_of[d] = len(faces)
                orbit.append(d)
                d = self.next_cw[self.twin[d]]
            faces.append(tuple(orbit))
        self.face_of = tuple(face_of)
        self.faces = tuple(faces)
        self.n_faces = len(faces)
        self.outer_face = face_of[self.outer_dart]

    def _validate_topology(self):
        # connectivity over vertices
        seen = [False] * self.n_vertices
        stack = [self.origin[0]]
        seen[stack[0]] = True
        count = 1
        while stack:
            v = stack.pop()
            d0 = self.vertex_darts[v]
            d = d0
            while True:
                w = self.origin[self.twin[d]]
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
                d = self.next_cw[d]
                if d == d0:
                    break
        if count != self.n_vertices:
            raise MapError("Disconnected", f"{count} of {self.n_vertices} vertices reachable")
        if self.n_vertices - self.n_edges + self.n_faces != 2:
            raise MapError(
                "EulerViolation",
                f"v-e+f = {self.n_vertices}-{self.n_edges}+{self.n_faces} != 2")
        if self.root_vertex is not None and not (0 <= self.root_vertex < self.n_vertices):
            raise MapError("MalformedRotation", "root vertex out of range")

    def _validate_bipartition(self):
        bp = self.vertex_bipartition
        if len(bp) != self.n_vertices:
            raise MapError("MalformedRotation", "bipartition size mismatch")
        for d in range(len(self.twin)):
            if bp[self.origin[d]] == bp[self.origin[self.twin[d]]]:
                raise MapError("MalformedRotation",
                               f"bipartition not proper at dart {d}")

    # -- elementary accessors --------------------------------------------

    @property
    def n_darts(self):
        return len(self.twin)

    def target(self, d):
        return self.origin[self.twin[d]]

    def edge(self, d):
        """Canonical edge id of a dart (the smaller of the two dart ids)."""
        t = self.twin[d]
        return d if d < t else t

    def next_in_face(self, d):
        return self.next_cw[self.twin[d]]

    def prev_in_face(self, d):
        return self.twin[self.prev_cw[d]]

    def degree(self, v):
        deg = 0
        d0 = self.vertex_darts[v]
        d = d0
        while True:
            deg += 1
            d = self.next_cw[d]
            if d == d0:
                break
        return deg

    def vertex_orbit(self, v):
        """Darts at v in clockwise order, starting at the stored representative."""
        d0 = self.vertex_darts[v]
        out = []
        d = d0
        while True:
            out.append(d)
            d = self.next_cw[d]
            if d == d0:
                break
        return out

    def face_degree(self, f):
        return len(self.faces[f])

    def edges(self):
        return [d for d in range(self.n_darts) if d < self.twin[d]]

    def is_bridge(self, d):
        return self.face_of[d] == self.face_of[self.twin[d]]

    # -- duality ----------------------------------------------------------

    def dual(self, outer_dart=None):
        """The dual map, rooted at the vertex dual to the outer face.

        Dart ids are preserved: dual dart d runs from the face left of the
        primal dart d to the face on its right, and its dual-face is the
        primal vertex target(d).  By default the dual outer face is the one
        dual to the primal vertex origin(outer_dart); passing ``outer_dart``
        overrides which dual dart marks the outer face instead.
        """
        for d in range(self.n_darts):
            if self.is_bridge(d):
                raise MapError("MalformedRotation",
                               "dual would contain a loop (bridge in primal)")
        twin = self.twin
        next_cw = [twin[self.prev_cw[d]] for d in range(self.n_darts)]
        origin = [self.face_of[d] for d in range(self.n_darts)]
        return PlaneMap(twin, next_cw, origin,
                        outer_dart=(twin[self.outer_dart]
                                    if outer_dart is None else outer_dart),
                        root_vertex=self.outer_face)

    # -- metrics ----------------------------------------------------------

    def girth(self):
        """Length of a shortest cycle; raises Acyclic on trees."""
        # parallel edges first: any repeated endpoint pair is a 2-cycle
        pairs = set()
        for d in self.edges():
            key = (min(self.origin[d], self.target(d)),
                   max(self.origin[d], self.target(d)))
            if key in pairs:
                return 2
            pairs.add(key)
        adj = [[] for _ in range(self.n_vertices)]
        for d in self.edges():
            u, w = self.origin[d], self.target(d)
            adj[u].append((w, d))
            adj[w].append((u, d))
        best = None
        for s in range(self.n_vertices):
            dist = {s: 0}
            par_edge = {s: -1}
            q = deque([s])
            while q:
                u = q.popleft()
                if best is not None and dist[u] * 2 >= best:
                    continue
                for w, e in adj[u]:
                    if e == par_edge[u]:
                        continue
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        par_edge[w] = e
                        q.append(w)
                    else:
                        cyc = dist[u] + dist[w] + 1
                        if best is None or cyc < best:
                            best = cyc
        if best is None:
            raise MapError("Acyclic", "map is a tree; girth undefined")
        return best

    def mincut_at_least(self, d):
        """True iff every edge cut has size >= d (via girth of the dual)."""
        if d <= 0:
            return True
        if any(self.is_bridge(h) for h in range(self.n_darts)):
            return d <= 1
        if self.n_edges == 1:
            return d <= 1
        try:
            g = self.dual().girth()
        except MapError:
            return False
        return g >= d

    def bipartition_from(self, v0):
        """2-coloring with v0 black (True); raises if an odd cycle exists."""
        color = [None] * self.n_vertices
        color[v0] = True
        q = deque([v0])
        while q:
            v = q.popleft()
            for d in self.vertex_orbit(v):
                w = self.target(d)
                if color[w] is None:
                    color[w] = not color[v]
                    q.append(w)
                elif color[w] == color[v]:
                    raise MapError("NotBipartite", "odd cycle present")
        return tuple(color)

    # -- canonical forms and isomorphism ---------------------------------

    def canonical_code(self, root_dart):
        """Canonical relabelling code of the map rooted at a dart.

        Two rooted maps are isomorphic iff their codes are equal.  The code
        is produced by a BFS over darts along next_cw and twin.
        """
        label = {root_dart: 0}
        order = [root_dart]
        q = deque([root_dart])
        while q:
            d = q.popleft()
            for nd in (self.next_cw[d], self.twin[d]):
                if nd not in label:
                    label[nd] = len(order)
                    order.append(nd)
                    q.append(nd)
        code_next = tuple(label[self.next_cw[d]] for d in order)
        code_twin = tuple(label[self.twin[d]] for d in order)
        return (code_next, code_twin)

    def rooted_code(self):
        """Code rooted at the designated outer dart."""
        return self.canonical_code(self.outer_dart)

    def isomorphic_rooted(self, other):
        return self.rooted_code() == other.rooted_code()

    def isomorphic(self, other):
        """Unrooted isomorphism (brute force over roots; small maps only)."""
        if (self.n_vertices, self.n_edges, self.n_faces) != \
                (other.n_vertices, other.n_edges, other.n_faces):
            return False
        mine = self.canonical_code(0)
        return any(other.canonical_code(d) == mine for d in range(other.n_darts))

    # -- serialization ----------------------------------------------------

    def to_json_obj(self):
        return {
            "darts": [
                {"twin": self.twin[d], "next_cw": self.next_cw[d],
                 "origin": self.origin[d]}
                for d in range(self.n_darts)
            ],
            "outer_dart": self.outer_dart,
            "root_vertex": self.root_vertex,
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json_obj(cls, obj):
        darts = obj["darts"]
        return cls(
            [r["twin"] for r in darts],
            [r["next_cw"] for r in darts],
            [r["origin"] for r in darts],
            outer_dart=obj["outer_dart"],
            root_vertex=obj.get("root_vertex"),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        return (f"PlaneMap(v={self.n_vertices}, e={self.n_edges}, "
                f"f={self.n_faces})")


def build_map(rotations, outer_dart, twin=None, root_vertex=None,
              vertex_bipartition=None):
    """Build a PlaneMap from per-vertex clockwise dart lists.

    ``rotations[v]`` lists the darts leaving v in clockwise order.  When
    ``twin`` is omitted, darts pair up as (2i, 2i+1).
    """
    n = sum(len(r) for r in rotations)
    if twin is None:
        twin = [d ^ 1 for d in range(n)]
    origin = [None] * n
    next_cw = [None] * n
    for v, rot in enumerate(rotations):
        if not rot:
            raise MapError("MalformedRotation", f"vertex {v} has empty rotation")
        for i, d in enumerate(rot):
            if not (0 <= d < n) or origin[d] is not None:
                raise MapError("MalformedRotation",
                               f"dart {d} repeated or out of range")
            origin[d] = v
            next_cw[d] = rot[(i + 1) % len(rot)]
    if any(o is None for o in origin):
        raise MapError("MalformedRotation", "rotation lists do not cover all darts")
    return PlaneMap(twin, next_cw, origin, outer_dart, root_vertex=root_vertex,
                    vertex_bipartition=vertex_bipartition)


# -- views ----------------------------------------------------------------

@dataclass(frozen=True)
class AngulationView:
    """A plane map all of whose faces have degree d, with the external
    vertices u_1..u_d listed clockwise around the outer face starting at
    origin(outer_dart)."""

    map: PlaneMap
    d: int
    external: tuple  # u_1 .. u_d
    outer_orbit: tuple = field(repr=False)  # outer face darts, orbit order

    @property
    def external_edge_ids(self):
        return frozenset(self.map.edge(h) for h in self.outer_orbit)

    def is_external_edge(self, dart):
        return self.map.edge(dart) in self.external_edge_ids

    def internal_darts(self):
        ext = self.external_edge_ids
        return [h for h in range(self.map.n_darts) if self.map.edge(h) not in ext]

    def internal_edges(self):
        ext = self.external_edge_ids
        return [h for h in self.map.edges() if h not in ext]

    def internal_vertices(self):
        ext = set(self.external)
        return [v for v in range(self.map.n_vertices) if v not in ext]

    def internal_faces(self):
        return [f for f in range(self.map.n_faces) if f != self.map.outer_face]


@dataclass(frozen=True)
class RegularView:
    """A d-regular plane map rooted at v*, with root edges e_1*..e_d* in
    counterclockwise order around v* and root faces f_1*..f_d* such that
    e_i* lies between f_i* and f_{i+1}*."""

    map: PlaneMap
    d: int
    root_vertex: int
    root_darts: tuple  # e_1* .. e_d*, darts at v*, ccw order
    root_faces: tuple  # f_1* .. f_d*

    def non_root_vertices(self):
        return [v for v in range(self.map.n_vertices) if v != self.root_vertex]

    def non_root_faces(self):
        rf = set(self.root_faces)
        return [f for f in range(self.map.n_faces) if f not in rf]

    def root_edge_ids(self):
        return [self.map.edge(h) for h in self.root_darts]


def as_angulation(m, d):
    """Check every face has degree d and extract the external vertices."""
    if d < 3:
        raise MapError("NotDAngulation", "d must be at least 3")
    for f in range(m.n_faces):
        if m.face_degree(f) != d:
            raise MapError("NotDAngulation",
                           f"face {f} has degree {m.face_degree(f)}, expected {d}")
    orbit = []
    h = m.outer_dart
    for _ in range(d):
        orbit.append(h)
        h = m.next_in_face(h)
    external = tuple(m.origin[h] for h in orbit)
    if len(set(external)) != d:
        raise MapError("ExternalVerticesNotDistinct",
                       f"outer face visits {external}")
    return AngulationView(map=m, d=d, external=external, outer_orbit=tuple(orbit))


def as_regular(m, d, root=None, first_root_dart=None):
    """Check d-regularity and extract root edges/faces around the root vertex.

    Root edges run counterclockwise starting at first_root_dart (default: the
    stored representative dart of the root).  f_{i+1}* is the face on the left
    of e_i*.
    """
    if root is None:
        root = m.root_vertex
    if root is None:
        raise MapError("NotDRegular", "no root vertex given")
    for v in range(m.n_vertices):
        if m.degree(v) != d:
            raise MapError("NotDRegular",
                           f"vertex {v} has degree {m.degree(v)}, expected {d}")
    h = first_root_dart if first_root_dart is not None else m.vertex_darts[root]
    if m.origin[h] != root:
        raise MapError("NotDRegular", "first root dart not at root vertex")
    darts = []
    for _ in range(d):
        darts.append(h)
        h = m.prev_cw[h]  # counterclockwise
    # e_i* lies between f_i* and f_{i+1}*; the face ccw-after e_i* (= left
    # of e_i*) is f_{i+1}*, so f_i* is the face left of e_{i-1}*.
    faces = tuple(m.face_of[darts[(i - 1) % d]] for i in range(d))
    return RegularView(map=m, d=d, root_vertex=root,
                       root_darts=tuple(darts), root_faces=faces)
