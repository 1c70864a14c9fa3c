"""Clockwise labellings and Schnyder decompositions of d-angulations.

Corners are identified with darts: corner(h) is the sector swept clockwise
from h to next_cw(h) at origin(h).  Around a vertex the clockwise corner
order is corner(h), corner(next_cw(h)), ...  Around a *non-root* face,
clockwise means walking with the face on the right, i.e. the reverse of the
stored face orbit; around the root face it is the orbit order itself.

Colors live in [d] = {1..d} with cyclic arithmetic.  Color sets on darts are
d-bit masks (bit i-1 for color i).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace

from .errors import SchnyderError
from .orientation import FracOrientation, _left_faces
from .planar_map import AngulationView


def _mod(x, d):
    return (x - 1) % d + 1


def mask_of(colors, d):
    m = 0
    for i in colors:
        m |= 1 << ((i - 1) % d)
    return m


def colors_of(mask, d):
    return [i for i in range(1, d + 1) if mask >> (i - 1) & 1]


def _span_mask(i, j, d):
    """Colors i, i+1, ..., j-1 (cyclically; empty when i == j)."""
    m = 0
    c = i
    while c != j:
        m |= 1 << ((c - 1) % d)
        c = _mod(c + 1, d)
    return m


@dataclass(frozen=True)
class CornerLabelling:
    host: AngulationView
    colors: tuple  # colors[h] = color of corner(h), in 1..d

    def color(self, dart):
        return self.colors[dart]

    def to_json_obj(self):
        return {"host": "primal", "corner_colors": list(self.colors)}

    @classmethod
    def from_json_obj(cls, obj, host):
        if obj.get("host", "primal") != "primal":
            raise SchnyderError("InvalidLabelling", "expected a primal-host labelling")
        return cls(host=host, colors=tuple(obj["corner_colors"]))


@dataclass(frozen=True)
class SchnyderDecomposition:
    host: AngulationView
    masks: tuple  # masks[h] = color bit mask of dart h (0 on external darts)

    def dart_colors(self, dart):
        return colors_of(self.masks[dart], self.host.d)

    def arcs_of_color(self, i):
        """All darts carrying color i."""
        bit = 1 << (i - 1)
        return [h for h in range(len(self.masks)) if self.masks[h] & bit]

    def to_json_obj(self):
        return {"host": "primal", "d": self.host.d,
                "dart_colors": [self.dart_colors(h) for h in range(len(self.masks))]}

    @classmethod
    def from_json_obj(cls, obj, host):
        if obj.get("host", "primal") != "primal":
            raise SchnyderError("InvalidDecomposition",
                                "expected a primal-host decomposition")
        d = obj["d"]
        if d != host.d:
            raise SchnyderError("InvalidDecomposition", "d mismatch with host")
        masks = tuple(mask_of(cs, d) for cs in obj["dart_colors"])
        return cls(host=host, masks=masks)


# -- labelling validation -------------------------------------------------

def validate_labelling(l):
    """All violations of the three clockwise-labelling axioms (empty = valid)."""
    ang = l.host
    m = ang.map
    d = ang.d
    out = []
    if len(l.colors) != m.n_darts or any(not 1 <= c <= d for c in l.colors):
        return [("malformed", None, "colors must cover all corners with values in [d]")]
    # (i) colors 1..d in clockwise order around each face
    for f, orbit in enumerate(m.faces):
        step = 1 if f == m.outer_face else -1
        for t in range(len(orbit)):
            c0 = l.colors[m.twin[orbit[t]]]
            c1 = l.colors[m.twin[orbit[(t + 1) % len(orbit)]]]
            if c1 != _mod(c0 + step, d):
                out.append(("i", f, f"face {f}: corner colors {c0}->{c1} not a "
                                    "clockwise +1 step"))
    # (ii) corners at u_i colored i
    for i, u in enumerate(ang.external, start=1):
        for h in m.vertex_orbit(u):
            if l.colors[h] != i:
                out.append(("ii", u, f"corner {h} at u_{i} has color {l.colors[h]}"))
    # (iii) exactly one clockwise descent around each internal vertex
    for v in ang.internal_vertices():
        orbit = m.vertex_orbit(v)
        desc = sum(1 for t in range(len(orbit))
                   if l.colors[orbit[t]] > l.colors[orbit[(t + 1) % len(orbit)]])
        if desc != 1:
            out.append(("iii", v, f"vertex {v} has {desc} descents"))
    return out


def clockwise_jump(l, h):
    """Jump across the arc h: color after minus color before crossing h in
    clockwise order around its origin, mod d."""
    d = l.host.d
    before = l.colors[l.host.map.prev_cw[h]]
    after = l.colors[h]
    return (after - before) % d


# -- Psi ------------------------------------------------------------------

def psi(l):
    """Clockwise-jump orientation of a valid labelling (a d/(d-2)-orientation)."""
    ang = l.host
    if validate_labelling(l):
        raise SchnyderError("InvalidLabelling", "; ".join(
            v[2] for v in validate_labelling(l)[:3]))
    m = ang.map
    vals = [-1] * m.n_darts
    for h in ang.internal_darts():
        vals[h] = clockwise_jump(l, h)
    o = FracOrientation(map=m, k=ang.d - 2, values=tuple(vals), host=ang)
    return o.validate()


def psi_inverse(o):
    """The unique labelling with Psi(l) = o, by color propagation.

    Seeds color 1 at a corner of u_1 and propagates with the two rules:
    +1 along clockwise face steps, +Omega(v,e) along clockwise vertex steps
    (external edges count 0).  Every relation is re-verified on completion.
    """
    ang = o.host
    if ang is None:
        raise SchnyderError("InvalidOrientation", "orientation lacks an angulation host")
    m = ang.map
    d = ang.d

    def jump(h):
        return o.values[h] if o.values[h] >= 0 else 0

    # relation list: (corner a, corner b, delta) meaning color(b) = color(a)+delta
    relations = [[] for _ in range(m.n_darts)]

    def add(a, b, delta):
        relations[a].append((b, delta))
        relations[b].append((a, -delta))

    for h in range(m.n_darts):
        add(h, m.next_cw[h], jump(m.next_cw[h]))
    for f, orbit in enumerate(m.faces):
        step = 1 if f == m.outer_face else -1
        for t in range(len(orbit)):
            add(m.twin[orbit[t]], m.twin[orbit[(t + 1) % len(orbit)]], step)

    colors = [None] * m.n_darts
    seed = m.vertex_darts[ang.external[0]]
    colors[seed] = 1
    q = deque([seed])
    while q:
        a = q.popleft()
        for b, delta in relations[a]:
            c = _mod(colors[a] + delta, d)
            if colors[b] is None:
                colors[b] = c
                q.append(b)
            elif colors[b] != c:
                raise SchnyderError("PropagationConflict",
                                    f"corner {b}: {colors[b]} vs {c}")
    if any(c is None for c in colors):
        raise SchnyderError("PropagationConflict", "unreached corners")
    l = CornerLabelling(host=ang, colors=tuple(colors))
    bad = validate_labelling(l)
    if bad:
        raise SchnyderError("PropagationConflict",
                            f"propagated labelling invalid: {bad[:3]}")
    return l


# -- Phi and Gamma --------------------------------------------------------

def phi(l):
    """Schnyder decomposition of a labelling: the arc before/after corner
    colors i, j give the arc the colors i..j-1."""
    ang = l.host
    m = ang.map
    d = ang.d
    masks = [0] * m.n_darts
    for h in ang.internal_darts():
        i = l.colors[m.prev_cw[h]]
        j = l.colors[h]
        masks[h] = _span_mask(i, j, d)
    return SchnyderDecomposition(host=ang, masks=tuple(masks))


def gamma(s):
    """Color-deletion: arc value = number of colors on the arc."""
    ang = s.host
    vals = tuple(
        bin(mask).count("1") if not ang.is_external_edge(h) else -1
        for h, mask in enumerate(s.masks))
    return FracOrientation(map=ang.map, k=ang.d - 2, values=vals, host=ang)


def phi_inverse(s):
    """The labelling l with phi(l) = s (via psi_inverse of gamma)."""
    bad = validate_schnyder(s)
    if bad:
        raise SchnyderError("InvalidDecomposition", str(bad[:3]))
    l = psi_inverse(gamma(s).validate())
    if phi(l).masks != s.masks:
        raise SchnyderError("InvalidDecomposition",
                            "decomposition is not in the image of phi")
    return l


# -- decomposition validation --------------------------------------------

def validate_schnyder(s):
    """All violations of the Schnyder decomposition axioms (empty = valid)."""
    ang = s.host
    m = ang.map
    d = ang.d
    out = []
    ext_edges = ang.external_edge_ids
    for h in m.edges():
        if h in ext_edges:
            if s.masks[h] or s.masks[m.twin[h]]:
                out.append(("i", h, "external edge carries colors"))
            continue
        a, b = s.masks[h], s.masks[m.twin[h]]
        if a & b:
            out.append(("i", h, "the two arcs share a color"))
        if bin(a | b).count("1") != d - 2:
            out.append(("i", h, f"edge carries {bin(a | b).count('1')} colors"))
    for i in range(1, d + 1):
        out.extend(_validate_forest(s, i))
    for v in ang.internal_vertices():
        out.extend(_validate_vertex_rule(s, v))
    return out


def _validate_forest(s, i):
    ang = s.host
    m = ang.map
    d = ang.d
    out = []
    ui = ang.external[i - 1]
    ui1 = ang.external[i % d]
    parent = {}
    for h in s.arcs_of_color(i):
        v = m.origin[h]
        if v in parent:
            out.append(("ii", v, f"color {i}: two outgoing arcs at {v}"))
        parent[v] = h
    covered = set(parent)
    for h in s.arcs_of_color(i):
        covered.add(m.target(h))
    for v in (ui, ui1):
        if v in covered:
            out.append(("ii", v, f"color {i} touches u_{i} or u_{i + 1}"))
    for v in ang.internal_vertices():
        if v not in parent:
            out.append(("ii", v, f"color {i}: no outgoing arc at internal {v}"))
    ext = set(ang.external)
    for u in ext:
        if u in parent:
            out.append(("ii", u, f"color {i}: outgoing arc at external {u}"))
    # orientation toward an external root, acyclicity
    for v0 in ang.internal_vertices():
        seen = set()
        v = v0
        while v in parent:
            if v in seen:
                out.append(("ii", v0, f"color {i}: cycle through {v}"))
                break
            seen.add(v)
            v = m.target(parent[v])
        else:
            if v not in ext or v in (ui, ui1):
                out.append(("ii", v0, f"color {i}: path ends at {v}"))
    return out


def _validate_vertex_rule(s, v):
    """Axiom (iii): outgoing colors 1..d clockwise; incoming color-i arcs
    strictly between e_{i+1} and e_{i-1} clockwise."""
    ang = s.host
    m = ang.map
    d = ang.d
    orbit = m.vertex_orbit(v)
    seq = []  # outgoing colors in clockwise dart order
    for h in orbit:
        run = _cyclic_interval(s.masks[h], d)
        if run is None:
            return [("iii", v, f"arc {h} colors are not cyclically consecutive")]
        seq.extend(run)
    if sorted(seq) != list(range(1, d + 1)):
        return [("iii", v, f"outgoing colors at {v}: {sorted(seq)}")]
    # cyclic sequence must be 1..d in clockwise order
    start = seq.index(1)
    if [seq[(start + t) % d] for t in range(d)] != list(range(1, d + 1)):
        return [("iii", v, f"outgoing colors not clockwise at {v}: {seq}")]
    out = []
    pos_out = {}
    for t, h in enumerate(orbit):
        for c in colors_of(s.masks[h], d):
            pos_out[c] = t
    for t, h in enumerate(orbit):
        for c in colors_of(s.masks[m.twin[h]], d):
            # incoming arc of color c at position t
            a = pos_out[_mod(c + 1, d)]
            b = pos_out[_mod(c - 1, d)]
            if not _strictly_between_cw(t, a, b, len(orbit)):
                out.append(("iii", v,
                            f"incoming color {c} at {v} outside ({_mod(c+1,d)},{_mod(c-1,d)})"))
    return out


def _cyclic_interval(mask, d):
    """The colors of a mask as a cyclically consecutive run i..j-1 (list in
    run order), or None when the mask is not a single cyclic interval."""
    if mask == 0:
        return []
    starts = [c for c in range(1, d + 1)
              if mask >> (c - 1) & 1 and not mask >> (_mod(c - 1, d) - 1) & 1]
    if len(starts) != 1:
        return None
    run = []
    c = starts[0]
    while mask >> (c - 1) & 1:
        run.append(c)
        c = _mod(c + 1, d)
        if len(run) > d:
            return None
    if len(run) != bin(mask).count("1"):
        return None
    return run


def _strictly_between_cw(t, a, b, n):
    """Is position t strictly between positions a and b, walking clockwise
    from a to b (positions index the clockwise dart order at the vertex)?"""
    if a == b:
        return t != a
    return 0 < (t - a) % n < (b - a) % n


def forest_path_to_root(s, i, v):
    """Vertices of the color-i directed path from v to its external root."""
    ang = s.host
    m = ang.map
    parent = {}
    for h in s.arcs_of_color(i):
        parent[m.origin[h]] = h
    path = [v]
    seen = {v}
    while path[-1] in parent:
        w = m.target(parent[path[-1]])
        if w in seen:
            raise SchnyderError("InvalidDecomposition",
                                f"color {i} cycle through {w}")
        seen.add(w)
        path.append(w)
    if path[-1] not in set(ang.external):
        raise SchnyderError("InvalidDecomposition",
                            f"color {i} path from {v} ends at internal {path[-1]}")
    return path


# -- lattice push seen on labellings --------------------------------------

def labelling_push(l, traversal):
    """Push an admissible ccw cycle: +1 mod d on every corner whose face lies
    strictly inside the cycle."""
    ang = l.host
    m = ang.map
    d = ang.d
    for h in traversal:
        if clockwise_jump(l, h) == 0:
            raise SchnyderError("NotAdmissible",
                                f"corners around arc {h} share a color")
    interior = _left_faces(m, traversal)
    if m.outer_face in interior:
        raise SchnyderError("NotAdmissible", "traversal is not counterclockwise")
    colors = list(l.colors)
    for h in range(m.n_darts):
        # corner(h) belongs to the face orbit containing next_cw(h)
        if m.face_of[m.next_cw[h]] in interior:
            colors[h] = _mod(colors[h] + 1, d)
    return replace(l, colors=tuple(colors))
