"""Even structures for d = 2p and the reductions to p colors.

A d/(d-2)-orientation with all arc values even carries no information in its
odd colors: on the primal side the color-(2i-1) parent edge of a black vertex
coincides with its color-2i parent edge (color 2i+1 at white vertices), and on
the dual side color 2i-1 sits on the arc clockwise-preceding the outgoing
color-2i arc.  Dropping the odd colors halves the structure; this module
provides the parity tests, the reductions in both directions, and the p = 2
construction pipeline used by the drawing code.

The vertex bipartition is anchored at u_1 (black), so u_i is black exactly
when i is odd; dual faces inherit the color of the primal vertex they contain,
anchored at the root face f_1* (black).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import EvenError, MapError, OrientationError
from .planar_map import AngulationView, RegularView, as_angulation, as_regular
from .duality import (
    RegularDecomposition, dualize, validate_regular_decomposition,
)
from .orientation import compute_p_p1_orientation, double
from .schnyder import (
    SchnyderDecomposition, _mod, _strictly_between_cw, colors_of,
    phi, psi_inverse, validate_schnyder,
)
from . import duality as _duality


def _require_even_d(d):
    if d % 2 != 0:
        raise EvenError("OddD", f"d = {d} is odd; even structures need d = 2p")
    return d // 2


def black_vertices(ang):
    """Per-vertex blackness of a 2p-angulation, anchored black at u_1."""
    _require_even_d(ang.d)
    try:
        return ang.map.bipartition_from(ang.external[0])
    except MapError as exc:
        raise EvenError("NotBipartite", str(exc)) from exc


def black_faces(rv):
    """Per-face blackness of the dual host: faces adjacent across an edge get
    opposite colors, anchored black at the root face f_1*."""
    _require_even_d(rv.d)
    m = rv.map
    color = [None] * m.n_faces
    color[rv.root_faces[0]] = True
    q = deque([rv.root_faces[0]])
    while q:
        f = q.popleft()
        for h in m.faces[f]:
            g = m.face_of[m.twin[h]]
            if color[g] is None:
                color[g] = not color[f]
                q.append(g)
            elif color[g] == color[f]:
                raise EvenError("NotBipartite",
                                "face adjacencies admit no black/white split")
    return tuple(color)


# -- parity characterizations ---------------------------------------------

def is_even_labelling(l):
    """Corners at black vertices carry odd colors, at white vertices even."""
    black = black_vertices(l.host)
    return all((l.colors[h] % 2 == 1) == black[l.host.map.origin[h]]
               for h in range(l.host.map.n_darts))


def is_even_schnyder(s):
    """The two missing colors of every internal edge differ in parity."""
    d = s.host.d
    _require_even_d(d)
    m = s.host.map
    full = (1 << d) - 1
    for h in s.host.internal_edges():
        missing = colors_of(full & ~(s.masks[h] | s.masks[m.twin[h]]), d)
        if len(missing) == 2 and missing[0] % 2 == missing[1] % 2:
            return False
    return True


def is_even_regular(rd):
    """The two colors of every non-root edge differ in parity."""
    rv = rd.host
    _require_even_d(rv.d)
    m = rv.map
    root_ids = set(rv.root_edge_ids())
    for h in m.edges():
        if h in root_ids:
            continue
        ca = colors_of(rd.masks[h], rv.d)
        cb = colors_of(rd.masks[m.twin[h]], rv.d)
        if len(ca) == 1 and len(cb) == 1 and ca[0] % 2 == cb[0] % 2:
            return False
    return True


# -- reduced types ---------------------------------------------------------

@dataclass(frozen=True)
class ReducedSchnyderDecomposition:
    """Covering of the internal edges by p oriented forests F_1'..F_p';
    masks hold p-bit color sets per dart."""

    host: AngulationView
    masks: tuple

    @property
    def p(self):
        return self.host.d // 2

    def dart_colors(self, dart):
        return colors_of(self.masks[dart], self.p)

    def arcs_of_color(self, i):
        bit = 1 << (i - 1)
        return [h for h in range(len(self.masks)) if self.masks[h] & bit]

    def to_json_obj(self):
        return {"host": "primal", "reduced": True, "d": self.p,
                "dart_colors": [self.dart_colors(h) for h in range(len(self.masks))]}

    @classmethod
    def from_json_obj(cls, obj, host):
        if not obj.get("reduced") or obj.get("host", "primal") != "primal":
            raise EvenError("NotEven", "expected a reduced primal decomposition")
        if obj["d"] != host.d // 2:
            raise EvenError("NotEven", "color range mismatch with host")
        masks = tuple(sum(1 << (c - 1) for c in cs) for cs in obj["dart_colors"])
        return cls(host=host, masks=masks)


@dataclass(frozen=True)
class ReducedRegularDecomposition:
    """Partition of the dual edges except e_1*, e_3*, ... into p spanning
    trees toward v*; one color per dart, plus the black/white face split."""

    host: RegularView
    masks: tuple
    face_black: tuple = field(compare=False)
    primal: AngulationView = field(default=None, compare=False)

    @property
    def p(self):
        return self.host.d // 2

    def dart_colors(self, dart):
        return colors_of(self.masks[dart], self.p)

    def arcs_of_color(self, i):
        bit = 1 << (i - 1)
        return [h for h in range(len(self.masks)) if self.masks[h] & bit]

    def to_json_obj(self):
        return {"host": "dual", "reduced": True, "d": self.p,
                "dart_colors": [self.dart_colors(h) for h in range(len(self.masks))]}

    @classmethod
    def from_json_obj(cls, obj, host, primal=None):
        if not obj.get("reduced") or obj.get("host") != "dual":
            raise EvenError("NotEven", "expected a reduced dual decomposition")
        if obj["d"] != host.d // 2:
            raise EvenError("NotEven", "color range mismatch with host")
        masks = tuple(sum(1 << (c - 1) for c in cs) for cs in obj["dart_colors"])
        return cls(host=host, masks=masks, face_black=black_faces(host),
                   primal=primal)


def _spread_even(mask, p):
    """Reduced color i (bit i-1) becomes full color 2i (bit 2i-1)."""
    return sum(1 << (2 * i - 1) for i in range(1, p + 1) if mask >> (i - 1) & 1)


# -- Lambda: primal reduction ---------------------------------------------

def lambda_(s):
    """Keep the even-color forests: F_i' = F_{2i}."""
    p = _require_even_d(s.host.d)
    if not is_even_schnyder(s):
        raise EvenError("NotEven", "decomposition has an edge with same-parity "
                                   "missing colors")
    masks = tuple(
        sum(1 << (i - 1) for i in range(1, p + 1) if mk >> (2 * i - 1) & 1)
        for mk in s.masks)
    return ReducedSchnyderDecomposition(host=s.host, masks=masks)


def lambda_inverse(rs):
    """Reinstate the odd forests: a black vertex shares its color-(2i-1)
    parent edge with its color-2i parent, a white vertex its color-(2i+1)
    parent."""
    ang = rs.host
    p = _require_even_d(ang.d)
    bad = validate_reduced_schnyder(rs)
    if bad:
        raise EvenError("NotEven", str(bad[:3]))
    black = black_vertices(ang)
    m = ang.map
    full = [_spread_even(mk, p) for mk in rs.masks]
    for v in ang.internal_vertices():
        for h in m.vertex_orbit(v):
            for i in rs.dart_colors(h):
                odd = 2 * i - 1 if black[v] else _mod(2 * i + 1, ang.d)
                full[h] |= 1 << (odd - 1)
    s = SchnyderDecomposition(host=ang, masks=tuple(full))
    bad = validate_schnyder(s)
    if bad:
        raise EvenError("NotEven", f"odd-color reinstatement fails: {bad[:3]}")
    return s


def validate_reduced_schnyder(rs):
    """All violations of the reduced-decomposition axioms (empty = valid)."""
    ang = rs.host
    p = _require_even_d(ang.d)
    m = ang.map
    black = black_vertices(ang)
    out = []
    if len(rs.masks) != m.n_darts:
        return [("malformed", None, "mask table length mismatch")]
    ext = ang.external_edge_ids
    for h in m.edges():
        a, b = rs.masks[h], rs.masks[m.twin[h]]
        if h in ext:
            if a or b:
                out.append(("i'", h, "external edge carries colors"))
        else:
            if a & b or bin(a | b).count("1") != p - 1:
                out.append(("i'", h, "edge must lie in p-1 forests, once each"))
    for i in range(1, p + 1):
        out.extend(_validate_reduced_forest(rs, i))
    for v in ang.internal_vertices():
        out.extend(_validate_reduced_vertex_rule(rs, v, black[v]))
    return out


def _validate_reduced_forest(rs, i):
    ang = rs.host
    m = ang.map
    out = []
    avoid = {ang.external[2 * i - 1], ang.external[(2 * i) % ang.d]}
    parent = {}
    covered = set()
    for h in rs.arcs_of_color(i):
        v = m.origin[h]
        if v in parent:
            out.append(("ii'", v, f"color {i}: two outgoing arcs at {v}"))
        parent[v] = h
        covered.update((v, m.target(h)))
    for v in avoid & covered:
        out.append(("ii'", v, f"color {i} touches u_{{2i}} or u_{{2i+1}}"))
    ext = set(ang.external)
    for u in ext & set(parent):
        out.append(("ii'", u, f"color {i}: outgoing arc at external {u}"))
    for v0 in ang.internal_vertices():
        if v0 not in parent:
            out.append(("ii'", v0, f"color {i}: no outgoing arc at internal {v0}"))
            continue
        seen = set()
        v = v0
        while v in parent:
            if v in seen:
                out.append(("ii'", v0, f"color {i}: cycle through {v}"))
                break
            seen.add(v)
            v = m.target(parent[v])
        else:
            if v not in ext or v in avoid:
                out.append(("ii'", v0, f"color {i}: path ends at {v}"))
    return out


def _validate_reduced_vertex_rule(rs, v, is_black):
    """Axiom (iii'): parent edges e_1'..e_p' clockwise; incoming color-i
    edges strictly between e_{i+1}' and e_i' at black vertices, between
    e_i' and e_{i-1}' at white ones."""
    ang = rs.host
    p = rs.p
    m = ang.map
    orbit = m.vertex_orbit(v)
    n = len(orbit)
    pos = {}
    for t, h in enumerate(orbit):
        for c in rs.dart_colors(h):
            pos[c] = t
    if sorted(pos) != list(range(1, p + 1)):
        return [("iii'", v, f"outgoing colors at {v}: {sorted(pos)}")]
    # one clockwise sweep must visit the parent positions in color order
    turns = sum((pos[_mod(i + 1, p)] - pos[i]) % n for i in range(1, p + 1))
    if turns not in (0, n):
        return [("iii'", v, f"parent edges not clockwise at {v}")]
    out = []
    for t, h in enumerate(orbit):
        for c in colors_of(rs.masks[m.twin[h]], p):
            a, b = (pos[_mod(c + 1, p)], pos[c]) if is_black else \
                   (pos[c], pos[_mod(c - 1, p)])
            if t in (a, b) or not _strictly_between_cw(t, a, b, n):
                out.append(("iii'", v, f"incoming color {c} misplaced at {v}"))
    return out


# -- Lambda*: dual reduction ----------------------------------------------

def lambda_star(rd):
    """Keep the even-color trees: T_i'* = T_{2i}*."""
    rv = rd.host
    p = _require_even_d(rv.d)
    if not is_even_regular(rd):
        raise EvenError("NotEven", "decomposition has a non-root edge with "
                                   "same-parity colors")
    masks = tuple(
        sum(1 << (i - 1) for i in range(1, p + 1) if mk >> (2 * i - 1) & 1)
        for mk in rd.masks)
    return ReducedRegularDecomposition(host=rv, masks=masks,
                                       face_black=black_faces(rv),
                                       primal=rd.primal)


def lambda_star_inverse(rrd):
    """Reinstate the odd trees: color 2i-1 goes on the arc clockwise-preceding
    the outgoing color-2i arc at each non-root vertex."""
    rv = rrd.host
    p = _require_even_d(rv.d)
    bad = validate_reduced_regular(rrd)
    if bad:
        raise EvenError("NotEven", str(bad[:3]))
    m = rv.map
    full = [_spread_even(mk, p) for mk in rrd.masks]
    for h in range(m.n_darts):
        for i in rrd.dart_colors(h):
            full[m.prev_cw[h]] |= 1 << (2 * i - 2)
    rd = RegularDecomposition(host=rv, masks=tuple(full), primal=rrd.primal)
    bad = validate_regular_decomposition(rd)
    if bad:
        raise EvenError("NotEven", f"odd-color reinstatement fails: {bad[:3]}")
    if not is_even_regular(rd):
        raise EvenError("NotEven", "reinstated decomposition is not even")
    return rd


def validate_reduced_regular(rrd):
    """All violations of the reduced dual-decomposition axioms (empty =
    valid)."""
    rv = rrd.host
    p = _require_even_d(rv.d)
    m = rv.map
    out = []
    if len(rrd.masks) != m.n_darts:
        return [("malformed", None, "mask table length mismatch")]
    for h in range(m.n_darts):
        if bin(rrd.masks[h]).count("1") > 1 or rrd.masks[h] >> p:
            out.append(("i'", h, f"arc {h} carries more than one color"))
    if out:
        return out
    # partition of all edges except the odd root-edges
    odd_root = {m.edge(rv.root_darts[2 * i - 2]) for i in range(1, p + 1)}
    even_root_in = {m.twin[rv.root_darts[2 * i - 1]]: i for i in range(1, p + 1)}
    for h in m.edges():
        n_colors = bin(rrd.masks[h]).count("1") + \
            bin(rrd.masks[m.twin[h]]).count("1")
        want = 0 if h in odd_root else 1
        if n_colors != want:
            out.append(("partition", h,
                        f"edge {h} lies in {n_colors} trees, expected {want}"))
    for x, i in even_root_in.items():
        if rrd.masks[x] != 1 << (i - 1):
            out.append(("ii'", x, f"root edge e_{{2i}}* of tree {i} miscolored"))
    # (i') black face on the right of every arc
    for h in range(m.n_darts):
        if rrd.masks[h] and not rrd.face_black[m.face_of[m.twin[h]]]:
            out.append(("i'", h, f"arc {h} has a white face on its right"))
    # (iii') parent arcs clockwise around non-root vertices
    for v in rv.non_root_vertices():
        orbit = m.vertex_orbit(v)
        n = len(orbit)
        pos = {}
        for t, h in enumerate(orbit):
            for c in rrd.dart_colors(h):
                if c in pos:
                    out.append(("iii'", v, f"color {c}: two outgoing arcs at {v}"))
                pos[c] = t
        if sorted(pos) != list(range(1, p + 1)):
            out.append(("iii'", v, f"outgoing colors at {v}: {sorted(pos)}"))
            continue
        turns = sum((pos[_mod(i + 1, p)] - pos[i]) % n for i in range(1, p + 1))
        if turns not in (0, n):
            out.append(("iii'", v, f"parent arcs not clockwise at {v}"))
    # spanning trees toward v*
    for i in range(1, p + 1):
        parent = {m.origin[h]: h for h in rrd.arcs_of_color(i)}
        for v in rv.non_root_vertices():
            seen = set()
            w = v
            while w != rv.root_vertex:
                if w in seen or w not in parent:
                    out.append(("tree", v, f"color {i} path from {v} breaks at {w}"))
                    break
                seen.add(w)
                w = m.target(parent[w])
    return out


# -- the p = 2 construction pipeline --------------------------------------

def primal_quadrangulation(rv):
    """The quadrangulation whose dual is rv, with outer face at the face dual
    to v* so that external vertex u_i is the root face f_i*."""
    if rv.d != 4:
        raise EvenError("OddD", "pipeline requires a 4-regular host")
    m = rv.map
    qm = m.dual(outer_dart=m.twin[rv.root_darts[0]])
    return as_angulation(qm, 4)


def compute_even_regular_decomposition(rv):
    """An even regular decomposition (T_1*..T_4*) of a rooted 4-regular map.

    Pipeline: dual quadrangulation, 2-orientation by flow, doubling to an
    even 4/2-orientation, color propagation, and transfer back through the
    duality.  Raises MincutTooSmall when no 2-orientation exists.
    """
    q = primal_quadrangulation(rv)
    try:
        o2 = compute_p_p1_orientation(q)
    except OrientationError as exc:
        if exc.kind in ("GirthTooSmall", "NoSolution"):
            raise EvenError("MincutTooSmall",
                            f"host has a cut of size < 4 ({exc.detail})") from exc
        raise
    s = phi(psi_inverse(double(o2)))
    dd_rd = _duality.chi(s)
    # the double dual is the original map with darts renamed by twin
    m = rv.map
    masks = tuple(dd_rd.masks[m.twin[h]] for h in range(m.n_darts))
    rd = RegularDecomposition(host=rv, masks=masks, primal=None)
    bad = validate_regular_decomposition(rd)
    if bad:
        raise EvenError("MincutTooSmall", f"transfer failed: {bad[:3]}")
    if not is_even_regular(rd):
        raise EvenError("NotEven", "pipeline produced an uneven decomposition")
    return rd
