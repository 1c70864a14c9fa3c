"""Degree-triple encoding and uniform sampling of quadrangulation pairs.

A pair (Q, F) -- a rooted girth-4 quadrangulation with n faces together with
an even Schnyder decomposition -- reduces to two spanning trees: T1' is the
reduced forest F1' plus the external edges {u1,u2} and {u1,u4}, T2' is F2'
plus {u3,u2} and {u3,u4}.  T1' spans every vertex except u3 and has n edges.
Walking clockwise around T1' from the external corner of u1 and recording the
T1'-degrees of the black vertices (alpha) and the T1'- and T2'-degrees of the
white vertices (beta, gamma) in discovery order encodes the pair completely.

decode reverses this: rebuild T1' as a plane tree from the interleaved
degree word, then reattach T2' by a planar matching sweep along the contour
(each white vertex offers its parent strand and gamma-1 child slots; each
black vertex takes the adjacent strands off a stack), and finally run the
full even-Schnyder validator, which makes acceptance sound unconditionally.

Since every valid triple has probability 8^-n under independent 2-geometric
draws, conditioning on validity by rejection yields a uniform pair.  The
module also houses the exhaustive small-n enumeration used as the oracle for
uniformity tests, and the grid-concentration experiment.
"""

from __future__ import annotations

import csv
import io
import random
from collections import deque
from dataclasses import dataclass, field

from .errors import EvenError, MapError, SamplerError
from .planar_map import PlaneMap, as_angulation
from .orientation import is_even, lattice_enumerate
from .schnyder import phi, psi_inverse
from .even import (
    ReducedSchnyderDecomposition, black_vertices, is_even_schnyder,
    lambda_, lambda_inverse,
)

DEFAULT_MAX_ATTEMPTS = 10 ** 6
ENUMERATION_CAP = 12


# -- the encoding triple ---------------------------------------------------

@dataclass(frozen=True)
class EncodingTriple:
    """Degree sequences (alpha, beta, gamma) of a pair (Q, F).

    alpha lists the T1'-degrees of the black vertices in clockwise contour
    order (r entries, starting with u1); beta and gamma list the T1'- and
    T2'-degrees of the white vertices (s+1 entries, starting with u2).  For
    a valid triple all three sums equal n = r + s, the number of faces.
    """

    alpha: tuple
    beta: tuple
    gamma: tuple

    @property
    def n(self):
        return sum(self.alpha)

    @property
    def r(self):
        return len(self.alpha)

    @property
    def s(self):
        return len(self.beta) - 1

    def to_json_obj(self):
        return {"alpha": list(self.alpha), "beta": list(self.beta),
                "gamma": list(self.gamma)}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(alpha=tuple(obj["alpha"]), beta=tuple(obj["beta"]),
                   gamma=tuple(obj["gamma"]))


def _tree_edge_sets(ang, rs):
    """Edge ids of the two spanning trees T1', T2' (forests + externals)."""
    m = ang.map
    ext = [m.edge(h) for h in ang.outer_orbit]
    t1 = {m.edge(h) for h in rs.arcs_of_color(1)} | {ext[3], ext[0]}
    t2 = {m.edge(h) for h in rs.arcs_of_color(2)} | {ext[1], ext[2]}
    return t1, t2


def encode(ang, s):
    """The (alpha, beta, gamma) triple of a pair (quadrangulation, even
    Schnyder decomposition)."""
    rs = lambda_(s)
    m = ang.map
    t1, t2 = _tree_edge_sets(ang, rs)
    deg1 = [0] * m.n_vertices
    deg2 = [0] * m.n_vertices
    for e in t1:
        deg1[m.origin[e]] += 1
        deg1[m.target(e)] += 1
    for e in t2:
        deg2[m.origin[e]] += 1
        deg2[m.target(e)] += 1
    # clockwise contour of T1' starting just after the external corner of u1
    start = ang.outer_orbit[0]                 # the dart u1 -> u2
    order = [ang.external[0]]
    seen = {ang.external[0]}
    h = start
    for _ in range(2 * len(t1)):
        w = m.target(h)
        if w not in seen:
            seen.add(w)
            order.append(w)
        g = m.next_cw[m.twin[h]]
        while m.edge(g) not in t1:
            g = m.next_cw[g]
        h = g
    if h != start or len(order) != m.n_vertices - 1:
        raise SamplerError("Invalid", "T1' is not a spanning tree of Q - u3",
                           stage="ValidationFailed")
    black = black_vertices(ang)
    alpha = tuple(deg1[v] for v in order if black[v])
    beta = tuple(deg1[v] for v in order if not black[v])
    gamma = tuple(deg2[v] for v in order if not black[v])
    return EncodingTriple(alpha=alpha, beta=beta, gamma=gamma)


# -- decoding --------------------------------------------------------------

def _invalid(stage, detail):
    return SamplerError("Invalid", detail, stage=stage)


def _rebuild_tree(t):
    """Plane tree of T1' from the interleaved degree word (preorder along
    the clockwise contour).  Returns (color, parent, children, gamma_of)."""
    alpha, beta, gamma = t.alpha, t.beta, t.gamma
    n = sum(alpha)
    if not alpha or not beta or not gamma:
        raise _invalid("TreeReconstructionFailed", "empty degree sequence")
    for seq in (alpha, beta, gamma):
        if any(not isinstance(x, int) or x < 1 for x in seq):
            raise _invalid("TreeReconstructionFailed",
                           "degrees must be positive integers")
    if len(beta) != len(gamma):
        raise _invalid("TreeReconstructionFailed",
                       "beta and gamma have different lengths")
    if sum(beta) != n or sum(gamma) != n:
        raise _invalid("TreeReconstructionFailed",
                       f"sums differ: {n}, {sum(beta)}, {sum(gamma)}")
    if len(alpha) + len(beta) != n + 1:
        raise _invalid("TreeReconstructionFailed",
                       "r + s + 1 does not match the edge count")
    if alpha[0] < 2:
        raise _invalid("TreeReconstructionFailed",
                       "u1 needs distinct neighbors u2 and u4")
    color = [True]                 # True = black; node 0 is u1
    parent = [None]
    children = [[]]
    gamma_of = [None]
    ia, ib = 1, 0
    stack = [[0, alpha[0]]]
    while stack:
        top = stack[-1]
        if top[1] == 0:
            stack.pop()
            continue
        top[1] -= 1
        v = top[0]
        c = len(color)
        color.append(not color[v])
        parent.append(v)
        children[v].append(c)
        children.append([])
        if color[c]:
            if ia >= len(alpha):
                raise _invalid("TreeReconstructionFailed",
                               "alpha exhausted before the contour closed")
            deg = alpha[ia]
            ia += 1
            gamma_of.append(None)
        else:
            if ib >= len(beta):
                raise _invalid("TreeReconstructionFailed",
                               "beta exhausted before the contour closed")
            deg = beta[ib]
            gamma_of.append(gamma[ib])
            ib += 1
        stack.append([c, deg - 1])
    if ia != len(alpha) or ib != len(beta):
        raise _invalid("TreeReconstructionFailed",
                       "degree sequences outlast the contour")
    return color, parent, children, gamma_of


def _closure_sweep(color, children, gamma_of):
    """Match T2' strands to slots along the clockwise contour.

    Each white vertex, at its last contour corner, pushes its outgoing T2'
    strand and then gamma-1 incoming slots; each black vertex, at its first
    corner, pops the adjacent strands as its T2' children and one slot as
    its T2' parent.  Strands left over attach to u3.  Returns
    (t2_parent, t2_in per black in pop order, slot_fill, leftover whites
    bottom to top)."""
    stack = []
    t2_parent = {}
    t2_in = {}
    slot_fill = {}
    todo = [(0, False)]
    while todo:
        v, done = todo.pop()
        if not done:
            if color[v] and v != 0:
                outs = []
                while stack and stack[-1][0] == "out":
                    outs.append(stack.pop()[1])
                if not stack:
                    raise _invalid("ClosureFailed",
                                   f"black vertex {v} finds no parent slot")
                _, wp, k = stack.pop()
                t2_parent[v] = wp
                slot_fill[(wp, k)] = v
                t2_in[v] = outs
                for w in outs:
                    t2_parent[w] = v
            todo.append((v, True))
            for c in reversed(children[v]):
                todo.append((c, False))
        elif not color[v]:
            stack.append(("out", v))
            for k in range(gamma_of[v] - 1):
                stack.append(("slot", v, k))
    if any(entry[0] != "out" for entry in stack):
        raise _invalid("ClosureFailed", "unmatched slots remain at u3")
    leftover = [entry[1] for entry in stack]
    return t2_parent, t2_in, slot_fill, leftover


def decode(t):
    """The pair (quadrangulation, even Schnyder decomposition) encoded by a
    triple, or SamplerError(kind="Invalid") with the failing stage."""
    color, parent, children, gamma_of = _rebuild_tree(t)
    t2_parent, t2_in, slot_fill, leftover = _closure_sweep(
        color, children, gamma_of)
    u2 = children[0][0]
    u4 = children[0][-1]
    if not leftover or leftover[0] != u2 or leftover[-1] != u4:
        raise _invalid("ClosureFailed",
                       "the external strands of u2 and u4 must reach u3")
    n_nodes = len(color)
    u3 = n_nodes                   # one extra vertex beyond the tree
    for w in leftover:
        t2_parent[w] = u3

    # assemble the map: edge e owns darts 2e (first->second) and 2e+1
    edges = []

    def new_edge(a, b):
        edges.append((a, b))
        return len(edges) - 1

    t1_e = [None] * n_nodes
    for v in range(1, n_nodes):
        t1_e[v] = new_edge(v, parent[v])
    t2_e = {}
    for v in range(n_nodes):
        if v == 0 or color[v]:
            continue
        t2_e[v] = new_edge(v, t2_parent[v])
    t2p_e = {}
    for v in range(1, n_nodes):
        if color[v]:
            t2p_e[v] = new_edge(v, t2_parent[v])

    rot = []
    for v in range(n_nodes):
        kids = [2 * t1_e[c] + 1 for c in children[v]]
        if v == 0:
            rot.append(kids)
        elif color[v]:
            ins = [2 * t2_e[w] + 1 for w in t2_in[v]]
            rot.append([2 * t1_e[v]] + ins + [2 * t2p_e[v]] + kids)
        else:
            slots = [2 * t2p_e[slot_fill[(v, k)]] + 1
                     for k in range(gamma_of[v] - 1)
                     if (v, k) in slot_fill]
            rot.append([2 * t1_e[v]] + kids + [2 * t2_e[v]] + slots)
    rot.append([2 * t2_e[w] + 1 for w in reversed(leftover)])

    twin = tuple(h ^ 1 for h in range(2 * len(edges)))
    origin = [None] * (2 * len(edges))
    next_cw = [None] * (2 * len(edges))
    for v, r in enumerate(rot):
        for i, h in enumerate(r):
            origin[h] = v
            next_cw[h] = r[(i + 1) % len(r)]
    try:
        m = PlaneMap(twin, tuple(next_cw), tuple(origin),
                     outer_dart=2 * t1_e[u2] + 1)
    except MapError as exc:
        raise _invalid("ClosureFailed",
                       f"completion is not a planar map: {exc.detail}") from exc
    try:
        ang = as_angulation(m, 4)
    except MapError as exc:
        raise _invalid("ValidationFailed",
                       f"completion is not a quadrangulation: {exc.detail}") \
            from exc
    if ang.external != (0, u2, u3, u4):
        raise _invalid("ValidationFailed",
                       f"outer face visits {ang.external}")

    masks = [0] * m.n_darts
    externals = {0, u2, u3, u4}
    for v in range(1, n_nodes):
        if v in externals:
            continue
        masks[2 * t1_e[v]] |= 1
        if color[v]:
            masks[2 * t2p_e[v]] |= 2
        else:
            masks[2 * t2_e[v]] |= 2
    rs = ReducedSchnyderDecomposition(host=ang, masks=tuple(masks))
    try:
        s = lambda_inverse(rs)
    except (EvenError, MapError) as exc:
        raise _invalid("ValidationFailed", exc.detail) from exc
    if not is_even_schnyder(s):
        raise _invalid("ValidationFailed", "reconstruction is not even")
    return ang, s


# -- sampling --------------------------------------------------------------

def _geometric(rng):
    k = 1
    while rng.getrandbits(1):
        k += 1
    return k


def sample_geometric_triple(n, rng):
    """A triple of independent 2-geometric sequences: alpha stops at the
    first partial sum >= n (r terms), beta and gamma have n - r + 1 terms."""
    if n < 1:
        raise SamplerError("BadParameter", f"n = {n} must be positive")
    alpha = []
    total = 0
    while total < n:
        a = _geometric(rng)
        alpha.append(a)
        total += a
    s = n - len(alpha)
    beta = tuple(_geometric(rng) for _ in range(s + 1))
    gamma = tuple(_geometric(rng) for _ in range(s + 1))
    return EncodingTriple(alpha=tuple(alpha), beta=tuple(beta), gamma=gamma)


def rejection_sample(n, rng, max_attempts=DEFAULT_MAX_ATTEMPTS):
    """Sample triples until one decodes; the result is uniform over valid
    pairs.  Returns ((Q, F), triple, attempts)."""
    for attempt in range(1, max_attempts + 1):
        t = sample_geometric_triple(n, rng)
        if sum(t.alpha) != n or sum(t.beta) != n or sum(t.gamma) != n:
            continue
        try:
            pair = decode(t)
        except SamplerError as exc:
            if exc.kind != "Invalid":
                raise
            continue
        return pair, t, attempt
    raise SamplerError("RejectionLimitExceeded",
                       f"no valid triple in {max_attempts} attempts at n={n}")


def _word_to_runs(word, n):
    """Geometric sequence from n coin flips (bit i = flip i; 0 ends a run)."""
    runs = []
    length = 0
    for i in range(n):
        length += 1
        if not word >> i & 1:
            runs.append(length)
            length = 0
    return runs


def rejection_sample_fast(n, rng, max_attempts=DEFAULT_MAX_ATTEMPTS):
    """Same accepted-pair distribution as rejection_sample, but each attempt
    draws its coin flips in three n-bit words: a geometric sequence sums to
    exactly n iff flip n-1 ends a run, and the run count is the number of
    zero flips, so the sum checks need only bit tests.  (The random stream
    is consumed in a different order, so individual draws differ from
    rejection_sample at equal seeds.)"""
    if n < 1:
        raise SamplerError("BadParameter", f"n = {n} must be positive")
    top = 1 << (n - 1)
    for attempt in range(1, max_attempts + 1):
        a = rng.getrandbits(n)
        if a & top:
            continue
        s = a.bit_count()          # zeros of a = r = n - s
        b = rng.getrandbits(n)
        if b & top or b.bit_count() != n - s - 1:
            continue
        c = rng.getrandbits(n)
        if c & top or c.bit_count() != n - s - 1:
            continue
        t = EncodingTriple(alpha=tuple(_word_to_runs(a, n)),
                           beta=tuple(_word_to_runs(b, n)),
                           gamma=tuple(_word_to_runs(c, n)))
        try:
            pair = decode(t)
        except SamplerError as exc:
            if exc.kind != "Invalid":
                raise
            continue
        return pair, t, attempt
    raise SamplerError("RejectionLimitExceeded",
                       f"no valid triple in {max_attempts} attempts at n={n}")


# -- reducibility counts ---------------------------------------------------

def part_full_counts(x):
    """(part, full) counts of reducible faces.

    For a triple: white indices with (beta_i, gamma_i) = (2, 2) are partly
    reducible, both >= 2 but not (2, 2) fully reducible.  For a decoded
    pair the counts cover all internal vertices of Q (black and white), via
    their degrees in the two spanning trees."""
    if isinstance(x, EncodingTriple):
        part = full = 0
        for b, g in zip(x.beta, x.gamma):
            if (b, g) == (2, 2):
                part += 1
            elif b >= 2 and g >= 2:
                full += 1
        return part, full
    ang, s = x
    m = ang.map
    t1, t2 = _tree_edge_sets(ang, lambda_(s))
    deg = [[0, 0] for _ in range(m.n_vertices)]
    for i, tree in enumerate((t1, t2)):
        for e in tree:
            deg[m.origin[e]][i] += 1
            deg[m.target(e)][i] += 1
    part = full = 0
    for v in ang.internal_vertices():
        d1, d2 = deg[v]
        if (d1, d2) == (2, 2):
            part += 1
        elif d1 >= 2 and d2 >= 2:
            full += 1
    return part, full


# -- exhaustive enumeration ------------------------------------------------

def _girth_at_least(nv, edges, d):
    adj = [[] for _ in range(nv)]
    for i, (a, b) in enumerate(edges):
        adj[a].append((b, i))
        adj[b].append((a, i))
    best = d
    for src in range(nv):
        dist = {src: 0}
        via = {src: -1}
        q = deque([src])
        while q:
            v = q.popleft()
            if 2 * dist[v] >= best:
                continue
            for w, i in adj[v]:
                if i == via[v]:
                    continue
                if w not in dist:
                    dist[w] = dist[v] + 1
                    via[w] = i
                    q.append(w)
                elif dist[v] + dist[w] + 1 < best:
                    return False
    return True


def _min_fill(boundary_len, d):
    """Fewest d-gons that can fill a disk with this boundary length, or
    None when the parity rules it out (interior edges count twice, so
    k*d - boundary_len must be even for some k)."""
    if d % 2 == 0 and boundary_len % 2 == 1:
        return None
    k = max(1, -(-boundary_len // d))
    if (k * d - boundary_len) % 2:
        k += 1
    return k


def _assemble_map(edges, faces):
    n_darts = 2 * len(edges)
    face_next = [None] * n_darts
    for f in faces:
        for i, h in enumerate(f):
            face_next[h] = f[(i + 1) % len(f)]
    origin = [None] * n_darts
    for e, (a, b) in enumerate(edges):
        origin[2 * e] = a
        origin[2 * e + 1] = b
    twin = tuple(h ^ 1 for h in range(n_darts))
    next_cw = tuple(face_next[h ^ 1] for h in range(n_darts))
    return PlaneMap(twin, next_cw, tuple(origin), outer_dart=0)


def _face_walks(d, nv, edges, region):
    """All ways to reveal the d-gon adjacent to the first boundary dart.

    The region boundary is a simple cycle of darts with the region on the
    left.  The new face starts with the peeled dart; every later step either
    advances along the boundary, opens a chord to a strictly later boundary
    vertex, or inserts a fresh vertex.  Yields (face_darts, new_edges,
    new_nv, subregions); subregions are the pieces cut off between
    consecutive boundary touches."""
    b0 = region[0]
    path = region[1:]
    pos_v = [edges[h // 2][h % 2] for h in path]       # tails of path darts
    u = edges[b0 // 2][b0 % 2]
    w = edges[b0 // 2][1 - b0 % 2]
    pos_v.append(u)
    last = len(pos_v) - 1                              # position of u
    edge_pairs = {frozenset(e) for e in edges}

    def walk(pos, cur, touch, steps, pending, face, news, subs, new_nv):
        if steps == 0:
            if pos == last:
                yield list(face), list(news), new_nv, [list(r) for r in subs]
            return
        # advance along the boundary
        if pos is not None and pos < last and (pos + 1 < last or steps == 1):
            face.append(path[pos])
            yield from walk(pos + 1, pos_v[pos + 1], pos + 1, steps - 1,
                            pending, face, news, subs, new_nv)
            face.pop()
        # chord to a later boundary vertex
        lo = (pos if pos is not None else touch) + 1
        for q in range(lo, last + 1):
            if (q == last) != (steps == 1):
                continue
            tv = pos_v[q]
            pair = frozenset((cur, tv))
            if pair in edge_pairs:
                continue           # a parallel edge would be a 2-cycle
            eid = len(edges) + len(news)
            news.append((cur, tv))
            edge_pairs.add(pair)
            h = 2 * eid
            face.append(h)
            sub = path[touch:q] + [g ^ 1 for g in reversed(pending + [h])]
            subs.append(sub)
            yield from walk(q, tv, q, steps - 1, [], face, news, subs, new_nv)
            subs.pop()
            face.pop()
            edge_pairs.discard(pair)
            news.pop()
        # fresh vertex
        if steps >= 2:
            eid = len(edges) + len(news)
            news.append((cur, new_nv))
            h = 2 * eid
            face.append(h)
            yield from walk(None, new_nv, touch, steps - 1, pending + [h],
                            face, news, subs, new_nv + 1)
            face.pop()
            news.pop()

    yield from walk(0, w, 0, d - 1, [], [], [], [], nv)


def enumerate_angulations(d, max_faces):
    """All rooted d-angulations of girth d with 2..max_faces faces.

    Rooted means a marked outer dart; each rooted map appears exactly once.
    Peeling search: starting from the bare d-cycle, repeatedly reveal the
    face adjacent to the first boundary dart of the oldest unexplored
    region.  The revealed face determines the peeling history, so distinct
    final maps come from distinct branches; partial maps whose graph girth
    drops below d are pruned (faces only ever add edges, so girth never
    recovers)."""
    if d < 3:
        raise SamplerError("BadParameter", "d must be at least 3")
    nv0 = d
    edges0 = [(i, (i + 1) % d) for i in range(d)]
    outer = [2 * i for i in range(d)]
    inner = [2 * i + 1 for i in reversed(range(d))]

    def fill(nv, edges, faces, regions):
        if not regions:
            yield _assemble_map(edges, faces)
            return
        budget = max_faces - len(faces)
        need = 0
        for r in regions:
            k = _min_fill(len(r), d)
            if k is None:
                return
            need += k
        if need > budget:
            return
        region = regions[0]
        for face, news, new_nv, subs in _face_walks(d, nv, edges, region):
            cand = edges + news
            if news and not _girth_at_least(new_nv, cand, d):
                continue
            yield from fill(new_nv, cand, faces + [[region[0]] + face],
                            regions[1:] + [s for s in subs if s])

    if max_faces >= 2:
        yield from fill(nv0, list(edges0), [outer], [inner])


def enumerate_pairs(n, cap=ENUMERATION_CAP):
    """All pairs (rooted girth-4 quadrangulation with n faces, even Schnyder
    decomposition), each exactly once."""
    if n > cap:
        raise SamplerError("CapExceeded",
                           f"n = {n} exceeds the enumeration cap {cap}")
    out = []
    for m in enumerate_angulations(4, n):
        if m.n_faces != n:
            continue
        ang = as_angulation(m, 4)
        for o in lattice_enumerate(ang):
            if is_even(o):
                out.append((ang, phi(psi_inverse(o))))
    return out


def pair_code(ang, s):
    """Canonical form of a rooted pair: the rooted map code together with
    the color masks read in code order."""
    m = ang.map
    label = {m.outer_dart: 0}
    order = [m.outer_dart]
    q = deque([m.outer_dart])
    while q:
        h = q.popleft()
        for g in (m.next_cw[h], m.twin[h]):
            if g not in label:
                label[g] = len(order)
                order.append(g)
                q.append(g)
    return (tuple(label[m.next_cw[h]] for h in order),
            tuple(label[m.twin[h]] for h in order),
            tuple(s.masks[h] for h in order))


# -- the concentration experiment ------------------------------------------

@dataclass(frozen=True)
class SampleStats:
    """Per-sample reducibility counts and reduced grid sizes, with summary
    means and normal-approximation confidence half-widths."""

    n: int
    samples: int
    accepted: int
    attempts: int
    seed: int
    part_counts: tuple
    full_counts: tuple
    reduced_width: tuple
    reduced_height: tuple
    summary: dict = field(compare=False)

    def to_json_obj(self):
        return {"n": self.n, "samples": self.samples,
                "accepted": self.accepted, "attempts": self.attempts,
                "seed": self.seed,
                "part_counts": list(self.part_counts),
                "full_counts": list(self.full_counts),
                "reduced_width": list(self.reduced_width),
                "reduced_height": list(self.reduced_height),
                "summary": self.summary}

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["index", "part", "full",
                         "reduced_width", "reduced_height"])
        for i in range(self.accepted):
            writer.writerow([i, self.part_counts[i], self.full_counts[i],
                             self.reduced_width[i], self.reduced_height[i]])
        return buf.getvalue()


def _summarize(values, n):
    k = len(values)
    mean = sum(values) / k
    var = sum((x - mean) ** 2 for x in values) / (k - 1) if k > 1 else 0.0
    half = 1.96 * (var / k) ** 0.5
    return {"mean": mean, "std": var ** 0.5, "half_width": half,
            "mean_over_n": mean / n}


def sample_stream_rng(seed, index):
    """The independent random stream of one sample of one experiment."""
    return random.Random(f"schnyder-kit:{seed}:{index}")


def _one_sample(args):
    n, seed, index, max_attempts = args
    rng = sample_stream_rng(seed, index)
    (ang, s), t, attempts = rejection_sample_fast(n, rng, max_attempts)
    part, full = part_full_counts((ang, s))
    from . import duality, drawing
    gd = drawing.orthogonal_drawing(duality.chi(s))
    rc = drawing.balanced_reduction_choice(drawing.classify_faces(gd))
    red = drawing.apply_reduction(gd, rc)
    width = max(x for x, _ in red.coords.values()) + 1
    height = max(y for _, y in red.coords.values()) + 1
    return index, part, full, width, height, attempts


def concentration_experiment(n, sample_count, seed,
                             max_attempts=DEFAULT_MAX_ATTEMPTS, jobs=1):
    """Accepted-sample statistics of part/full counts (all internal
    vertices, both colors) and of the balanced-reduction grid dimensions.
    Per-sample streams derive from (seed, index), so results do not depend
    on evaluation order or parallelism."""
    tasks = [(n, seed, i, max_attempts) for i in range(sample_count)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = sorted(pool.map(_one_sample, tasks, chunksize=8))
    else:
        rows = [_one_sample(t) for t in tasks]
    parts = tuple(r[1] for r in rows)
    fulls = tuple(r[2] for r in rows)
    widths = tuple(r[3] for r in rows)
    heights = tuple(r[4] for r in rows)
    attempts = sum(r[5] for r in rows)
    summary = {"part": _summarize(parts, n),
               "full": _summarize(fulls, n),
               "reduced_width": _summarize(widths, n),
               "reduced_height": _summarize(heights, n),
               "acceptance_rate": sample_count / attempts}
    return SampleStats(n=n, samples=sample_count, accepted=sample_count,
                       attempts=attempts, seed=seed, part_counts=parts,
                       full_counts=fulls, reduced_width=widths,
                       reduced_height=heights, summary=summary)
