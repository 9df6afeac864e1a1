"""Framed ribbon graphs stored as half-edge structures.

A vertex carries its half-edges in counterclockwise order; the stored list is
rotated so that it starts at the smallest id, and framing offsets are read
relative to that rotation.  Each internal edge is an ordered pair whose first
half-edge is called positive.

Framing model: the edge {h, h'} carries a two-point torsor Z -> {h, h'}
(even integers lie over the positive half-edge).  For h at position p of a
vertex of valency k, the incidence map H(v) -> {h, h'} sending h to itself
and every other half-edge to h' is lifted to the monotone map

    x -> label(h) - 1  for x < p,   label(h)  at p,   label(h) + 1  for x > p,

plus the framing offset of h.  Lifts of one incidence map differ by whole
periods of the edge torsor, so offsets are even.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .paracyclic import ParaMorphism, interstice_dual


class InvalidGraph(ValueError):
    pass


class ContractionError(ValueError):
    pass


class WalkError(ValueError):
    pass


def _rotate_min(seq):
    if not seq:
        return tuple(seq)
    k = min(range(len(seq)), key=lambda i: seq[i])
    return tuple(seq[k:]) + tuple(seq[:k])


class FramedGraph:
    def __init__(self, vertices: Mapping[str, Sequence[str]], edges: Iterable[Sequence[str]],
                 framing: Optional[Mapping[str, int]] = None, name: str = ""):
        self.name = name
        verts: Dict[str, Tuple[str, ...]] = {}
        owner: Dict[str, str] = {}
        for v, hs in vertices.items():
            v = str(v)
            hs = tuple(str(h) for h in hs)
            if v in verts:
                raise InvalidGraph("duplicate vertex id %r" % v)
            if not hs:
                raise InvalidGraph("vertex %r has valency 0" % v)
            for h in hs:
                if h in owner:
                    raise InvalidGraph("half-edge %r appears at vertices %r and %r" % (h, owner[h], v))
                owner[h] = v
            verts[v] = _rotate_min(hs)
        self.vertices = dict(sorted(verts.items()))
        self.vertex_of = owner

        tau = {h: h for h in owner}
        pairs = []
        for e in edges:
            e = tuple(str(h) for h in e)
            if len(e) != 2:
                raise InvalidGraph("edge %r is not a pair" % (e,))
            a, b = e
            for h in e:
                if h not in owner:
                    raise InvalidGraph("edge %r uses unknown half-edge %r" % (e, h))
            if a == b:
                raise InvalidGraph("edge %r pairs a half-edge with itself" % (e,))
            if tau[a] != a or tau[b] != b:
                raise InvalidGraph("half-edge in edge %r is already paired" % (e,))
            tau[a], tau[b] = b, a
            pairs.append((a, b))
        self.tau = tau
        self.edges = tuple(pairs)
        self._edge_of = {}
        for e in self.edges:
            self._edge_of[e[0]] = e
            self._edge_of[e[1]] = e

        fr = {}
        for h, o in (framing or {}).items():
            h = str(h)
            if h not in owner:
                raise InvalidGraph("framing given for unknown half-edge %r" % h)
            if isinstance(o, bool) or int(o) != o:
                raise InvalidGraph("framing offset of %r must be an integer" % h)
            if int(o) % 2:
                raise InvalidGraph("framing offset of %r is odd (edge torsors have period 2)" % h)
            if int(o):
                fr[h] = int(o)
        self.framing = fr
        self.position = {h: i for hs in self.vertices.values() for i, h in enumerate(hs)}

    # -- basic queries ---------------------------------------------------

    @property
    def halfedges(self):
        return sorted(self.vertex_of)

    def valency(self, v: str) -> int:
        return len(self.vertices[v])

    def is_leg(self, h: str) -> bool:
        return self.tau[h] == h

    def legs(self) -> List[str]:
        return [h for hs in self.vertices.values() for h in hs if self.is_leg(h)]

    def edge_of(self, h: str) -> Tuple[str, str]:
        if h not in self._edge_of:
            raise InvalidGraph("half-edge %r is not part of an internal edge" % h)
        return self._edge_of[h]

    def label(self, h: str) -> int:
        """0 for the positive half-edge of its edge, 1 for the negative one."""
        return 0 if self.edge_of(h)[0] == h else 1

    def offset(self, h: str) -> int:
        return self.framing.get(h, 0)

    def components(self) -> List[List[str]]:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.edges:
            ra, rb = find(self.vertex_of[a]), find(self.vertex_of[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: Dict[str, List[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [sorted(g) for _, g in sorted(groups.items())]

    def with_framing(self, framing: Mapping[str, int]) -> "FramedGraph":
        return FramedGraph(self.vertices, self.edges, framing, self.name)

    def with_edges(self, edges) -> "FramedGraph":
        return FramedGraph(self.vertices, edges, self.framing, self.name)

    def relabeled(self, hmap: Mapping[str, str], vmap: Optional[Mapping[str, str]] = None) -> "FramedGraph":
        """Rename half-edges (and vertices).  Offsets are carried along and
        re-expressed for the new canonical rotation, so the framing is kept."""
        vmap = vmap or {}
        verts = {vmap.get(v, v): [hmap.get(h, h) for h in hs] for v, hs in self.vertices.items()}
        edges = [(hmap.get(a, a), hmap.get(b, b)) for a, b in self.edges]
        fr = {hmap.get(h, h): o for h, o in self.framing.items()}
        return from_rotated(verts, edges, fr, self.name)

    def key(self):
        return (self.vertices, self.edges, tuple(sorted(self.framing.items())))

    def __eq__(self, other):
        return isinstance(other, FramedGraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "FramedGraph(%r, vertices=%r, edges=%r, framing=%r)" % (
            self.name, self.vertices, list(self.edges), self.framing)


def from_rotated(vertices: Mapping[str, Sequence[str]], edges, framing: Optional[Mapping[str, int]] = None,
                 name: str = "") -> FramedGraph:
    """Build a graph whose offsets are given relative to the listed rotations
    (rather than the canonical one)."""
    framing = dict(framing or {})
    fr = {}
    for v, hs in vertices.items():
        hs = [str(h) for h in hs]
        k = min(range(len(hs)), key=lambda i: hs[i]) if hs else 0
        for i, h in enumerate(hs):
            # moving a half-edge from the front to the back adds one period
            fr[h] = framing.get(h, 0) + (2 if i < k else 0)
    return FramedGraph(vertices, edges, fr, name)


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class ComponentSurface:
    vertices: Tuple[str, ...]
    genus: int
    boundary_count: int
    interior_marked: int
    boundary_marked: Tuple[int, ...]
    euler_char: int
    quotient_euler_char: int
    stable: bool

    @property
    def marked_points(self) -> int:
        return self.interior_marked + sum(self.boundary_marked)


@dataclass(frozen=True)
class SurfaceReport:
    components: Tuple[ComponentSurface, ...]

    @property
    def stable(self) -> bool:
        return all(c.stable for c in self.components)

    def signature(self):
        """Rotation- and relabeling-invariant summary."""
        return tuple(sorted((c.genus, c.boundary_count, c.interior_marked, tuple(sorted(c.boundary_marked)))
                            for c in self.components))

    def render(self) -> str:
        lines = []
        for i, c in enumerate(self.components):
            lines.append("component %d: genus=%d boundary=%d interior_marked=%d boundary_marked=%s chi=%d %s"
                         % (i, c.genus, c.boundary_count, c.interior_marked, list(c.boundary_marked),
                            c.euler_char, "stable" if c.stable else "unstable"))
        return "\n".join(lines) if lines else "empty graph"


def corner_classes(G: FramedGraph) -> Dict[Tuple[str, int], Tuple[str, int]]:
    """Union-find representative for every corner (vertex, i); corner i sits
    between the i-th and (i+1)-th half-edge."""
    parent = {(v, i): (v, i) for v, hs in G.vertices.items() for i in range(len(hs))}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for a, b in G.edges:
        union(corner_before(G, a), corner_after(G, b))
        union(corner_after(G, a), corner_before(G, b))
    return {c: find(c) for c in parent}


def corner_after(G: FramedGraph, h: str) -> Tuple[str, int]:
    v = G.vertex_of[h]
    return (v, G.position[h])


def corner_before(G: FramedGraph, h: str) -> Tuple[str, int]:
    v = G.vertex_of[h]
    return (v, (G.position[h] - 1) % G.valency(v))


def surface_invariants(G: FramedGraph) -> SurfaceReport:
    cls = corner_classes(G)
    legs = G.legs()
    # along the boundary: leg arc L ends at the marked point after L, which
    # continues with the unique leg whose preceding corner is in that class
    before_leg = {}
    for L in legs:
        c = cls[corner_before(G, L)]
        if c in before_leg:
            raise InvalidGraph("corner class %r starts two boundary arcs" % (c,))
        before_leg[c] = L
    nxt = {}
    for L in legs:
        c = cls[corner_after(G, L)]
        if c not in before_leg:
            raise InvalidGraph("boundary arc after leg %r does not continue" % L)
        nxt[L] = before_leg[c]

    comps = []
    for verts in G.components():
        vs = set(verts)
        hs = [h for v in verts for h in G.vertices[v]]
        n_edges = sum(1 for h in hs if not G.is_leg(h)) // 2
        c_legs = [h for h in hs if G.is_leg(h)]
        classes = {cls[(v, i)] for v in verts for i in range(G.valency(v))}
        boundary_classes = {cls[corner_after(G, L)] for L in c_legs}
        seen = set()
        circles = []
        for L in sorted(c_legs):
            if L in seen:
                continue
            k = 0
            x = L
            while x not in seen:
                seen.add(x)
                k += 1
                x = nxt[x]
            circles.append(k)
        b = len(circles)
        m_total = len(classes)
        chi_quot = 1 - (n_edges + len(c_legs)) + len(vs)
        chi = chi_quot + m_total - 1
        twice_g = 2 - b - chi
        if twice_g < 0 or twice_g % 2:
            raise InvalidGraph("inconsistent Euler characteristic %d with %d boundary circles" % (chi, b))
        g = twice_g // 2
        interior = m_total - len(boundary_classes)
        stable = not (g == 0 and b == 0 and m_total < 2)
        comps.append(ComponentSurface(tuple(verts), g, b, interior, tuple(sorted(circles)), chi, chi_quot, stable))
    return SurfaceReport(tuple(comps))


# ---------------------------------------------------------------------------
# edge contraction


def resolve_edge(G: FramedGraph, e) -> Tuple[str, str]:
    """Accept an ordered pair, a half-edge id, or 'e<k>' (1-based edge index)."""
    if isinstance(e, (tuple, list)):
        e = tuple(str(h) for h in e)
        if e in G.edges:
            return e
        if (e[1], e[0]) in G.edges:
            return (e[1], e[0])
        raise InvalidGraph("no edge %r" % (e,))
    e = str(e)
    if e in G.vertex_of:
        return G.edge_of(e)
    if e.startswith("e") and e[1:].isdigit():
        k = int(e[1:])
        if 1 <= k <= len(G.edges):
            return G.edges[k - 1]
    raise InvalidGraph("no edge named %r" % e)


def contract_edge(G: FramedGraph, e) -> FramedGraph:
    a, b = resolve_edge(G, e)
    v, w = G.vertex_of[a], G.vertex_of[b]
    if v == w:
        raise ContractionError("edge (%s, %s) is a loop; contraction needs two distinct endpoints" % (a, b))
    hv, hw = G.vertices[v], G.vertices[w]
    p, q = G.position[a], G.position[b]
    if len(hv) + len(hw) - 2 == 0:
        raise ContractionError("contracting (%s, %s) would leave a vertex of valency 0" % (a, b))
    v_part = [hv[(p + 1 + i) % len(hv)] for i in range(len(hv) - 1)]
    w_part = [hw[(q + 1 + i) % len(hw)] for i in range(len(hw) - 1)]

    def phi(h):
        return G.label(h) + G.offset(h)

    shift_w = phi(a) - phi(b) - 1
    fr = dict(G.framing)
    for h in (a, b):
        fr.pop(h, None)
    # offsets relative to the spliced order; keeps every winding number
    for h in v_part:
        fr[h] = G.offset(h) - (2 if G.position[h] > p else 0)
    for h in w_part:
        fr[h] = G.offset(h) + (2 if G.position[h] < q else 0) + shift_w
    verts = {x: hs for x, hs in G.vertices.items() if x not in (v, w)}
    rel = {h: fr.get(h, 0) for hs in verts.values() for h in hs}
    merged = v_part + w_part
    verts[v] = merged
    for h in merged:
        rel[h] = fr[h]
    edges = [x for x in G.edges if x != (a, b)]
    return from_rotated(verts, edges, rel, G.name)


def lift_walk_through_contraction(G: FramedGraph, e, walk: Sequence[str]) -> List[str]:
    """Rewrite a closed walk of contract_edge(G, e) as a closed walk of G."""
    a, b = resolve_edge(G, e)
    v, w = G.vertex_of[a], G.vertex_of[b]
    out = []
    k = len(walk)
    for t in range(k):
        h_in = G.tau[walk[t - 1]]  # arriving half-edge
        h_out = walk[t]
        side_in, side_out = G.vertex_of[h_in], G.vertex_of[h_out]
        if side_in == v and side_out == w:
            out.append(a)
        elif side_in == w and side_out == v:
            out.append(b)
        out.append(h_out)
    return out


# ---------------------------------------------------------------------------
# open subgraphs


@dataclass
class OpenDecomposition:
    sub: FramedGraph
    complement: FramedGraph
    closure: FramedGraph
    retract: FramedGraph
    empty_retract_vertices: Tuple[str, ...] = field(default_factory=tuple)


def induced_open(G: FramedGraph, verts: Iterable[str], name: str = "") -> FramedGraph:
    vs = set(verts)
    unknown = vs - set(G.vertices)
    if unknown:
        raise InvalidGraph("unknown vertices %s" % sorted(unknown))
    vmap = {v: hs for v, hs in G.vertices.items() if v in vs}
    hs = {h for v in vs for h in G.vertices[v]}
    edges = [(a, b) for a, b in G.edges if a in hs and b in hs]
    fr = {h: o for h, o in G.framing.items() if h in hs}
    return FramedGraph(vmap, edges, fr, name)


def open_decomposition(G: FramedGraph, verts: Iterable[str]) -> OpenDecomposition:
    vs = set(verts)
    sub = induced_open(G, vs, G.name + "'")
    rest = [v for v in G.vertices if v not in vs]
    comp = induced_open(G, rest, G.name + "''")
    cut = [h for h in comp.halfedges if comp.is_leg(h) and not G.is_leg(h)]

    # closure: each cut half-edge gets its partner back on a new 1-valent vertex
    cverts = dict(comp.vertices)
    cedges = list(comp.edges)
    cfr = dict(comp.framing)
    for h in cut:
        partner = G.tau[h]
        cverts["closure:" + partner] = (partner,)
        cedges.append(G.edge_of(h))
        if G.offset(partner):
            cfr[partner] = G.offset(partner)
    closure = FramedGraph(cverts, cedges, cfr, G.name + "''+")

    # retract: drop the cut half-edges, keeping the relative order of the rest
    rverts = {}
    empty = []
    rfr = {}
    cutset = set(cut)
    for v, hs in comp.vertices.items():
        kept = [h for h in hs if h not in cutset]
        if kept:
            rverts[v] = kept
            for h in kept:
                rfr[h] = comp.offset(h)
        else:
            empty.append(v)
    retract = from_rotated(rverts, comp.edges, rfr, G.name + "''-")
    return OpenDecomposition(sub, comp, closure, retract, tuple(empty))


# ---------------------------------------------------------------------------
# framing lifts, winding numbers, incidence duals


def edge_lift(G: FramedGraph, h: str) -> ParaMorphism:
    """Framed lift of the incidence map H(v) -> {h, tau h}, as <k-1> -> <1>."""
    lab = G.label(h)
    v = G.vertex_of[h]
    k = G.valency(v)
    p = G.position[h]
    o = G.offset(h)
    vals = tuple(o + (lab - 1 if x < p else (lab if x == p else lab + 1)) for x in range(k))
    return ParaMorphism(k - 1, 1, vals)


def incidence_dual(G: FramedGraph, e, h: str) -> ParaMorphism:
    """Interstice dual of the framed incidence lift: <1> -> <val - 1>."""
    e = resolve_edge(G, e)
    if h not in e:
        raise InvalidGraph("half-edge %r does not belong to edge %r" % (h, e))
    if G.is_leg(h):
        raise InvalidGraph("half-edge %r is external" % h)
    return interstice_dual(edge_lift(G, h))


def winding_number(G: FramedGraph, walk: Sequence[str], initial_lift: Optional[int] = None) -> int:
    """Transport a lift of walk[0] around the closed walk; returns the number
    of vertex-torsor periods gained."""
    walk = [str(h) for h in walk]
    if not walk:
        raise WalkError("empty walk")
    for h in walk:
        if h not in G.vertex_of:
            raise WalkError("unknown half-edge %r" % h)
        if G.is_leg(h):
            raise WalkError("walk leaves through leg %r" % h)
    for t, h in enumerate(walk):
        nxt = walk[(t + 1) % len(walk)]
        if G.vertex_of[G.tau[h]] != G.vertex_of[nxt]:
            raise WalkError("walk is not closed: %r does not lead to the vertex of %r" % (h, nxt))
    h0 = walk[0]
    k0 = G.valency(G.vertex_of[h0])
    start = G.position[h0] if initial_lift is None else initial_lift
    if (start - G.position[h0]) % k0:
        raise WalkError("initial lift %d does not lie over %r" % (start, h0))
    x = start
    for t, h in enumerate(walk):
        y = edge_lift(G, h)(x)
        th = G.tau[h]
        kw = G.valency(G.vertex_of[th])
        # lift of tau(h) one step below in the edge torsor
        s2 = y - 1 - G.label(th) - G.offset(th)
        if s2 % 2:
            raise WalkError("inconsistent framing parity on edge %r" % (G.edge_of(h),))
        x = G.position[th] + kw * (s2 // 2)
        nh = walk[(t + 1) % len(walk)]
        x += (G.position[nh] - G.position[th]) % kw
    return (x - start) // k0

