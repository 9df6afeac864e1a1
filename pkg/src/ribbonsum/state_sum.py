"""Invariant-level state sum of a framed graph.

The complex has one copy of A(<1>) = Z per internal edge in degree 1 and
A(<val(v)-1>) = Z^(val(v)-1) per vertex in degree 0.  The differential sends
an edge to the difference of the arc maps of its two incidence duals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exact_algebra import (ZZ, BoundedComplex, ChainMap, HomologySummary, Matrix, Ring, cone,
                            homology)
from .graph_core import FramedGraph, open_decomposition, incidence_dual, surface_invariants
from .paracyclic import ParaMorphism, arc_map, interstice_dual
from .surface_model import relative_homology


@dataclass(frozen=True)
class CoefficientObject:
    """Graded free module E = H(k): degree -> rank, over a ring."""

    ring: Ring = ZZ
    ranks: Tuple[Tuple[int, int], ...] = ((0, 1),)
    periodic: bool = False

    def rank_map(self) -> Dict[int, int]:
        return {d: r for d, r in self.ranks if r}

    def apply(self, h: HomologySummary) -> HomologySummary:
        out = h.tensor_graded(self.rank_map())
        return out.folded() if self.periodic else out


@dataclass
class StateSumComplex:
    graph: FramedGraph
    edges: Tuple[Tuple[str, str], ...]
    vertex_blocks: Dict[str, Tuple[int, int]]  # vertex -> (start, size)
    M: Matrix

    @property
    def vertex_rank(self) -> int:
        return self.M.rows

    def complex(self, ring: Ring = ZZ) -> BoundedComplex:
        return BoundedComplex({1: len(self.edges), 0: self.vertex_rank}, {1: self.M.change_ring(ring)}, ring)


def _vertex_blocks(G: FramedGraph):
    blocks = {}
    start = 0
    for v, hs in G.vertices.items():
        blocks[v] = (start, len(hs) - 1)
        start += len(hs) - 1
    return blocks, start


def build_state_sum(G: FramedGraph) -> StateSumComplex:
    blocks, total = _vertex_blocks(G)
    rows = [[0] * len(G.edges) for _ in range(total)]
    for j, e in enumerate(G.edges):
        for h, sign in ((e[0], 1), (e[1], -1)):
            col = arc_map(incidence_dual(G, e, h))
            start, size = blocks[G.vertex_of[h]]
            for i in range(size):
                rows[start + i][j] += sign * col[i, 0]
    return StateSumComplex(G, G.edges, blocks, Matrix(ZZ, total, len(G.edges), rows))


def invariant_homology(G: FramedGraph, E: Optional[CoefficientObject] = None) -> HomologySummary:
    E = E or CoefficientObject()
    h = homology(build_state_sum(G).complex(E.ring), E.ring)
    return E.apply(h)


@dataclass
class VerifyReport:
    graph: str
    side_a: str
    side_b: str
    ok: bool
    stable: bool
    warnings: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.stable:
            return "skip-unstable"
        return "pass" if self.ok else "fail"


def _render_pair(h: HomologySummary, degs, prefix, periodic):
    if periodic:
        d = h.as_dict()
        ring = h.ring
        return "%s_even=%s; %s_odd=%s" % (prefix, ring.fmt_module(*d.get(0, (0, ()))),
                                           prefix, ring.fmt_module(*d.get(1, (0, ()))))
    return h.render(degs, prefix)


def verify_main(G: FramedGraph, E: Optional[CoefficientObject] = None) -> Tuple[bool, VerifyReport]:
    """State sum in degrees (0, 1) against H_*(S, M) in degrees (1, 2)."""
    E = E or CoefficientObject()
    side_a = invariant_homology(G, E)
    rel = relative_homology(G, E.ring)
    side_b = E.apply(rel.shifted(-1))
    ok = side_a == side_b
    stable = surface_invariants(G).stable
    warnings = [] if stable else ["graph is unstable; equality is not guaranteed"]
    spread = sorted({d + e for d in (0, 1) for e in E.rank_map()}) or [0, 1]
    if E.periodic:
        ra = _render_pair(side_a, None, "HP", True)
        rb = _render_pair(side_b, None, "H(S,M)", True)
    else:
        ra = side_a.render(spread, "H")
        rb = E.apply(rel).render([d + 1 for d in spread], "H")
    return ok, VerifyReport(G.name, ra, rb, ok, stable, warnings)


# ---------------------------------------------------------------------------
# localization


@dataclass
class LocalizationReport:
    inclusion_is_chain_map: bool
    collapse_is_chain_map: bool
    composite_vanishes: bool
    cone_homology: HomologySummary
    retract_homology: HomologySummary

    @property
    def ok(self) -> bool:
        return (self.inclusion_is_chain_map and self.collapse_is_chain_map and self.composite_vanishes
                and self.cone_homology == self.retract_homology)


def _collapse_lift(G: FramedGraph, R: FramedGraph, v: str) -> ParaMorphism:
    """Inclusion H_R(v) -> H_G(v) as a monotone lift."""
    k = G.valency(v)
    vals = []
    wraps = 0
    prev = None
    for h in R.vertices[v]:
        x = G.position[h]
        if prev is not None and x + wraps * k < prev:
            wraps += 1
        prev = x + wraps * k
        vals.append(prev)
    return ParaMorphism(R.valency(v) - 1, k - 1, tuple(vals))


def localization_maps(G: FramedGraph, verts):
    dec = open_decomposition(G, verts)
    if dec.empty_retract_vertices:
        raise ValueError("retract would have empty vertices %s" % list(dec.empty_retract_vertices))
    SG, SS, SR = build_state_sum(G), build_state_sum(dec.sub), build_state_sum(dec.retract)
    CG, CS, CR = SG.complex(), SS.complex(), SR.complex()

    eidx = {e: j for j, e in enumerate(SG.edges)}
    inc_e = [[0] * len(SS.edges) for _ in SG.edges]
    for j, e in enumerate(SS.edges):
        inc_e[eidx[e]][j] = 1
    inc_v = [[0] * SS.vertex_rank for _ in range(SG.vertex_rank)]
    for v, (s, size) in SS.vertex_blocks.items():
        s0, size0 = SG.vertex_blocks[v]
        assert size == size0
        for i in range(size):
            inc_v[s0 + i][s + i] = 1
    inclusion = ChainMap(CS, CG, {
        1: Matrix(ZZ, len(SG.edges), len(SS.edges), inc_e),
        0: Matrix(ZZ, SG.vertex_rank, SS.vertex_rank, inc_v),
    })

    ridx = {e: j for j, e in enumerate(SR.edges)}
    col_e = [[0] * len(SG.edges) for _ in SR.edges]
    for e, j in eidx.items():
        if e in ridx:
            col_e[ridx[e]][j] = 1
    col_v = [[0] * SG.vertex_rank for _ in range(SR.vertex_rank)]
    for v, (s, size) in SR.vertex_blocks.items():
        s0, size0 = SG.vertex_blocks[v]
        block = arc_map(interstice_dual(_collapse_lift(G, dec.retract, v)))
        for i in range(size):
            for j in range(size0):
                col_v[s + i][s0 + j] = block[i, j]
    collapse = ChainMap(CG, CR, {
        1: Matrix(ZZ, len(SR.edges), len(SG.edges), col_e),
        0: Matrix(ZZ, SR.vertex_rank, SG.vertex_rank, col_v),
    })
    return dec, inclusion, collapse


def localization_check(G: FramedGraph, verts) -> Tuple[bool, LocalizationReport]:
    dec, inclusion, collapse = localization_maps(G, verts)
    inc_ok = inclusion.is_chain_map()
    col_ok = collapse.is_chain_map()
    comp = collapse.compose(inclusion)
    zero = all(m.is_zero() for m in comp.comps.values())
    cone_h = homology(cone(inclusion)) if inc_ok else HomologySummary(ZZ, ())
    ret_h = homology(collapse.target)
    rep = LocalizationReport(inc_ok, col_ok, zero, cone_h, ret_h)
    return rep.ok, rep
