"""Cellular model of the quotient S/M, used as an independent oracle.

One 0-cell per component, a 1-cell for every internal edge and every leg,
and a 2-cell for every vertex, attached along its half-edges in cyclic order.
All 1-cells are loops, so the first boundary map vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .exact_algebra import ZZ, BoundedComplex, HomologySummary, Matrix, Ring, homology
from .graph_core import FramedGraph


@dataclass(frozen=True)
class CWModel:
    zero_cells: int
    one_cells: Tuple[str, ...]   # edge names "a|b" and leg ids
    two_cells: Tuple[str, ...]   # vertex ids
    boundary2: Matrix

    def chain_complex(self, ring: Ring = ZZ) -> BoundedComplex:
        return BoundedComplex(
            {0: self.zero_cells, 1: len(self.one_cells), 2: len(self.two_cells)},
            {2: self.boundary2.change_ring(ring)},
            ring,
        )


def build_cw(G: FramedGraph) -> CWModel:
    cells = ["%s|%s" % e for e in G.edges] + sorted(G.legs())
    index = {}
    for i, e in enumerate(G.edges):
        index[e[0]] = (i, 1)
        index[e[1]] = (i, -1)
    for j, leg in enumerate(sorted(G.legs())):
        index[leg] = (len(G.edges) + j, 1)
    verts = list(G.vertices)
    rows = [[0] * len(verts) for _ in cells]
    for c, v in enumerate(verts):
        for h in G.vertices[v]:
            i, sgn = index[h]
            rows[i][c] += sgn
    return CWModel(len(G.components()), tuple(cells), tuple(verts), Matrix(ZZ, len(cells), len(verts), rows))


def relative_homology(G: FramedGraph, ring: Ring = ZZ) -> HomologySummary:
    """Reduced homology of S/M in degrees 1 and 2, i.e. H_*(S, M)."""
    cw = build_cw(G)
    full = homology(cw.chain_complex(ring), ring)
    # the 0-cells only carry the (reduced away) degree-0 classes
    return full.restrict([1, 2])
