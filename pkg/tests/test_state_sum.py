import random

import pytest

from ribbonsum.corpus import base_graphs, corpus_graphs, random_framing
from ribbonsum.exact_algebra import QQ, ZZ, HomologySummary, PrimeField, rank
from ribbonsum.graph_core import FramedGraph, contract_edge, surface_invariants
from ribbonsum.state_sum import (CoefficientObject, build_state_sum, invariant_homology, localization_check,
                                 localization_maps, verify_main)
from ribbonsum.surface_model import relative_homology

TORUS = FramedGraph({"v": ["a", "b", "abar", "bbar"]}, [("a", "abar"), ("b", "bbar")], name="torus")
CIRCLE = FramedGraph({"v": ["a", "b"]}, [("a", "b")], name="circle")
LOOPLEG = FramedGraph({"v": ["a", "b", "leg"]}, [("a", "b")], name="loopleg")
KRONECKER = FramedGraph({"v1": ["p1", "q1", "l1"], "v2": ["p2", "q2", "l2"]},
                        [("p1", "p2"), ("q1", "q2")], name="kronecker")
DECOMP = FramedGraph({"u": ["a", "c", "b", "d"], "x": ["c2"], "w": ["d2", "e", "f", "f2"]},
                     [("a", "b"), ("c", "c2"), ("d", "d2"), ("f", "f2")], name="decomp")
THETA = FramedGraph({"u": ["a", "b", "c"], "w": ["a2", "c2", "b2"]},
                    [("a", "a2"), ("b", "b2"), ("c", "c2")], name="theta")
TWO_LOOPS = FramedGraph({"v": ["a", "b", "c", "l1"], "w": ["c2", "l2", "d", "e"]},
                        [("a", "b"), ("c", "c2"), ("d", "e")], name="twoloops")
GRAPHS = corpus_graphs()


def pair(h, ring=ZZ):
    return tuple((h.rank(d), h.torsion(d)) for d in (0, 1))


def test_corolla_matrix_is_empty():
    S = build_state_sum(FramedGraph({"v": ["x", "y", "z"]}, []))
    assert (S.M.rows, S.M.cols) == (2, 0)


def test_circle_matrix_vanishes():
    assert build_state_sum(CIRCLE).M.is_zero()


def test_torus_matrix_rank_one():
    M = build_state_sum(TORUS).M
    assert (M.rows, M.cols) == (3, 2) and rank(M) == 1
    assert [M[i, 0] for i in range(3)] == [-M[i, 1] for i in range(3)]


def test_example_values():
    assert pair(invariant_homology(LOOPLEG)) == ((1, ()), (0, ()))
    assert pair(invariant_homology(KRONECKER)) == ((2, ()), (0, ()))
    hp = invariant_homology(TORUS, CoefficientObject(QQ, ((0, 1),), True))
    assert (hp.rank(0), hp.rank(1)) == (2, 1)
    hp = invariant_homology(CIRCLE, CoefficientObject(QQ, ((0, 1),), True))
    assert (hp.rank(0), hp.rank(1)) == (1, 1)


def test_corolla_free_group():
    for n in range(0, 6):
        G = FramedGraph({"v": ["l%d" % i for i in range(n + 1)]}, [])
        ok, rep = verify_main(G)
        assert ok
        assert pair(invariant_homology(G)) == ((n, ()), (0, ()))


def test_verify_main_on_corpus():
    for G in GRAPHS:
        ok, rep = verify_main(G)
        assert ok, (G.name, rep.side_a, rep.side_b)
        assert rep.verdict == "pass"


def test_verify_main_random_framings():
    rng = random.Random(17)
    for G in base_graphs():
        for _ in range(5):
            ok, _ = verify_main(G.with_framing(random_framing(G, rng, 6)))
            assert ok


def test_verify_main_other_coefficients():
    E = CoefficientObject(PrimeField(3), ((0, 1), (2, 2)), False)
    for G in base_graphs():
        assert verify_main(G, E)[0]
        assert verify_main(G, CoefficientObject(QQ, ((0, 1), (1, 1)), True))[0]


def test_coefficient_spreading():
    h = invariant_homology(TORUS, CoefficientObject(ZZ, ((0, 1), (2, 1)), False))
    assert [(d, r) for d, r, _ in h.groups] == [(0, 2), (1, 1), (2, 2), (3, 1)]


def test_unstable_graph_gets_warning():
    G = FramedGraph({"v": ["a"], "w": ["b"]}, [("a", "b")], name="barbell")
    ok, rep = verify_main(G)
    assert not surface_invariants(G).stable
    assert rep.verdict == "skip-unstable" and rep.warnings


def test_framing_leaves_matrix_unchanged():
    rng = random.Random(23)
    for G in base_graphs():
        M = build_state_sum(G).M
        for _ in range(5):
            assert build_state_sum(G.with_framing(random_framing(G, rng, 5))).M == M


def test_edge_flip_keeps_homology():
    rng = random.Random(29)
    for G in base_graphs():
        for _ in range(3):
            flips = [rng.random() < 0.5 for _ in G.edges]
            F = G.with_edges([(b, a) if f else (a, b) for f, (a, b) in zip(flips, G.edges)])
            assert invariant_homology(F) == invariant_homology(G)
            M, N = build_state_sum(G).M, build_state_sum(F).M
            for j in range(M.cols):
                col_m = [M[i, j] for i in range(M.rows)]
                col_n = [N[i, j] for i in range(N.rows)]
                assert col_n == col_m


def test_disjoint_union_additivity():
    corolla = FramedGraph({"c": ["l1", "l2"]}, [])
    both = FramedGraph({**TORUS.vertices, **corolla.vertices}, TORUS.edges)
    assert invariant_homology(both) == invariant_homology(TORUS).direct_sum(invariant_homology(corolla))


def test_cokernel_torsion_free_on_stable_graphs():
    for G in GRAPHS:
        if surface_invariants(G).stable:
            assert not invariant_homology(G).torsion(0)


def test_contraction_invariance():
    count = 0
    for G in GRAPHS:
        for a, b in G.edges:
            if G.vertex_of[a] != G.vertex_of[b]:
                assert invariant_homology(contract_edge(G, (a, b))) == invariant_homology(G)
                count += 1
    assert count >= 10


LOCALIZATION_PAIRS = [
    (KRONECKER, ["v1"]),
    (KRONECKER, ["v2"]),
    (DECOMP, ["u", "x"]),
    (DECOMP, ["w"]),
    (DECOMP, ["x"]),
    (TWO_LOOPS, ["v"]),
    (TWO_LOOPS, ["w"]),
    (KRONECKER, []),
    (DECOMP, ["u", "w", "x"]),
]


@pytest.mark.parametrize("G,verts", LOCALIZATION_PAIRS, ids=lambda x: getattr(x, "name", None) or ",".join(x))
def test_localization(G, verts):
    ok, rep = localization_check(G, verts)
    assert rep.inclusion_is_chain_map and rep.collapse_is_chain_map and rep.composite_vanishes
    assert rep.cone_homology == rep.retract_homology
    assert ok


def test_localization_trivial_cases():
    _, rep = localization_check(DECOMP, list(DECOMP.vertices))
    assert rep.cone_homology.groups == () and rep.retract_homology.groups == ()
    _, rep = localization_check(DECOMP, [])
    assert rep.cone_homology == invariant_homology(DECOMP)


def test_localization_framed():
    rng = random.Random(31)
    for G, verts in LOCALIZATION_PAIRS:
        F = G.with_framing(random_framing(G, rng))
        assert localization_check(F, verts)[0]


def test_localization_rejects_empty_retract_vertex():
    with pytest.raises(ValueError):
        localization_maps(DECOMP, ["u"])
    with pytest.raises(ValueError):
        localization_maps(THETA, ["u"])
