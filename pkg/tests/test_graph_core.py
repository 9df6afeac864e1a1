import random

import pytest
from hypothesis import given, settings, strategies as st

from ribbonsum.corpus import base_graphs, corpus_graphs
from ribbonsum.graph_core import (ContractionError, FramedGraph, InvalidGraph, WalkError, contract_edge,
                                  edge_lift, from_rotated, incidence_dual, lift_walk_through_contraction,
                                  open_decomposition, surface_invariants, winding_number)
from ribbonsum.paracyclic import identity
from ribbonsum.state_sum import invariant_homology

TORUS = FramedGraph({"v": ["a", "b", "abar", "bbar"]}, [("a", "abar"), ("b", "bbar")], name="torus")
CIRCLE = FramedGraph({"v": ["a", "b"]}, [("a", "b")], name="circle")
LOOPLEG = FramedGraph({"v": ["a", "b", "leg"]}, [("a", "b")], name="loopleg")
KRONECKER = FramedGraph({"v1": ["p1", "q1", "l1"], "v2": ["p2", "q2", "l2"]}, [("p1", "p2"), ("q1", "q2")])
BARBELL = FramedGraph({"v": ["a"], "w": ["b"]}, [("a", "b")])
GRAPHS = corpus_graphs()


def closed_walk(G, rng, max_len=12):
    internal = [h for h in G.halfedges if not G.is_leg(h)]
    if not internal:
        return None
    start = rng.choice(internal)
    walk = [start]
    for _ in range(max_len):
        here = G.vertex_of[G.tau[walk[-1]]]
        if here == G.vertex_of[start] and rng.random() < 0.4:
            return walk
        options = [h for h in G.vertices[here] if not G.is_leg(h)]
        walk.append(rng.choice(options))
    # close by retracing: go back along the reversed path
    back = [G.tau[h] for h in reversed(walk)]
    return walk + back


def gauge(G, rng):
    fr = dict(G.framing)
    for v, hs in G.vertices.items():
        c = 2 * rng.randint(-3, 3)
        for h in hs:
            fr[h] = fr.get(h, 0) + c
    for a, b in G.edges:
        c = 2 * rng.randint(-3, 3)
        fr[a] = fr.get(a, 0) + c
        fr[b] = fr.get(b, 0) + c
    return G.with_framing(fr)


# -- validation ----------------------------------------------------------


def test_duplicate_halfedge_rejected():
    with pytest.raises(InvalidGraph):
        FramedGraph({"v": ["a"], "w": ["a"]}, [])


def test_valency_zero_rejected():
    with pytest.raises(InvalidGraph):
        FramedGraph({"v": []}, [])


def test_double_pairing_rejected():
    with pytest.raises(InvalidGraph):
        FramedGraph({"v": ["a", "b", "c"]}, [("a", "b"), ("b", "c")])


def test_odd_offset_rejected():
    with pytest.raises(InvalidGraph):
        FramedGraph({"v": ["a", "b"]}, [("a", "b")], {"a": 1})


def test_rotation_is_normalized():
    G = FramedGraph({"v": ["b", "a"]}, [("a", "b")])
    assert G.vertices["v"] == ("a", "b")
    assert G == CIRCLE


def test_from_rotated_keeps_winding_numbers():
    # offsets given against the listed rotation are re-expressed canonically
    G = from_rotated({"v": ["b", "a"]}, [("a", "b")], {"a": 4})
    assert G.framing == {"a": 4, "b": 2}


# -- surfaces ------------------------------------------------------------


def test_torus_surface():
    (c,) = surface_invariants(TORUS).components
    assert (c.genus, c.boundary_count, c.interior_marked) == (1, 0, 1)


def test_circle_surface():
    (c,) = surface_invariants(CIRCLE).components
    assert (c.genus, c.boundary_count, c.interior_marked) == (0, 0, 2)


def test_corolla_surface():
    for k in range(1, 6):
        G = FramedGraph({"v": ["l%d" % i for i in range(k)]}, [])
        (c,) = surface_invariants(G).components
        assert (c.genus, c.boundary_count, c.interior_marked, c.boundary_marked) == (0, 1, 0, (k,))


def test_loopleg_surface():
    (c,) = surface_invariants(LOOPLEG).components
    assert (c.genus, c.boundary_count, c.interior_marked, c.boundary_marked) == (0, 1, 1, (1,))


def test_euler_characteristic_formula():
    for G in base_graphs():
        for c in surface_invariants(G).components:
            assert c.euler_char == 2 - 2 * c.genus - c.boundary_count
            assert all(k >= 1 for k in c.boundary_marked)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GRAPHS), st.randoms(use_true_random=False))
def test_surface_invariants_ignore_rotation_and_names(G, rng):
    verts = {}
    for v, hs in G.vertices.items():
        k = rng.randrange(len(hs))
        verts[v] = list(hs[k:]) + list(hs[:k])
    R = from_rotated(verts, G.edges)
    hmap = {h: "h_%s_%d" % (h, rng.randrange(100)) for h in G.halfedges}
    L = G.relabeled(hmap, {v: "x" + v for v in G.vertices})
    sig = surface_invariants(G).signature()
    assert surface_invariants(R).signature() == sig
    assert surface_invariants(L).signature() == sig


# -- contraction ---------------------------------------------------------


def test_contraction_splice():
    G = FramedGraph({"v": ["x", "a"], "w": ["b", "y"]}, [("a", "b")])
    H = contract_edge(G, "a")
    assert list(H.vertices.values()) == [("x", "y")]


def test_kronecker_contraction():
    H = contract_edge(KRONECKER, "e1")
    assert len(H.vertices) == 1
    (hs,) = H.vertices.values()
    assert sorted(hs) == ["l1", "l2", "q1", "q2"]
    assert H.edges == (("q1", "q2"),)
    assert invariant_homology(H) == invariant_homology(KRONECKER)
    assert surface_invariants(H).signature() == surface_invariants(KRONECKER).signature()


def test_contract_loop_rejected():
    with pytest.raises(ContractionError):
        contract_edge(TORUS, "a")


def test_contract_to_valency_zero_rejected():
    with pytest.raises(ContractionError):
        contract_edge(BARBELL, "a")


def test_contraction_preserves_surface():
    for G in GRAPHS:
        for a, b in G.edges:
            if G.vertex_of[a] == G.vertex_of[b]:
                continue
            H = contract_edge(G, (a, b))
            assert surface_invariants(H).signature() == surface_invariants(G).signature()


def test_contraction_preserves_winding():
    rng = random.Random(3)
    checked = 0
    for G in GRAPHS:
        for a, b in G.edges:
            if G.vertex_of[a] == G.vertex_of[b]:
                continue
            H = contract_edge(G, (a, b))
            for _ in range(20):
                walk = closed_walk(H, rng)
                if walk is None:
                    break
                lifted = lift_walk_through_contraction(G, (a, b), walk)
                assert winding_number(H, walk) == winding_number(G, lifted), (G.name, a, walk)
                checked += 1
    assert checked > 100


# -- open subgraphs ------------------------------------------------------


DECOMP = FramedGraph({"u": ["a", "c", "b", "d"], "x": ["c2"], "w": ["d2", "e", "f", "f2"]},
                     [("a", "b"), ("c", "c2"), ("d", "d2"), ("f", "f2")], name="decomp")


def test_open_full_and_empty():
    full = open_decomposition(DECOMP, DECOMP.vertices)
    assert full.sub == DECOMP and not full.complement.vertices
    empty = open_decomposition(DECOMP, [])
    assert not empty.sub.vertices and empty.retract == DECOMP


def test_open_closure_and_retract():
    dec = open_decomposition(DECOMP, ["u", "x"])
    assert set(dec.closure.vertices) == {"w", "closure:d"}
    assert dec.closure.vertices["closure:d"] == ("d",)
    assert sum(len(hs) for hs in dec.retract.vertices.values()) == 3
    assert "d2" not in dec.retract.vertex_of
    # the open part keeps every half-edge of its vertices
    assert set(dec.sub.vertex_of) == {"a", "b", "c", "d", "c2"}
    assert dec.sub.is_leg("d")


def test_complement_of_open_is_open():
    for G in base_graphs():
        for v in G.vertices:
            dec = open_decomposition(G, [v])
            for w, hs in dec.complement.vertices.items():
                assert hs == G.vertices[w]


# -- incidence duals -----------------------------------------------------


def test_circle_duals_are_identity():
    assert incidence_dual(CIRCLE, "a", "a") == identity(1)
    assert incidence_dual(CIRCLE, "a", "b") == identity(1)


def test_loopleg_duals():
    assert incidence_dual(LOOPLEG, "a", "a").lift == (0, 2)
    assert incidence_dual(LOOPLEG, "a", "b").lift == (0, 1)


def test_barbell_dual_lands_in_point():
    d = incidence_dual(BARBELL, "a", "a")
    assert (d.source, d.target) == (1, 0)


def test_external_dual_rejected():
    with pytest.raises(InvalidGraph):
        incidence_dual(LOOPLEG, "a", "leg")


def test_edge_lift_pattern():
    f = edge_lift(LOOPLEG, "b")
    assert f.lift == (0, 1, 2)


# -- winding numbers -----------------------------------------------------


def test_circle_standard_framing():
    assert winding_number(CIRCLE, ["a"]) == 0
    assert winding_number(CIRCLE, ["b"]) == 0


def test_circle_offset_shift():
    for m in range(-4, 5):
        G = CIRCLE.with_framing({"a": 2 * m})
        assert winding_number(G, ["a"]) == m
        assert winding_number(G, ["b"]) == -m


def test_tree_walk_after_doubling_back():
    # expected value taken from the documented example; see the decisions ledger
    assert winding_number(BARBELL, ["a", "b"]) == 0


def test_tree_walk_values_under_transport_rule():
    path = FramedGraph({"v": ["a"], "m": ["b", "c"], "w": ["d"]}, [("a", "b"), ("c", "d")])
    assert winding_number(BARBELL, ["a", "b"]) == -1
    assert winding_number(path, ["a", "c", "d", "b"]) == -1


def test_initial_lift_independence():
    rng = random.Random(5)
    for G in GRAPHS:
        for _ in range(5):
            walk = closed_walk(G, rng)
            if walk is None:
                break
            k = G.valency(G.vertex_of[walk[0]])
            base = winding_number(G, walk)
            for q in (-2, 1, 3):
                assert winding_number(G, walk, G.position[walk[0]] + q * k) == base


def test_gauge_invariance():
    rng = random.Random(11)
    trials = 0
    while trials < 1000:
        G = rng.choice(GRAPHS)
        walk = closed_walk(G, rng)
        if walk is None:
            continue
        assert winding_number(gauge(G, rng), walk) == winding_number(G, walk)
        trials += 1


def test_offset_prediction():
    # each traversal of h shifts the winding number by (o(h) - o(tau h)) / 2
    rng = random.Random(13)
    for G in base_graphs():
        for _ in range(20):
            walk = closed_walk(G, rng)
            if walk is None:
                break
            fr = {h: 2 * rng.randint(-4, 4) for h in G.halfedges}
            F = G.with_framing(fr)
            predicted = winding_number(G, walk) + sum((fr[h] - fr[G.tau[h]]) // 2 for h in walk)
            assert winding_number(F, walk) == predicted


def test_walk_errors():
    with pytest.raises(WalkError):
        winding_number(KRONECKER, ["p1"])
    with pytest.raises(WalkError):
        winding_number(LOOPLEG, ["leg"])
    with pytest.raises(WalkError):
        winding_number(CIRCLE, [])
