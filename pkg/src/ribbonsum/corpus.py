"""Bundled graph corpus and the per-graph verification runner."""
from __future__ import annotations

import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .graph_core import FramedGraph, contract_edge, open_decomposition
from .graph_io import parse_graph_file, serialize_graph
from .state_sum import build_state_sum, invariant_homology, localization_check, verify_main

CORPUS_DIR = os.path.join(os.path.dirname(__file__), "data", "corpus")
SUFFIX = ".graph"


def base_graphs() -> List[FramedGraph]:
    out = []
    for k in range(1, 5):
        out.append(FramedGraph({"v": ["l%d" % i for i in range(1, k + 1)]}, [], name="corolla%d" % k))
    out.append(FramedGraph({"v": ["a", "b"]}, [("a", "b")], name="circle"))
    out.append(FramedGraph({"v": ["a", "b"], "w": ["c", "d"]}, [("a", "c"), ("b", "d")], name="bigon"))
    out.append(FramedGraph({"v": ["a", "b", "leg"]}, [("a", "b")], name="loopleg"))
    out.append(FramedGraph({"v1": ["p1", "q1", "l1"], "v2": ["p2", "q2", "l2"]},
                           [("p1", "p2"), ("q1", "q2")], name="kronecker"))
    out.append(FramedGraph({"v": ["a", "l1", "b", "l2"]}, [("a", "b")], name="annulus"))
    out.append(FramedGraph({"v": ["a", "b", "abar", "bbar"]}, [("a", "abar"), ("b", "bbar")], name="torus"))
    out.append(FramedGraph({"v": ["a", "b", "abar", "bbar", "leg"]}, [("a", "abar"), ("b", "bbar")],
                           name="torusleg"))
    out.append(FramedGraph({"v": ["a", "b", "abar", "bbar", "c", "d", "cbar", "dbar"]},
                           [("a", "abar"), ("b", "bbar"), ("c", "cbar"), ("d", "dbar")], name="genus2"))
    out.append(FramedGraph({"u": ["a", "b", "c"], "w": ["a2", "c2", "b2"]},
                           [("a", "a2"), ("b", "b2"), ("c", "c2")], name="theta"))
    out.append(FramedGraph({"u": ["a", "b", "c"], "w": ["a2", "b2", "c2"]},
                           [("a", "a2"), ("b", "b2"), ("c", "c2")], name="thetatwist"))
    out.append(FramedGraph({"u": ["a", "c", "b", "d"], "x": ["c2"], "w": ["d2", "e", "f", "f2"]},
                           [("a", "b"), ("c", "c2"), ("d", "d2"), ("f", "f2")], name="decomp"))
    out.append(FramedGraph({"v": ["a", "b", "abar", "bbar"], "c": ["l1", "l2"]},
                           [("a", "abar"), ("b", "bbar")], name="toruscorolla"))
    return out


def random_framing(G: FramedGraph, rng: random.Random, spread: int = 3) -> Dict[str, int]:
    return {h: 2 * rng.randint(-spread, spread) for h in G.halfedges}


def corpus_graphs(seed: int = 20240611) -> List[FramedGraph]:
    rng = random.Random(seed)
    out = []
    for G in base_graphs():
        out.append(G)
        for k in (1, 2):
            F = G.with_framing(random_framing(G, rng))
            F.name = "%s-f%d" % (G.name, k)
            out.append(F)
    return out


def write_corpus(directory: str = CORPUS_DIR) -> List[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for G in corpus_graphs():
        path = os.path.join(directory, G.name + SUFFIX)
        with open(path, "w") as fh:
            fh.write(serialize_graph(G))
        paths.append(path)
    return paths


def load_corpus(directory: str = CORPUS_DIR) -> List[FramedGraph]:
    out = []
    for fn in sorted(os.listdir(directory)):
        if fn.endswith(SUFFIX):
            with open(os.path.join(directory, fn)) as fh:
                out.append(parse_graph_file(fh.read(), fn[:-len(SUFFIX)]))
    return out


# ---------------------------------------------------------------------------
# runner


@dataclass(frozen=True)
class Row:
    graph: str
    check: str
    side_a: str
    side_b: str
    verdict: str

    def tsv(self) -> str:
        return "\t".join(x.replace("\t", " ").replace("\n", " ")
                         for x in (self.graph, self.check, self.side_a, self.side_b, self.verdict))


TSV_HEADER = "graph\tcheck\tsideA\tsideB\tverdict"


def _pass(ok: bool) -> str:
    return "pass" if ok else "fail"


def graph_checks(G: FramedGraph) -> List[Row]:
    name = G.name
    rows = []
    ok, rep = verify_main(G)
    rows.append(Row(name, "main", rep.side_a, rep.side_b, rep.verdict))

    zero = G.with_framing({})
    same = build_state_sum(G).M == build_state_sum(zero).M
    rows.append(Row(name, "framing", "M(framed)", "M(zero framing)", _pass(same)))

    back = parse_graph_file(serialize_graph(G), name)
    rows.append(Row(name, "roundtrip", "parse(serialize(G))", "G", _pass(back == G)))

    before = invariant_homology(G)
    for a, b in G.edges:
        if G.vertex_of[a] == G.vertex_of[b]:
            continue
        after = invariant_homology(contract_edge(G, (a, b)))
        rows.append(Row(name, "contract:%s" % a, before.render([0, 1]), after.render([0, 1]),
                        _pass(before == after)))

    for v in G.vertices:
        if open_decomposition(G, [v]).empty_retract_vertices:
            continue
        ok, lrep = localization_check(G, [v])
        rows.append(Row(name, "localize:%s" % v, "cone " + lrep.cone_homology.render([0, 1]),
                        "retract " + lrep.retract_homology.render([0, 1]), _pass(ok)))
    return rows


def file_checks(path: str) -> List[Row]:
    fn = os.path.basename(path)
    name = fn[:-len(SUFFIX)] if fn.endswith(SUFFIX) else fn
    try:
        with open(path) as fh:
            G = parse_graph_file(fh.read(), name)
    except (OSError, ValueError) as exc:
        return [Row(name, "parse", str(exc), "-", "fail")]
    return graph_checks(G)


def corpus_verify(directory: str, parallel: bool = False) -> Tuple[List[Row], int]:
    """Rows sorted by file name; exit status 0 if every row passes or is
    skipped as unstable, else 1."""
    paths = sorted(os.path.join(directory, fn) for fn in os.listdir(directory) if fn.endswith(SUFFIX))
    if parallel and len(paths) > 1:
        with ProcessPoolExecutor() as pool:
            chunks = list(pool.map(file_checks, paths))
    else:
        chunks = [file_checks(p) for p in paths]
    rows = [r for chunk in chunks for r in chunk]
    status = 0 if all(r.verdict != "fail" for r in rows) else 1
    return rows, status


if __name__ == "__main__":
    for p in write_corpus(sys.argv[1] if len(sys.argv) > 1 else CORPUS_DIR):
        print(p)
