"""JSON graph files.

    {"name": ..., "vertices": [{"id": ..., "halfedges": [...]}, ...],
     "edges": [[h, h'], ...], "framing": {h: offset, ...}}

Half-edge lists are counterclockwise.  On load each list is rotated to start
at its smallest id, and framing offsets are read against that canonical
rotation, so rotating a list in the file does not change the framed graph.
"""
from __future__ import annotations

import json
from typing import Optional

from .graph_core import FramedGraph, InvalidGraph


class GraphFileError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__("line %d: %s" % (line, message) if line else message)


def _line_of(text: str, token, occurrence: int = 1) -> Optional[int]:
    needle = json.dumps(str(token))
    seen = 0
    for k, line in enumerate(text.splitlines(), 1):
        seen += line.count(needle)
        if seen >= occurrence:
            return k
    return None


def parse_graph_file(text: str, default_name: str = "") -> FramedGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFileError("invalid JSON: %s" % exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise GraphFileError("top level must be an object", 1)
    unknown = set(doc) - {"name", "vertices", "edges", "framing"}
    if unknown:
        key = sorted(unknown)[0]
        raise GraphFileError("unknown field %r" % key, _line_of(text, key))
    name = doc.get("name", default_name)
    if not isinstance(name, str):
        raise GraphFileError("name must be a string", _line_of(text, "name"))
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise GraphFileError("vertices must be a list", _line_of(text, "vertices"))
    vertices = {}
    seen = {}
    for rec in verts:
        if not isinstance(rec, dict) or set(rec) != {"id", "halfedges"}:
            raise GraphFileError("vertex records need exactly 'id' and 'halfedges'", _line_of(text, "vertices"))
        vid, hs = rec["id"], rec["halfedges"]
        if not isinstance(vid, str) or not isinstance(hs, list) or not all(isinstance(h, str) for h in hs):
            raise GraphFileError("vertex ids and half-edge ids must be strings", _line_of(text, vid))
        if vid in vertices:
            raise GraphFileError("duplicate vertex id %r" % vid, _line_of(text, vid, 2))
        if not hs:
            raise GraphFileError("vertex %r has valency 0" % vid, _line_of(text, vid))
        for h in hs:
            if h in seen:
                raise GraphFileError("half-edge %r appears at vertices %r and %r" % (h, seen[h], vid),
                                     _line_of(text, h, 2))
            seen[h] = vid
        vertices[vid] = hs
    edges = doc.get("edges", [])
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(isinstance(h, str) for h in e) for e in edges):
        raise GraphFileError("edges must be a list of half-edge id pairs", _line_of(text, "edges"))
    paired = {}
    for a, b in edges:
        for h in (a, b):
            if h not in seen:
                raise GraphFileError("edge uses unknown half-edge %r" % h, _line_of(text, h))
            if h in paired or a == b:
                raise GraphFileError("half-edge %r is paired more than once" % h, _line_of(text, h))
            paired[h] = True
    framing = doc.get("framing", {})
    if not isinstance(framing, dict):
        raise GraphFileError("framing must be an object", _line_of(text, "framing"))
    for h, o in framing.items():
        if isinstance(o, bool) or not isinstance(o, int):
            raise GraphFileError("framing offset of %r must be an integer" % h, _line_of(text, h))
        if h not in seen:
            raise GraphFileError("framing given for unknown half-edge %r" % h, _line_of(text, h))
        if o % 2:
            raise GraphFileError("framing offset of %r is odd (edge torsors have period 2)" % h,
                                 _line_of(text, h))
    try:
        return FramedGraph(vertices, [tuple(e) for e in edges], framing, name)
    except InvalidGraph as exc:
        raise GraphFileError(str(exc), None) from None


def serialize_graph(G: FramedGraph) -> str:
    doc = {
        "name": G.name,
        "vertices": [{"id": v, "halfedges": list(hs)} for v, hs in G.vertices.items()],
        "edges": [list(e) for e in G.edges],
    }
    if G.framing:
        doc["framing"] = dict(sorted(G.framing.items()))
    return json.dumps(doc, indent=2) + "\n"
