"""Command-line interface.  Exit codes: 0 pass, 1 verification failure, 2 invalid input."""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence

from .corpus import TSV_HEADER, Row, corpus_verify
from .exact_algebra import QQ, InvalidRing, parse_ring
from .graph_core import (ContractionError, InvalidGraph, WalkError, contract_edge, resolve_edge,
                         surface_invariants, winding_number)
from .graph_io import GraphFileError, parse_graph_file, serialize_graph
from .mf_local import MFError, ZMODE, Z2, cohomology_mf, field_dimensions, hom_complex, parse_object
from .state_sum import CoefficientObject, invariant_homology, localization_check, verify_main

__all__ = ["main", "parse_graph_file", "serialize_graph"]


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror))
    name = os.path.basename(path)
    if name.endswith(".graph"):
        name = name[:-6]
    try:
        return parse_graph_file(text, name)
    except GraphFileError as exc:
        raise UsageError("%s: %s" % (path, exc))


def _ring(code: str):
    try:
        return parse_ring(code)
    except InvalidRing as exc:
        raise UsageError(str(exc))


def _emit(rows: Sequence[Row], tsv: bool, out) -> None:
    if tsv:
        out.write(TSV_HEADER + "\n")
        for r in rows:
            out.write(r.tsv() + "\n")
        return
    for r in rows:
        out.write("%s %s: %s | %s [%s]\n" % (r.graph, r.check, r.side_a, r.side_b, r.verdict))


def _status(rows: Sequence[Row]) -> int:
    return 0 if all(r.verdict != "fail" for r in rows) else 1


# ---------------------------------------------------------------------------
# commands


def cmd_info(args, out) -> int:
    G = _load(args.file)
    out.write("graph %s: %d vertices, %d edges, %d legs\n"
              % (G.name, len(G.vertices), len(G.edges), len(G.legs())))
    for v, hs in G.vertices.items():
        out.write("  vertex %s: %s\n" % (v, " ".join(hs)))
    for k, (a, b) in enumerate(G.edges, 1):
        out.write("  edge e%d: %s -> %s\n" % (k, a, b))
    if G.framing:
        out.write("  framing: %s\n" % ", ".join("%s=%d" % kv for kv in sorted(G.framing.items())))
    out.write(surface_invariants(G).render() + "\n")
    return 0


def cmd_homology(args, out) -> int:
    G = _load(args.file)
    ring = _ring(args.coeff)
    h = invariant_homology(G, CoefficientObject(ring, ((0, 1),), args.periodic))
    if args.periodic:
        d = h.as_dict()
        out.write("HP_even=%s; HP_odd=%s\n" % (ring.fmt_module(*d.get(0, (0, ()))),
                                                ring.fmt_module(*d.get(1, (0, ())))))
    else:
        out.write(h.render([0, 1]) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    G = _load(args.file)
    if args.kind == "main":
        ring = _ring(args.coeff)
        ok, rep = verify_main(G, CoefficientObject(ring, ((0, 1),), args.periodic))
        for w in rep.warnings:
            sys.stderr.write("warning: %s\n" % w)
        rows = [Row(G.name, "main", rep.side_a, rep.side_b, rep.verdict)]
    elif args.kind == "contract":
        if not args.edge:
            raise UsageError("verify contract needs --edge")
        try:
            e = resolve_edge(G, args.edge)
            H = contract_edge(G, e)
        except (InvalidGraph, ContractionError) as exc:
            raise UsageError(str(exc))
        before, after = invariant_homology(G), invariant_homology(H)
        rows = [Row(G.name, "contract:%s" % e[0], before.render([0, 1]), after.render([0, 1]),
                    "pass" if before == after else "fail")]
    else:
        if args.vertices is None:
            raise UsageError("verify localize needs --vertices")
        vs = [v for v in args.vertices.split(",") if v]
        try:
            ok, rep = localization_check(G, vs)
        except (InvalidGraph, ValueError) as exc:
            raise UsageError(str(exc))
        rows = [Row(G.name, "localize:%s" % ",".join(vs), "cone " + rep.cone_homology.render([0, 1]),
                    "retract " + rep.retract_homology.render([0, 1]), "pass" if ok else "fail")]
    _emit(rows, args.tsv, out)
    return _status(rows)


def cmd_winding(args, out) -> int:
    G = _load(args.file)
    walk = [h for h in args.walk.split(",") if h]
    try:
        out.write("%d\n" % winding_number(G, walk))
    except WalkError as exc:
        raise UsageError(str(exc))
    return 0


def cmd_mf(args, out) -> int:
    mode = ZMODE if args.grading == "z" else Z2
    base = _ring(args.coeff)
    if not base.is_field:
        raise UsageError("mf needs a field: --coeff q or f<p>")
    try:
        X = parse_object(args.source, mode, args.n)
        Y = parse_object(args.target, mode, args.n)
        h = cohomology_mf(hom_complex(X, Y, base))
    except MFError as exc:
        raise UsageError(str(exc))
    out.write("Hom(%s, %s), n=%d, grading %s\n" % (X, Y, args.n, args.grading))
    if mode == Z2:
        out.write("H0=%s; H1=%s\n" % (h.ring.fmt_module(*h.as_dict().get(0, (0, ()))),
                                       h.ring.fmt_module(*h.as_dict().get(1, (0, ())))))
        dims = field_dimensions(h)
        out.write("dim over %s: even=%s odd=%s\n" % (base.name, _dim(dims.get(0, 0)), _dim(dims.get(1, 0))))
    else:
        out.write((h.render(None) if h.groups else "0") + "\n")
    return 0


def _dim(d: int) -> str:
    return "inf" if d < 0 else str(d)


def cmd_corpus(args, out) -> int:
    if not os.path.isdir(args.dir):
        raise UsageError("not a directory: %s" % args.dir)
    rows, status = corpus_verify(args.dir, args.parallel)
    _emit(rows, args.tsv, out)
    return status


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ribbonsum", description="State sums and surface homology of framed ribbon graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("info", help="graph summary and surface invariants")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("homology", help="state-sum homology")
    s.add_argument("file")
    s.add_argument("--coeff", default="z", help="z (default), q or f<p>")
    s.add_argument("--periodic", action="store_true", help="fold degrees mod 2")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("verify", help="verification checks")
    s.add_argument("kind", choices=["main", "contract", "localize"])
    s.add_argument("file")
    s.add_argument("--edge", help="half-edge id or e<k> (1-based)")
    s.add_argument("--vertices", help="comma-separated vertex ids")
    s.add_argument("--coeff", default="z")
    s.add_argument("--periodic", action="store_true")
    s.add_argument("--tsv", action="store_true", help="tab-separated report")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("winding", help="winding number of a closed walk")
    s.add_argument("file")
    s.add_argument("--walk", required=True, help="comma-separated half-edges")
    s.set_defaults(func=cmd_winding)

    s = sub.add_parser("mf", help="scalar matrix factorization Hom cohomology")
    s.add_argument("what", choices=["hom"])
    s.add_argument("--grading", choices=["z", "z2"], default="z2")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--source", required=True, help="i,j or i,j,l|r")
    s.add_argument("--target", required=True, help="i,j or i,j,l|r")
    s.add_argument("--coeff", default="q", help="q (default) or f<p>")
    s.set_defaults(func=cmd_mf)

    s = sub.add_parser("corpus", help="run all checks over a directory of .graph files")
    s.add_argument("what", choices=["verify"])
    s.add_argument("dir")
    s.add_argument("--parallel", action="store_true")
    s.add_argument("--tsv", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
