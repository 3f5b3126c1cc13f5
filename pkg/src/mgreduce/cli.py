"""Command-line interface.

Exit status: 0 positive verdict or clean report, 1 negative verdict,
2 usage or input error, 3 resource guard hit (answer unknown).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import codes, multigraph, reduction, sss
from .errors import GuardExceeded, InvalidWitness

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_graph(path: str) -> multigraph.MultiGraph:
    return multigraph.parse(_read(path))


def cmd_reduce(args, out) -> int:
    G = _load_graph(args.graph)
    RC = reduction.build_generator_h2_reduced(G) if args.h2_reduced else reduction.build_generator(G)
    prefix = args.output or os.path.splitext(args.graph)[0]
    code_text, zone_text = reduction.format_reduction(RC)
    Path(prefix + ".code").write_text(code_text, encoding="utf-8")
    Path(prefix + ".zones").write_text(zone_text, encoding="utf-8")
    print("N=%d r=%d h=%d" % (RC.N, RC.field.r, G.h), file=out)
    if RC.degenerate:
        print("warning: edgeless graph, code has no rows", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    RC = reduction.load_reduction(_read(args.code), _read(args.zones))
    reports = [reduction.verify_O1(RC), reduction.verify_O2(RC)]
    if RC.copies == 3 and RC.graph.h == 2:
        reports.append(reduction.verify_h2_pairs(RC))
    for rep in reports:
        print(rep.format(), file=out)
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_NO


def cmd_iso(args, out) -> int:
    G1, G2 = _load_graph(args.graph1), _load_graph(args.graph2)
    sigma = multigraph.brute_force_isomorphism(G1, G2)
    if sigma is None:
        print("non-isomorphic", file=out)
        return EXIT_NO
    print("isomorphic: " + " ".join("%d->%d" % (v, sigma(v)) for v in range(1, G1.n + 1)), file=out)
    return EXIT_OK


def cmd_equiv(args, out) -> int:
    C = codes.parse_code(_read(args.code1))
    D = codes.parse_code(_read(args.code2))
    cert = codes.invariant_certificate(C, D, args.cls)
    if cert.inequivalent:
        print(str(cert), file=out)
        return EXIT_NO
    try:
        W = codes.brute_force_equivalence(C, D, args.cls, args.budget)
    except GuardExceeded as exc:
        print("inconclusive: %s" % exc, file=out)
        return EXIT_GUARD
    if W is None:
        print("inequivalent: exhaustive search over class %s found no witness" % args.cls, file=out)
        return EXIT_NO
    print("equivalent (symbol maps: %s)" % W.symbol_class(), file=out)
    print(W.format(), file=out)
    return EXIT_OK


def cmd_witness(args, out) -> int:
    G1, G2 = _load_graph(args.graph1), _load_graph(args.graph2)
    text = _read(args.bijection) if os.path.exists(args.bijection) else args.bijection
    sigma = multigraph.parse_bijection(text)
    if not multigraph.is_isomorphism(G1, G2, sigma):
        print("not an isomorphism", file=out)
        return EXIT_NO
    W = reduction.witness_from_isomorphism(G1, G2, sigma, reduced=args.h2_reduced)
    build = reduction.build_generator_h2_reduced if args.h2_reduced else reduction.build_generator
    RC1, RC2 = build(G1), build(G2)
    rows_ok = reduction.transformed_generator(RC1, W) == RC2.code.gen
    span_ok = codes.apply_witness(RC1.code, W) == RC2.code
    print(W.format(), file=out)
    print("rows match: %s" % ("yes" if rows_ok else "no"), file=out)
    print("row spaces equal: %s" % ("yes" if span_ok else "no"), file=out)
    return EXIT_OK if rows_ok and span_ok else EXIT_NO


def cmd_signature(args, out) -> int:
    C = codes.parse_code(_read(args.code))
    coords = [args.coord] if args.coord is not None else range(C.n)
    for i in coords:
        if args.binary:
            sig = sss.signature_binary(C, i)
        else:
            sig = sss.signature_additive(C, i, args.dim)
        print(sig.format(), file=out)
    return EXIT_OK


def _parse_range(text: str):
    lo, _, hi = text.partition("-")
    lo = int(lo)
    return (lo, int(hi) if hi else lo)


def cmd_experiment(args, out) -> int:
    rows = sss.hull_experiment(_parse_range(args.n), args.h, args.trials, args.seed, args.density)
    out.write(sss.format_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mgreduce", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", help="build the reduction code of a multigraph")
    s.add_argument("graph")
    s.add_argument("--h2-reduced", action="store_true", help="three D_1 copies (h = 2 only)")
    s.add_argument("-o", "--output", help="output prefix (default: graph path without suffix)")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify", help="check the weight observations on a reduction code")
    s.add_argument("code")
    s.add_argument("zones")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("iso", help="brute-force multigraph isomorphism")
    s.add_argument("graph1")
    s.add_argument("graph2")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("equiv", help="decide equivalence of two small codes")
    s.add_argument("code1")
    s.add_argument("code2")
    s.add_argument("--class", dest="cls", default="zero-fixing", choices=codes.CLASSES)
    s.add_argument("--budget", type=int, default=codes.DEFAULT_BUDGET)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("witness", help="equivalence witness from a graph isomorphism")
    s.add_argument("graph1")
    s.add_argument("graph2")
    s.add_argument("bijection", help="file or inline list of images of 1..n, e.g. 2,3,1")
    s.add_argument("--h2-reduced", action="store_true")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("signature", help="print coordinate signatures")
    s.add_argument("code")
    s.add_argument("--coord", type=int, help="0-based coordinate (default: all)")
    s.add_argument("--dim", type=int, default=0, help="subspace dimension d")
    s.add_argument("--binary", action="store_true", help="classical binary signature (r = 1)")
    s.set_defaults(func=cmd_signature)

    s = sub.add_parser("experiment", help="hull dimensions of random reduction codes (CSV)")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--n", required=True, help="vertex count or range lo-hi")
    s.add_argument("--h", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--density", type=float, default=0.5)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except GuardExceeded as exc:
        print("guard exceeded: %s" % exc, file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, IndexError, InvalidWitness, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
