"""Command-line front end: ``signhom classify|order|solve|verify|gen``.

Exit codes: 0 polynomial / success, 1 NP-complete / no solution / failed
check, 2 unsupported or not weakly balanced, 3 parse error, 4 I/O error,
5 internal error, 64 usage error.
"""
from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import io
from .classify import Verdict, classify, detect_mode
from .errors import (
    BadSeed,
    CapExceeded,
    ConflictingPair,
    InvertiblePairFound,
    NotBipartite,
    NotPolynomial,
    ParseError,
)
from .oracle import EnumerationSpec, enumerate_signed_graphs
from .ordering import closure_under_domination, extend_to_min_ordering, verify_min_ordering
from .pairs import build_pair_digraph, verify_invertible_pair
from .sgraph import Mode, SignedGraph, bipartition, verify_homomorphism, verify_odd_red_walk
from .solver import ListHomomorphismSolver
from .special import verify_chain, verify_special_min_ordering

EXIT_OK = 0
EXIT_NPC = 1
EXIT_UNSUPPORTED = 2
EXIT_PARSE = 3
EXIT_IO = 4
EXIT_INTERNAL = 5
EXIT_USAGE = 64

VERDICT_EXIT = {
    Verdict.POLYNOMIAL: EXIT_OK,
    Verdict.NPC_CHAIN: EXIT_NPC,
    Verdict.NPC_INVERTIBLE: EXIT_NPC,
    Verdict.NOT_WEAKLY_BALANCED: EXIT_UNSUPPORTED,
    Verdict.UNSUPPORTED: EXIT_UNSUPPORTED,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Failure(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _load(path, parser=io.parse_sg):
    try:
        text = io.read_text(path)
    except OSError as exc:
        raise _Failure(EXIT_IO, f"{path}: {exc.strerror or exc}") from None
    try:
        return parser(text)
    except ParseError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: {exc}") from None


def _mode(args):
    if getattr(args, "bipartite", False):
        return Mode.BIPARTITE
    if getattr(args, "reflexive", False):
        return Mode.REFLEXIVE
    return None


def _render(result, fmt):
    return io.verdict_block(result) if fmt == "tagged" else io.verdict_text(result)


def _classify_one(path, mode, fmt):
    try:
        g = _load(path)
    except _Failure as exc:
        return exc.code, "", f"{exc}\n"
    result = classify(g, mode)
    return VERDICT_EXIT[result.verdict], _render(result, fmt), ""


def cmd_classify(args, out, err):
    mode = _mode(args)
    if args.jobs > 1 and len(args.paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_classify_one, args.paths,
                                     [mode] * len(args.paths), [args.format] * len(args.paths)))
    else:
        outcomes = [_classify_one(p, mode, args.format) for p in args.paths]
    code = 0
    for path, (status, text, message) in zip(args.paths, outcomes):
        if len(args.paths) > 1:
            out.write(f"== {path} ==\n")
        out.write(text)
        err.write(message)
        code = max(code, status)
    return code


def cmd_order(args, out, err):
    g = _load(args.path)
    mode, reason = detect_mode(g, _mode(args))
    if mode is None:
        raise _Failure(EXIT_UNSUPPORTED, f"unsupported shape: {reason}")
    try:
        bip = bipartition(g) if mode is Mode.BIPARTITE else None
    except NotBipartite as exc:
        raise _Failure(EXIT_UNSUPPORTED, f"unsupported shape: {exc}") from None
    seeds = _load(args.seed_pairs, io.parse_pairs) if args.seed_pairs else []
    try:
        pd = build_pair_digraph(g, mode, bip)
        missing = [p for p in seeds if p not in pd]
        if missing:
            raise BadSeed(f"{missing[0]} is not a pair of distinct vertices from one part")
        closed = closure_under_domination(pd, seeds)
        ordering = extend_to_min_ordering(g, mode, closed.pairs, bip)
    except InvertiblePairFound as exc:
        cert = exc.certificate
        (w1, w1b), (w2, w2b) = cert.walk_pair_1, cert.walk_pair_2
        out.write("INVERTIBLE-PAIR\n")
        for tag, seq in (("PAIR", cert.pair), ("W1", w1), ("W1'", w1b), ("W2", w2), ("W2'", w2b)):
            out.write(f"{tag}: {' '.join(seq)}\n")
        return EXIT_NPC
    except ConflictingPair as exc:
        out.write(f"BAD-SEED: closure under domination contains both {exc.pair} and its reverse\n")
        return EXIT_UNSUPPORTED
    except BadSeed as exc:
        out.write(f"BAD-SEED: {exc}\n")
        return EXIT_UNSUPPORTED
    out.write(f"MODE: {mode.value}\n")
    for line in ordering.lines():
        out.write(f"PART: {line}".rstrip() + "\n")
    return EXIT_OK


def cmd_solve(args, out, err):
    template = _load(args.template)
    g, lists = _load(args.instance, io.parse_lhom)
    try:
        solver = ListHomomorphismSolver(template, _mode(args))
    except NotPolynomial as exc:
        out.write(io.verdict_block(exc.result))
        return EXIT_UNSUPPORTED
    bad = sorted({x for v in lists for x in lists[v] if x not in template})
    if bad:
        raise _Failure(EXIT_PARSE, f"{args.instance}: list entries not in the template: {' '.join(bad)}")
    result = solver.solve(g, lists)
    if result is not None:
        check = verify_homomorphism(g, template, result.assignment, lists)
        if not check:
            raise _Failure(EXIT_INTERNAL, f"internal error: result fails verification ({check.reason})")
    out.write(io.format_result(result))
    return EXIT_OK if result is not None else EXIT_NPC


VERIFY_KINDS = ("order", "special", "chain", "invpair", "oddwalk")


def cmd_verify(args, out, err):
    tags = _load(args.certificate, io.parse_tags)
    g = _load(args.graph)
    try:
        if args.kind in ("order", "special"):
            ordering = io.ordering_from_tags(tags, special=args.kind == "special")
            if args.kind == "special":
                check = verify_special_min_ordering(g, ordering, ordering.mode)
            else:
                check = verify_min_ordering(g, ordering.mode, ordering)
        elif args.kind == "chain":
            check = verify_chain(g, io.chain_from_tags(tags))
        elif args.kind == "invpair":
            check = verify_invertible_pair(g, io.invertible_pair_from_tags(tags))
        else:
            check = verify_odd_red_walk(g, io.walk_from_tags(tags).walk)
    except ParseError as exc:
        raise _Failure(EXIT_PARSE, f"{args.certificate}: {exc}") from None
    except (KeyError, NotBipartite) as exc:
        out.write(f"fail: certificate does not match the graph ({exc})\n")
        return EXIT_NPC
    if check:
        out.write("ok\n")
        return EXIT_OK
    witness = f" [{check.witness}]" if check.witness is not None else ""
    out.write(f"fail: {check.reason}{witness}\n")
    return EXIT_NPC


def _random_graph(rng, args):
    signs = args.signs
    if args.reflexive:
        vs = [f"v{i}" for i in range(1, args.n + 1)]
        edges = [(v, v, rng.choice(signs)) for v in vs]
        slots = [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]
    else:
        p, q = args.parts
        a = [f"a{i}" for i in range(1, p + 1)]
        b = [f"b{i}" for i in range(1, q + 1)]
        vs, edges = a + b, []
        slots = [(x, y) for x in a for y in b]
    for u, v in slots:
        if rng.random() < args.density:
            edges.append((u, v, rng.choice(signs)))
    return SignedGraph(vs, edges)


def cmd_gen(args, out, err):
    if args.reflexive and args.n is None:
        raise _Failure(EXIT_USAGE, "--reflexive needs -n")
    if not args.reflexive and args.parts is None:
        if not args.random:
            raise _Failure(EXIT_USAGE, "give --parts P Q or --reflexive -n N")
        args.parts = (3, 3)
    if args.random:
        rng = random.Random(args.seed)
        graphs = (_random_graph(rng, args) for _ in range(args.count))
    else:
        spec = EnumerationSpec(
            parts=None if args.reflexive else tuple(args.parts),
            n=args.n if args.reflexive else None,
            reflexive=args.reflexive,
            signs=tuple(args.signs),
            loop_signs=tuple(args.signs),
            weakly_balanced=args.weakly_balanced,
            chain_graph=args.chain_graph,
            connected=args.connected,
        )
        graphs = enumerate_signed_graphs(spec)
    try:
        for i, g in enumerate(graphs, 1):
            out.write(f"{io.GRAPH_HEADER} {i}\n{io.serialize_sg(g)}\n")
    except CapExceeded as exc:
        raise _Failure(EXIT_UNSUPPORTED, str(exc)) from None
    return EXIT_OK


def _sign_list(text):
    signs = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in signs if s not in ("+", "-", "+-")]
    if bad or not signs:
        raise argparse.ArgumentTypeError(f"bad sign list {text!r}")
    return signs


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="signhom", description="Classify and solve signed list homomorphism problems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def mode_flags(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--bipartite", action="store_true", help="treat the graph as bipartite")
        group.add_argument("--reflexive", action="store_true", help="treat the graph as reflexive")

    p = sub.add_parser("classify", help="classify .sg templates")
    p.add_argument("paths", nargs="+")
    mode_flags(p)
    p.add_argument("--format", choices=("text", "tagged"), default="tagged")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for several inputs")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("order", help="min ordering extending optional seed pairs")
    p.add_argument("path")
    p.add_argument("--seed-pairs", help="file with one 'x y' pair per line")
    mode_flags(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("solve", help="solve a .lhom instance against a template")
    p.add_argument("template")
    p.add_argument("instance")
    mode_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("kind", choices=VERIFY_KINDS)
    p.add_argument("certificate")
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a stream of .sg blocks")
    p.add_argument("--parts", type=int, nargs=2, metavar=("P", "Q"))
    p.add_argument("--reflexive", action="store_true")
    p.add_argument("-n", type=int, help="vertex count for reflexive graphs")
    p.add_argument("--signs", type=_sign_list, default=["+", "+-"], help="comma list, default '+,+-'")
    p.add_argument("--weakly-balanced", action="store_true")
    p.add_argument("--chain-graph", action="store_true")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--random", action="store_true", help="seeded random graphs instead of enumeration")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--density", type=float, default=0.5)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except _Failure as exc:
        err.write(f"signhom: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
