"""Text formats: ``.sg`` graphs, ``.lhom`` instances, result and verdict blocks.

``.sg`` lines are ``u v S`` (an edge, S one of ``+ - +-``) or ``vertex u``;
``#`` starts a comment.  A ``.lhom`` file is a ``.sg`` block plus
``list v: a b c`` lines.  Verdict blocks are ``TAG: payload`` lines.
"""
from __future__ import annotations

from pathlib import Path

from .classify import ClassificationResult, Verdict
from .errors import ParseError
from .ordering import MinOrdering
from .pairs import InvertiblePairCertificate
from .sgraph import Mode, OddRedClosedWalk, Sign, SignedGraph
from .special import Chain, SpecialMinOrdering

GRAPH_HEADER = "# graph"


def _content(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _check_name(token, lineno):
    if ":" in token or "," in token:
        raise ParseError(f"vertex name {token!r} may not contain ':' or ','", lineno)
    return token


def _parse_graph_lines(numbered) -> SignedGraph:
    vertices = []
    edges = []
    for lineno, line in numbered:
        tokens = _content(line).split()
        if not tokens:
            continue
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise ParseError("expected 'vertex NAME'", lineno)
            vertices.append(_check_name(tokens[1], lineno))
        elif len(tokens) == 3:
            u, v, s = tokens
            try:
                sign = Sign.parse(s)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            edges.append((_check_name(u, lineno), _check_name(v, lineno), sign))
        else:
            raise ParseError(f"expected 'u v SIGN' or 'vertex NAME', got {line.strip()!r}", lineno)
    return SignedGraph(vertices, edges)


def parse_sg(text: str) -> SignedGraph:
    return _parse_graph_lines(enumerate(text.splitlines(), 1))


def serialize_sg(g: SignedGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"{u} {v} {s.value}" for u, v, s in g.edges()]
    return "\n".join(lines) + "\n"


def serialize_stream(graphs) -> str:
    """Concatenate graphs, each preceded by a ``# graph i`` header."""
    return "".join(f"{GRAPH_HEADER} {i}\n{serialize_sg(g)}\n" for i, g in enumerate(graphs, 1))


def parse_stream(text: str) -> list:
    blocks: list = []
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith(GRAPH_HEADER):
            current = []
            blocks.append(current)
        elif current is not None:
            current.append((lineno, line))
        elif _content(line):
            raise ParseError(f"content before the first '{GRAPH_HEADER}' header", lineno)
    return [_parse_graph_lines(b) for b in blocks]


def read_text(path) -> str:
    return Path(path).read_text()


def read_sg(path) -> SignedGraph:
    return parse_sg(read_text(path))


# -- lists, seeds, results ------------------------------------------------

def parse_lhom(text: str):
    """Return ``(g, lists)``; vertices without a ``list`` line get no entry."""
    graph_lines = []
    lists: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = _content(line)
        if body.startswith("list "):
            head, sep, rest = body[5:].partition(":")
            v = head.strip()
            if not sep or not v or " " in v:
                raise ParseError("expected 'list v: a b c'", lineno)
            if v in lists:
                raise ParseError(f"second list for {v}", lineno)
            lists[v] = frozenset(rest.split())
        else:
            graph_lines.append((lineno, line))
    g = _parse_graph_lines(graph_lines)
    unknown = sorted(v for v in lists if v not in g)
    if unknown:
        raise ParseError(f"lists for vertices not in the graph: {' '.join(unknown)}")
    return g, lists


def serialize_lhom(g: SignedGraph, lists) -> str:
    extra = [f"list {v}: {' '.join(sorted(lists[v]))}" for v in sorted(lists)]
    return serialize_sg(g) + "".join(line + "\n" for line in extra)


def parse_pairs(text: str) -> list:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = _content(line).split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError("expected 'x y'", lineno)
        pairs.append(tuple(tokens))
    return pairs


def format_result(result) -> str:
    if result is None:
        return "NONE\n"
    lines = [f"MAP {v} -> {result.assignment[v]}" for v in sorted(result.assignment)]
    lines += [f"SWITCH {v}" for v in sorted(result.switching.flipped)]
    return "\n".join(lines) + "\n"


def parse_result(text: str):
    """Inverse of :func:`format_result`: ``None`` or ``(assignment, flipped)``."""
    from .sgraph import SwitchingAssignment
    from .solver import HomomorphismResult

    body = [(n, _content(l)) for n, l in enumerate(text.splitlines(), 1) if _content(l)]
    if [b for _, b in body] == ["NONE"]:
        return None
    f, flipped = {}, set()
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) == 4 and tokens[0] == "MAP" and tokens[2] == "->":
            f[tokens[1]] = tokens[3]
        elif len(tokens) == 2 and tokens[0] == "SWITCH":
            flipped.add(tokens[1])
        else:
            raise ParseError(f"unexpected result line {line!r}", lineno)
    return HomomorphismResult(f, SwitchingAssignment(frozenset(flipped)))


# -- verdict blocks -------------------------------------------------------

def _words(seq):
    return " ".join(map(str, seq))


def verdict_block(result: ClassificationResult) -> str:
    """Tagged text block: ``VERDICT:`` first, then the certificate."""
    lines = [f"VERDICT: {result.verdict.value}"]
    if result.mode is not None:
        lines.append(f"MODE: {result.mode.value}")
    cert = result.certificate
    if result.verdict is Verdict.POLYNOMIAL:
        lines += [f"PART: {_words(p)}".rstrip() for p in cert.parts]
    elif result.verdict is Verdict.NPC_CHAIN:
        lines += [f"U: {_words(cert.upper)}", f"D: {_words(cert.lower)}"]
    elif result.verdict is Verdict.NPC_INVERTIBLE:
        (w1, w1b), (w2, w2b) = cert.walk_pair_1, cert.walk_pair_2
        lines += [f"PAIR: {_words(cert.pair)}", f"W1: {_words(w1)}", f"W1': {_words(w1b)}",
                  f"W2: {_words(w2)}", f"W2': {_words(w2b)}"]
    elif result.verdict is Verdict.NOT_WEAKLY_BALANCED:
        lines += [f"WALK: {_words(cert.walk)}", f"REASON: closed walk with {cert.red_count} red edge{'' if cert.red_count == 1 else 's'}"]
    else:
        lines.append(f"REASON: {result.reason}")
    return "\n".join(lines) + "\n"


_DESCRIPTIONS = {
    Verdict.POLYNOMIAL: "polynomial: special min ordering found",
    Verdict.NPC_CHAIN: "NP-complete: chain found",
    Verdict.NPC_INVERTIBLE: "NP-complete: invertible pair found",
    Verdict.NOT_WEAKLY_BALANCED: "not weakly balanced: odd red closed walk",
    Verdict.UNSUPPORTED: "unsupported shape",
}


def verdict_text(result: ClassificationResult) -> str:
    """Readable summary of a classification."""
    lines = [_DESCRIPTIONS[result.verdict]]
    if result.mode is not None:
        lines.append(f"  mode: {result.mode.value}")
    cert = result.certificate
    if result.verdict is Verdict.POLYNOMIAL:
        names = ("A", "B") if len(cert.parts) == 2 else ("order",)
        for name, part in zip(names, cert.parts):
            lines.append(f"  {name}: {' < '.join(map(str, part))}")
    elif result.verdict is Verdict.NPC_CHAIN:
        lines += [f"  upper walk: {_words(cert.upper)}", f"  lower walk: {_words(cert.lower)}"]
    elif result.verdict is Verdict.NPC_INVERTIBLE:
        lines.append(f"  pair: {_words(cert.pair)}")
        for label, (x, y) in (("first", cert.walk_pair_1), ("second", cert.walk_pair_2)):
            lines.append(f"  {label} walks: {_words(x)} | {_words(y)}")
    elif result.verdict is Verdict.NOT_WEAKLY_BALANCED:
        lines.append(f"  walk: {_words(cert.walk)} ({cert.red_count} red edge{'' if cert.red_count == 1 else 's'})")
    else:
        lines.append(f"  reason: {result.reason}")
    return "\n".join(lines) + "\n"


def parse_tags(text: str) -> list:
    """``TAG: payload`` lines as ``(tag, tokens, lineno)``; other lines are ignored."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tag, sep, rest = line.partition(":")
        if sep and tag.strip() and " " not in tag.strip():
            out.append((tag.strip(), tuple(rest.split()), lineno))
    return out


def _single(tags, name):
    found = [t for t in tags if t[0] == name]
    if len(found) != 1:
        raise ParseError(f"expected exactly one {name}: line, found {len(found)}")
    return found[0][1]


def ordering_from_tags(tags, special=False) -> MinOrdering:
    parts = [t[1] for t in tags if t[0] == "PART"]
    if not parts:
        raise ParseError("no PART: lines")
    modes = [t[1] for t in tags if t[0] == "MODE"]
    if modes:
        try:
            mode = Mode(modes[0][0] if modes[0] else "")
        except ValueError:
            raise ParseError(f"unknown mode {modes[0]}") from None
    else:
        mode = Mode.BIPARTITE if len(parts) == 2 else Mode.REFLEXIVE
    cls = SpecialMinOrdering if special else MinOrdering
    try:
        return cls(mode, tuple(parts))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def chain_from_tags(tags) -> Chain:
    return Chain(_single(tags, "U"), _single(tags, "D"))


def invertible_pair_from_tags(tags) -> InvertiblePairCertificate:
    pair = _single(tags, "PAIR")
    if len(pair) != 2:
        raise ParseError("PAIR: needs two vertices")
    return InvertiblePairCertificate(
        pair,
        (_single(tags, "W1"), _single(tags, "W1'")),
        (_single(tags, "W2"), _single(tags, "W2'")),
    )


def walk_from_tags(tags) -> OddRedClosedWalk:
    walk = _single(tags, "WALK")
    return OddRedClosedWalk(walk, -1)
