"""Dichotomy classification of bipartite and reflexive signed graphs."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import NotBipartite, NotWeaklyBalanced
from .pairs import InvertiblePairCertificate
from .sgraph import (
    Bipartition,
    CheckResult,
    Mode,
    PASS,
    Sign,
    SignedGraph,
    SwitchingAssignment,
    bipartition,
    fail,
    normalize_weakly_balanced,
)
from .special import Chain, SpecialMinOrdering, special_min_ordering


class Verdict(enum.Enum):
    POLYNOMIAL = "P"
    NPC_CHAIN = "NPC-CHAIN"
    NPC_INVERTIBLE = "NPC-INVPAIR"
    NOT_WEAKLY_BALANCED = "NOT-WB"
    UNSUPPORTED = "UNSUPPORTED"


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    mode: Mode | None = None
    certificate: object = None
    switching: SwitchingAssignment | None = None
    reason: str | None = None

    @property
    def polynomial(self) -> bool:
        return self.verdict is Verdict.POLYNOMIAL

    @property
    def np_complete(self) -> bool:
        return self.verdict in (Verdict.NPC_CHAIN, Verdict.NPC_INVERTIBLE)


def detect_mode(g: SignedGraph, mode=None):
    """Resolve the mode or return a reason string when the shape is unsupported."""
    loops = sum(1 for v in g.vertices if g.has_loop(v))
    if mode is not None:
        mode = Mode(mode)
        if mode is Mode.REFLEXIVE and loops != len(g):
            return None, "reflexive mode needs a loop at every vertex"
        if mode is Mode.BIPARTITE and loops:
            return None, "bipartite mode forbids loops"
        if mode is Mode.GENERAL:
            return None, "only bipartite and reflexive graphs are classified"
        return mode, None
    if g.mode_hint is not Mode.GENERAL:
        return detect_mode(g, g.mode_hint)
    if len(g) and loops == len(g):
        return Mode.REFLEXIVE, None
    if loops == 0:
        return Mode.BIPARTITE, None
    return None, "some but not all vertices carry loops"


def classify(g: SignedGraph, mode=None) -> ClassificationResult:
    mode, reason = detect_mode(g, mode)
    if mode is None:
        return ClassificationResult(Verdict.UNSUPPORTED, reason=reason)
    bip = None
    if mode is Mode.BIPARTITE:
        try:
            bip = bipartition(g)
        except NotBipartite as exc:
            return ClassificationResult(
                Verdict.UNSUPPORTED, mode,
                reason=f"not bipartite (odd cycle {' '.join(map(str, exc.cycle))}); "
                       "irreflexive non-bipartite templates are NP-complete",
            )
    try:
        h, switching = normalize_weakly_balanced(g)
    except NotWeaklyBalanced as exc:
        return ClassificationResult(Verdict.NOT_WEAKLY_BALANCED, mode, exc.walk)
    outcome = special_min_ordering(h, mode, bip)
    if isinstance(outcome, SpecialMinOrdering):
        verdict = Verdict.POLYNOMIAL
    elif isinstance(outcome, Chain):
        verdict = Verdict.NPC_CHAIN
    else:
        assert isinstance(outcome, InvertiblePairCertificate)
        verdict = Verdict.NPC_INVERTIBLE
    return ClassificationResult(verdict, mode, outcome, switching)


# -- bipartite chain graphs and the three forbidden patterns --------------

def is_bipartite_chain_graph(h: SignedGraph, bip: Bipartition | None = None) -> CheckResult:
    """No induced 2K2; the witness is ``(a, b, c, d)`` with edges ab, cd and non-edges ad, cb."""
    bip = bip or bipartition(h)
    for part in bip.parts():
        for i, a in enumerate(part):
            for c in part[i + 1:]:
                only_a = [b for b in h.neighbours(a) if not h.has_edge(c, b)]
                only_c = [d for d in h.neighbours(c) if not h.has_edge(a, d)]
                if only_a and only_c:
                    return fail("induced 2K2", (a, only_a[0], c, only_c[0]))
    return PASS


@dataclass(frozen=True)
class Pattern:
    name: str
    vertices: tuple
    edges: dict = field(hash=False)  # frozenset({x, y}) -> "uni" | "bic"

    def kind(self, x, y):
        return self.edges.get(frozenset((x, y)))


def _pattern(name, vertices, bic, uni):
    edges = {frozenset(e): "bic" for e in bic}
    edges.update({frozenset(e): "uni" for e in uni})
    return Pattern(name, tuple(vertices), edges)


PATTERNS = (
    _pattern("A", "abdc", bic=["bd", "ca"], uni=["ab", "dc"]),
    _pattern("B", "dbac", bic=["db", "ac"], uni=["ba"]),
    _pattern("C", "abcdef", bic=["ac", "af", "df"], uni=["ab", "bd", "be", "ce", "ef"]),
)


@dataclass(frozen=True)
class ForbiddenOccurrence:
    kind: str
    mapping: dict = field(hash=False)


def _edge_kind(h, x, y):
    s = h.sign(x, y)
    if s is None:
        return None
    return "bic" if s is Sign.BICOLOURED else "uni"


def find_induced(h: SignedGraph, pattern: Pattern):
    """First induced copy of ``pattern`` in ``h`` (edge classes uni/bic must match), or None."""
    verts = pattern.vertices
    kind = {(x, y): _edge_kind(h, x, y) for x in h.vertices for y in h.neighbours(x)}
    # candidates for a pattern vertex come from the neighbourhood of an earlier neighbour
    anchor = [next((q for q in verts[:i] if pattern.kind(p, q)), None) for i, p in enumerate(verts)]
    mapping: dict = {}
    used = set()

    def extend(i):
        if i == len(verts):
            return True
        p = verts[i]
        pool = h.vertices if anchor[i] is None else h.neighbours(mapping[anchor[i]])
        for x in pool:
            if x in used:
                continue
            if any(pattern.kind(p, q) != kind.get((x, mapping[q])) for q in verts[:i]):
                continue
            mapping[p] = x
            used.add(x)
            if extend(i + 1):
                return True
            del mapping[p]
            used.discard(x)
        return False

    return dict(mapping) if extend(0) else None


def forbidden_subgraph_check(h: SignedGraph):
    """First induced copy of pattern A, B or C, or None.

    ``h`` must be normalized and its underlying graph a bipartite chain graph.
    """
    if h.has_red_edges():
        raise ValueError("graph must be normalized (no red edges)")
    if h.loops():
        raise ValueError("graph must be bipartite")
    if not is_bipartite_chain_graph(h):
        raise ValueError("underlying graph is not a bipartite chain graph")
    for pattern in PATTERNS:
        found = find_induced(h, pattern)
        if found is not None:
            return ForbiddenOccurrence(pattern.name, found)
    return None
