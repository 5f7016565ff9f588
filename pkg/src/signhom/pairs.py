"""The pair digraph of a bipartite or reflexive graph.

Nodes are ordered pairs ``(x, y)`` of distinct vertices (from the same part in
the bipartite case).  ``(a, a2)`` dominates ``(b, b2)`` when ``ab`` and
``a2 b2`` are edges and ``a b2`` is not.  Signs are ignored here; only the
underlying graph matters.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .sgraph import Bipartition, CheckResult, Mode, PASS, SignedGraph, bipartition, fail


@dataclass(frozen=True)
class PairDigraph:
    mode: Mode
    nodes: tuple
    succ: Mapping
    pred: Mapping

    def __contains__(self, pair):
        return pair in self.succ

    def arcs(self):
        for p in self.nodes:
            for q in self.succ[p]:
                yield p, q

    def n_arcs(self) -> int:
        return sum(len(s) for s in self.succ.values())

    def dump(self) -> str:
        """Plain arc list, one ``x,y -> u,v`` line per arc."""
        lines = [f"{p[0]},{p[1]} -> {q[0]},{q[1]}" for p, q in self.arcs()]
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class SccDecomposition:
    component: Mapping  # node -> component id
    members: tuple  # id -> sorted tuple of nodes
    coupled: tuple  # id -> id of the component of reversed pairs

    def __len__(self):
        return len(self.members)

    def is_trivial(self, cid) -> bool:
        return len(self.members[cid]) == 1

    def is_self_coupled(self, cid) -> bool:
        return self.coupled[cid] == cid

    def of(self, pair) -> int:
        return self.component[pair]


@dataclass(frozen=True)
class InvertiblePairCertificate:
    """Pair ``(u, u2)`` with two pairs of equal-length avoiding walks.

    ``walk_pair_1`` is ``(u -> u2, u2 -> u)``; ``walk_pair_2`` is
    ``(u2 -> u, u -> u2)``.
    """

    pair: tuple
    walk_pair_1: tuple
    walk_pair_2: tuple


def resolve_mode(h: SignedGraph, mode=None) -> Mode:
    if mode is None:
        if h.mode_hint is not Mode.GENERAL:
            return h.mode_hint
        return Mode.REFLEXIVE if len(h) and h.is_reflexive() else Mode.BIPARTITE
    return Mode(mode)


def _candidate_pairs(h: SignedGraph, mode: Mode, bip: Bipartition | None):
    if mode is Mode.REFLEXIVE:
        groups = [h.vertices]
    else:
        groups = bip.parts()
    for group in groups:
        for x in group:
            for y in group:
                if x != y:
                    yield (x, y)


def build_pair_digraph(h: SignedGraph, mode=None, bip: Bipartition | None = None) -> PairDigraph:
    mode = resolve_mode(h, mode)
    if mode is Mode.REFLEXIVE:
        if not h.is_reflexive():
            raise ValueError("reflexive pair digraph needs a loop at every vertex")
        bip = None
    elif mode is Mode.BIPARTITE:
        if h.loops():
            raise ValueError("bipartite pair digraph needs a loopless graph")
        if bip is None:
            bip = bipartition(h)
    else:
        raise ValueError(f"unsupported mode {mode}")
    nodes = tuple(sorted(_candidate_pairs(h, mode, bip)))
    succ = {p: [] for p in nodes}
    pred = {p: [] for p in nodes}
    for a, a2 in nodes:
        na = h.signed_neighbours(a)
        for b in na:
            for b2 in h.neighbours(a2):
                if b2 not in na:
                    succ[(a, a2)].append((b, b2))
                    pred[(b, b2)].append((a, a2))
    succ = {p: tuple(sorted(v)) for p, v in succ.items()}
    pred = {p: tuple(sorted(v)) for p, v in pred.items()}
    return PairDigraph(mode, nodes, succ, pred)


def strong_components(pd: PairDigraph) -> SccDecomposition:
    """Tarjan's algorithm (iterative); ids follow the least node of each component."""
    index: dict = {}
    low: dict = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in pd.nodes:
        if root in index:
            continue
        work = [(root, iter(pd.succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(pd.succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    component = {p: i for i, c in enumerate(comps) for p in c}
    coupled = tuple(component[(c[0][1], c[0][0])] for c in comps)
    return SccDecomposition(component, tuple(comps), coupled)


def shortest_path(pd: PairDigraph, source, target) -> tuple | None:
    parent = {source: None}
    queue = deque([source])
    while queue and target not in parent:
        p = queue.popleft()
        for q in pd.succ[p]:
            if q not in parent:
                parent[q] = p
                queue.append(q)
    if target not in parent:
        return None
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def _walks_from_path(path):
    return tuple(p[0] for p in path), tuple(p[1] for p in path)


def find_invertible_pair(pd: PairDigraph, scc: SccDecomposition | None = None):
    """Return an :class:`InvertiblePairCertificate`, or None if no pair is invertible."""
    if scc is None:
        scc = strong_components(pd)
    for u, u2 in pd.nodes:
        if scc.component[(u, u2)] != scc.component[(u2, u)]:
            continue
        there = shortest_path(pd, (u, u2), (u2, u))
        back = shortest_path(pd, (u2, u), (u, u2))
        return InvertiblePairCertificate((u, u2), _walks_from_path(there), _walks_from_path(back))
    return None


def is_sink_pair(h: SignedGraph, a, b) -> bool:
    """``(a, b)`` is a sink pair when N(b) is contained in N(a)."""
    if a == b:
        raise ValueError("a sink pair needs two distinct vertices")
    na = h.signed_neighbours(a)
    return all(x in na for x in h.neighbours(b))


def verify_invertible_pair(h: SignedGraph, cert: InvertiblePairCertificate, mode=None,
                           bip: Bipartition | None = None) -> CheckResult:
    """Check an invertible pair certificate against the walk definition only."""
    mode = resolve_mode(h, mode)
    u, u2 = cert.pair
    if u == u2 or u not in h or u2 not in h:
        return fail("pair must be two distinct vertices of the graph", cert.pair)
    if mode is Mode.BIPARTITE:
        if bip is None:
            bip = bipartition(h)
        if not bip.same_part(u, u2):
            return fail("pair vertices lie in different parts", cert.pair)
    expected = (((u, u2), (u2, u)), ((u2, u), (u, u2)))
    for label, walks, ends in zip(("walk pair 1", "walk pair 2"),
                                  (cert.walk_pair_1, cert.walk_pair_2), expected):
        if len(walks) != 2:
            return fail(f"{label}: need exactly two walks")
        x, y = walks
        if len(x) != len(y) or len(x) < 2:
            return fail(f"{label}: walks must have equal length", walks)
        if (x[0], x[-1]) != ends[0] or (y[0], y[-1]) != ends[1]:
            return fail(f"{label}: wrong endpoints", walks)
        for w in (x, y):
            for p, q in zip(w, w[1:]):
                if not h.has_edge(p, q):
                    return fail(f"{label}: {p}{q} is not an edge", walks)
        for i in range(len(x) - 1):
            if h.has_edge(x[i], y[i + 1]):
                return fail(f"{label}: {x[i]} is adjacent to {y[i + 1]}", (i, walks))
    return PASS
