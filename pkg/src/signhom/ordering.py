"""Min orderings of bipartite and reflexive graphs, and their extension.

:func:`extend_to_min_ordering` places the strong components of the pair
digraph one at a time into a growing relation ``D`` (and their coupled
components into ``D'``).  A component is only placed once it is ripe, i.e.
all of its out-arcs already land in ``D``.  When a ripe component would
close a circuit in ``D``, the circuit itself tells us which other component
to place instead; three cases cover every circuit.

Disconnected graphs are ordered component by component and the blocks are
concatenated.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import BadSeed, ConflictingPair, InternalInvariantViolation, InvertiblePairFound
from .pairs import (
    PairDigraph,
    SccDecomposition,
    build_pair_digraph,
    find_invertible_pair,
    resolve_mode,
    strong_components,
)
from .sgraph import Bipartition, CheckResult, Mode, PASS, SignedGraph, bipartition, fail


@dataclass(frozen=True)
class PairRelation:
    """A set of ordered pairs read as ``x < y`` constraints."""

    pairs: frozenset

    def __init__(self, pairs: Iterable = ()):
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in pairs))

    def __contains__(self, pair):
        return pair in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def reversed(self) -> "PairRelation":
        return PairRelation((y, x) for x, y in self.pairs)


@dataclass(frozen=True)
class Circuit:
    """Vertices ``x0, ..., xn`` with every ``(xi, xi+1)`` (cyclically) in a relation."""

    vertices: tuple

    def pairs(self) -> tuple:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class MinOrdering:
    """One linear order per part (bipartite) or a single order (reflexive)."""

    mode: Mode
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))
        pos = {}
        for k, part in enumerate(self.parts):
            for i, v in enumerate(part):
                if v in pos:
                    raise ValueError(f"vertex {v!r} appears twice in the ordering")
                pos[v] = (k, i)
        object.__setattr__(self, "_pos", pos)

    def position(self, v) -> int:
        return self._pos[v][1]

    def part_of(self, v) -> int:
        return self._pos[v][0]

    def precedes(self, x, y) -> bool:
        px, py = self._pos[x], self._pos[y]
        if px[0] != py[0]:
            raise ValueError(f"{x!r} and {y!r} are in different parts")
        return px[1] < py[1]

    def key(self):
        """Sort key for vertices: position within their part."""
        return lambda v: self._pos[v][1]

    def vertices(self):
        return [v for part in self.parts for v in part]

    def lines(self) -> list:
        return [" ".join(str(v) for v in part) for part in self.parts]


# -- relation helpers -----------------------------------------------------

def _successor_map(pairs):
    succ: dict = {}
    for x, y in pairs:
        succ.setdefault(x, []).append(y)
        succ.setdefault(y, [])
    for x in succ:
        succ[x].sort()
    return succ


def find_circuit(rel) -> Circuit | None:
    """Shortest directed cycle of the relation digraph ``x -> y`` for ``(x, y)`` in ``rel``."""
    pairs = rel.pairs if isinstance(rel, PairRelation) else set(rel)
    succ = _successor_map(pairs)
    best = None
    for s in sorted(succ):
        parent = {s: None}
        dist = {s: 0}
        queue = deque([s])
        found = None
        while queue and found is None:
            x = queue.popleft()
            if best is not None and dist[x] + 1 >= len(best):
                break
            for y in succ[x]:
                if y == s:
                    found = x
                    break
                if y not in parent:
                    parent[y] = x
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if found is not None:
            path = [found]
            while path[-1] != s:
                path.append(parent[path[-1]])
            cycle = tuple(reversed(path))
            if best is None or len(cycle) < len(best):
                best = cycle
    return Circuit(best) if best is not None else None


def _reach(pd: PairDigraph, seeds):
    """BFS closure of ``seeds`` in ``pd`` with parent pointers."""
    parent = {}
    queue = deque()
    for p in sorted(seeds):
        if p not in parent:
            parent[p] = None
            queue.append(p)
    while queue:
        p = queue.popleft()
        for q in pd.succ[p]:
            if q not in parent:
                parent[q] = p
                queue.append(q)
    return parent


def _trace(parent, node):
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def closure_under_domination(pd: PairDigraph, seed) -> PairRelation:
    """All pairs reachable from ``seed`` in the pair digraph."""
    seed = set(seed)
    missing = [p for p in seed if p not in pd]
    if missing:
        raise ValueError(f"pairs {sorted(missing)} are not nodes of the pair digraph")
    parent = _reach(pd, seed)
    for x, y in sorted(parent):
        if (y, x) in parent:
            raise ConflictingPair((x, y), _trace(parent, (x, y)), _trace(parent, (y, x)))
    return PairRelation(parent)


def _close(pd: PairDigraph, base, new):
    """Least superset of ``base | new`` closed under domination and transitivity.

    ``base`` must already be closed.  Returns None when the closure would
    contain both a pair and its reverse (or a pair ``(x, x)``).
    """
    rel = set(base)
    out: dict = {}
    inc: dict = {}
    for x, y in rel:
        out.setdefault(x, set()).add(y)
        inc.setdefault(y, set()).add(x)
    queue = deque(new)
    while queue:
        x, y = queue.popleft()
        if (x, y) in rel:
            continue
        if x == y or (y, x) in rel:
            return None
        rel.add((x, y))
        out.setdefault(x, set()).add(y)
        inc.setdefault(y, set()).add(x)
        queue.extend(pd.succ.get((x, y), ()))
        queue.extend((w, y) for w in inc.get(x, ()))
        queue.extend((x, z) for z in out.get(y, ()))
    return rel


def _saturate(pd: PairDigraph, pairs):
    return _close(pd, (), sorted(pairs))


# -- verification ---------------------------------------------------------

def _oriented_edges(h: SignedGraph, mode: Mode, ordering: MinOrdering):
    if mode is Mode.REFLEXIVE:
        out = []
        for u, v, _ in h.edges():
            out.append((u, v))
            if u != v:
                out.append((v, u))
        return out
    first = set(ordering.parts[0]) if ordering.parts else set()
    return [(u, v) if u in first else (v, u) for u, v, _ in h.edges()]


def verify_min_ordering(h: SignedGraph, mode, ordering: MinOrdering, d_init=None) -> CheckResult:
    """Check the min ordering implication over all pairs of edges, and ``d_init``.

    On failure the witness is a quadruple ``(a, b, a2, b2)``: edges ``ab`` and
    ``a2 b2`` with ``a < a2``, ``b2 < b`` but ``a b2`` missing.
    """
    mode = resolve_mode(h, mode)
    placed = ordering.vertices()
    if sorted(placed) != list(h.vertices):
        return fail("ordering is not a permutation of the vertex set")
    if mode is Mode.REFLEXIVE:
        if len(ordering.parts) != 1:
            return fail("reflexive ordering must have exactly one part")
    else:
        if len(ordering.parts) != 2:
            return fail("bipartite ordering must have exactly two parts")
        for u, v, _ in h.edges():
            if ordering.part_of(u) == ordering.part_of(v):
                return fail("edge inside one part", (u, v))
    pos = {v: ordering.position(v) for v in placed}
    edges = _oriented_edges(h, mode, ordering)
    for a, b in edges:
        for a2, b2 in edges:
            if pos[a] < pos[a2] and pos[b2] < pos[b] and not h.has_edge(a, b2):
                return fail("min ordering violated", (a, b, a2, b2))
    if d_init is not None:
        for x, y in d_init:
            if ordering.part_of(x) != ordering.part_of(y) or not ordering.precedes(x, y):
                return fail("seed pair not respected", (x, y))
    return PASS


# -- the extension engine -------------------------------------------------

class _NoChoice(Exception):
    """The case rule for a circuit produced no placeable component."""


class _Engine:
    """Ripe-component placement on the pair digraph of one connected component.

    Besides ``D`` the engine keeps ``closed``, the closure of ``D`` under
    domination and transitivity.  A candidate is only placed if closing with
    it stays conflict-free: a circuit-free, domination-closed ``D`` can still
    force both ``(x, y)`` and ``(y, x)`` through transitivity, and then no
    ordering extends it.
    """

    def __init__(self, pd: PairDigraph, scc: SccDecomposition, seed, check: bool, trace):
        self.pd = pd
        self.scc = scc
        self.check = check
        self.trace = trace
        closed = _saturate(pd, seed)
        if closed is None:
            raise BadSeed("seed forces a circuit through transitivity")
        self.D = set(closed)
        self.closed = closed
        self.placed = set()
        self._sync()

    def _sync(self):
        for cid, members in enumerate(self.scc.members):
            if members[0] in self.D:
                self.placed.add(cid)
                self.placed.add(self.scc.coupled[cid])

    def _is_ripe(self, members) -> bool:
        inside = set(members)
        return all(q in self.D or q in inside for p in members for q in self.pd.succ[p])

    def _try(self, cid):
        if cid in self.placed:
            return None
        return _close(self.pd, self.closed, self.scc.members[cid])

    def _add(self, cid, closed, case, absorb=False):
        self.D.update(self.scc.members[cid])
        if absorb:
            # the choice may not be ripe; taking the whole closure keeps D closed
            self.D = set(closed)
        self.closed = closed
        self._sync()
        if self.trace is not None:
            self.trace.append((case, self.scc.members[cid]))
        if self.check:
            self._check_invariants()

    def _check_invariants(self):
        circuit = find_circuit(self.D)
        if circuit is not None:
            raise InternalInvariantViolation(f"(i) circuit {circuit.vertices} in D")
        reverse = {(y, x) for x, y in self.D}
        for members in self.scc.members:
            status = {(p in self.D, p in reverse) for p in members}
            if len(status) != 1 or (True, True) in status:
                raise InternalInvariantViolation(f"(ii) strong component {members} is split")
        if self.D & reverse:
            raise InternalInvariantViolation("(iii) D meets its reverse")
        for p in self.D:
            for q in self.pd.succ[p]:
                if q not in self.D:
                    raise InternalInvariantViolation(f"(iv) arc {p} -> {q} leaves D")

    def _singleton(self, pair):
        if pair not in self.pd:
            return None
        cid = self.scc.component[pair]
        if not self.scc.is_trivial(cid) or not self._is_ripe((pair,)):
            return None
        closed = self._try(cid)
        return None if closed is None else (cid, closed)

    def run(self):
        n_components = len(self.scc)
        steps = 0
        while len(self.placed) < n_components:
            steps += 1
            if steps > n_components:
                raise InternalInvariantViolation("placement loop did not terminate")
            ripe = next(
                (cid for cid in range(n_components)
                 if cid not in self.placed and self._is_ripe(self.scc.members[cid])),
                None,
            )
            if ripe is None:
                raise InternalInvariantViolation("no ripe strong component")
            members = self.scc.members[ripe]
            circuit = find_circuit(self.D | set(members))
            if circuit is None:
                closed = self._try(ripe)
                if closed is not None:
                    self._add(ripe, closed, "ripe")
                    continue
                reason = "closure"
            else:
                try:
                    cid, closed, case = self._repair(ripe, circuit)
                    self._add(cid, closed, case)
                    continue
                except _NoChoice as exc:
                    reason = str(exc)
            # the rule gave nothing usable: the coupled component, then any component
            order = [self.scc.coupled[ripe]] + list(range(n_components))
            for cid in order:
                closed = self._try(cid)
                if closed is not None:
                    self._add(cid, closed, f"fallback-{reason}", absorb=True)
                    break
            else:
                raise InternalInvariantViolation("every unplaced component conflicts with D")
        return self.D

    def _repair(self, ripe, circuit: Circuit):
        members = set(self.scc.members[ripe])
        pairs = circuit.pairs()
        # rotate so that the last pair of the circuit lies in the ripe component
        last = max(i for i, p in enumerate(pairs) if p in members)
        xs = circuit.vertices[last + 1:] + circuit.vertices[: last + 1]
        m = len(xs)
        cyc = [(xs[i], xs[(i + 1) % m]) for i in range(m)]
        trivial = [self.scc.is_trivial(self.scc.component[p]) for p in cyc]
        if all(trivial):
            for i in range(m):
                found = self._singleton((xs[i], xs[(i + 2) % m]))
                if found:
                    return found + ("case1",)
            raise _NoChoice("case1")
        if not any(trivial):
            partner = self.scc.coupled[ripe]
            if not self._is_ripe(self.scc.members[partner]):
                raise _NoChoice("case2")
            closed = self._try(partner)
            if closed is None:
                raise _NoChoice("case2")
            return partner, closed, "case2"
        for i in range(m):
            if not trivial[i] and trivial[(i + 1) % m]:
                found = self._singleton((xs[i], xs[(i + 2) % m]))
                if found:
                    return found + ("case3",)
        raise _NoChoice("case3")


def _order_from_relation(vertices, rel):
    preds = {v: 0 for v in vertices}
    for x, y in rel:
        if y in preds and x in preds:
            preds[y] += 1
    order = sorted(vertices, key=lambda v: (preds[v], v))
    if [preds[v] for v in order] != list(range(len(order))):
        raise InternalInvariantViolation("final relation is not a linear order")
    return order


def _topological(nodes, arcs, priority):
    indeg = {v: 0 for v in nodes}
    out = {v: [] for v in nodes}
    for x, y in arcs:
        out[x].append(y)
        indeg[y] += 1
    heap = [(priority(v), v) for v in nodes if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, (priority(w), w))
    return order if len(order) == len(nodes) else None


def check_seed(pd: PairDigraph, d_init) -> set:
    """Validate a seed for extension; returns it as a set or raises :class:`BadSeed`."""
    seed = {tuple(p) for p in d_init}
    for p in sorted(seed):
        if p not in pd:
            raise BadSeed(f"{p} is not a pair of distinct vertices from one part")
    for p in sorted(seed):
        for q in pd.succ[p]:
            if q not in seed:
                raise BadSeed(f"seed is not closed under domination: {p} dominates {q}")
    circuit = find_circuit(seed)
    if circuit is not None:
        raise BadSeed(f"seed contains the circuit {list(circuit.vertices)}", circuit)
    return seed


def extend_to_min_ordering(h: SignedGraph, mode=None, d_init=(), bip: Bipartition | None = None,
                           check_invariants: bool = True, trace: list | None = None) -> MinOrdering:
    """Min ordering of ``h`` with ``x < y`` for every ``(x, y)`` in ``d_init``.

    ``d_init`` must be closed under domination and circuit-free.  Raises
    :class:`InvertiblePairFound` when no min ordering exists and
    :class:`BadSeed` when the seed is unusable.  ``trace`` receives one
    ``(case, pairs)`` record per placed strong component.
    """
    mode = resolve_mode(h, mode)
    if mode is Mode.BIPARTITE and bip is None:
        bip = bipartition(h)
    pd = build_pair_digraph(h, mode, bip)
    seed = check_seed(pd, d_init)
    scc_full = strong_components(pd)
    cert = find_invertible_pair(pd, scc_full)
    if cert is not None:
        raise InvertiblePairFound(cert)
    saturated = _saturate(pd, seed)
    if saturated is None:
        raise BadSeed("seed forces a circuit through transitivity")

    components = h.components()
    comp_of = {v: i for i, c in enumerate(components) for v in c}
    isolated = {c[0] for c in components if len(c) == 1 and h.degree(c[0]) == 0}
    groups = [g for g in (bip.parts() if mode is Mode.BIPARTITE else (h.vertices,))]

    blocks = {}
    for i, comp in enumerate(components):
        if comp[0] in isolated:
            continue
        sub = h.subgraph(comp)
        sub_bip = None
        if mode is Mode.BIPARTITE:
            sub_bip = Bipartition(bip.part_a & set(comp), bip.part_b & set(comp))
        sub_pd = build_pair_digraph(sub, mode, sub_bip)
        sub_seed = {p for p in saturated if p in sub_pd}
        engine = _Engine(sub_pd, strong_components(sub_pd), sub_seed, check_invariants, trace)
        rel = engine.run()
        blocks[i] = [_order_from_relation([v for v in g if comp_of[v] == i], rel) for g in groups]

    cross = {(comp_of[x], comp_of[y]) for x, y in saturated
             if comp_of[x] != comp_of[y] and x not in isolated and y not in isolated}
    comp_order = _topological(sorted(blocks), cross, priority=lambda i: components[i][0])
    if comp_order is None:
        raise BadSeed("seed orders the connected components cyclically")

    parts = []
    for k, g in enumerate(groups):
        chain = [v for i in comp_order for v in blocks[i][k]]
        members = set(g)
        iso_here = sorted(members & isolated)
        if not iso_here:
            parts.append(chain)
            continue
        rank = {v: j for j, v in enumerate(chain)}
        arcs = list(zip(chain, chain[1:]))
        arcs += [(x, y) for x, y in saturated if x in members and (x in isolated or y in isolated)]
        order = _topological(list(members), arcs,
                             priority=lambda v: (1, v) if v in isolated else (0, rank[v]))
        if order is None:
            raise InternalInvariantViolation("isolated vertices cannot be inserted")
        parts.append(order)
    result = MinOrdering(mode, parts)
    if check_invariants:
        ok = verify_min_ordering(h, mode, result, d_init)
        if not ok:
            raise InternalInvariantViolation(f"produced ordering fails verification: {ok.reason} {ok.witness}")
    return result


def min_ordering(h: SignedGraph, mode=None, bip: Bipartition | None = None) -> MinOrdering:
    return extend_to_min_ordering(h, mode, (), bip)
