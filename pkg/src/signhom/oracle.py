"""Brute-force reference implementations, used as ground truth in tests.

Nothing here calls the production search code.  The only shared pieces are
the graph data model, the certificate types and their verifiers.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded
from .sgraph import Bipartition, Mode, Sign, SignedGraph, SwitchingAssignment, bipartition, verify_homomorphism

PERMUTATION_CAP = 40320  # number of orderings tried exhaustively (8!)
SEARCH_CAP = 24  # vertices for the pair-variable search beyond the permutation cap
MAPPING_CAP = 6 ** 10
CHAIN_STATE_CAP = 10 ** 6
ENUMERATION_CAP = 5 * 10 ** 6


def _mode_of(h: SignedGraph, mode):
    if mode is not None:
        return Mode(mode)
    if h.mode_hint is not Mode.GENERAL:
        return h.mode_hint
    return Mode.REFLEXIVE if len(h) and all(h.has_loop(v) for v in h.vertices) else Mode.BIPARTITE


def _groups(h, mode, bip):
    if mode is Mode.REFLEXIVE:
        return [tuple(h.vertices)]
    bip = bip or bipartition(h)
    return list(bip.parts())


def _forbidden_quadruples(h, mode, groups):
    """Quadruples ``(a, a2, b2, b)`` where ``a < a2`` together with ``b2 < b`` is forbidden."""
    if mode is Mode.REFLEXIVE:
        arcs = [(u, v) for u in h.vertices for v in h.neighbours(u)]
    else:
        first = set(groups[0])
        arcs = []
        for u in h.vertices:
            for v in h.neighbours(u):
                if u in first:
                    arcs.append((u, v))
    out = []
    for a, b in arcs:
        for a2, b2 in arcs:
            if a != a2 and b != b2 and not h.has_edge(a, b2):
                out.append((a, a2, b2, b))
    return out


def _ordering_type(special):
    # imported lazily to keep module import order simple
    from .ordering import MinOrdering
    from .special import SpecialMinOrdering
    return SpecialMinOrdering if special else MinOrdering


def _special_quadruples(h):
    """``(x, y)`` pairs meaning ``x`` must precede ``y``: bicoloured before unicoloured neighbours."""
    out = set()
    for z in h.vertices:
        nb = h.signed_neighbours(z)
        bic = [x for x, s in nb.items() if s is Sign.BICOLOURED]
        uni = [y for y, s in nb.items() if s is not Sign.BICOLOURED]
        out.update((x, y) for x in bic for y in uni)
    return sorted(out)


def _permutation_search(groups, quads, before, cls, mode):
    sizes = [math.factorial(len(g)) for g in groups]
    if math.prod(sizes) > PERMUTATION_CAP:
        return None, False
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        pos = {v: i for part in combo for i, v in enumerate(part)}
        if any(pos[x] > pos[y] for x, y in before):
            continue
        if any(pos[a] < pos[a2] and pos[b2] < pos[b] for a, a2, b2, b in quads):
            continue
        return cls(mode, combo), True
    return None, True


def _implication_search(h, groups, quads, before, cls, mode):
    """Backtracking over "x < y" facts with propagation.

    Propagation applies transitivity and the implication ``a < a2 => b < b2``
    for every forbidden quadruple.
    """
    implied: dict = {}
    for a, a2, b2, b in quads:
        implied.setdefault((a, a2), set()).add((b, b2))
        implied.setdefault((b2, b), set()).add((a2, a))
    part_of = {v: k for k, g in enumerate(groups) for v in g}
    pairs = [(x, y) for g in groups for i, x in enumerate(g) for y in g[i + 1:]]

    def propagate(less, facts):
        less = set(less)
        queue = deque(facts)
        while queue:
            x, y = queue.popleft()
            if (x, y) in less:
                continue
            if (y, x) in less or x == y:
                return None
            less.add((x, y))
            queue.extend(implied.get((x, y), ()))
            for w in groups[part_of[x]]:
                if (w, x) in less:
                    queue.append((w, y))
                if (y, w) in less:
                    queue.append((x, w))
        return less

    start = propagate(set(), before)
    if start is None:
        return None
    stack = [start]
    while stack:
        less = stack.pop()
        open_pair = next(((x, y) for x, y in pairs if (x, y) not in less and (y, x) not in less), None)
        if open_pair is None:
            parts = []
            for g in groups:
                parts.append(sorted(g, key=lambda v: sum(1 for w in g if (w, v) in less)))
            return cls(mode, parts)
        x, y = open_pair
        for fact in ((y, x), (x, y)):  # the second choice is explored first
            nxt = propagate(less, [fact])
            if nxt is not None:
                stack.append(nxt)
    return None


def _ordering_search(h, mode, d_init, bip, special):
    mode = _mode_of(h, mode)
    groups = _groups(h, mode, bip)
    if len(h) > SEARCH_CAP:
        raise CapExceeded(f"ordering search limited to {SEARCH_CAP} vertices")
    quads = _forbidden_quadruples(h, mode, groups)
    before = sorted(set(tuple(p) for p in d_init) | (set(_special_quadruples(h)) if special else set()))
    part_of = {v: k for k, g in enumerate(groups) for v in g}
    for x, y in before:
        if part_of[x] != part_of[y]:
            return None
    cls = _ordering_type(special)
    result, done = _permutation_search(groups, quads, before, cls, mode)
    if done:
        return result
    return _implication_search(h, groups, quads, before, cls, mode)


def brute_min_ordering(h: SignedGraph, mode=None, d_init=(), bip: Bipartition | None = None):
    """Lexicographically first min ordering extending ``d_init``, or None.

    Exhaustive over orderings up to :data:`PERMUTATION_CAP`; beyond that an
    exact backtracking search over pair orientations.
    """
    return _ordering_search(h, mode, d_init, bip, special=False)


def brute_special_min_ordering(h: SignedGraph, mode=None, bip: Bipartition | None = None):
    """First special min ordering of a normalized signed graph, or None."""
    if h.has_red_edges():
        raise ValueError("graph must be normalized (no red edges)")
    return _ordering_search(h, mode, (), bip, special=True)


def brute_invertible_pair(h: SignedGraph, mode=None, bip: Bipartition | None = None):
    """First pair ``(u, u2)`` admitting both walk pairs of the definition, or None.

    Searches synchronised walk pairs: a step ``(v, w) -> (v2, w2)`` needs
    edges ``v v2`` and ``w w2`` and ``v`` non-adjacent to ``w2``.
    """
    mode = _mode_of(h, mode)
    groups = _groups(h, mode, bip)
    if len(h) > 40:
        raise CapExceeded("invertible pair search limited to 40 vertices")

    def step(state):
        v, w = state
        for v2 in h.neighbours(v):
            for w2 in h.neighbours(w):
                if not h.has_edge(v, w2):
                    yield (v2, w2)

    def reaches(src, dst):
        seen = {src}
        queue = deque([src])
        while queue:
            s = queue.popleft()
            for t in step(s):
                if t == dst:
                    return True
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return False

    for g in groups:
        for u in g:
            for u2 in g:
                if u != u2 and reaches((u, u2), (u2, u)) and reaches((u2, u), (u, u2)):
                    return (u, u2)
    return None


def _chain_middle_ok(h, d, u, d2, u2):
    a, b = h.sign(u, u2), h.sign(d, d2)
    if a is None or b is None:
        return False
    if not h.has_edge(d, u2):
        return True
    return a is Sign.BICOLOURED and b is Sign.BICOLOURED and not h.is_bicoloured(d, u2)


def brute_chain_search(h: SignedGraph, max_len: int | None = None):
    """Shortest chain (by walk length ``k``) with ``k <= max_len``, or None.

    BFS over synchronised states ``(d_i, u_i)``.  ``max_len`` defaults to
    ``2 * |V|``; pass ``0`` for the complete bound ``|V|**2 + 1``.
    """
    from .special import Chain

    n = len(h)
    if max_len is None:
        max_len = 2 * n
    elif max_len == 0:
        max_len = n * n + 1
    if n * n > CHAIN_STATE_CAP:
        raise CapExceeded("chain search state space too large")
    parent: dict = {}
    frontier = []
    for u in h.vertices:
        nb = h.signed_neighbours(u)
        for u1, s1 in nb.items():
            if s1 is Sign.BICOLOURED:
                continue
            for d1, s2 in nb.items():
                if s2 is Sign.BICOLOURED and (d1, u1) not in parent:
                    parent[(d1, u1)] = ("start", u)
                    frontier.append((d1, u1))
    k = 1
    while frontier and k < max_len:
        # try to finish every state at length k + 1
        for d, u in frontier:
            for v, s in h.signed_neighbours(u).items():
                t = h.sign(d, v)
                if s is Sign.BICOLOURED and t is not None and t is not Sign.BICOLOURED:
                    walk_d, walk_u = [v], [v]
                    state = (d, u)
                    while True:
                        walk_d.append(state[0])
                        walk_u.append(state[1])
                        prev = parent[state]
                        if prev[0] == "start":
                            walk_d.append(prev[1])
                            walk_u.append(prev[1])
                            break
                        state = prev[1]
                    return Chain(tuple(reversed(walk_u)), tuple(reversed(walk_d)))
        if k + 1 >= max_len:
            break
        nxt = []
        for d, u in frontier:
            for u2 in h.neighbours(u):
                for d2 in h.neighbours(d):
                    if (d2, u2) not in parent and _chain_middle_ok(h, d, u, d2, u2):
                        parent[(d2, u2)] = ("step", (d, u))
                        nxt.append((d2, u2))
        frontier = nxt
        k += 1
    return None


def brute_list_hom(inst):
    """First list homomorphism in lexicographic order, or None.

    Backtracking over vertices in sorted order; partial maps are pruned when an
    edge is lost or a closed walk with a unicoloured image changes parity.
    """
    from .solver import HomomorphismResult

    g, h = inst.g, inst.template
    order = list(g.vertices)
    lists = {v: sorted(inst.lists.get(v, h.vertices)) for v in order}
    if math.prod(max(1, len(lists[v])) for v in order) > MAPPING_CAP:
        raise CapExceeded("mapping enumeration too large")
    earlier = {v: [w for w in g.neighbours(v) if order.index(w) <= order.index(v)] for v in order}

    def find(uf, v):
        par = 0
        while uf[v][0] != v:
            par ^= uf[v][1]
            v = uf[v][0]
        return v, par

    def extend(i, f, uf):
        if i == len(order):
            yield dict(f), uf
            return
        v = order[i]
        for x in lists[v]:
            ok = True
            new_uf = dict(uf)
            new_uf[v] = (v, 0)
            for w in earlier[v]:
                y = x if w == v else f[w]
                s, t = g.sign(v, w), h.sign(x, y)
                if t is None or (s is Sign.BICOLOURED and t is not Sign.BICOLOURED):
                    ok = False
                    break
                if s is not Sign.BICOLOURED and t is not Sign.BICOLOURED:
                    rel = 0 if s is t else 1
                    (rv, pv), (rw, pw) = find(new_uf, v), find(new_uf, w)
                    if rv == rw:
                        if pv ^ pw != rel:
                            ok = False
                            break
                    else:
                        new_uf[rv] = (rw, pv ^ pw ^ rel)
            if not ok:
                continue
            f[v] = x
            yield from extend(i + 1, f, new_uf)
            del f[v]

    for f, uf in extend(0, {}, {}):
        if verify_homomorphism(g, h, f, inst.lists):
            flipped = frozenset(v for v in order if find(uf, v)[1] == 1)
            return HomomorphismResult(f, SwitchingAssignment(flipped))
    return None


# -- enumeration ----------------------------------------------------------

@dataclass(frozen=True)
class EnumerationSpec:
    """Which labeled signed graphs to enumerate.

    Bipartite graphs use vertices ``a1..ap`` and ``b1..bq``; every cross pair
    is absent or carries one of ``signs``.  Reflexive graphs use ``v1..vn``;
    every vertex has a loop signed from ``loop_signs``.
    """

    parts: tuple | None = None
    n: int | None = None
    reflexive: bool = False
    signs: tuple = ("+", "+-")
    loop_signs: tuple = ("+", "+-")
    weakly_balanced: bool = False
    chain_graph: bool = False
    connected: bool = False
    iso_reduced: bool = False

    def slots(self):
        if self.reflexive:
            vs = [f"v{i}" for i in range(1, self.n + 1)]
            return vs, [(u, u) for u in vs] + list(itertools.combinations(vs, 2))
        p, q = self.parts
        a = [f"a{i}" for i in range(1, p + 1)]
        b = [f"b{i}" for i in range(1, q + 1)]
        return a + b, [(x, y) for x in a for y in b]

    def size(self) -> int:
        vs, slots = self.slots()
        if self.reflexive:
            n = len(vs)
            return len(self.loop_signs) ** n * (len(self.signs) + 1) ** (len(slots) - n)
        return (len(self.signs) + 1) ** len(slots)


def _connected(vertices, edges):
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if not vertices:
        return True
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == len(vertices)


def _has_induced_2k2(edge_set, a_side, b_side):
    for x, y in itertools.combinations(a_side, 2):
        for u in b_side:
            for w in b_side:
                if u != w and (x, u) in edge_set and (y, w) in edge_set \
                        and (x, w) not in edge_set and (y, u) not in edge_set:
                    return True
    return False


def _weakly_balanced(vertices, signed):
    colour = {}
    adj = {v: [] for v in vertices}
    for (u, v), s in signed:
        if s in ("+", "-"):
            p = 1 if s == "-" else 0
            adj[u].append((v, p))
            adj[v].append((u, p))
    for root in vertices:
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y, p in adj[x]:
                if y not in colour:
                    colour[y] = colour[x] ^ p
                    stack.append(y)
                elif colour[y] != colour[x] ^ p:
                    return False
    return True


def _reflexive_iso_patterns(n, loop_states, pair_states):
    """One slot pattern per isomorphism class of reflexive graphs on ``n`` vertices.

    Patterns are mixed-radix codes (loop slots first, then pairs in
    lexicographic order); the representative of a class is its least code
    over all ``n!`` relabelings.  numpy applies one relabeling to every
    code at once.
    """
    import numpy as np

    pairs = list(itertools.combinations(range(n), 2))
    radix = [len(loop_states)] * n + [len(pair_states)] * len(pairs)
    total = math.prod(radix)
    weights = np.ones(len(radix), dtype=np.int64)
    for j in range(len(radix) - 2, -1, -1):
        weights[j] = weights[j + 1] * radix[j + 1]
    codes = np.arange(total, dtype=np.int64)
    digits = [(codes // weights[j]) % radix[j] for j in range(len(radix))]
    pair_index = {p: n + i for i, p in enumerate(pairs)}
    best = codes.copy()
    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        src = list(perm) + [pair_index[tuple(sorted((perm[x], perm[y])))] for x, y in pairs]
        image = np.zeros(total, dtype=np.int64)
        for j, col in enumerate(src):
            image += digits[col] * weights[j]
        np.minimum(best, image, out=best)
    for code in codes[best == codes].tolist():
        loops = [loop_states[(code // int(weights[j])) % radix[j]] for j in range(n)]
        rest = [pair_states[(code // int(weights[j])) % radix[j]] for j in range(n, len(radix))]
        yield tuple(loops + rest)


def enumerate_signed_graphs(spec: EnumerationSpec):
    """Yield every labeled signed graph meeting ``spec`` in a fixed order."""
    if spec.size() > ENUMERATION_CAP:
        raise CapExceeded(f"{spec.size()} graphs exceed the enumeration cap")
    vs, slots = spec.slots()
    mode = Mode.REFLEXIVE if spec.reflexive else Mode.BIPARTITE
    if spec.reflexive:
        n = len(vs)
        pair_slots = slots[n:]
        extra = (None,) + tuple(spec.signs)
        if spec.iso_reduced:
            patterns = _reflexive_iso_patterns(n, tuple(spec.loop_signs), extra)
        else:
            patterns = (loops + rest for loops in itertools.product(spec.loop_signs, repeat=n)
                        for rest in itertools.product(extra, repeat=len(pair_slots)))
    else:
        if spec.iso_reduced:
            raise ValueError("iso reduction is implemented for reflexive graphs only")
        yield from _bipartite_stream(spec, vs, slots)
        return
    for pattern in patterns:
        signed = [(slot, s) for slot, s in zip(slots, pattern) if s is not None]
        if spec.connected and not _connected(vs, [slot for slot, _ in signed]):
            continue
        if spec.weakly_balanced and not _weakly_balanced(vs, signed):
            continue
        yield SignedGraph(vs, [(u, v, s) for (u, v), s in signed], mode_hint=mode)


def _bipartite_stream(spec, vs, slots):
    # underlying edge sets first, so the structural filters run once per set
    a_side = vs[: spec.parts[0]]
    b_side = vs[spec.parts[0]:]
    for mask in itertools.product((False, True), repeat=len(slots)):
        present = [slot for slot, on in zip(slots, mask) if on]
        if spec.chain_graph and _has_induced_2k2(set(present), a_side, b_side):
            continue
        if spec.connected and not _connected(vs, present):
            continue
        for signs in itertools.product(spec.signs, repeat=len(present)):
            signed = list(zip(present, signs))
            if spec.weakly_balanced and not _weakly_balanced(vs, signed):
                continue
            yield SignedGraph(vs, [(u, v, s) for (u, v), s in signed], mode_hint=Mode.BIPARTITE)


def bipartite_splits(max_vertices: int, min_part: int = 1):
    """Part sizes ``(p, q)`` with ``min_part <= p <= q`` and ``p + q <= max_vertices``."""
    return [(p, q) for total in range(2, max_vertices + 1)
            for p in range(min_part, total // 2 + 1) for q in [total - p]]
