"""Signed graphs: construction, bipartition, switching, weak balance.

A signed graph stores at most one edge record per unordered vertex pair.
Parallel edges of opposite sign are the same thing as a single bicoloured
edge, so they are merged on construction.  Loops are allowed.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .errors import NotBipartite, NotWeaklyBalanced

Vertex = Hashable


class Sign(enum.Enum):
    BLUE = "+"
    RED = "-"
    BICOLOURED = "+-"

    @classmethod
    def parse(cls, token) -> "Sign":
        if isinstance(token, Sign):
            return token
        if token in ("-+",):
            return cls.BICOLOURED
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"unknown edge sign {token!r}") from None

    @property
    def is_unicoloured(self) -> bool:
        return self is not Sign.BICOLOURED

    def merge(self, other: "Sign") -> "Sign":
        return self if self is other else Sign.BICOLOURED

    def flipped(self) -> "Sign":
        if self is Sign.BLUE:
            return Sign.RED
        if self is Sign.RED:
            return Sign.BLUE
        return self

    def covers(self, other: "Sign") -> bool:
        """True if an edge of this sign can receive an edge of sign ``other``."""
        return self is Sign.BICOLOURED or self is other


class Mode(enum.Enum):
    BIPARTITE = "bipartite"
    REFLEXIVE = "reflexive"
    GENERAL = "general"


class SignedGraph:
    """An immutable signed graph.

    ``edges`` is an iterable of ``(u, v, sign)`` triples; ``sign`` may be a
    :class:`Sign` or one of the strings ``"+"``, ``"-"``, ``"+-"``.
    """

    __slots__ = ("_vertices", "_adj", "mode_hint")

    def __init__(self, vertices: Iterable[Vertex] = (), edges=(), mode_hint: Mode | str | None = None):
        adj: dict = {}
        for v in vertices:
            adj.setdefault(v, {})
        for u, v, s in edges:
            s = Sign.parse(s)
            adj.setdefault(u, {})
            adj.setdefault(v, {})
            old = adj[u].get(v)
            new = s if old is None else old.merge(s)
            adj[u][v] = new
            adj[v][u] = new
        self._vertices = tuple(sorted(adj))
        self._adj = {v: {w: adj[v][w] for w in sorted(adj[v])} for v in self._vertices}
        self.mode_hint = Mode(mode_hint) if mode_hint is not None else Mode.GENERAL
        if self.mode_hint is Mode.REFLEXIVE and not self.is_reflexive():
            raise ValueError("reflexive mode requires a loop at every vertex")
        if self.mode_hint is Mode.BIPARTITE:
            if self.loops():
                raise ValueError("bipartite mode forbids loops")
            bipartition(self)

    # -- queries -------------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self._vertices

    def __len__(self):
        return len(self._vertices)

    def __contains__(self, v):
        return v in self._adj

    def sign(self, u, v) -> Sign | None:
        return self._adj.get(u, {}).get(v)

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def is_bicoloured(self, u, v) -> bool:
        return self._adj.get(u, {}).get(v) is Sign.BICOLOURED

    def neighbours(self, v) -> tuple:
        return tuple(self._adj[v])

    def signed_neighbours(self, v) -> Mapping:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def edges(self) -> list:
        """All edges as ``(u, v, sign)`` with ``u <= v``, sorted."""
        out = []
        for u in self._vertices:
            for v, s in self._adj[u].items():
                if u <= v:
                    out.append((u, v, s))
        return out

    def n_edges(self) -> int:
        return sum(1 for _ in self.edges())

    def loops(self) -> tuple:
        return tuple(v for v in self._vertices if v in self._adj[v])

    def has_loop(self, v) -> bool:
        return v in self._adj[v]

    def is_reflexive(self) -> bool:
        return all(self.has_loop(v) for v in self._vertices)

    def has_red_edges(self) -> bool:
        return any(s is Sign.RED for _, _, s in self.edges())

    def components(self) -> list:
        """Connected components as sorted tuples, ordered by least vertex."""
        seen = set()
        comps = []
        for root in self._vertices:
            if root in seen:
                continue
            seen.add(root)
            comp = [root]
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def subgraph(self, vertices: Iterable[Vertex]) -> "SignedGraph":
        keep = set(vertices)
        return SignedGraph(
            keep,
            ((u, v, s) for u, v, s in self.edges() if u in keep and v in keep),
        )

    def underlying_edges(self) -> list:
        return [(u, v) for u, v, _ in self.edges()]

    # -- dunder --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._adj == other._adj

    def __hash__(self):
        return hash((self._vertices, tuple(self.edges())))

    def __repr__(self):
        body = ", ".join(f"{u}{v}{s.value}" for u, v, s in self.edges())
        return f"SignedGraph(V={list(self._vertices)}, E=[{body}])"


@dataclass(frozen=True)
class Bipartition:
    part_a: frozenset
    part_b: frozenset

    def side(self, v) -> int:
        if v in self.part_a:
            return 0
        if v in self.part_b:
            return 1
        raise KeyError(v)

    def parts(self) -> tuple:
        return (tuple(sorted(self.part_a)), tuple(sorted(self.part_b)))

    def same_part(self, u, v) -> bool:
        return self.side(u) == self.side(v)


@dataclass(frozen=True)
class SwitchingAssignment:
    flipped: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "flipped", frozenset(self.flipped))

    def __contains__(self, v):
        return v in self.flipped


@dataclass(frozen=True)
class OddRedClosedWalk:
    """A closed walk ``v0, ..., vk = v0`` of unicoloured edges with odd red count."""

    walk: tuple
    red_count: int


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a certificate check; truthy iff ``ok``."""

    ok: bool
    reason: str | None = None
    witness: object = None

    def __bool__(self):
        return self.ok


PASS = CheckResult(True)


def fail(reason, witness=None) -> CheckResult:
    return CheckResult(False, reason, witness)


# -- parity 2-colouring ---------------------------------------------------

def _parity_colouring(vertices, edges):
    """2-colour so that ``col[u] ^ col[v] == parity`` on every edge.

    ``edges`` holds ``(u, v, parity)`` triples.  Returns ``(colour, None)`` or
    ``(None, cycle)`` where ``cycle`` is a closed vertex sequence whose edge
    parities sum to an odd number.
    """
    adj: dict = {v: [] for v in vertices}
    for u, v, p in edges:
        adj.setdefault(u, []).append((v, p))
        if u != v:
            adj.setdefault(v, []).append((u, p))
    for v in adj:
        adj[v].sort(key=lambda t: (t[0], t[1]))
    colour: dict = {}
    parent: dict = {}
    for root in sorted(adj):
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, p in adj[x]:
                if y not in colour:
                    colour[y] = colour[x] ^ p
                    parent[y] = x
                    queue.append(y)
                elif colour[y] != colour[x] ^ p:
                    return None, _close_cycle(parent, x, y)
    return colour, None


def _close_cycle(parent, u, w):
    if u == w:
        return (u, u)
    anc_u = [u]
    while parent[anc_u[-1]] is not None:
        anc_u.append(parent[anc_u[-1]])
    on_u = {x: i for i, x in enumerate(anc_u)}
    path_w = [w]
    while path_w[-1] not in on_u:
        path_w.append(parent[path_w[-1]])
    lca = path_w[-1]
    up = anc_u[: on_u[lca] + 1]  # u .. lca
    down = list(reversed(path_w[:-1]))  # after lca .. w
    return tuple(up + down + [u])


def _walk_red_count(walk, sign_of):
    return sum(1 for a, b in zip(walk, walk[1:]) if sign_of(a, b) is Sign.RED)


# -- operations -----------------------------------------------------------

def switch(g: SignedGraph, s) -> SignedGraph:
    """Switch ``g`` at every vertex of ``s``."""
    flipped = s.flipped if isinstance(s, SwitchingAssignment) else frozenset(s)
    unknown = [v for v in flipped if v not in g]
    if unknown:
        raise ValueError(f"switching at unknown vertices {sorted(unknown)}")
    edges = []
    for u, v, sign in g.edges():
        if (u in flipped) != (v in flipped):
            sign = sign.flipped()
        edges.append((u, v, sign))
    return SignedGraph(g.vertices, edges)


def bipartition(g: SignedGraph) -> Bipartition:
    """2-colour the underlying graph; the least vertex of each component goes to part A."""
    colour, cycle = _parity_colouring(g.vertices, ((u, v, 1) for u, v, _ in g.edges()))
    if cycle is not None:
        raise NotBipartite(cycle)
    return Bipartition(
        frozenset(v for v, c in colour.items() if c == 0),
        frozenset(v for v, c in colour.items() if c == 1),
    )


def find_unbalanced_cycle(edges) -> OddRedClosedWalk | None:
    """Return a closed walk with an odd number of red edges, or None.

    ``edges`` holds ``(u, v, sign)`` with sign Blue or Red.
    """
    edges = list(edges)
    signs: dict = {}
    triples = []
    vertices = set()
    for u, v, s in edges:
        s = Sign.parse(s)
        if s is Sign.BICOLOURED:
            raise ValueError("find_unbalanced_cycle takes unicoloured edges only")
        signs[frozenset((u, v))] = s
        triples.append((u, v, 1 if s is Sign.RED else 0))
        vertices.update((u, v))
    _, cycle = _parity_colouring(vertices, triples)
    if cycle is None:
        return None
    red = _walk_red_count(cycle, lambda a, b: signs[frozenset((a, b))])
    return OddRedClosedWalk(tuple(cycle), red)


def normalize_weakly_balanced(g: SignedGraph):
    """Switch ``g`` so that no edge is purely red.

    Returns ``(graph, switching)``.  Raises :class:`NotWeaklyBalanced` with an
    odd red closed walk when no such switching exists.
    """
    triples = [(u, v, 1 if s is Sign.RED else 0) for u, v, s in g.edges() if s.is_unicoloured]
    colour, cycle = _parity_colouring((), triples)
    if cycle is not None:
        raise NotWeaklyBalanced(OddRedClosedWalk(tuple(cycle), _walk_red_count(cycle, g.sign)))
    s = SwitchingAssignment(_smaller_classes(colour, triples))
    return switch(g, s), s


def _smaller_classes(colour, triples) -> frozenset:
    """Per component, the smaller colour class (ties: the class of the least vertex)."""
    adj: dict = {v: [] for v in colour}
    for u, v, _ in triples:
        adj[u].append(v)
        adj[v].append(u)
    flipped = set()
    seen = set()
    for root in sorted(colour):
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        for x in comp:
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
        ones = [v for v in comp if colour[v] != colour[root]]
        zeros = [v for v in comp if colour[v] == colour[root]]
        flipped.update(ones if len(ones) < len(zeros) else zeros)
    return frozenset(flipped)


def is_weakly_balanced(g: SignedGraph) -> bool:
    triples = [(u, v, 1 if s is Sign.RED else 0) for u, v, s in g.edges() if s.is_unicoloured]
    return _parity_colouring((), triples)[1] is None


def is_sign_preserving(g: SignedGraph, h: SignedGraph, f: Mapping) -> bool:
    """Every edge of ``g`` maps onto an edge of ``h`` carrying its sign."""
    for u, v, s in g.edges():
        t = h.sign(f[u], f[v])
        if t is None or not t.covers(s):
            return False
    return True


def verify_homomorphism(g: SignedGraph, h: SignedGraph, f: Mapping, lists: Mapping | None = None) -> CheckResult:
    """Check that ``f`` is a (list) homomorphism of signed graphs ``g -> h``.

    Uses the switching-free characterisation: ``f`` is a homomorphism of
    underlying graphs, bicoloured edges go to bicoloured edges, and every
    closed walk of unicoloured edges with a unicoloured image keeps the
    parity of its red edges.
    """
    missing = [v for v in g.vertices if v not in f]
    if missing:
        return fail("map is not total", missing)
    if lists is not None:
        for v in g.vertices:
            allowed = lists.get(v)
            if allowed is not None and f[v] not in allowed:
                return fail("(d) image outside list", v)
    for u, v, s in g.edges():
        t = h.sign(f[u], f[v])
        if t is None:
            return fail("(a) edge not preserved", (u, v))
        if s is Sign.BICOLOURED and t is not Sign.BICOLOURED:
            return fail("(b) bicoloured edge mapped to unicoloured edge", (u, v))
    parity_edges = []
    for u, v, s in g.edges():
        t = h.sign(f[u], f[v])
        if s.is_unicoloured and t.is_unicoloured:
            # relative sign: red iff g and h signs differ
            parity_edges.append((u, v, Sign.BLUE if s is t else Sign.RED))
    walk = find_unbalanced_cycle(parity_edges)
    if walk is not None:
        return fail("(c) closed walk changes parity", walk)
    return PASS


def verify_odd_red_walk(g: SignedGraph, walk) -> CheckResult:
    """Check that ``walk`` is a closed walk of unicoloured edges with an odd red count."""
    walk = tuple(walk.walk if isinstance(walk, OddRedClosedWalk) else walk)
    if len(walk) < 2 or walk[0] != walk[-1]:
        return fail("walk must be closed and non-empty", walk)
    for a, b in zip(walk, walk[1:]):
        s = g.sign(a, b)
        if s is None:
            return fail(f"{a}{b} is not an edge", walk)
        if s is Sign.BICOLOURED:
            return fail(f"{a}{b} is bicoloured", walk)
    red = _walk_red_count(walk, g.sign)
    if red % 2 == 0:
        return fail(f"walk has an even number ({red}) of red edges", walk)
    return PASS
