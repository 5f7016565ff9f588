"""Polynomial list-homomorphism solver for templates with a special min ordering.

Each phase runs arc consistency, maps every vertex to the minimum of its
list, and looks for a closed walk of unicoloured edges that lands on blue
template edges with an odd number of red edges.  If one exists, the template
vertices on its image are removed from the lists of the walk's vertices and
the next phase starts.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .classify import classify
from .errors import InternalInvariantViolation, NotBipartite, NotNormalized, NotPolynomial
from .ordering import MinOrdering
from .sgraph import (
    Mode,
    OddRedClosedWalk,
    Sign,
    SignedGraph,
    SwitchingAssignment,
    _parity_colouring,
    bipartition,
    find_unbalanced_cycle,
    is_sign_preserving,
    switch,
    verify_homomorphism,
)


@dataclass
class ListsInstance:
    g: SignedGraph
    template: SignedGraph
    lists: Mapping = field(default_factory=dict)  # missing vertex means the full list

    def __post_init__(self):
        extra = {x for v, allowed in self.lists.items() for x in allowed if x not in self.template}
        if extra:
            raise ValueError(f"list entries outside the template: {sorted(map(str, extra))}")
        unknown = [v for v in self.lists if v not in self.g]
        if unknown:
            raise ValueError(f"lists given for unknown vertices: {sorted(map(str, unknown))}")

    def full_lists(self) -> dict:
        everything = frozenset(self.template.vertices)
        return {v: frozenset(self.lists.get(v, everything)) for v in self.g.vertices}


@dataclass(frozen=True)
class HomomorphismResult:
    assignment: dict
    switching: SwitchingAssignment


@dataclass(frozen=True)
class Violation:
    walk: OddRedClosedWalk
    image: frozenset


@dataclass(frozen=True)
class Phase:
    component: int
    index: int
    assignment: dict
    violation: Violation | None


def edge_relation(g: SignedGraph, h: SignedGraph):
    """Allowed images per edge kind: bicoloured edges need bicoloured template edges."""
    every = {x: frozenset(h.neighbours(x)) for x in h.vertices}
    bic = {x: frozenset(y for y in h.neighbours(x) if h.sign(x, y) is Sign.BICOLOURED)
           for x in h.vertices}
    return {
        frozenset((u, v)): (bic if s is Sign.BICOLOURED else every)
        for u, v, s in g.edges()
    }


def arc_consistency(inst: ListsInstance, relation=None, lists=None):
    """Reduce lists to the maximal arc-consistent fixpoint.

    Returns ``(lists, None)`` or ``(None, v)`` with ``v`` the first vertex
    whose list became empty.
    """
    g = inst.g
    relation = relation if relation is not None else edge_relation(g, inst.template)
    lists = dict(lists if lists is not None else inst.full_lists())
    for v in g.vertices:
        if g.has_loop(v):
            adj = relation[frozenset((v,))]
            lists[v] = frozenset(x for x in lists[v] if x in adj[x])
        if not lists[v]:
            return None, v
    queue = deque()
    queued = set()
    for u, v, _ in g.edges():
        if u != v:
            for arc in ((u, v), (v, u)):
                queue.append(arc)
                queued.add(arc)
    while queue:
        v, w = arc = queue.popleft()
        queued.discard(arc)
        adj = relation[frozenset(arc)]
        lw = lists[w]
        keep = frozenset(x for x in lists[v] if not adj[x].isdisjoint(lw))
        if len(keep) == len(lists[v]):
            continue
        lists[v] = keep
        if not keep:
            return None, v
        for u in g.neighbours(v):
            if u != v and (u, v) not in queued:
                queue.append((u, v))
                queued.add((u, v))
    return lists, None


def min_assignment(lists: Mapping, ordering: MinOrdering) -> dict:
    return {v: min(allowed, key=ordering.position) for v, allowed in lists.items()}


def _blue_image_edges(g, h, f):
    return [(u, v, s) for u, v, s in g.edges()
            if s.is_unicoloured and h.sign(f[u], f[v]) is Sign.BLUE]


def find_violation(g: SignedGraph, h: SignedGraph, f: Mapping) -> Violation | None:
    walk = find_unbalanced_cycle(_blue_image_edges(g, h, f))
    if walk is None:
        return None
    return Violation(walk, frozenset(f[v] for v in walk.walk))


def _switching_for(g, h, f) -> SwitchingAssignment:
    triples = [(u, v, 1 if s is Sign.RED else 0) for u, v, s in _blue_image_edges(g, h, f)]
    colour, cycle = _parity_colouring(g.vertices, triples)
    if cycle is not None:
        raise InternalInvariantViolation("blue-image subgraph is unbalanced after the final phase")
    return SwitchingAssignment(frozenset(v for v, c in colour.items() if c == 1))


def _check_underlying(g, h, f):
    for u, v, s in g.edges():
        t = h.sign(f[u], f[v])
        if t is None or (s is Sign.BICOLOURED and t is not Sign.BICOLOURED):
            raise InternalInvariantViolation(f"minimum assignment breaks edge {u}{v}")


def _solve_component(inst, ordering, lists, cid, trace):
    g, h = inst.g, inst.template
    relation = edge_relation(g, h)
    bound = len(g) * len(h)
    phase = 0
    while True:
        lists, empty = arc_consistency(inst, relation, lists)
        if empty is not None:
            return None
        # a phase is counted once it produces an assignment
        phase += 1
        if phase > bound:
            raise InternalInvariantViolation(f"more than {bound} phases")
        f = min_assignment(lists, ordering)
        _check_underlying(g, h, f)
        violation = find_violation(g, h, f)
        if trace is not None:
            trace.append(Phase(cid, phase, f, violation))
        if violation is None:
            return f
        for v in set(violation.walk.walk):
            lists[v] = lists[v] - violation.image


def solve(inst: ListsInstance, ordering: MinOrdering, trace=None) -> HomomorphismResult | None:
    """Solve a list instance against a normalized template with special min ordering ``ordering``.

    ``trace``, when a list, receives one :class:`Phase` per phase.
    """
    h = inst.template
    if h.has_red_edges():
        raise NotNormalized("template has red edges; normalize it first")
    g = inst.g
    lists = inst.full_lists()
    if ordering.mode is Mode.BIPARTITE:
        if g.loops():
            return None
        try:
            bip = bipartition(g)
        except NotBipartite:
            return None
        sides = [frozenset(p) for p in ordering.parts]
    assignment: dict = {}
    flipped = set()
    for cid, comp in enumerate(g.components()):
        sub = g.subgraph(comp)
        sub_inst = ListsInstance(sub, h, {v: lists[v] for v in comp})
        if ordering.mode is Mode.BIPARTITE:
            attachments = []
            for first, second in ((0, 1), (1, 0)):
                att = {v: lists[v] & (sides[first] if bip.side(v) == bip.side(comp[0]) else sides[second])
                       for v in comp}
                attachments.append(att)
        else:
            attachments = [{v: lists[v] for v in comp}]
        for att in attachments:
            f = _solve_component(sub_inst, ordering, att, cid, trace)
            if f is not None:
                break
        else:
            return None
        assignment.update(f)
        flipped |= _switching_for(sub, h, f).flipped
    result = HomomorphismResult(assignment, SwitchingAssignment(frozenset(flipped)))
    if not verify_homomorphism(g, h, assignment, inst.lists) \
            or not is_sign_preserving(switch(g, result.switching), h, assignment):
        raise InternalInvariantViolation("solver produced an invalid homomorphism")
    return result


class ListHomomorphismSolver:
    """Classify a template once, then solve list instances against it.

    The template need not be normalized; answers refer to the original signs.
    """

    def __init__(self, template: SignedGraph, mode=None):
        self.template = template
        self.classification = classify(template, mode)
        if not self.classification.polynomial:
            raise NotPolynomial(self.classification)
        self.ordering = self.classification.certificate
        self.normalized = switch(template, self.classification.switching)

    def solve(self, g: SignedGraph, lists: Mapping | None = None, trace=None) -> HomomorphismResult | None:
        lists = dict(lists or {})
        r = solve(ListsInstance(g, self.normalized, lists), self.ordering, trace)
        if r is None:
            return None
        # switching the template at S is matched by switching g at the preimage of S
        moved = self.classification.switching.flipped
        flipped = r.switching.flipped ^ frozenset(v for v in g.vertices if r.assignment[v] in moved)
        result = HomomorphismResult(r.assignment, SwitchingAssignment(flipped))
        if not verify_homomorphism(g, self.template, result.assignment, lists) \
                or not is_sign_preserving(switch(g, result.switching), self.template, result.assignment):
            raise InternalInvariantViolation("switching transfer to the original template failed")
        return result
