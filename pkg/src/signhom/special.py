"""Special min orderings, petals, flowers and chains.

A special min ordering must put ``x`` before ``y`` whenever some ``z`` has a
bicoloured edge to ``x`` and a blue edge to ``y``.  Those pairs form ``D0``;
closing ``D0`` in the pair digraph gives ``D``.  Either ``D`` extends to a
min ordering (which is then special), the underlying graph has an invertible
pair, or ``D`` has a circuit.  A circuit is read back as a flower (one petal
per circuit pair) and the flower is shrunk to a chain.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInvariantViolation, InvertiblePairFound, NotNormalized
from .ordering import MinOrdering, PairRelation, _reach, _trace, extend_to_min_ordering, find_circuit, verify_min_ordering
from .pairs import build_pair_digraph, resolve_mode
from .sgraph import Bipartition, CheckResult, Mode, PASS, Sign, SignedGraph, bipartition, fail


@dataclass(frozen=True)
class SpecialMinOrdering(MinOrdering):
    pass


@dataclass(frozen=True)
class Chain:
    """Walks ``U = u0..uk`` and ``D = d0..dk`` with ``u0 = d0`` and ``uk = dk``."""

    upper: tuple
    lower: tuple

    @property
    def length(self) -> int:
        return len(self.upper) - 1

    def lines(self) -> list:
        return ["U: " + " ".join(map(str, self.upper)), "D: " + " ".join(map(str, self.lower))]


@dataclass(frozen=True)
class Petal:
    """``x, (l1, u1), ..., (lk, uk)``: ``x l1`` bicoloured, ``x u1`` unicoloured."""

    center: object
    lower: tuple
    upper: tuple

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))

    @property
    def length(self) -> int:
        return len(self.lower)

    @property
    def terminal(self) -> tuple:
        return (self.lower[-1], self.upper[-1])

    @property
    def alpha(self):
        """Second-to-last vertex of the lower walk (the centre for length one)."""
        return self.lower[-2] if self.length > 1 else self.center

    @property
    def beta(self):
        return self.upper[-2] if self.length > 1 else self.center

    def rungs(self):
        return list(zip(self.lower, self.upper))

    def truncated(self) -> "Petal":
        if self.length < 2:
            raise ValueError("cannot shorten a petal of length one")
        return Petal(self.center, self.lower[:-1], self.upper[:-1])

    def sort_key(self):
        return (self.length, tuple(map(str, (self.center,) + self.lower + self.upper)))

    def validate(self, h: SignedGraph) -> CheckResult:
        if self.length == 0 or len(self.upper) != self.length:
            return fail("petal walks must be nonempty and of equal length", self)
        x = self.center
        if not h.is_bicoloured(x, self.lower[0]):
            return fail("centre to first lower vertex is not bicoloured", self)
        s = h.sign(x, self.upper[0])
        if s is None or not s.is_unicoloured:
            return fail("centre to first upper vertex is not unicoloured", self)
        for walk in (self.lower, self.upper):
            for p, q in zip(walk, walk[1:]):
                if not h.has_edge(p, q):
                    return fail(f"{p}{q} is not an edge", self)
        for i in range(self.length - 1):
            if h.has_edge(self.lower[i], self.upper[i + 1]):
                return fail(f"{self.lower[i]}{self.upper[i + 1]} is an edge", self)
        return PASS


@dataclass(frozen=True)
class Flower:
    petals: tuple

    def __post_init__(self):
        object.__setattr__(self, "petals", tuple(self.petals))

    def __len__(self):
        return len(self.petals)

    def terminals(self):
        return [p.terminal for p in self.petals]

    def validate(self, h: SignedGraph) -> CheckResult:
        n = len(self.petals)
        if n < 2:
            return fail("a flower needs at least two petals")
        for i, p in enumerate(self.petals):
            ok = p.validate(h)
            if not ok:
                return fail(f"petal {i + 1}: {ok.reason}", p)
            nxt = self.petals[(i + 1) % n]
            if p.terminal[1] != nxt.terminal[0]:
                return fail(f"petal {i + 1} does not glue to petal {(i + 1) % n + 1}", (p, nxt))
        return PASS


def petal_extend(h: SignedGraph, petal: Petal, v, w) -> Petal:
    """Append the rung ``(w, v)``: needs ``uk v`` an edge, ``lk v`` a non-edge, ``w`` adjacent to ``lk``."""
    lk, uk = petal.terminal
    if not h.has_edge(uk, v) or h.has_edge(lk, v) or not h.has_edge(lk, w):
        raise ValueError(f"cannot extend petal ending in {petal.terminal} by ({w}, {v})")
    return Petal(petal.center, petal.lower + (w,), petal.upper + (v,))


def petal_modify(h: SignedGraph, petal: Petal, w) -> Petal:
    """Replace the lower terminal by ``w``, a neighbour of the previous lower vertex."""
    prev = petal.alpha
    if not h.has_edge(prev, w) or (petal.length == 1 and not h.is_bicoloured(prev, w)):
        raise ValueError(f"cannot move the lower terminal of {petal.terminal} to {w}")
    return Petal(petal.center, petal.lower[:-1] + (w,), petal.upper)


# -- D0 and its closure ---------------------------------------------------

def _require_normalized(h: SignedGraph):
    if h.has_red_edges():
        raise NotNormalized("graph has red edges; normalize it first")


def _d0_witnesses(h: SignedGraph) -> dict:
    """``(x, y) -> z`` for the least ``z`` with ``zx`` bicoloured and ``zy`` blue."""
    out = {}
    for z in h.vertices:
        nb = h.signed_neighbours(z)
        for x, sx in nb.items():
            if sx is not Sign.BICOLOURED:
                continue
            for y, sy in nb.items():
                if sy is Sign.BLUE and (x, y) not in out:
                    out[(x, y)] = z
    return out


def build_d0(h: SignedGraph) -> PairRelation:
    _require_normalized(h)
    return PairRelation(_d0_witnesses(h))


def circuit_to_flower(h: SignedGraph, d0, circuit, mode=None, bip: Bipartition | None = None) -> Flower:
    """One petal per circuit pair, read off shortest pair-digraph paths from ``d0``."""
    mode = resolve_mode(h, mode)
    witnesses = _d0_witnesses(h)
    roots = set(d0)
    if not roots <= set(witnesses):
        raise ValueError("d0 contains pairs without a witness")
    pd = build_pair_digraph(h, mode, bip)
    parent = _reach(pd, roots)
    petals = []
    for pair in circuit.pairs():
        if pair not in parent:
            raise ValueError(f"circuit pair {pair} is not in the closure of d0")
        path = _trace(parent, pair)
        petals.append(Petal(witnesses[path[0]], [p[0] for p in path], [p[1] for p in path]))
    return Flower(petals)


def _glue(p1: Petal, p2: Petal) -> Chain:
    upper = (p1.center,) + p1.upper + tuple(reversed(p2.lower[:-1])) + (p2.center,)
    lower = (p1.center,) + p1.lower + tuple(reversed(p2.upper[:-1])) + (p2.center,)
    return Chain(upper, lower)


def _round(h, petals):
    """One shrinking round for ``n >= 3`` petals with ``P2`` of length at least two.

    Returns a flower of the same size with ``P2`` shorter by one, or a flower
    with one petal fewer when a required non-edge turns out to be an edge.
    """
    n = len(petals)
    L = [p.terminal[0] for p in petals]
    A = [p.alpha for p in petals]
    B = [p.beta for p in petals]
    extended = list(range(0, n, 2)) if n % 2 else list(range(0, n - 1, 2))
    for i in extended:
        j = (i + 1) % n
        if h.has_edge(L[i], A[j]):
            out = list(petals)
            out[j] = petal_modify(h, petals[j], L[i])
            del out[i]
            return out, "round-merge"
    out = []
    for i, p in enumerate(petals):
        if i in extended:
            w = A[0] if (n % 2 and i == 0) else B[i - 1]
            out.append(petal_extend(h, p, A[(i + 1) % n], w))
        else:
            out.append(p.truncated())
    return out, "round"


def _finish(h, petals):
    """``P2 = a, (b, e)`` has length one; produce a smaller flower."""
    p1, p2 = petals[0], petals[1]
    a, b, e = p2.center, p2.lower[0], p2.upper[0]
    s, t = p1.terminal[0], p1.alpha
    sign_as = h.sign(a, s)
    if sign_as is not None and sign_as.is_unicoloured:
        return [p1, Petal(a, (b,), (s,))], "finish-as-unicoloured"
    if sign_as is Sign.BICOLOURED:
        return [Petal(a, (s,), (e,))] + petals[2:], "finish-as-bicoloured"
    if h.has_edge(e, t):
        if p1.length > 1 or h.is_bicoloured(t, e):
            return [petal_modify(h, p1, e), p2], "finish-modify"
        # length one and te unicoloured: the centre t starts a new petal t, (s, e)
        return [Petal(t, (s,), (e,))] + petals[2:], "finish-recentre"
    longer = petal_extend(h, petal_extend(h, p1, a, t), e, s)
    return [longer] + petals[2:], "finish-extend"


def flower_to_chain(h: SignedGraph, flower: Flower, trace: list | None = None) -> Chain:
    """Shrink a flower to two petals and glue them into a chain.

    ``trace`` receives ``(step, petal count)`` for every reduction step.
    """
    petals = list(flower.petals)
    size = None
    while True:
        ok = Flower(petals).validate(h)
        if not ok:
            raise InternalInvariantViolation(f"flower reduction produced an invalid flower: {ok.reason}")
        n = len(petals)
        if n == 2:
            chain = _glue(*petals)
            ok = verify_chain(h, chain)
            if not ok:
                raise InternalInvariantViolation(f"glued chain fails verification: {ok.reason}")
            return chain
        if n != size:
            size = n
            j = min(range(n), key=lambda i: petals[i].sort_key())
            petals = petals[j - 1:] + petals[:j - 1]
        try:
            petals, step = _round(h, petals) if petals[1].length > 1 else _finish(h, petals)
        except ValueError as exc:
            raise InternalInvariantViolation(f"flower reduction step failed: {exc}") from exc
        if trace is not None:
            trace.append((step, n))


def verify_chain(h: SignedGraph, chain: Chain) -> CheckResult:
    U, D = tuple(chain.upper), tuple(chain.lower)
    if len(U) != len(D):
        return fail("walks of unequal length")
    k = len(U) - 1
    if k < 2:
        return fail("chain length must be at least two")
    if U[0] != D[0] or U[-1] != D[-1]:
        return fail("walks do not share their endpoints")
    for name, walk in (("U", U), ("D", D)):
        for p, q in zip(walk, walk[1:]):
            if not h.has_edge(p, q):
                return fail(f"{name}: {p}{q} is not an edge", (p, q))

    def uni(x, y):
        s = h.sign(x, y)
        return s is not None and s.is_unicoloured

    if not uni(U[0], U[1]):
        return fail("u u1 is not unicoloured")
    if not uni(D[k - 1], D[k]):
        return fail("d(k-1) v is not unicoloured")
    if not h.is_bicoloured(D[0], D[1]):
        return fail("u d1 is not bicoloured")
    if not h.is_bicoloured(U[k - 1], U[k]):
        return fail("u(k-1) v is not bicoloured")
    for i in range(1, k - 1):
        if not h.has_edge(D[i], U[i + 1]):
            continue
        if h.is_bicoloured(U[i], U[i + 1]) and h.is_bicoloured(D[i], D[i + 1]) \
                and not h.is_bicoloured(D[i], U[i + 1]):
            continue
        return fail(f"middle condition fails at i={i}", i)
    return PASS


def verify_special_min_ordering(h: SignedGraph, ordering: MinOrdering, mode=None) -> CheckResult:
    ok = verify_min_ordering(h, mode, ordering)
    if not ok:
        return ok
    for z in h.vertices:
        nb = h.signed_neighbours(z)
        bic = [ordering.position(x) for x, s in nb.items() if s is Sign.BICOLOURED]
        uni = [ordering.position(y) for y, s in nb.items() if s is not Sign.BICOLOURED]
        if bic and uni and max(bic) > min(uni):
            return fail("a bicoloured neighbour follows a unicoloured one", z)
    return PASS


def special_min_ordering(h: SignedGraph, mode=None, bip: Bipartition | None = None, trace=None):
    """Return a :class:`SpecialMinOrdering`, a :class:`Chain` or an invertible pair certificate."""
    _require_normalized(h)
    mode = resolve_mode(h, mode)
    if mode is Mode.BIPARTITE and bip is None:
        bip = bipartition(h)
    pd = build_pair_digraph(h, mode, bip)
    d0 = build_d0(h)
    closure = PairRelation(_reach(pd, d0.pairs))
    circuit = find_circuit(closure)
    if circuit is not None:
        flower = circuit_to_flower(h, d0, circuit, mode, bip)
        return flower_to_chain(h, flower)
    try:
        ordering = extend_to_min_ordering(h, mode, closure.pairs, bip, trace=trace)
    except InvertiblePairFound as exc:
        return exc.certificate
    result = SpecialMinOrdering(mode, ordering.parts)
    ok = verify_special_min_ordering(h, result, mode)
    if not ok:
        raise InternalInvariantViolation(f"special ordering fails verification: {ok.reason}")
    return result
