import random

import pytest
from hypothesis import given, settings

from graphs import C6, bipartite_graphs, path, reflexive_graphs, sg
from signhom.errors import BadSeed, ConflictingPair, InvertiblePairFound
from signhom.oracle import brute_min_ordering
from signhom.ordering import (
    Circuit,
    MinOrdering,
    PairRelation,
    check_seed,
    closure_under_domination,
    extend_to_min_ordering,
    find_circuit,
    min_ordering,
    verify_min_ordering,
)
from signhom.pairs import build_pair_digraph, find_invertible_pair
from signhom.sgraph import Mode, SignedGraph

TWO_K2 = sg("ab+ cd+")


def _bip(adjacency):
    """``{"a0": "0 2 4", ...}`` with b-vertices given by index."""
    return SignedGraph([], [(a, f"b{j}", "+") for a, js in adjacency.items() for j in js.split()])


# a Case 1 circuit whose replacement pair is the reverse of a placed pair
CASE1_GAP = _bip({"a0": "2 4", "a1": "0 3 4", "a2": "0 1 2 3 4 5"})

# connected, no invertible pair, and a closed circuit-free seed that no min ordering extends
DEAD_END = _bip({
    "a0": "0 2 4 5 6", "a1": "0 1 2 4 5 6", "a2": "1 2 4 6", "a3": "0 1 2 3 4 5 6",
    "a4": "0 1 2 3 4 5 6", "a5": "0 1 2 4 6", "a6": "0 1 2 3 4 5 6",
})
DEAD_END_SEED = [
    ("a1", "a0"), ("a1", "a2"), ("a1", "a5"), ("a3", "a0"), ("a3", "a1"), ("a3", "a2"), ("a3", "a4"),
    ("a3", "a5"), ("a3", "a6"), ("a4", "a0"), ("a4", "a1"), ("a4", "a2"), ("a4", "a5"), ("a4", "a6"),
    ("a5", "a2"), ("a6", "a0"), ("a6", "a1"), ("a6", "a2"), ("a6", "a5"), ("b0", "b3"), ("b0", "b5"),
    ("b1", "b3"), ("b2", "b0"), ("b2", "b1"), ("b2", "b3"), ("b2", "b4"), ("b2", "b5"), ("b2", "b6"),
    ("b3", "b4"),
]


def test_closure_of_empty_seed():
    assert len(closure_under_domination(build_pair_digraph(TWO_K2), ())) == 0


def test_closure_single_arc():
    rel = closure_under_domination(build_pair_digraph(TWO_K2), [("a", "c")])
    assert set(rel) == {("a", "c"), ("b", "d")}


def test_closure_is_idempotent():
    pd = build_pair_digraph(path(6))
    once = closure_under_domination(pd, [pd.nodes[0]])
    assert set(closure_under_domination(pd, once)) == set(once)


def test_closure_conflict_reports_paths():
    pd = build_pair_digraph(C6)
    with pytest.raises(ConflictingPair) as exc:
        closure_under_domination(pd, [("v0", "v2")])
    x, y = exc.value.pair
    assert exc.value.path_forward[-1] == (x, y)
    assert exc.value.path_backward[-1] == (y, x)


def test_find_circuit_examples():
    assert find_circuit({("a", "b"), ("b", "c")}) is None
    assert find_circuit({("a", "b"), ("b", "a")}).vertices == ("a", "b")
    assert find_circuit({("a", "b"), ("b", "c"), ("c", "a")}).vertices == ("a", "b", "c")


def test_find_circuit_is_shortest():
    rel = {("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("c", "a")}
    assert len(find_circuit(rel)) == 3


def test_circuit_pairs():
    assert Circuit(("a", "b", "c")).pairs() == (("a", "b"), ("b", "c"), ("c", "a"))


def test_pair_relation_reverse():
    rel = PairRelation([("a", "b")])
    assert ("b", "a") in rel.reversed() and len(rel) == 1


def test_single_edge_canonical_ordering():
    o = min_ordering(sg("ab+"))
    assert o.parts == (("a",), ("b",))
    assert o.lines() == ["a", "b"]


def test_c6_has_no_min_ordering():
    with pytest.raises(InvertiblePairFound):
        min_ordering(C6)
    assert brute_min_ordering(C6) is None


def test_path_extension_with_c_before_a():
    g = sg("ab+ bc+ cd+ de+")
    pd = build_pair_digraph(g)
    seed = closure_under_domination(pd, [("c", "a")])
    o = extend_to_min_ordering(g, d_init=seed)
    assert o.precedes("c", "a")
    assert verify_min_ordering(g, Mode.BIPARTITE, o, seed)
    assert brute_min_ordering(g, d_init=seed) is not None


def test_verify_accepts_any_order_of_single_edge():
    assert verify_min_ordering(sg("ab+"), Mode.BIPARTITE, MinOrdering(Mode.BIPARTITE, (("a",), ("b",))))


def test_verify_two_k2_witness():
    o = MinOrdering(Mode.BIPARTITE, (("a", "c"), ("d", "b")))
    r = verify_min_ordering(TWO_K2, Mode.BIPARTITE, o)
    assert not r
    assert r.witness == ("a", "b", "c", "d")


def test_verify_checks_seed_and_shape():
    o = MinOrdering(Mode.BIPARTITE, (("a",), ("b",)))
    assert not verify_min_ordering(sg("ab+"), Mode.BIPARTITE, MinOrdering(Mode.BIPARTITE, (("a",), ())))
    g = sg("ab+ cb+")
    assert not verify_min_ordering(g, Mode.BIPARTITE, MinOrdering(Mode.BIPARTITE, (("a", "c"), ("b",))),
                                   [("c", "a")])
    assert verify_min_ordering(sg("ab+"), Mode.BIPARTITE, o)


def test_bad_seeds():
    pd = build_pair_digraph(TWO_K2)
    with pytest.raises(BadSeed):
        check_seed(pd, [("a", "b")])  # different parts
    with pytest.raises(BadSeed):
        check_seed(pd, [("a", "c")])  # not closed: (a,c) dominates (b,d)
    with pytest.raises(BadSeed) as exc:
        check_seed(pd, [("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")])
    assert exc.value.circuit is not None


def test_contradictory_seed_for_extension():
    with pytest.raises(BadSeed):
        extend_to_min_ordering(TWO_K2, d_init=[("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")])
    assert brute_min_ordering(TWO_K2, d_init=[("a", "c"), ("c", "a")]) is None


def test_case1_gap_graph_uses_fallback():
    trace = []
    o = extend_to_min_ordering(CASE1_GAP, trace=trace)
    assert "fallback-case1" in [case for case, _ in trace]
    assert verify_min_ordering(CASE1_GAP, Mode.BIPARTITE, o)
    assert brute_min_ordering(CASE1_GAP) is not None


@pytest.mark.parametrize("edges, label", [
    ("a0b1 a0b3 a1b0 a1b2 a1b3", "case1"),
    ("a0b0 a1b2 a2b0 a2b1 a2b2", "case3"),
    ("a0b4 a1b1 a1b3 a2b0 a2b2 a2b3 a2b4", "fallback-case3"),
    ("a0b0 a0b1 a0b2 a0b3 a1b1 a1b3 a2b0 a2b3", "fallback-closure"),
])
def test_case_dispatch_fixtures(edges, label):
    g = SignedGraph([], [(t[:2], t[2:], "+") for t in edges.split()])
    trace = []
    o = extend_to_min_ordering(g, trace=trace)
    assert label in [case for case, _ in trace]
    assert verify_min_ordering(g, Mode.BIPARTITE, o)


def test_dead_end_seed_is_closed_and_circuit_free():
    pd = build_pair_digraph(DEAD_END)
    assert find_invertible_pair(pd) is None
    assert check_seed(pd, DEAD_END_SEED) == set(DEAD_END_SEED)
    assert len(DEAD_END.components()) == 1


def test_dead_end_seed_cannot_be_extended():
    with pytest.raises(BadSeed):
        extend_to_min_ordering(DEAD_END, d_init=DEAD_END_SEED)
    assert brute_min_ordering(DEAD_END) is not None
    assert brute_min_ordering(DEAD_END, d_init=DEAD_END_SEED) is None


def test_disconnected_blocks_and_isolated_vertices():
    g = SignedGraph(["z1", "z2"], [("a1", "b1", "+"), ("a2", "b2", "+")])
    o = min_ordering(g)
    # an isolated vertex has no forced side; it lands in the first part after the edges
    assert o.parts == (("a1", "a2", "z1", "z2"), ("b1", "b2"))
    # seeds may reorder the blocks
    o = extend_to_min_ordering(g, d_init=[("a2", "a1"), ("b2", "b1")])
    assert o.parts == (("a2", "a1", "z1", "z2"), ("b2", "b1"))
    o = extend_to_min_ordering(g, d_init=[("z2", "a1")])
    assert o.precedes("z2", "a1") and verify_min_ordering(g, Mode.BIPARTITE, o)


def test_cyclic_block_seed_is_rejected():
    g = SignedGraph([], [("a1", "b1", "+"), ("a2", "b2", "+"), ("a2", "b3", "+")])
    with pytest.raises(BadSeed):
        extend_to_min_ordering(g, d_init=[("a2", "a1"), ("b1", "b2")])


def test_reflexive_path_ordering():
    g = sg("aa+ bb+ cc+ dd+ ab+ bc+ cd+")
    o = min_ordering(g, Mode.REFLEXIVE)
    assert len(o.parts) == 1 and verify_min_ordering(g, Mode.REFLEXIVE, o)


def test_reflexive_four_cycle_has_no_min_ordering():
    # frozen from brute_min_ordering
    c4 = sg("aa+ bb+ cc+ dd+ ab+ bc+ cd+ da+")
    assert brute_min_ordering(c4, Mode.REFLEXIVE) is None
    with pytest.raises(InvertiblePairFound):
        min_ordering(c4, Mode.REFLEXIVE)


# -- properties -----------------------------------------------------------

@settings(max_examples=250)
@given(bipartite_graphs(max_side=4, signs=("+",)))
def test_completeness_bipartite(g):
    pd = build_pair_digraph(g)
    brute = brute_min_ordering(g)
    trace = []
    try:
        o = extend_to_min_ordering(g, trace=trace)
    except InvertiblePairFound as exc:
        assert brute is None
        return
    assert brute is not None
    assert verify_min_ordering(g, Mode.BIPARTITE, o)
    # monotone progress: at most one placement per strong component
    assert len(trace) <= len(pd.nodes)


@settings(max_examples=200)
@given(reflexive_graphs(max_vertices=6, signs=("+",)))
def test_completeness_reflexive(g):
    brute = brute_min_ordering(g, Mode.REFLEXIVE)
    try:
        o = extend_to_min_ordering(g, Mode.REFLEXIVE)
    except InvertiblePairFound:
        assert brute is None
        return
    assert brute is not None and verify_min_ordering(g, Mode.REFLEXIVE, o)


def test_extension_of_random_closed_seeds():
    rng = random.Random(11)
    done = 0
    while done < 60:
        p, q = rng.randint(2, 4), rng.randint(2, 4)
        g = SignedGraph([], [(f"a{i}", f"b{j}", "+") for i in range(p) for j in range(q) if rng.random() < 0.6])
        pd = build_pair_digraph(g)
        if not pd.nodes or find_invertible_pair(pd) is not None:
            continue
        try:
            seed = closure_under_domination(pd, rng.sample(pd.nodes, min(3, len(pd.nodes))))
        except ConflictingPair:
            continue
        if find_circuit(seed) is not None:
            continue
        done += 1
        try:
            o = extend_to_min_ordering(g, d_init=seed)
        except BadSeed:
            assert brute_min_ordering(g, d_init=seed) is None
            continue
        assert verify_min_ordering(g, Mode.BIPARTITE, o, seed)
