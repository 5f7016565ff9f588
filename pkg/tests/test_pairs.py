from hypothesis import given, settings

from graphs import C6, bipartite_graphs, cycle, path, reflexive_graphs, sg
from signhom.oracle import brute_invertible_pair
from signhom.pairs import (
    InvertiblePairCertificate,
    build_pair_digraph,
    find_invertible_pair,
    is_sink_pair,
    strong_components,
    verify_invertible_pair,
)
from signhom.sgraph import Mode, SignedGraph

TWO_K2 = sg("ab+ cd+")


def test_two_k2_arc():
    pd = build_pair_digraph(TWO_K2)
    assert ("b", "d") in pd.succ[("a", "c")]


def test_path_of_three_has_no_arcs():
    pd = build_pair_digraph(sg("ab+ bc+"))
    assert set(pd.nodes) == {("a", "c"), ("c", "a")}
    assert pd.n_arcs() == 0


def test_single_edge_has_empty_pair_digraph():
    assert build_pair_digraph(sg("ab+")).nodes == ()


def test_reflexive_requires_loops():
    import pytest

    with pytest.raises(ValueError):
        build_pair_digraph(sg("aa+ ab+"), Mode.REFLEXIVE)
    with pytest.raises(ValueError):
        build_pair_digraph(sg("aa+ ab+ bb+"), Mode.BIPARTITE)


def test_reflexive_loops_count_as_edges():
    # reflexive path a-b-c: (a,b) dominates (a,c) because aa and bc are edges and ac is not
    pd = build_pair_digraph(sg("aa+ bb+ cc+ ab+ bc+"), Mode.REFLEXIVE)
    assert ("a", "c") in pd.succ[("a", "b")]


def test_dump_format():
    assert build_pair_digraph(TWO_K2).dump() == (
        "a,c -> b,d\n"
        "b,d -> a,c\n"
        "c,a -> d,b\n"
        "d,b -> c,a\n"
    )


def test_no_arcs_means_trivial_components_coupled_by_reversal():
    pd = build_pair_digraph(sg("ab+ bc+"))
    scc = strong_components(pd)
    assert len(scc) == 2 and all(scc.is_trivial(i) for i in range(2))
    assert scc.coupled[scc.of(("a", "c"))] == scc.of(("c", "a"))


def test_two_k2_components():
    scc = strong_components(build_pair_digraph(TWO_K2))
    # (a,c) and (b,d) dominate each other, so they share one component
    assert scc.of(("a", "c")) == scc.of(("b", "d"))
    assert scc.of(("c", "a")) == scc.of(("d", "b"))
    assert scc.coupled[scc.of(("a", "c"))] == scc.of(("c", "a"))
    assert not scc.is_self_coupled(scc.of(("a", "c")))


def test_c6_has_a_self_coupled_component():
    scc = strong_components(build_pair_digraph(C6))
    selfc = [i for i in range(len(scc)) if scc.is_self_coupled(i)]
    assert len(selfc) == 1
    # frozen from the brute-force reachability oracle: the component holds all distance-2 pairs
    assert len(scc.members[selfc[0]]) == 12
    assert ("v0", "v2") in scc.members[selfc[0]]


def test_paths_have_no_invertible_pair():
    for n in range(2, 9):
        assert find_invertible_pair(build_pair_digraph(path(n))) is None
        assert brute_invertible_pair(path(n)) is None


def test_c6_invertible_pair():
    cert = find_invertible_pair(build_pair_digraph(C6))
    assert cert.pair == brute_invertible_pair(C6) == ("v0", "v2")
    assert verify_invertible_pair(C6, cert)


def test_k22_has_no_arcs():
    pd = build_pair_digraph(sg("ac+ ad+ bc+ bd+"))
    assert pd.n_arcs() == 0
    assert find_invertible_pair(pd) is None


def test_sink_pairs():
    g = sg("ab+ bc+")
    assert is_sink_pair(g, "a", "c")
    assert not is_sink_pair(TWO_K2, "a", "c")
    lonely = SignedGraph(["x", "z"], [("x", "y", "+")])
    assert is_sink_pair(lonely, "x", "z")


def test_invertible_pair_verifier_rejects_tampering():
    cert = find_invertible_pair(build_pair_digraph(C6))
    (x, y), second = cert.walk_pair_1, cert.walk_pair_2
    short = InvertiblePairCertificate(cert.pair, (x[:-1], y), second)
    assert not verify_invertible_pair(C6, short)
    swapped = InvertiblePairCertificate(cert.pair, (y, x), second)
    assert not verify_invertible_pair(C6, swapped)
    assert not verify_invertible_pair(C6, InvertiblePairCertificate(("v0", "v1"), cert.walk_pair_1, second))


def test_even_cycles_from_six_on_are_invertible():
    assert find_invertible_pair(build_pair_digraph(cycle(4))) is None
    for n in (6, 8, 10):
        cert = find_invertible_pair(build_pair_digraph(cycle(n)))
        assert cert is not None and verify_invertible_pair(cycle(n), cert)


# -- properties -----------------------------------------------------------

def _skew_symmetric(pd):
    arcs = set(pd.arcs())
    return all(((b2, b), (a2, a)) in arcs for (a, a2), (b, b2) in arcs)


@given(bipartite_graphs(max_side=4))
def test_skew_symmetry_bipartite(g):
    assert _skew_symmetric(build_pair_digraph(g))


@given(reflexive_graphs(max_vertices=6))
def test_skew_symmetry_reflexive(g):
    assert _skew_symmetric(build_pair_digraph(g))


@given(bipartite_graphs(max_side=4))
def test_coupling_is_an_involution(g):
    scc = strong_components(build_pair_digraph(g))
    for i, members in enumerate(scc.members):
        j = scc.coupled[i]
        assert scc.coupled[j] == i
        assert set(scc.members[j]) == {(y, x) for x, y in members}


@settings(max_examples=300)
@given(bipartite_graphs(max_side=4))
def test_invertible_pair_matches_oracle_bipartite(g):
    cert = find_invertible_pair(build_pair_digraph(g))
    assert (cert is None) == (brute_invertible_pair(g) is None)
    if cert is not None:
        assert verify_invertible_pair(g, cert)


@settings(max_examples=200)
@given(reflexive_graphs(max_vertices=7))
def test_invertible_pair_matches_oracle_reflexive(g):
    cert = find_invertible_pair(build_pair_digraph(g))
    assert (cert is None) == (brute_invertible_pair(g) is None)
    if cert is not None:
        assert verify_invertible_pair(g, cert, Mode.REFLEXIVE)


@given(bipartite_graphs(max_side=4))
def test_sink_pairs_have_no_out_arcs(g):
    pd = build_pair_digraph(g)
    for a, b in pd.nodes:
        if is_sink_pair(g, a, b):
            assert pd.succ[(a, b)] == ()
