import random

import pytest
from hypothesis import given, settings, strategies as st

from graphs import GRAPH_A, cycle, sg
from signhom.errors import NotNormalized, NotPolynomial
from signhom.oracle import brute_list_hom
from signhom.sgraph import Mode, SignedGraph, is_weakly_balanced, verify_homomorphism
from signhom.solver import (
    ListHomomorphismSolver,
    ListsInstance,
    arc_consistency,
    find_violation,
    min_assignment,
    solve,
)
from signhom.special import special_min_ordering

SIGNS = ("+", "-", "+-")


def test_lists_instance_validation():
    with pytest.raises(ValueError):
        ListsInstance(sg("ab+"), sg("pq+"), {"a": {"z"}})
    with pytest.raises(ValueError):
        ListsInstance(sg("ab+"), sg("pq+"), {"c": {"p"}})
    assert ListsInstance(sg("ab+"), sg("pq+")).full_lists()["a"] == {"p", "q"}


def test_arc_consistency_prunes_to_neighbours():
    inst = ListsInstance(sg("ab+"), sg("pq+ qr+"), {"a": {"p"}})
    lists, empty = arc_consistency(inst)
    assert empty is None and lists["b"] == {"q"}


def test_arc_consistency_bicoloured_needs_bicoloured():
    inst = ListsInstance(sg("ab+-"), sg("pq+ qr+-"))
    lists, _ = arc_consistency(inst)
    assert lists["a"] == {"q", "r"} and lists["b"] == {"q", "r"}


def test_arc_consistency_reports_empty_list():
    lists, empty = arc_consistency(ListsInstance(sg("ab+-"), sg("pq+")))
    assert lists is None and empty in ("a", "b")


def test_arc_consistency_loop_filter():
    lists, _ = arc_consistency(ListsInstance(sg("aa+"), sg("pp+ qq+- pq+")))
    assert lists["a"] == {"p", "q"}
    lists, empty = arc_consistency(ListsInstance(sg("aa+-"), sg("pp+ qq+- pq+")))
    assert lists["a"] == {"q"}


def test_min_assignment_follows_ordering():
    h = sg("pq+ rq+")
    o = special_min_ordering(h)
    f = min_assignment({"x": frozenset({"p", "r"})}, o)
    assert f["x"] == min(("p", "r"), key=o.position)


def test_find_violation_odd_red_cycle():
    g = sg("ab- bc+ cd+ da+")
    f = {"a": "p", "b": "q", "c": "p", "d": "q"}
    v = find_violation(g, sg("pq+"), f)
    assert v is not None and v.image == {"p", "q"} and v.walk.red_count % 2 == 1
    # a bicoloured image edge breaks the walk
    assert find_violation(g, sg("pq+-"), f) is None


def test_bicoloured_template_edge_absorbs_any_cycle():
    s = ListHomomorphismSolver(sg("pq+-"))
    r = s.solve(cycle(6, "-"))
    assert r is not None and verify_homomorphism(cycle(6, "-"), sg("pq+-"), r.assignment)


def test_blue_edge_template_rejects_odd_red_four_cycle():
    assert ListHomomorphismSolver(sg("pq+")).solve(sg("ab- bc+ cd+ da+")) is None


def test_blue_edge_template_accepts_even_red_four_cycle():
    g = sg("ab- bc- cd+ da+")
    r = ListHomomorphismSolver(sg("pq+")).solve(g)
    assert r is not None and r.switching.flipped in ({"b"}, {"a", "c", "d"})


def test_repair_loop_moves_red_loop_to_bicoloured_loop():
    # the first minimum sends the red loop onto the blue loop; the repair removes h0
    h = sg([("h0", "h0", "+"), ("h1", "h1", "+-")])
    g = sg([("g0", "g0", "-")])
    trace = []
    r = ListHomomorphismSolver(h).solve(g, trace=trace)
    assert [p.violation is not None for p in trace] == [True, False]
    assert trace[0].assignment == {"g0": "h0"}
    assert r.assignment == {"g0": "h1"}


def test_lists_restrict_the_answer():
    s = ListHomomorphismSolver(sg("pq+ qr+"))
    r = s.solve(sg("ab+"), {"a": {"r"}})
    assert r.assignment == {"a": "r", "b": "q"}
    assert s.solve(sg("ab+"), {"a": {"p"}, "b": {"r"}}) is None


def test_bipartite_template_rejects_odd_cycles_and_loops():
    s = ListHomomorphismSolver(sg("pq+"))
    assert s.solve(sg("ab+ bc+ ca+")) is None
    assert s.solve(sg("aa+")) is None


def test_disconnected_instance_and_side_choice():
    # b-side lists force the second component onto the other attachment
    s = ListHomomorphismSolver(sg("pq+ qr+"))
    g = SignedGraph([], [("a", "b", "+"), ("c", "d", "+")])
    r = s.solve(g, {"c": {"q"}})
    assert r is not None and r.assignment["c"] == "q"
    assert verify_homomorphism(g, sg("pq+ qr+"), r.assignment, {"c": {"q"}})


def test_np_complete_template_is_refused():
    with pytest.raises(NotPolynomial) as exc:
        ListHomomorphismSolver(GRAPH_A)
    assert exc.value.result.np_complete


def test_raw_solve_needs_normalized_template():
    h = sg("pq-")
    o = special_min_ordering(sg("pq+"))
    with pytest.raises(NotNormalized):
        solve(ListsInstance(sg("ab+"), h), o)


def test_answers_refer_to_the_original_signs():
    h = sg("pq- qr+-")
    g = sg("ab- bc+-")
    r = ListHomomorphismSolver(h).solve(g)
    assert r is not None and verify_homomorphism(g, h, r.assignment)


# -- against the brute-force oracle ---------------------------------------

def _random_template(rng, reflexive):
    while True:
        n = rng.randint(2, 5)
        if reflexive:
            vs = [f"h{i}" for i in range(n)]
            edges = [(v, v, rng.choice(SIGNS)) for v in vs]
            edges += [(vs[i], vs[j], rng.choice(SIGNS)) for i in range(n) for j in range(i + 1, n)
                      if rng.random() < 0.5]
        else:
            p = rng.randint(1, n - 1)
            a, b = [f"a{i}" for i in range(p)], [f"b{i}" for i in range(n - p)]
            vs = a + b
            edges = [(x, y, rng.choice(SIGNS)) for x in a for y in b if rng.random() < 0.6]
        h = SignedGraph(vs, edges)
        if not is_weakly_balanced(h):
            continue
        try:
            return h, ListHomomorphismSolver(h)
        except NotPolynomial:
            continue


def _random_instance(rng, h, bipartite):
    n = rng.randint(1, 7)
    vs = [f"g{i}" for i in range(n)]
    if bipartite:
        side = {v: rng.random() < 0.5 for v in vs}
        edges = [(vs[i], vs[j], rng.choice(SIGNS)) for i in range(n) for j in range(i + 1, n)
                 if side[vs[i]] != side[vs[j]] and rng.random() < 0.45]
    else:
        edges = [(vs[i], vs[j], rng.choice(SIGNS)) for i in range(n) for j in range(i, n)
                 if rng.random() < (0.2 if i == j else 0.3)]
    lists = {v: frozenset(rng.sample(h.vertices, rng.randint(0, len(h)))) for v in vs if rng.random() < 0.4}
    return SignedGraph(vs, edges), lists


@pytest.mark.parametrize("reflexive", [False, True])
def test_solver_agrees_with_brute_force(reflexive):
    rng = random.Random(20 + reflexive)
    for _ in range(400):
        h, solver = _random_template(rng, reflexive)
        g, lists = _random_instance(rng, h, not reflexive)
        trace = []
        r = solver.solve(g, lists, trace)
        assert (r is None) == (brute_list_hom(ListsInstance(g, h, lists)) is None)
        if r is not None:
            assert verify_homomorphism(g, h, r.assignment, lists)
        assert all(p.index <= len(g) * len(h) for p in trace)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_phase_assignments_are_monotone(rng):
    h, solver = _random_template(rng, rng.random() < 0.5)
    g, lists = _random_instance(rng, h, not h.loops())
    trace = []
    solver.solve(g, lists, trace)
    pos = solver.ordering.position
    for before, after in zip(trace, trace[1:]):
        if before.component == after.component:
            shared = before.assignment.keys() & after.assignment.keys()
            assert all(pos(before.assignment[v]) <= pos(after.assignment[v]) for v in shared) \
                or before.index >= after.index
