import pytest

from rainbowmatch.budget import SearchBudget
from rainbowmatch.core import Edge, make_context
from rainbowmatch.errors import BudgetExceeded, InfeasibleConstraints
from rainbowmatch.gen import generate_instance
from rainbowmatch.latin import LatinRectangle, parse_latin, square_to_graph
from rainbowmatch.menger import build_counterexample
from rainbowmatch.oracle import (
    enumerate_rainbow_paths,
    exact_max_rainbow_matching,
    free_set_check,
    is_kd_connected,
    is_rainbow_k_edge_connected,
)
from rainbowmatch.digraph import LabelledDigraph

from helpers import (
    complete_biorientation,
    enumerate_latin_squares,
    max_partial_transversal,
)

LATIN_2x2 = square_to_graph(parse_latin("1 2\n2 1"))
CYCLIC_3 = square_to_graph(parse_latin("1 2 3\n2 3 1\n3 1 2"))


def test_oracle_2x2_latin():
    res = exact_max_rainbow_matching(LATIN_2x2)
    assert res.size == 1
    assert res.optimal


def test_oracle_cyclic3():
    res = exact_max_rainbow_matching(CYCLIC_3)
    assert res.size == 3
    assert res.optimal


def test_oracle_forced_by_required():
    g = generate_instance("random", 3, 4, True, seed=9, left_size=5, right_size=5)
    free = exact_max_rainbow_matching(g)
    required = free.matching.edges
    assert len(required) == g.colour_count  # one edge per colour: fully forced
    res = exact_max_rainbow_matching(g, required=required)
    assert res.matching.edge_set() == set(required)
    one_per_colour = exact_max_rainbow_matching(g, required=required[:1])
    assert required[0] in one_per_colour.matching.edge_set()


def test_oracle_infeasible_required():
    with pytest.raises(InfeasibleConstraints):
        exact_max_rainbow_matching(
            LATIN_2x2, required=[Edge(0, 0, 0)], forbidden_colours=[0]
        )
    with pytest.raises(InfeasibleConstraints):
        exact_max_rainbow_matching(
            LATIN_2x2, required=[Edge(0, 0, 0), Edge(0, 1, 1)]
        )


def test_oracle_respects_forbidden():
    res = exact_max_rainbow_matching(CYCLIC_3, forbidden_colours=[0])
    assert res.size == 2
    assert 0 not in res.matching.colours()
    res2 = exact_max_rainbow_matching(CYCLIC_3, forbidden_x=[0, 1])
    assert res2.size == 1
    assert all(e.x == 2 for e in res2.matching)


def test_oracle_monotone_under_edge_addition():
    base = generate_instance("random", 4, 3, False, seed=21, left_size=6, right_size=6)
    prev = 0
    from rainbowmatch.core import build_graph

    for cut in range(0, len(base.edges) + 1, 3):
        g = build_graph(6, 6, 4, base.edges[:cut])
        size = exact_max_rainbow_matching(g).size
        assert size >= prev
        prev = size


def test_oracle_budget_returns_flagged_best():
    g = generate_instance("random", 6, 6, False, seed=5, left_size=8, right_size=8)
    res = exact_max_rainbow_matching(g, budget=SearchBudget(node_limit=3))
    assert not res.optimal
    assert res.nodes >= 3


def test_oracle_agrees_with_backtracker_all_order4_squares():
    count = 0
    for grid in enumerate_latin_squares(4):
        rect = LatinRectangle(4, 4, grid, ("0", "1", "2", "3"))
        g = square_to_graph(rect)
        assert exact_max_rainbow_matching(g).size == max_partial_transversal(grid)
        count += 1
    assert count == 576


# --- rainbow path enumeration -------------------------------------------------


def test_enumerate_empty_path_when_endpoints_equal():
    D = complete_biorientation(3)
    paths = enumerate_rainbow_paths(D, 1, 1, max_len=2)
    assert paths == ((),)


def test_enumerate_forbidden_colour_blocks_edge():
    D = LabelledDigraph(2, [(0, 1, 7)])
    assert enumerate_rainbow_paths(D, 0, 1, max_len=3, forbidden_colours={7}) == ()


def test_enumerate_counterexample_path_count():
    D = build_counterexample(1, 4)
    paths = enumerate_rainbow_paths(D, 0, 4, max_len=4)
    nonempty = [p for p in paths if p]
    assert len(nonempty) == 5


def test_enumerate_lexicographic_and_deterministic():
    D = LabelledDigraph(4, [(0, 1, 5), (0, 2, 6), (1, 3, 7), (2, 3, 8), (0, 3, 9)])
    paths = enumerate_rainbow_paths(D, 0, 3, max_len=3)
    seqs = [tuple(a.head for a in p) for p in paths]
    assert seqs == [(1, 3), (2, 3), (3,)]


# --- rainbow k-edge-connectivity ----------------------------------------------


def test_rainbow_connected_complete_digraph_k1():
    D = complete_biorientation(4)
    assert is_rainbow_k_edge_connected(D, 1).connected


def test_single_edge_not_2_connected():
    D = LabelledDigraph(2, [(0, 1, 3)])
    verdict = is_rainbow_k_edge_connected(D, 2, pairs=[(0, 1)])
    assert not verdict.connected


def test_counterexample_is_2_connected_between_endpoints():
    D = build_counterexample(1, 4)
    verdict = is_rainbow_k_edge_connected(D, 2, pairs=[(0, 4)])
    assert verdict.connected
    assert verdict.mode == "exhaustive"


def test_path_exists_iff_1_connected_pairwise():
    D = LabelledDigraph(3, [(0, 1, 4), (1, 2, 5), (2, 0, 6)])
    for u in range(3):
        for v in range(3):
            paths = enumerate_rainbow_paths(D, u, v, max_len=2)
            verdict = is_rainbow_k_edge_connected(D, 1, pairs=[(u, v)])
            assert bool(paths) == verdict.connected


# --- (k, d)-connectivity -------------------------------------------------------


def test_kd_bipartite_class_is_connected():
    # complete biorientation of K_{a,b}: the X class is (b, 2)-connected
    a, b = 3, 2
    arcs = []
    lbl = 100
    for x in range(a):
        for y in range(b):
            arcs.append((x, a + y, lbl))
            arcs.append((a + y, x, lbl + 1))
            lbl += 2
    D = LabelledDigraph(a + b, arcs, vertex_labels=tuple(range(a + b)))
    verdict = is_kd_connected(D, range(a), k=b, d=2, mode="uncoloured")
    assert verdict.connected
    assert verdict.mode == "exhaustive"
    # one more removal than |Y| disconnects (all midpoints gone)
    verdict2 = is_kd_connected(D, range(a), k=b + 1, d=2, mode="uncoloured")
    assert not verdict2.connected


def test_kd_singleton_vacuous():
    D = LabelledDigraph(3, [])
    verdict = is_kd_connected(D, [1], k=5, d=1, mode="uncoloured")
    assert verdict.connected
    assert verdict.mode == "vacuous"


def test_kd_directed_path_middle_vertex_cut():
    D = LabelledDigraph(3, [(0, 1, 5), (1, 2, 6)])
    verdict = is_kd_connected(D, [0, 2], k=2, d=2, mode="uncoloured")
    assert not verdict.connected


def test_kd_coloured_modes_on_rainbow_complete():
    D = complete_biorientation(5)
    for mode in ("edge", "vertex", "total"):
        assert is_kd_connected(D, range(5), k=2, d=2, mode=mode).connected


def test_kd_sampled_verdict_labelled():
    D = complete_biorientation(5)
    verdict = is_kd_connected(
        D, range(5), k=3, d=2, mode="uncoloured", budget=SearchBudget(node_limit=4), samples=5
    )
    assert verdict.mode == "sampled"


# --- free sets -----------------------------------------------------------------


def _context_with_missing(graph):
    full = exact_max_rainbow_matching(graph)
    assert full.size == graph.colour_count - 1
    return make_context(graph, full.matching)


def test_x0_is_free():
    ctx = _context_with_missing(LATIN_2x2)
    assert free_set_check(ctx, ctx.x0, T=(), c=ctx.c_star, k=1)


def test_free_set_rejects_overlap_with_T():
    ctx = _context_with_missing(LATIN_2x2)
    x = ctx.matching.edges[0].x
    assert not free_set_check(ctx, {x}, T={x}, c=ctx.c_star, k=0)


def test_free_set_counterexample_with_k1():
    # 3 colours; removing the pinned structure admits no replacement for X'={covered x}
    g = square_to_graph(parse_latin("1 2 3\n2 3 1\n3 1 2"))
    res = exact_max_rainbow_matching(g, forbidden_colours=[2])
    ctx = make_context(g, res.matching)
    covered = ctx.matching.edges[0].x
    assert not free_set_check(ctx, {covered}, T=(), c=ctx.c_star, k=1)


def test_free_set_budget():
    g = generate_instance("random", 5, 6, True, seed=3, left_size=7, right_size=7)
    res = exact_max_rainbow_matching(g, forbidden_colours=[4])
    ctx = make_context(g, res.matching)
    with pytest.raises(BudgetExceeded):
        free_set_check(
            ctx, ctx.x0, T=(), c=ctx.c_star, k=2, budget=SearchBudget(node_limit=2)
        )
