import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfgp.budget import Budget
from bfgp.errors import InvalidParameterError, NotConnectedError
from bfgp.genpos import (
    PROVENANCE_CONSTRUCTION,
    VERIFIED,
    VIOLATION,
    VertexSet,
    brute_force_max_gp,
    collinear_triples,
    construct_butterfly_gp_set,
    greedy_gp_lower_bound,
    max_general_position,
    verify_general_position,
    vertex_set_from_dict,
    vertex_set_to_dict,
    witness_to_dict,
)
from bfgp.geodesy import all_pairs_distances
from bfgp.graphs import Graph, build_butterfly, build_cycle, build_path
from corpus import named_corpus, random_connected_graph


def test_small_sets_are_vacuously_verified():
    g = build_path(5)
    dm = all_pairs_distances(g)
    assert verify_general_position(g, dm, VertexSet(())).ok
    assert verify_general_position(g, dm, VertexSet((0, 4))).ok


def test_consecutive_path_triple_violates():
    g = build_path(5)
    dm = all_pairs_distances(g)
    w = verify_general_position(g, dm, VertexSet((1, 2, 3)))
    assert w.status == VIOLATION
    assert w.triple == (1, 2, 3)
    assert w.middle == 2


def test_first_violation_is_lexicographic():
    g = build_path(5)
    dm = all_pairs_distances(g)
    w = verify_general_position(g, dm, VertexSet((0, 1, 2, 3)))
    assert w.triple == (0, 1, 2)
    assert w.middle == 1


def test_verify_rejects_bad_sets():
    g = build_path(3)
    dm = all_pairs_distances(g)
    with pytest.raises(InvalidParameterError):
        verify_general_position(g, dm, VertexSet((0, 9)))
    disc = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(NotConnectedError):
        verify_general_position(disc, all_pairs_distances(disc), VertexSet((0, 2, 3)))


def test_constructed_set_r2_golden():
    s = construct_butterfly_gp_set(2)
    assert s.members == (1, 3, 4, 10, 11)
    assert s.provenance == PROVENANCE_CONSTRUCTION


def test_constructed_set_r3_golden():
    s = construct_butterfly_gp_set(3)
    assert s.members == (1, 3, 5, 7, 8, 10, 28, 29, 30, 31)


@pytest.mark.parametrize("r", range(2, 9))
def test_constructed_set_size_formula(r):
    s = construct_butterfly_gp_set(r)
    assert len(s) == 2 ** r + 2 ** (r - 2)
    nrows = 1 << r
    level0 = [v for v in s.members if v < nrows]
    level1 = [v for v in s.members if nrows <= v < 2 * nrows]
    levelr = [v for v in s.members if v >= r * nrows]
    assert len(level0) == 2 ** (r - 1)
    assert len(levelr) == 2 ** (r - 1)
    assert len(level1) == 2 ** (r - 2)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_constructed_set_verifies(r):
    g = build_butterfly(r)
    dm = all_pairs_distances(g)
    s = construct_butterfly_gp_set(r)
    assert verify_general_position(g, dm, s).status == VERIFIED


def test_constructed_set_needs_r2():
    with pytest.raises(InvalidParameterError):
        construct_butterfly_gp_set(1)


@pytest.mark.parametrize("n", range(5, 13))
def test_cycle_gp_is_three(n):
    g = build_cycle(n)
    dm = all_pairs_distances(g)
    res = max_general_position(g, dm)
    assert res.size == 3
    assert res.optimal


def test_triangle_has_no_collinear_triples():
    g = build_cycle(3)
    dm = all_pairs_distances(g)
    assert collinear_triples(dm, range(3)) == []
    res = max_general_position(g, dm)
    assert res.size == 3


def test_bf2_exact(bf2):
    g, dm = bf2
    res = max_general_position(g, dm)
    assert res.size == 5
    assert res.optimal
    assert res.best_set.members == (1, 3, 4, 10, 11)
    assert verify_general_position(g, dm, res.best_set).ok


def test_bf2_pool_restricted(bf2):
    g, dm = bf2
    pool = [v for v in range(g.n) if g.degree(v) == 2]
    res = max_general_position(g, dm, pool=pool)
    assert res.optimal
    assert res.size == 4    # 2^r with r=2
    assert set(res.best_set.members) <= set(pool)


def test_bf3_pool_restricted(bf3):
    g, dm = bf3
    pool = [v for v in range(g.n) if g.degree(v) == 2]
    res = max_general_position(g, dm, pool=pool)
    assert res.optimal
    assert res.size == 8    # 2^r with r=3
    assert res.size <= 2 ** 3


def test_solver_errors(bf2):
    g, dm = bf2
    with pytest.raises(InvalidParameterError):
        max_general_position(Graph(0, []), dm)
    with pytest.raises(InvalidParameterError):
        Budget(node_limit=0)
    with pytest.raises(InvalidParameterError):
        max_general_position(g, dm, pool=[0, 99])
    disc = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(NotConnectedError):
        max_general_position(disc, all_pairs_distances(disc))


def test_budget_exhaustion_returns_best_found(bf3):
    g, dm = bf3
    res = max_general_position(g, dm, budget=Budget(node_limit=1))
    assert res.budget_exhausted
    assert not res.optimal
    assert res.size >= 1
    assert verify_general_position(g, dm, res.best_set).ok
    # deterministic under the same node budget
    res2 = max_general_position(g, dm, budget=Budget(node_limit=1))
    assert res2.best_set.members == res.best_set.members
    assert res2.nodes_explored == res.nodes_explored


def test_solver_matches_brute_force_on_sample():
    sample = [g for _, g in named_corpus(max_n=8)][:12]
    for g in sample:
        dm = all_pairs_distances(g)
        from bfgp.geodesy import is_connected
        if not is_connected(g):
            continue
        expect, _ = brute_force_max_gp(g, dm)
        res = max_general_position(g, dm)
        assert res.optimal
        assert res.size == expect, g


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_solver_matches_brute_force_random(seed):
    g = random_connected_graph(7, 0.4, seed)
    dm = all_pairs_distances(g)
    expect, _ = brute_force_max_gp(g, dm)
    res = max_general_position(g, dm)
    assert res.optimal
    assert res.size == expect


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10_000), st.sets(st.integers(0, 6), min_size=1))
def test_pool_monotonicity(seed, sub):
    g = random_connected_graph(7, 0.5, seed)
    dm = all_pairs_distances(g)
    small = max_general_position(g, dm, pool=sorted(sub)).size
    full = max_general_position(g, dm).size
    assert small <= full


def test_greedy_p2_takes_both():
    g = build_path(2)
    dm = all_pairs_distances(g)
    assert greedy_gp_lower_bound(g, dm).members == (0, 1)


def test_greedy_bf2_id_order_golden(bf2):
    g, dm = bf2
    s = greedy_gp_lower_bound(g, dm, order="id")
    assert s.members == (0, 1, 2, 3)
    assert verify_general_position(g, dm, s).ok


def test_greedy_orders(bf2):
    g, dm = bf2
    for order, seed in (("degree", 0), ("id", 0), ("random", 7), ("random", 8)):
        s = greedy_gp_lower_bound(g, dm, order=order, seed=seed)
        assert verify_general_position(g, dm, s).ok
    with pytest.raises(InvalidParameterError):
        greedy_gp_lower_bound(g, dm, order="nope")


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_greedy_is_verified_and_below_optimum(seed):
    g = random_connected_graph(7, 0.45, seed)
    dm = all_pairs_distances(g)
    s = greedy_gp_lower_bound(g, dm)
    assert verify_general_position(g, dm, s).ok
    assert len(s) <= max_general_position(g, dm).size


def test_vertex_set_json_round_trip():
    s = construct_butterfly_gp_set(2)
    doc = vertex_set_to_dict(s)
    assert doc["ids"] == [1, 3, 4, 10, 11]
    back = vertex_set_from_dict(doc)
    assert back.members == s.members
    assert back.provenance == s.provenance


def test_witness_json_shape(bf2):
    g, dm = bf2
    w = verify_general_position(g, dm, VertexSet((0, 4, 8)))
    doc = witness_to_dict(w)
    assert doc["status"] == VIOLATION
    assert doc["triple"] == [0, 4, 8]
    assert doc["middle"] == 4
