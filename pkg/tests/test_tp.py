import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_alpha, brute_is_tp
from test_graph import graphs

from tpkernel import (
    Graph,
    NotTriviallyPerfectError,
    SetFamily,
    UcdNode,
    UcdStructureError,
    alpha_tp,
    build_ucd,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_tp_set_system,
    is_trivially_perfect,
    path_graph,
    preceq,
    random_tp_graph,
    star_graph,
    ucd_to_graph,
)
from tpkernel.tp import UcdForest, check_forest


def _forest(spec):
    """``spec`` lists ``(parent, bag)`` in preorder."""
    nodes = []
    roots = []
    for i, (parent, bag) in enumerate(spec):
        nodes.append(UcdNode(i, parent, tuple(bag)))
        if parent is None:
            roots.append(i)
        else:
            nodes[parent].children.append(i)
    v2n = {v: t.id for t in nodes for v in t.bag}
    return UcdForest(nodes, roots, v2n, len(v2n))


def test_recognition_examples():
    assert is_trivially_perfect(Graph(1))
    assert not is_trivially_perfect(cycle_graph(4))
    assert not is_trivially_perfect(path_graph(4))
    rng = random.Random(0)
    a, b = random_tp_graph(9, rng), random_tp_graph(7, rng)
    assert is_trivially_perfect(disjoint_union(a, b))


@settings(max_examples=300)
@given(graphs(max_n=12))
def test_recognition_matches_obstruction_scan(g):
    assert is_trivially_perfect(g) == brute_is_tp(g)


def test_build_ucd_examples():
    u = build_ucd(complete_graph(5))
    assert len(u.nodes) == 1 and len(u.nodes[0].bag) == 5
    u = build_ucd(path_graph(3))  # 0-1-2
    assert u.nodes[u.roots[0]].bag == (1,)
    assert sorted(u.nodes[c].bag for c in u.nodes[u.roots[0]].children) == [(0,), (2,)]
    u = build_ucd(Graph(4, [(0, 1), (2, 3)]))
    assert len(u.roots) == 2 and all(len(u.nodes[r].bag) == 2 for r in u.roots)


def test_build_ucd_rejects_non_tp_with_witness():
    with pytest.raises(NotTriviallyPerfectError) as err:
        build_ucd(cycle_graph(4))
    assert err.value.witness.is_valid_in(cycle_graph(4))


def test_ucd_restricted_to_vertices_keeps_ids():
    g = cycle_graph(5)
    u = build_ucd(g, [1, 2, 3])  # the path 1-2-3
    assert u.vertices() == {1, 2, 3}
    assert u.nodes[u.roots[0]].bag == (2,)


def test_node_ids_are_preorder():
    rng = random.Random(1)
    u = build_ucd(random_tp_graph(60, rng))
    for t in u.nodes:
        assert all(c > t.id for c in t.children)
        if t.parent is not None:
            assert t.parent < t.id


def test_ucd_to_graph_examples():
    assert ucd_to_graph(_forest([(None, [0, 1, 2, 3])])) == complete_graph(4)
    assert ucd_to_graph(_forest([(None, [1]), (0, [0]), (0, [2])])) == path_graph(3)


def test_malformed_forest_is_rejected():
    with pytest.raises(UcdStructureError):
        ucd_to_graph(_forest([(None, [0]), (0, [1])]))  # single child
    bad = _forest([(None, [0]), (0, [1]), (0, [2])])
    bad.nodes[2].bag = (1,)
    with pytest.raises(UcdStructureError):
        check_forest(bad)


@settings(max_examples=100)
@given(st.integers(1, 60), st.integers(0, 10**6))
def test_roundtrip_on_random_tp_graphs(n, seed):
    g = random_tp_graph(n, random.Random(seed))
    u = build_ucd(g)
    check_forest(u)
    assert ucd_to_graph(u) == g
    # comparability in the forest is adjacency
    for a in range(min(n, 15)):
        for b in range(a + 1, min(n, 15)):
            assert (preceq(u, a, b) != "incomparable") == g.has_edge(a, b)


def test_preceq_examples():
    u = build_ucd(path_graph(3))
    assert preceq(u, 1, 0) == "ancestor"
    assert preceq(u, 0, 1) == "descendant"
    assert preceq(u, 0, 2) == "incomparable"
    u = build_ucd(complete_graph(2))
    assert preceq(u, 0, 1) == "same-bag"
    u = build_ucd(Graph(4, [(0, 1), (2, 3)]))
    assert preceq(u, 0, 3) == "incomparable"


def test_alpha_examples():
    assert alpha_tp(complete_graph(6))[0] == 1
    assert alpha_tp(empty_graph(7)) == (7, list(range(7)))
    assert alpha_tp(star_graph(3))[0] == 3
    with pytest.raises(NotTriviallyPerfectError):
        alpha_tp(path_graph(4))


@settings(max_examples=150)
@given(st.integers(1, 16), st.integers(0, 10**6))
def test_alpha_matches_brute_force(n, seed):
    g = random_tp_graph(n, random.Random(seed))
    a, witness = alpha_tp(g)
    assert a == brute_alpha(g) == len(witness)
    assert not any(g.has_edge(x, y) for x in witness for y in witness if x < y)


def test_set_system_examples():
    assert is_tp_set_system(SetFamily.of({1, 2}, [set(), {1}, {1, 2}]))
    assert not is_tp_set_system(SetFamily.of({1, 2}, [{1}, {2}, {1, 2}]))
    assert is_tp_set_system(SetFamily.of({1, 2, 3}, [{1}, {2}, {3}]))
    with pytest.raises(ValueError):
        SetFamily.of({1}, [{2}])
