import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_is_modulator

from tpkernel import (
    Graph,
    Instance,
    Kernel,
    Mode,
    NoInstance,
    Pair,
    build_ucd,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    find_obstruction_avoiding,
    gen_planted,
    kernelize,
    path_graph,
    random_graph,
    random_tp_graph,
    star_graph,
)
from tpkernel.io import parse_trace, write_trace
from tpkernel.kernel import exhaust_rules_1_to_4
from tpkernel.kernel.outcome import ReductionTrace, ReplayError, TraceStep
from tpkernel.kernel.rules import rule1_add, rule2_delete, rule3_twin, rule4_module
from tpkernel.kernel.structure import (
    Comb,
    ImportantBags,
    ModulatorViolationError,
    analyze,
    build_modulator,
    classify_vertex_type,
    lca_closure,
    lca_closure_naive,
    mark_important_bags,
    partition_remainder,
    rule5_comb,
    rule5_index,
    x_neighborhood,
)

MODES = [Mode.EDITING, Mode.DELETION, Mode.COMPLETION]


# Rules 1 and 2


def test_rule1_on_c4():
    c4 = cycle_graph(4)  # 0-1-2-3-0, the chords are non-edges
    assert isinstance(rule1_add(Instance(c4, 0)), NoInstance)
    out = rule1_add(Instance(c4, 1))
    # at k=1 one chord is not enough: the common neighbourhood has a single non-edge
    assert out is None
    assert isinstance(rule1_add(Instance(c4, 0), Mode.DELETION), NoInstance)


def test_rule1_quiet_on_tp_graphs():
    rng = random.Random(0)
    for _ in range(50):
        g = random_tp_graph(rng.randint(1, 20), rng)
        assert rule1_add(Instance(g, 0)) is None
        assert rule2_delete(Instance(g, 0)) is None


def _four_c4s():
    # u=0, v=1 non-adjacent; C4s 0-a-1-b-0 with a,b non-adjacent
    edges = []
    for i in range(4):
        a, b = 2 + 2 * i, 3 + 2 * i
        edges += [(0, a), (a, 1), (1, b), (b, 0)]
    return Graph(10, edges)


def _four_p4s():
    # edge 0-1; P4s x-0-1-y
    edges = [(0, 1)]
    for i in range(4):
        edges += [(2 + 2 * i, 0), (1, 3 + 2 * i)]
    return Graph(10, edges)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_rule1_fires_on_four_c4s_through_a_non_edge(k):
    g = _four_c4s()
    out = rule1_add(Instance(g, k), Mode.EDITING)
    if k == 0:
        assert isinstance(out, NoInstance)
    else:
        assert out.k == k - 1 and out.g.has_edge(0, 1)
    assert isinstance(rule1_add(Instance(g, k), Mode.DELETION), NoInstance)
    assert rule1_add(Instance(g, 4)) is None or not rule1_add(Instance(g, 4)).g.has_edge(0, 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_rule2_fires_on_four_p4s_through_an_edge(k):
    g = _four_p4s()
    out = rule2_delete(Instance(g, k), Mode.DELETION)
    assert out.k == k - 1 and not out.g.has_edge(0, 1)
    assert isinstance(rule2_delete(Instance(g, k), Mode.COMPLETION), NoInstance)


def test_rule2_examples():
    assert isinstance(rule2_delete(Instance(path_graph(4), 0)), NoInstance)
    assert rule2_delete(Instance(complete_graph(6), 0)) is None


# Rules 3 and 4


def test_rule3_examples():
    out = rule3_twin(Instance(complete_graph(7), 0))
    assert out.g == complete_graph(6) and out.k == 0
    assert rule3_twin(Instance(complete_graph(5), 0)) is None
    assert rule3_twin(Instance(cycle_graph(4), 3)) is None


def test_rule4_examples():
    for k in range(3):
        out = rule4_module(Instance(empty_graph(2 * k + 6), k))
        assert out.g == empty_graph(2 * k + 4)
        out = rule4_module(Instance(star_graph(2 * k + 5), k))
        assert out.g == star_graph(2 * k + 4)
    assert rule4_module(Instance(complete_graph(9), 0)) is None


# modulator


def test_modulator_examples():
    rng = random.Random(1)
    m = build_modulator(Instance(random_tp_graph(30, rng), 2))
    assert m.x == frozenset() and m.rounds == 0
    m = build_modulator(Instance(cycle_graph(4), 1))
    assert m.x == frozenset(range(4)) and m.rounds == 1
    for k in range(4):
        g = Graph(0)
        for _ in range(k + 1):
            g = disjoint_union(g, cycle_graph(4))
        assert isinstance(build_modulator(Instance(g, k)), NoInstance)


@settings(max_examples=200, deadline=None)
@given(st.integers(4, 11), st.floats(0, 1), st.integers(0, 3), st.integers(0, 10**6))
def test_modulator_is_valid_and_small(n, p, k, seed):
    g = random_graph(n, p, random.Random(seed))
    m = build_modulator(Instance(g, k))
    if isinstance(m, NoInstance):
        return
    assert len(m.x) <= 4 * k
    assert find_obstruction_avoiding(g, m.x) is None
    assert brute_is_modulator(g, m.x)


def test_x_neighborhood():
    g = star_graph(3)
    assert x_neighborhood(g, [], 0) == frozenset()
    assert x_neighborhood(g, [1, 2, 3], 0) == frozenset({1, 2, 3})
    with pytest.raises(ValueError):
        x_neighborhood(g, [0], 0)


# neighbourhood types


def _with_x(base_n, base_edges, seen):
    x = base_n
    g = Graph(base_n + 1, base_edges + [(x, v) for v in seen])
    return g, build_ucd(g, range(base_n)), x


P3_PLUS_K1 = (4, [(0, 1), (1, 2)])  # nodes: 0={1}, 1={0}, 2={2}, 3={3}


def test_type0_examples():
    g, u, x = _with_x(*P3_PLUS_K1, [])
    assert classify_vertex_type(g, u, x).kind == 0
    assert classify_vertex_type(g, u, x).components == ()
    g, u, x = _with_x(*P3_PLUS_K1, [0, 1, 2, 3])
    t = classify_vertex_type(g, u, x)
    assert t.kind == 0 and t.components == (0, 3)


def test_type1_wins_over_type2_on_full_paths():
    g, u, x = _with_x(*P3_PLUS_K1, [1, 0])
    t = classify_vertex_type(g, u, x)
    assert t.kind == 1 and t.t_x == 1


def test_type2_example():
    g, u, x = _with_x(4, [(0, 1), (0, 2), (0, 3)], [0, 1, 2])
    t = classify_vertex_type(g, u, x)
    assert t.kind == 2 and t.t_x == u.roots[0] and len(t.subtrees) == 2


def test_type_errors():
    g, u, x = _with_x(*P3_PLUS_K1, [0])  # a leaf without its ancestor
    with pytest.raises(ModulatorViolationError):
        classify_vertex_type(g, u, x)
    with pytest.raises(ValueError):
        classify_vertex_type(g, u, 0)


# important bags and LCA closure


def _random_forest_ucd(rng, n):
    return build_ucd(random_tp_graph(n, rng))


def test_lca_closure_examples():
    u = build_ucd(star_graph(2))  # root {0}, leaves {1}, {2}
    a, b = u.nodes[u.roots[0]].children
    assert lca_closure(u, {a, b}) == {a, b, u.roots[0]}
    assert lca_closure(u, {a, u.roots[0]}) == {a, u.roots[0]}


def test_lca_closure_properties():
    rng = random.Random(7)
    for _ in range(1000):
        u = _random_forest_ucd(rng, rng.randint(1, 40))
        m = set(rng.sample(range(len(u.nodes)), rng.randint(0, min(6, len(u.nodes)))))
        closed = lca_closure(u, m)
        assert closed == lca_closure_naive(u, m)
        assert len(closed) <= max(2 * len(m), 0) or not m
        # components of T - closure touch at most two closure nodes
        for t in range(len(u.nodes)):
            parent = u.nodes[t].parent
            if t in closed or (parent is not None and parent not in closed):
                continue
            stack, lower = [t], 0
            while stack:
                s = stack.pop()
                for c in u.nodes[s].children:
                    if c in closed:
                        lower += 1
                    else:
                        stack.append(c)
            assert lower + (parent is not None) <= 2


def test_mark_important_bags_examples():
    g, u, x = _with_x(*P3_PLUS_K1, [0, 1, 2, 3])
    t = classify_vertex_type(g, u, x)
    assert mark_important_bags(u, {x: t}).i == frozenset()
    # two leaves of one tree
    u = build_ucd(star_graph(3))
    leaves = u.nodes[u.roots[0]].children[:2]
    from tpkernel.kernel.structure import NeighborhoodType

    types = {10 + i: NeighborhoodType(1, t_x=leaf) for i, leaf in enumerate(leaves)}
    imp = mark_important_bags(u, types)
    assert imp.i >= {*leaves, u.roots[0]}


# partition


def test_partition_examples():
    u = build_ucd(star_graph(3))
    g = star_graph(3)
    p = partition_remainder(g, u, ImportantBags(frozenset(), frozenset()))
    assert p.v_0 == {0, 1, 2, 3} and not p.tassels and not p.combs
    root = u.roots[0]
    p = partition_remainder(g, u, ImportantBags(frozenset({root}), frozenset({root})))
    assert p.v_i == {0} and p.tassels == {root: {1, 2, 3}}


def test_path_shaped_ucd_gives_one_comb():
    # nested cliques 0 < 1 < 2 < 3 < 4, each level with a pendant tooth
    edges = []
    shaft = list(range(5))
    for i in shaft:
        edges += [(j, i) for j in range(i)]
    for i in range(1, 4):
        tooth = 4 + i
        edges += [(j, tooth) for j in range(i + 1)]
    edges += [(j, 8) for j in range(5)] + [(j, 9) for j in range(5)]
    edges.append((0, 10))  # side branch so that 1 is not universal
    g = Graph(11, edges)
    u = build_ucd(g)
    top = u.vertex_to_node[0]
    bottom = u.vertex_to_node[4]
    imp = ImportantBags(frozenset({top, bottom}), frozenset({top, bottom}))
    p = partition_remainder(g, u, imp)
    assert len(p.combs) == 1
    comb = p.combs[0]
    assert comb.length == 3 and comb.shaft_vertices == {1, 2, 3}
    assert sorted(map(sorted, comb.teeth)) == [[5], [6], [7]]
    assert all(comb.simple)


# Rule 5 on synthetic combs


def _comb(simple):
    d = len(simple)
    return Comb(
        shaft=tuple(range(d)),
        top=-1,
        bottom=-2,
        teeth=tuple(frozenset({100 + i}) for i in range(d)),
        shaft_vertices=frozenset(),
        simple=tuple(simple),
    )


@pytest.mark.parametrize("k", [0, 1])
def test_rule5_index_examples(k):
    r = 4 * k + 3
    assert rule5_index(_comb([False] * r * r), k) == (r * r, "i")
    assert rule5_index(_comb([True] * r * r), k) == (r, "ii")
    assert rule5_index(_comb([True] * (r * r - 1)), k) is None
    mixed = [False] + [True] * (r * r - 1)
    assert rule5_index(_comb(mixed), k) == (r + 1, "ii")


def test_rule5_comb_removes_the_tooth():
    g = Graph(200)
    out = rule5_comb(Instance(g, 0), _comb([True] * 9))
    assert out.g.n == 199 and out.k == 0
    assert rule5_comb(Instance(g, 0), _comb([True] * 8)) is None


# structural invariants on reduced instances


def _reduced_anatomies(count):
    rng = random.Random(11)
    out = []
    while len(out) < count:
        k = rng.randint(1, 3)
        mode = rng.choice(MODES)
        p = gen_planted(rng.randint(20, 80), k, rng.randrange(10**6), mode)
        red = exhaust_rules_1_to_4(p.instance, mode)
        if isinstance(red, NoInstance):
            continue
        a = analyze(Instance(red.g, red.k))
        if isinstance(a, NoInstance):
            continue
        out.append((red.g, a))
    return out


def test_x_neighbourhoods_nest_along_the_ucd():
    for g, a in _reduced_anatomies(60):
        x = a.modulator.x
        u = a.ucd
        nx = {v: x_neighborhood(g, x, v) for v in u.vertices()}
        for t in u.nodes:
            bag_sets = [nx[v] for v in t.bag]
            for s1 in bag_sets:
                for s2 in bag_sets:
                    assert s1 <= s2 or s2 <= s1
            if t.parent is not None:
                for v in t.bag:
                    for w in u.nodes[t.parent].bag:
                        assert nx[w] >= nx[v]


def test_comb_shafts_and_teeth_share_x_neighbourhoods():
    from combs import planted_comb_instance

    seen = 0
    for seed in range(3):
        g = planted_comb_instance(60, seed, 0.3)
        a = analyze(Instance(g, 1))
        if isinstance(a, NoInstance):
            continue
        x = a.modulator.x
        for comb in a.partition.combs:
            seen += 1
            ys = {x_neighborhood(g, x, v) for v in comb.shaft_vertices}
            zs = {x_neighborhood(g, x, v) for tooth in comb.teeth for v in tooth}
            assert len(ys) == 1 and len(zs) <= 1
            if zs:
                assert next(iter(zs)) <= next(iter(ys))
    assert seen


# driver


def test_kernelize_examples():
    out = kernelize(Instance(cycle_graph(4), 0))
    assert isinstance(out, NoInstance)
    assert out.g == cycle_graph(4) and out.k == 0
    rng = random.Random(3)
    g = random_tp_graph(40, rng)
    for mode in MODES:
        out = kernelize(Instance(g, 2), mode)
        assert isinstance(out, Kernel) and out.k <= 2
        assert out.g.n <= g.n


def test_kernel_output_is_reduced():
    rng = random.Random(4)
    for _ in range(60):
        k = rng.randint(0, 3)
        mode = rng.choice(MODES)
        g = random_graph(rng.randint(4, 14), rng.random(), rng)
        out = kernelize(Instance(g, k), mode)
        if isinstance(out, NoInstance):
            continue
        inst = Instance(out.g, out.k)
        assert rule1_add(inst, mode) is None and rule2_delete(inst, mode) is None
        assert rule3_twin(inst) is None and rule4_module(inst) is None
        assert all(c < (4 * out.k + 3) ** 2 for c in out.comb_lengths)


def test_trace_replays_to_the_output():
    rng = random.Random(5)
    for _ in range(100):
        k = rng.randint(0, 3)
        mode = rng.choice(MODES)
        p = gen_planted(rng.randint(5, 40), k, rng.randrange(10**6), mode)
        out = kernelize(p.instance, mode)
        g, kk = out.trace.replay(p.instance.g, p.instance.k)
        assert g == out.g and kk == out.k
        again = parse_trace(write_trace(out.trace))
        assert again.steps == out.trace.steps
        if isinstance(out, Kernel):
            # origin maps kernel ids to input ids of a vertex-induced subgraph
            assert len(out.origin) == out.g.n
            assert len(set(out.origin)) == out.g.n


def test_replay_rejects_mismatches():
    trace = ReductionTrace([TraceStep("rule2", (0, 1), 1, 0)])
    with pytest.raises(ReplayError):
        trace.replay(cycle_graph(4), 0)  # wrong budget
    with pytest.raises(ReplayError):
        trace.replay(Graph(4), 1)  # pair is not an edge
    with pytest.raises(ReplayError):
        ReductionTrace([TraceStep("rule9", (0,), 1, 1)]).replay(Graph(4), 1)
    g, k = ReductionTrace([TraceStep("rule2", (0, 1), 1, 0)]).replay(cycle_graph(4), 1)
    assert not g.has_edge(0, 1) and k == 0


def test_trace_record_roundtrip():
    s = TraceStep("rule4", (3, 4), 2, 2, {0: 0, 1: 1, 2: 2, 5: 3}, {"module": [3, 4, 5]})
    assert TraceStep.from_record(s.to_record()) == s
    assert Pair.of(1, 0) == Pair(0, 1)
