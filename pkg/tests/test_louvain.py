import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streamcomm import (
    DynGraph,
    EmptyInputError,
    Partition,
    UndefinedModularityError,
    UnknownCommunityError,
    aggregate,
    louvain_full,
    modularity,
    move_gain,
    one_level,
)
from streamcomm.louvain import EPSILON, canonical_mapping, groups
from conftest import seven_vertex_graph, random_graph, random_partition


def matrix_modularity(g, mapping):
    """Oracle: Q = 1/2m sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j) on a dense matrix."""
    vs = g.vertices()
    idx = {v: i for i, v in enumerate(vs)}
    a = np.zeros((len(vs), len(vs)))
    for u, v, w in g.edges():
        if u == v:
            a[idx[u], idx[u]] += 2 * w
        else:
            a[idx[u], idx[v]] += w
            a[idx[v], idx[u]] += w
    k = a.sum(axis=1)
    two_m = k.sum()
    labels = np.array([mapping[v] for v in vs])
    same = labels[:, None] == labels[None, :]
    return float(((a - np.outer(k, k) / two_m) * same).sum() / two_m)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def two_triangles():
    g = DynGraph()
    for u, v in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]:
        g.add_edge(u, v)
    return g


def test_modularity_examples(seven):
    assert modularity(seven, {v: 0 for v in seven.vertices()}) == pytest.approx(0.0, abs=1e-15)
    assert modularity(seven, Partition(seven)) == pytest.approx(-0.1484375, abs=1e-12)
    split = {1: 1, 2: 1, 3: 1, 4: 4, 5: 4, 6: 4, 7: 4}
    assert modularity(seven, split) == pytest.approx(0.3671875, abs=1e-12)
    assert matrix_modularity(seven, split) == pytest.approx(0.3671875, abs=1e-12)


def test_modularity_undefined():
    g = DynGraph()
    g.add_vertex(1)
    with pytest.raises(UndefinedModularityError):
        modularity(g, {1: 1})


def test_move_gain_examples(seven):
    p = Partition(seven)
    assert move_gain(seven, p, 2, 2) == 0.0
    before = modularity(seven, p)
    gain = move_gain(seven, p, 2, 1)
    assert gain > 0
    p.move(seven, 2, 1)
    assert modularity(seven, p) - before == pytest.approx(gain, abs=1e-12)
    back = move_gain(seven, p, 2, None)
    assert back == pytest.approx(-gain, abs=1e-12)
    with pytest.raises(UnknownCommunityError):
        move_gain(seven, p, 2, 99)


def test_one_level_seven_vertex(seven):
    p, improved = one_level(seven)
    assert improved
    assert sorted(map(sorted, p.communities().values())) == [[1, 2, 3], [4, 5], [6, 7]]
    again, improved = one_level(seven, p)
    assert not improved
    assert again.mapping() == p.mapping()


def test_aggregate_seven_vertex(seven):
    p, _ = one_level(seven)
    sup, _ = aggregate(seven, p)
    c123, c45, c67 = p[1], p[4], p[6]
    # in_c = twice the loop weight
    assert [2 * sup.self_loop(c) for c in (c123, c45, c67)] == [6, 2, 2]
    assert sup.weight(c123, c45) == 1
    assert sup.weight(c45, c67) == 2
    assert sup.weight(c123, c67) == 0
    assert sup.total_weight_2m == seven.total_weight_2m

    p2, _ = one_level(sup)
    assert p2[c45] == p2[c67] != p2[c123]
    top, _ = aggregate(sup, p2)
    assert sorted(2 * top.self_loop(c) for c in top.vertices()) == [6, 8]
    a, b = top.vertices()
    assert top.weight(a, b) == 1


def test_aggregate_singletons_is_identity(seven):
    sup, _ = aggregate(seven, Partition(seven))
    assert sup == seven


def test_louvain_full_examples(seven):
    flat, levels = louvain_full(seven)
    assert sorted(map(sorted, groups(flat).values())) == [[1, 2, 3], [4, 5, 6, 7]]
    assert len(levels) == 2
    tri = DynGraph()
    for u, v in [(0, 1), (1, 2), (0, 2)]:
        tri.add_edge(u, v)
    assert len(set(louvain_full(tri)[0].values())) == 1
    with pytest.raises(EmptyInputError):
        louvain_full(DynGraph())


def test_two_triangles_against_exhaustive_oracle():
    g = two_triangles()
    best = max(set_partitions(g.vertices()),
               key=lambda part: matrix_modularity(g, {v: i for i, c in enumerate(part) for v in c}))
    expected = sorted(sorted(c) for c in best)
    assert expected == [[0, 1, 2], [3, 4, 5]]
    flat, _ = louvain_full(g)
    assert sorted(map(sorted, groups(flat).values())) == expected


def test_random_order_still_finds_split():
    for seed in range(5):
        flat, _ = louvain_full(seven_vertex_graph(), random.Random(seed))
        assert canonical_mapping(flat) == {1: 1, 2: 1, 3: 1, 4: 4, 5: 4, 6: 4, 7: 4}


graphs = st.integers(0, 10**6).map(lambda s: random.Random(s))


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_partition_sums_match_recount(rng):
    g = random_graph(rng, n_max=20, loops=True)
    if g.edge_count == 0:
        return
    p = Partition(g, random_partition(rng, g))
    for _ in range(20):
        v = rng.choice(g.vertices())
        target = rng.choice(list(p.members) + [None])
        p.move(g, v, v * 1000 + 7 if target is None else target)
    fresh = Partition(g, p.mapping())
    assert fresh.members.keys() == p.members.keys()
    for c in p.members:
        assert p.in_weight[c] == pytest.approx(fresh.in_weight[c], abs=1e-9)
        assert p.tot_weight[c] == pytest.approx(fresh.tot_weight[c], abs=1e-9)
        assert p.in_weight[c] <= p.tot_weight[c] + 1e-9


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_label_invariance_and_aggregate_invariant(rng):
    g = random_graph(rng, n_max=20, loops=True)
    if g.edge_count == 0:
        return
    mapping = random_partition(rng, g)
    q = modularity(g, mapping)
    perm = {c: c * 31 + 5 for c in set(mapping.values())}
    assert modularity(g, {v: perm[c] for v, c in mapping.items()}) == q
    sup, _ = aggregate(g, mapping)
    assert sup.total_weight_2m == g.total_weight_2m
    assert modularity(sup, Partition(sup)) == pytest.approx(q, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_louvain_levels_monotone(rng):
    g = random_graph(rng, n_max=25)
    if g.edge_count == 0:
        return
    q = modularity(g, Partition(g))
    current = g
    flat = {v: v for v in g.vertices()}
    while True:
        p, improved = one_level(current)
        if not improved:
            break
        flat = {v: p[c] for v, c in flat.items()}
        q_next = modularity(g, flat)
        assert q_next > q + EPSILON / 2
        q = q_next
        current, _ = aggregate(current, p)
