import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streamcomm import DynGraph, EmptyInputError, UnknownVertexError, adc, community_density, optimize_density
from streamcomm.louvain import groups
from conftest import random_graph, random_partition


def graph_of(edges, extra=()):
    g = DynGraph()
    for u, v in edges:
        g.add_edge(u, v)
    for v in extra:
        g.add_vertex(v)
    return g


TRIANGLES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]


def brute_density(g, members):
    """Oracle: count present pairs over all unordered pairs."""
    members = sorted(members)
    pairs = [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
    if not pairs:
        return 0.0
    return sum(1 for a, b in pairs if g.has_edge(a, b)) / len(pairs)


def test_density_examples(seven):
    tri = graph_of([(0, 1), (1, 2), (0, 2)])
    assert community_density(tri, [0, 1, 2]) == 1.0
    path = graph_of([(0, 1), (1, 2)])
    assert community_density(path, [0, 1, 2]) == pytest.approx(2 / 3)
    assert community_density(seven, [4, 5, 6, 7]) == pytest.approx(2 / 3)
    assert community_density(path, [1]) == 0.0
    with pytest.raises(EmptyInputError):
        community_density(path, [])
    with pytest.raises(UnknownVertexError):
        community_density(path, [9])


def test_density_ignores_weight_and_loops():
    g = graph_of([(0, 1)])
    g.add_edge(0, 1, 5.0)
    g.add_edge(0, 0, 2.0)
    assert community_density(g, [0, 1]) == 1.0


def test_adc_examples():
    g = graph_of(TRIANGLES)
    assert adc(g, {0: 0, 1: 0, 2: 0, 3: 3, 4: 3, 5: 3}) == 1.0
    assert adc(g, {v: 0 for v in range(6)}) == pytest.approx(0.4)
    assert adc(g, {v: v for v in range(6)}) == 0.0
    with pytest.raises(EmptyInputError):
        adc(g, {})


def test_two_triangles_split():
    g = graph_of(TRIANGLES)
    out, report = optimize_density(g, {v: 9 for v in range(6)})
    assert out == {0: 0, 1: 0, 2: 0, 3: 3, 4: 3, 5: 3}
    assert report.adc_before == pytest.approx(0.4)
    assert report.adc_after == 1.0
    assert report.splits == [(0, [0, 3])]


def test_connected_community_unchanged(seven):
    mapping = {1: 1, 2: 1, 3: 1, 4: 4, 5: 4, 6: 4, 7: 4}
    out, report = optimize_density(seven, mapping)
    assert out == mapping and report.splits == []


def test_equal_mean_does_not_split():
    g = graph_of([(0, 1), (1, 2), (0, 2)], extra=[3])
    out, report = optimize_density(g, {v: 0 for v in range(4)})
    assert community_density(g, range(4)) == pytest.approx(0.5)
    assert out == {v: 0 for v in range(4)}
    assert report.splits == []


def test_adc_can_drop_after_a_split():
    # the split community improves, but the average over communities gets
    # one more term; see the notes on the non-decrease property
    g = graph_of([(0, 1), (1, 2), (0, 2), (10, 11), (11, 12), (10, 12)], extra=[3, 4])
    mapping = {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, 10: 10, 11: 10, 12: 10}
    out, report = optimize_density(g, mapping)
    assert report.splits == [(0, [0, 3, 4])]
    assert report.adc_before == pytest.approx(0.65)
    assert report.adc_after == pytest.approx(0.5)


seeds = st.integers(0, 10**6)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_density_matches_pair_count(seed):
    rng = random.Random(seed)
    g = random_graph(rng, n_max=15, loops=True)
    for members in groups(random_partition(rng, g)).values():
        assert community_density(g, members) == pytest.approx(brute_density(g, members))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_refinement_soundness_idempotence(seed):
    rng = random.Random(seed)
    g = random_graph(rng, n_max=20, p=rng.uniform(0.02, 0.3))
    mapping = random_partition(rng, g)
    out, report = optimize_density(g, mapping)
    for comm in groups(out).values():
        assert len({mapping[v] for v in comm}) == 1
    for old, new in report.splits:
        members = [v for v in out if out[v] in new]
        parts = g.connected_components(members)
        assert len(parts) >= 2
        assert sum(community_density(g, c) for c in parts) / len(parts) > community_density(g, members)
    again, second = optimize_density(g, out)
    assert again == out and second.splits == []
