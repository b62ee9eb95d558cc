import logging

import numpy as np
import pytest

from streamcomm import ConfigError, DynGraph, GenConfig, generate, modularity
from streamcomm.gen import MERGE, SPLIT, GenState, plant_event, power_law_sample
from streamcomm.louvain import groups
from streamcomm.temporal import Action


def replay(events, upto=None):
    g = DynGraph()
    for e in events:
        if upto is not None and e.t > upto:
            break
        if e.action is Action.ADD:
            g.add_edge(e.u, e.v, e.weight)
        else:
            g.remove_edge(e.u, e.v)
    return g


def test_same_seed_same_timeline():
    cfg = GenConfig(n_vertices=80, iterations=8, seed=3)
    a, b = generate(cfg), generate(cfg)
    assert a.events == b.events
    assert a.stable_points == b.stable_points
    assert generate(GenConfig(n_vertices=80, iterations=8, seed=4)).events != a.events


def test_config_errors():
    with pytest.raises(ConfigError):
        generate(GenConfig(n_vertices=3))
    with pytest.raises(ConfigError):
        generate(GenConfig(p_in=0.1, p_out=0.2))
    with pytest.raises(ConfigError):
        generate(GenConfig(degree_exponent=1.0))


def test_no_events_keeps_partition():
    tl = generate(GenConfig(n_vertices=100, iterations=10, event_probability=0.0, seed=2))
    assert tl.stable_points
    last = tl.stable_points[-1][1]
    for _, mapping in tl.stable_points:
        assert all(last[v] == c for v, c in mapping.items())


def test_plant_event_rules():
    rng = np.random.default_rng(0)
    state = plant_event(GenState([[0], [1]], rng), MERGE)
    assert state.communities == [[0, 1]]
    state = plant_event(GenState([[0, 1, 2, 3]], rng), SPLIT)
    assert sorted(map(len, state.communities)) == [2, 2]
    assert sorted(v for c in state.communities for v in c) == [0, 1, 2, 3]


def test_plant_event_skips_with_notice(caplog):
    rng = np.random.default_rng(0)
    with caplog.at_level(logging.INFO):
        state = plant_event(GenState([[0, 1, 2]], rng), MERGE)
        state = plant_event(state, SPLIT)
    assert state.communities == [[0, 1, 2]]
    assert "skipped" in caplog.text


def test_planted_events_show_up_in_ground_truth():
    tl = generate(GenConfig(n_vertices=120, iterations=25, event_probability=1.0, seed=1))
    assert len(tl.stable_points) > 3
    for (_, before), (_, after) in zip(tl.stable_points, tl.stable_points[1:]):
        common = before.keys() & after.keys()
        a = {frozenset(c & common) for c in groups(before).values()} - {frozenset()}
        b = {frozenset(c & common) for c in groups(after).values()} - {frozenset()}
        gone, new = a - b, b - a
        if len(gone) == 2:
            assert new == {gone.pop() | gone.pop()}
        else:
            assert len(gone) == 1 and len(new) == 2
            assert gone.pop() == frozenset().union(*new)


def test_heavy_tail_degrees():
    for seed in range(3):
        t = generate(GenConfig(n_vertices=500, iterations=1, seed=seed)).target_degrees
        assert t.max() >= 5 * t.mean()


def test_power_law_bounds():
    rng = np.random.default_rng(0)
    ks = power_law_sample(rng, 2.5, 2, 10, size=5000)
    assert ks.min() >= 2 and ks.max() <= 10
    counts = np.bincount(ks)
    assert counts[2] > counts[3] > counts[5]


def test_decay_against_ttl_window():
    cfg = GenConfig(n_vertices=100, iterations=20, decay_ttl=4, seed=5)
    tl = generate(cfg)
    last_add = {}
    for e in tl.events:
        key = e.key
        if e.action is Action.ADD:
            last_add[key] = e.t
        else:
            assert e.t - last_add.pop(key) == cfg.decay_ttl
    for key, t in last_add.items():
        assert cfg.iterations - 1 - t < cfg.decay_ttl


def test_planted_partition_modularity():
    cfg = GenConfig(n_vertices=200, degree_exponent=2.5, p_in=0.8, p_out=0.05, iterations=15, seed=7)
    tl = generate(cfg)
    assert tl.stable_points
    for it, mapping in tl.stable_points:
        g = replay(tl.events, upto=it)
        assert modularity(g, {v: mapping[v] for v in g.vertices()}) > 0.3


def test_snapshots_partition_events():
    tl = generate(GenConfig(n_vertices=60, iterations=6, seed=0))
    snaps = tl.snapshots()
    assert sum(map(len, snaps)) == len(tl.events)
    assert tl.partition_at(tl.stable_points[0][0]) == tl.stable_points[0][1]
