"""Synthetic edge streams with planted, evolving communities.

A lightweight take on iterative dynamic benchmarks: vertices get power-law
target degrees and are grouped into communities with power-law sizes. Each
iteration, every vertex below its target degree starts one interaction,
inside its community with odds ``p_in : p_out``. Interactions expire after
``decay_ttl`` iterations unless re-issued. When every community keeps at
least ``p_in / 2`` of its members' edge endpoints inside, the iteration is
stable: the planted partition is recorded and, with ``event_probability``,
two communities merge or one splits.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .exceptions import ConfigError
from .temporal import EdgeEvent

log = logging.getLogger(__name__)

MERGE = "merge"
SPLIT = "split"


@dataclass(frozen=True)
class GenConfig:
    n_vertices: int = 200
    degree_exponent: float = 2.5
    size_exponent: float = 2.0
    p_in: float = 0.8
    p_out: float = 0.05
    decay_ttl: int = 10
    event_probability: float = 0.1
    iterations: int = 30
    seed: int = 0
    min_community_size: int = 4

    def validate(self) -> None:
        if self.min_community_size < 2:
            raise ConfigError("min_community_size must be at least 2")
        if self.n_vertices < max(4, self.min_community_size):
            raise ConfigError(
                f"n_vertices={self.n_vertices} is below the minimum community size"
            )
        if self.degree_exponent <= 1 or self.size_exponent <= 1:
            raise ConfigError("power-law exponents must exceed 1")
        if not 0 < self.p_in <= 1:
            raise ConfigError("p_in must lie in (0, 1]")
        if not 0 <= self.p_out < 1:
            raise ConfigError("p_out must lie in [0, 1)")
        if not self.p_out < self.p_in:
            raise ConfigError("p_out must be smaller than p_in")
        if not 0 <= self.event_probability <= 1:
            raise ConfigError("event_probability must lie in [0, 1]")
        if self.decay_ttl < 1 or self.iterations < 1:
            raise ConfigError("decay_ttl and iterations must be positive")


@dataclass
class GroundTruthTimeline:
    """Generated events plus the planted partition at each stable iteration.

    Event timestamps are iteration indices; the events between two stable
    iterations form one snapshot.
    """

    events: List[EdgeEvent]
    stable_points: List[Tuple[int, Dict[int, int]]]
    config: GenConfig | None = None
    target_degrees: np.ndarray | None = None

    def snapshots(self) -> List[List[EdgeEvent]]:
        """Events grouped into segments ending at each stable iteration."""
        bounds = [it for it, _ in self.stable_points]
        out: List[List[EdgeEvent]] = [[] for _ in range(len(bounds) + 1)]
        idx = 0
        for e in self.events:
            while idx < len(bounds) and e.t > bounds[idx]:
                idx += 1
            out[idx].append(e)
        return out

    def partition_at(self, iteration: int) -> Dict[int, int]:
        for it, mapping in self.stable_points:
            if it == iteration:
                return mapping
        raise KeyError(iteration)


def power_law_sample(rng: np.random.Generator, exponent: float, k_min: int, k_max: int,
                     size=None):
    """Discrete power law ``P(k) ~ k^-exponent`` on ``[k_min, k_max]`` by inverse CDF."""
    ks = np.arange(k_min, k_max + 1)
    pmf = ks.astype(float) ** -exponent
    cdf = np.cumsum(pmf / pmf.sum())
    cdf[-1] = 1.0
    return ks[np.searchsorted(cdf, rng.random(size), side="right")]


@dataclass
class GenState:
    """Mutable generator state: current planted communities and RNG."""

    communities: List[List[int]]
    rng: np.random.Generator
    community_of: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.reindex()

    def reindex(self) -> None:
        self.communities = sorted((sorted(c) for c in self.communities if c), key=lambda c: c[0])
        self.community_of = {v: i for i, c in enumerate(self.communities) for v in c}

    def mapping(self, vertices=None) -> Dict[int, int]:
        """``vertex -> smallest member of its community`` for ``vertices`` (default: all)."""
        keys = self.community_of if vertices is None else vertices
        return {v: self.communities[self.community_of[v]][0] for v in sorted(keys)}


def plant_event(state: GenState, kind: str) -> GenState:
    """Merge two random communities or split a random one (size >= 4) in half."""
    rng = state.rng
    if kind == MERGE:
        if len(state.communities) < 2:
            log.info("merge skipped: fewer than two communities")
            return state
        i, j = sorted(rng.choice(len(state.communities), size=2, replace=False))
        merged = state.communities[i] + state.communities[j]
        state.communities = [c for k, c in enumerate(state.communities) if k not in (i, j)]
        state.communities.append(merged)
    elif kind == SPLIT:
        big = [k for k, c in enumerate(state.communities) if len(c) >= 4]
        if not big:
            log.info("split skipped: no community with at least four members")
            return state
        k = big[int(rng.integers(len(big)))]
        members = list(state.communities[k])
        rng.shuffle(members)
        half = len(members) // 2
        state.communities = [c for i, c in enumerate(state.communities) if i != k]
        state.communities += [members[:half], members[half:]]
    else:
        raise ValueError(f"unknown event kind {kind!r}")
    state.reindex()
    return state


def community_sizes(rng: np.random.Generator, cfg: GenConfig) -> List[int]:
    n = cfg.n_vertices
    lo = cfg.min_community_size
    hi = max(lo, math.isqrt(n))
    sizes: List[int] = []
    remaining = n
    while remaining >= lo:
        s = int(min(power_law_sample(rng, cfg.size_exponent, lo, hi), remaining))
        sizes.append(s)
        remaining -= s
    if remaining:
        sizes[int(np.argmax(sizes))] += remaining
    return sizes


def _is_stable(state: GenState, degree: np.ndarray, live: Dict[Tuple[int, int], int],
               threshold: float) -> bool:
    internal = np.zeros(len(state.communities))
    for a, b in live:
        ca = state.community_of[a]
        if ca == state.community_of[b]:
            internal[ca] += 2
    for i, c in enumerate(state.communities):
        tot = degree[c].sum()
        if tot == 0 or internal[i] / tot < threshold:
            return False
    return True


def generate(cfg: GenConfig) -> GroundTruthTimeline:
    """Run the generator; the same config (seed included) gives the same timeline."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n_vertices
    k_max = max(2, math.isqrt(n))
    target = power_law_sample(rng, cfg.degree_exponent, 2, k_max, size=n)
    order = rng.permutation(n)
    communities = []
    start = 0
    for s in community_sizes(rng, cfg):
        communities.append([int(v) for v in order[start:start + s]])
        start += s
    state = GenState(communities, rng)
    propensity = target / target.sum()

    live: Dict[Tuple[int, int], int] = {}
    degree = np.zeros(n, dtype=int)
    seen = set()
    events: List[EdgeEvent] = []
    stable: List[Tuple[int, Dict[int, int]]] = []
    intra_odds = cfg.p_in / (cfg.p_in + cfg.p_out)

    for it in range(cfg.iterations):
        for key in sorted(k for k, born in live.items() if it - born >= cfg.decay_ttl):
            del live[key]
            degree[list(key)] -= 1
            events.append(EdgeEvent.remove(key[0], key[1], t=it))
        for v in range(n):
            if degree[v] >= target[v]:
                continue
            home = state.communities[state.community_of[v]]
            inside = rng.random() < intra_odds and len(home) > 1
            if inside:
                pool = np.array([u for u in home if u != v])
            else:
                pool = np.setdiff1d(np.arange(n), home, assume_unique=True)
                if pool.size == 0:
                    pool = np.array([u for u in home if u != v])
            weights = propensity[pool]
            u = int(rng.choice(pool, p=weights / weights.sum()))
            key = (min(u, v), max(u, v))
            if key not in live:
                degree[[u, v]] += 1
            live[key] = it
            seen.update(key)
            events.append(EdgeEvent.add(v, u, 1.0, t=it))
        if _is_stable(state, degree, live, cfg.p_in / 2):
            stable.append((it, state.mapping(seen)))
            if rng.random() < cfg.event_probability:
                plant_event(state, MERGE if rng.random() < 0.5 else SPLIT)
    return GroundTruthTimeline(events, stable, cfg, target)
