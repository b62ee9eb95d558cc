"""Static Louvain: modularity, move gains, local moving and aggregation.

Modularity is ``Q = sum_c [in_c / 2m - (tot_c / 2m)^2]`` where ``in_c`` is
twice the internal edge weight of community ``c`` (self-loops included) and
``tot_c`` the sum of its members' weighted degrees.
"""

from __future__ import annotations

import random
from typing import Dict, Hashable, List, Mapping, Tuple

from .exceptions import (
    EmptyInputError,
    UndefinedModularityError,
    UnknownCommunityError,
    UnknownVertexError,
)
from .graph import DynGraph

#: Minimum modularity gain for a move to count as an improvement.
EPSILON = 1e-9


class Partition:
    """Vertex to community assignment with per-community weight sums.

    Parameters
    ----------
    graph : DynGraph
        Graph whose vertices are assigned.
    mapping : dict, optional
        ``vertex -> community id``. Vertices missing from it (or all
        vertices, when omitted) get a singleton community named after
        themselves.
    """

    __slots__ = ("community_of", "members", "in_weight", "tot_weight")

    def __init__(self, graph: DynGraph, mapping: Mapping | None = None):
        self.community_of: Dict = {}
        self.members: Dict[Hashable, set] = {}
        mapping = mapping or {}
        for v in graph.adj:
            c = mapping.get(v, v)
            self.community_of[v] = c
            self.members.setdefault(c, set()).add(v)
        for v in mapping:
            if v not in graph.adj:
                raise UnknownVertexError(f"unknown vertex {v!r}")
        self.in_weight: Dict[Hashable, float] = {}
        self.tot_weight: Dict[Hashable, float] = {}
        self.refresh(graph)

    def copy(self) -> "Partition":
        p = Partition.__new__(Partition)
        p.community_of = dict(self.community_of)
        p.members = {c: set(m) for c, m in self.members.items()}
        p.in_weight = dict(self.in_weight)
        p.tot_weight = dict(self.tot_weight)
        return p

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, v):
        return self.community_of[v]

    def refresh(self, graph: DynGraph, communities=None) -> None:
        """Recompute ``in``/``tot`` for ``communities`` (default: all) from ``graph``."""
        if communities is None:
            self.in_weight.clear()
            self.tot_weight.clear()
            communities = list(self.members)
        com = self.community_of
        for c in communities:
            if c not in self.members:
                self.in_weight.pop(c, None)
                self.tot_weight.pop(c, None)
                continue
            inner = tot = 0.0
            for v in self.members[c]:
                loop = graph.loops.get(v, 0.0)
                deg = 2.0 * loop
                inner += 2.0 * loop
                for u, w in graph.adj[v].items():
                    deg += w
                    if com[u] == c:
                        inner += w
                tot += deg
            self.in_weight[c] = inner
            self.tot_weight[c] = tot

    def add_vertex(self, v, c=None) -> None:
        """Register an edgeless vertex ``v`` in community ``c`` (default: own singleton)."""
        c = v if c is None else c
        self.community_of[v] = c
        self.members.setdefault(c, set()).add(v)
        self.in_weight.setdefault(c, 0.0)
        self.tot_weight.setdefault(c, 0.0)

    def move(self, graph: DynGraph, v, target) -> None:
        """Move ``v`` to ``target`` (a new id creates a community), updating sums."""
        src = self.community_of[v]
        if src == target:
            return
        k = 2.0 * graph.loops.get(v, 0.0)
        loop2 = k
        to_src = to_dst = 0.0
        com = self.community_of
        for u, w in graph.adj[v].items():
            k += w
            cu = com[u]
            if cu == src:
                to_src += w
            elif cu == target:
                to_dst += w
        self.members[src].discard(v)
        self.in_weight[src] -= 2.0 * to_src + loop2
        self.tot_weight[src] -= k
        if not self.members[src]:
            del self.members[src], self.in_weight[src], self.tot_weight[src]
        com[v] = target
        self.members.setdefault(target, set()).add(v)
        self.in_weight[target] = self.in_weight.get(target, 0.0) + 2.0 * to_dst + loop2
        self.tot_weight[target] = self.tot_weight.get(target, 0.0) + k

    def mapping(self) -> Dict:
        return dict(self.community_of)

    def communities(self) -> Dict[Hashable, List]:
        return {c: sorted(m) for c, m in self.members.items()}

    def canonical(self) -> Dict:
        """``vertex -> smallest member of its community``."""
        return canonical_mapping(self.community_of)


def canonical_mapping(mapping: Mapping) -> Dict:
    """Relabel every community by its smallest member."""
    low: Dict = {}
    for v, c in mapping.items():
        if c not in low or v < low[c]:
            low[c] = v
    return {v: low[c] for v, c in mapping.items()}


def groups(mapping: Mapping) -> Dict[Hashable, set]:
    out: Dict[Hashable, set] = {}
    for v, c in mapping.items():
        out.setdefault(c, set()).add(v)
    return out


def _as_mapping(p) -> Mapping:
    return p.community_of if isinstance(p, Partition) else p


def modularity(g: DynGraph, p) -> float:
    """Newman-Girvan modularity of partition ``p`` (a Partition or a dict)."""
    two_m = g.total_weight_2m
    if g.edge_count == 0 or two_m <= 0:
        raise UndefinedModularityError("modularity is undefined when 2m == 0")
    com = _as_mapping(p)
    inner: Dict = {}
    tot: Dict = {}
    for v, row in g.adj.items():
        try:
            c = com[v]
        except KeyError:
            raise UnknownVertexError(f"vertex {v!r} has no community") from None
        loop = g.loops.get(v, 0.0)
        deg = 2.0 * loop
        i = 2.0 * loop
        for u, w in row.items():
            deg += w
            if com[u] == c:
                i += w
        inner[c] = inner.get(c, 0.0) + i
        tot[c] = tot.get(c, 0.0) + deg
    q = 0.0
    for c, t in tot.items():
        q += inner[c] / two_m - (t / two_m) ** 2
    return q


def _links(g: DynGraph, com: Mapping, v) -> Dict:
    """Weight from ``v`` to each neighbouring community (loop excluded)."""
    out: Dict = {}
    for u, w in g.adj[v].items():
        c = com[u]
        out[c] = out.get(c, 0.0) + w
    return out


def move_gain(g: DynGraph, p: Partition, v, target) -> float:
    """Exact modularity change of moving ``v`` into community ``target``.

    ``target=None`` means a fresh singleton community. The vertex is first
    taken out of its own community and the gain is evaluated from there.
    """
    if v not in g.adj:
        raise UnknownVertexError(f"unknown vertex {v!r}")
    src = p.community_of[v]
    if target is not None and target not in p.members:
        raise UnknownCommunityError(f"unknown community {target!r}")
    if target == src:
        return 0.0
    two_m = g.total_weight_2m
    if two_m <= 0:
        return 0.0
    m = two_m / 2.0
    k = g.weighted_degree(v)
    links = _links(g, p.community_of, v)
    k_src = links.get(src, 0.0)
    tot_src = p.tot_weight[src] - k
    if target is None:
        k_dst = tot_dst = 0.0
    else:
        k_dst = links.get(target, 0.0)
        tot_dst = p.tot_weight[target]
    return (k_dst - k_src) / m - k * (tot_dst - tot_src) / (2.0 * m * m)


def one_level(g: DynGraph, p: Partition | None = None, order=None) -> Tuple[Partition, bool]:
    """Local moving phase.

    Vertices are swept in descending id order (or in ``order`` when given);
    each moves to the neighbouring community with the largest gain (ties go
    to the largest community id) when that gain exceeds :data:`EPSILON`.
    Sweeps repeat until one makes no move. Returns a new partition and
    whether any vertex moved.
    """
    p = Partition(g) if p is None else p.copy()
    two_m = g.total_weight_2m
    if two_m <= 0:
        return p, False
    m = two_m / 2.0
    com = p.community_of
    order = sorted(g.adj, reverse=True) if order is None else list(order)
    degree = {v: g.weighted_degree(v) for v in order}
    improved = False
    while True:
        moved = False
        for v in order:
            k = degree[v]
            src = com[v]
            links = _links(g, com, v)
            factor = k / (2.0 * m * m)
            # gain of joining community c after v has been taken out
            own = links.get(src, 0.0) / m - (p.tot_weight[src] - k) * factor
            best, best_gain = src, own
            for c, kc in links.items():
                if c == src:
                    continue
                gain = kc / m - p.tot_weight[c] * factor
                if gain > best_gain or (gain == best_gain and c > best):
                    best, best_gain = c, gain
            if best != src and best_gain - own > EPSILON:
                p.move(g, v, best)
                moved = True
        if not moved:
            break
        improved = True
    return p, improved


def aggregate(g: DynGraph, p) -> Tuple[DynGraph, Dict]:
    """Collapse each community of ``p`` into one supervertex.

    A supervertex is named after its community id. Its self-loop weight is
    half of the community's ``in`` value, so its weighted degree equals the
    community's ``tot`` and ``2m`` is preserved.
    """
    com = _as_mapping(p)
    sup = DynGraph()
    for v in g.adj:
        if v not in com:
            raise UnknownVertexError(f"vertex {v!r} has no community")
        sup.add_vertex(com[v])
    acc: Dict[Tuple, float] = {}
    for u, v, w in g.edges():
        cu, cv = com[u], com[v]
        # an internal edge lands on the loop once, contributing 2w to in_c
        key = (cu, cv) if cu <= cv else (cv, cu)
        acc[key] = acc.get(key, 0.0) + w
    for (a, b), w in acc.items():
        sup.add_edge(a, b, w)
    return sup, {c: c for c in sup.adj}


def louvain_full(g: DynGraph, rng: random.Random | None = None) -> Tuple[Dict, List[Dict]]:
    """Run Louvain to convergence.

    With ``rng`` every level sweeps its vertices in a random order, as in the
    original randomised method; otherwise the run is fully deterministic.

    Returns
    -------
    flat : dict
        ``vertex -> community id`` on the original vertices.
    levels : list of dict
        One mapping per level, each from that level's vertices to the
        communities that become the next level's supervertices.
    """
    if g.vertex_count == 0:
        raise EmptyInputError("louvain on an empty graph")
    flat = {v: v for v in g.adj}
    levels: List[Dict] = []
    current = g
    while True:
        order = None
        if rng is not None:
            order = sorted(current.adj)
            rng.shuffle(order)
        p, improved = one_level(current, order=order)
        if not improved:
            break
        level = p.mapping()
        levels.append(level)
        flat = {v: level[c] for v, c in flat.items()}
        current, _ = aggregate(current, p)
    return flat, levels
