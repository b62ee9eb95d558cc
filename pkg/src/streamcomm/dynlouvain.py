"""Incremental Louvain over an edge-event stream.

The state keeps two coupled networks: the original graph with its community
assignment (lower level) and the graph obtained by collapsing every community
into a supervertex (upper level). An edge event only disbands the
communities it touches; their members re-enter the upper level as singleton
supervertices while untouched communities stay collapsed. Local moving then
runs on the small upper-level graph, its moves are pushed down to the lower
level and the upper level is re-aggregated, until modularity stops rising.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, FrozenSet, Mapping

from .exceptions import MissingEdgeError, UndefinedModularityError
from .graph import DynGraph
from .louvain import EPSILON, Partition, aggregate, canonical_mapping, modularity, one_level
from .temporal import Action, EdgeEvent


@dataclass(frozen=True)
class AffectedSet:
    vertices: FrozenSet = frozenset()
    communities: FrozenSet = frozenset()

    def __bool__(self) -> bool:
        return bool(self.vertices)


@dataclass(frozen=True)
class StepReport:
    modularity: float
    changed_vertices: int
    elapsed: float
    affected: int = 0


def _safe_modularity(g: DynGraph, p) -> float:
    try:
        return modularity(g, p)
    except UndefinedModularityError:
        return float("nan")


class DynamicLouvain:
    """Two-level incremental Louvain state.

    Parameters
    ----------
    graph : DynGraph, optional
        Initial network; copied. Every vertex starts in its own community.
    mapping : dict, optional
        Initial ``vertex -> community`` assignment instead of singletons.

    Attributes
    ----------
    ll_graph, ll_partition
        Original network and its communities. Community ids are the
        smallest member between steps.
    ul_graph
        Aggregate of ``ll_graph`` under ``ll_partition``; supervertex ids
        are community ids.
    ul_membership
        Working assignment of supervertices from the last local-moving pass.
    """

    def __init__(self, graph: DynGraph | None = None, mapping: Mapping | None = None):
        self.ll_graph = DynGraph() if graph is None else graph.copy()
        self.ll_partition = Partition(self.ll_graph, mapping)
        self._canonicalize()
        self.ul_graph, _ = aggregate(self.ll_graph, self.ll_partition)
        self.ul_membership: Dict = {s: s for s in self.ul_graph.adj}
        self.prev_modularity = 0.0
        self.last_modularity = _safe_modularity(self.ll_graph, self.ll_partition)
        self.pending_add_index = 1
        self.pending_remove_index = 1

    # -- affected sets ---------------------------------------------------

    def _communities_of(self, vertices) -> FrozenSet:
        com = self.ll_partition.community_of
        return frozenset(com[v] for v in vertices if v in com)

    def _closure(self, seeds) -> AffectedSet:
        members = self.ll_partition.members
        comms = self._communities_of(seeds)
        verts = set(v for v in seeds if v not in self.ll_partition.community_of)
        for c in comms:
            verts |= members[c]
        return AffectedSet(frozenset(verts), comms)

    def affected_by_addition(self, u, v) -> AffectedSet:
        """Members of the communities an added edge ``(u, v)`` connects.

        Empty when both endpoints already share a community. Endpoints not
        yet in the graph are affected themselves.
        """
        com = self.ll_partition.community_of
        if u in com and v in com and com[u] == com[v]:
            return AffectedSet()
        return self._closure((u, v))

    def affected_by_removal(self, u, v) -> AffectedSet:
        """Members of the shared community when ``(u, v)`` is internal, else empty."""
        if not self.ll_graph.has_edge(u, v):
            raise MissingEdgeError(f"no edge ({u!r}, {v!r})")
        com = self.ll_partition.community_of
        if com[u] != com[v]:
            return AffectedSet()
        return self._closure((u,))

    # -- procedures ------------------------------------------------------

    def disband(self, affected: AffectedSet) -> None:
        """Put every affected vertex back into a singleton community."""
        p = self.ll_partition
        for c in affected.communities:
            for v in p.members.pop(c, ()):
                p.community_of[v] = None
            p.in_weight.pop(c, None)
            p.tot_weight.pop(c, None)
        for v in sorted(affected.vertices):
            # a community id is its smallest member, and every community
            # holding an affected vertex is gone, so id ``v`` is free
            p.community_of.pop(v, None)
            p.add_vertex(v)
        p.refresh(self.ll_graph, sorted(affected.vertices))

    def sync_communities(self, affected: AffectedSet, touched=()) -> None:
        """Bring the upper level in line with the lower level.

        Supervertices of disbanded communities are replaced by singleton
        supervertices of their members; rows of the communities in
        ``touched`` (endpoints of an edited edge) are rebuilt as well.
        """
        ul = self.ul_graph
        for c in affected.communities:
            if c in ul.adj:
                ul.remove_vertex(c)
        com = self.ll_partition.community_of
        dirty = set(affected.vertices)
        dirty.update(com[x] for x in touched if x in com)
        for s in sorted(dirty):
            if s in ul.adj:
                for t in list(ul.adj[s]):
                    ul.remove_edge(s, t)
                if s in ul.loops:
                    ul.remove_edge(s, s)
            else:
                ul.add_vertex(s)
        members = self.ll_partition.members
        for s in sorted(dirty):
            acc: Dict = {}
            for x in members[s]:
                loop = self.ll_graph.loops.get(x, 0.0)
                if loop:
                    acc[s] = acc.get(s, 0.0) + 2.0 * loop
                for y, w in self.ll_graph.adj[x].items():
                    cy = com[y]
                    acc[cy] = acc.get(cy, 0.0) + w
            for t, w in acc.items():
                if t == s:
                    # each internal edge was seen from both endpoints
                    ul.add_edge(s, s, w / 2.0)
                elif t not in dirty or s < t:
                    ul.add_edge(s, t, w)
        for s in self.ul_membership.keys() - ul.adj.keys():
            del self.ul_membership[s]
        for s in ul.adj:
            self.ul_membership.setdefault(s, s)

    def optimize(self) -> None:
        """Local moving on the upper level, push-down and re-aggregation.

        Repeats until a pass moves no supervertex, then renames communities
        to their smallest member.
        """
        p = self.ll_partition
        while True:
            aux, improved = one_level(self.ul_graph)
            self.ul_membership = aux.mapping()
            if not improved:
                break
            moved = {s: c for s, c in self.ul_membership.items() if s != c}
            changed = [(x, moved[c]) for x, c in p.community_of.items() if c in moved]
            for x, c in changed:
                p.community_of[x] = c
            merged = set(moved.values())
            for s in moved:
                p.members.pop(s, None)
                p.in_weight.pop(s, None)
                p.tot_weight.pop(s, None)
            for x, c in changed:
                p.members.setdefault(c, set()).add(x)
            p.in_weight.update({c: aux.in_weight[c] for c in merged})
            p.tot_weight.update({c: aux.tot_weight[c] for c in merged})
            self.ul_graph, _ = aggregate(self.ul_graph, aux)
            self.prev_modularity = self.last_modularity
            self.last_modularity = _safe_modularity(self.ll_graph, p)
        self.last_modularity = _safe_modularity(self.ll_graph, p)
        self._canonicalize()

    def _canonicalize(self) -> None:
        p = self.ll_partition
        rename = {c: min(m) for c, m in p.members.items()}
        if all(c == r for c, r in rename.items()):
            return
        p.community_of = {v: rename[c] for v, c in p.community_of.items()}
        p.members = {rename[c]: m for c, m in p.members.items()}
        p.in_weight = {rename[c]: w for c, w in p.in_weight.items()}
        p.tot_weight = {rename[c]: w for c, w in p.tot_weight.items()}
        if hasattr(self, "ul_graph"):
            self.ul_graph = self.ul_graph.relabel(rename)
            self.ul_membership = {s: s for s in self.ul_graph.adj}

    # -- public driver ---------------------------------------------------

    def apply(self, event: EdgeEvent) -> AffectedSet:
        """Edit the lower level for one event, disband and sync (no optimisation)."""
        u, v = event.u, event.v
        p = self.ll_partition
        if event.action is Action.ADD:
            affected = self.affected_by_addition(u, v)
            self.ll_graph.add_edge(u, v, event.weight)
            for x in (u, v):
                if x not in p.community_of:
                    p.add_vertex(x)
            self.pending_add_index += 1
        else:
            affected = self.affected_by_removal(u, v)
            self.ll_graph.remove_edge(u, v)
            self.pending_remove_index += 1
        p.refresh(self.ll_graph, self._communities_of((u, v)))
        self.disband(affected)
        self.sync_communities(affected, touched=(u, v))
        return affected

    def step(self, event: EdgeEvent) -> StepReport:
        """Process one edge event and re-optimise the affected region."""
        start = time.perf_counter()
        before = dict(self.ll_partition.community_of)
        affected = self.apply(event)
        self.optimize()
        after = self.ll_partition.community_of
        changed = sum(1 for x, c in after.items() if before.get(x) != c)
        return StepReport(
            modularity=self.last_modularity,
            changed_vertices=changed,
            elapsed=time.perf_counter() - start,
            affected=len(affected.vertices),
        )

    def community_mapping(self) -> Dict:
        """``vertex -> community id`` with ids equal to the smallest member."""
        return canonical_mapping(self.ll_partition.community_of)

    def quality(self) -> float:
        return modularity(self.ll_graph, self.ll_partition)
