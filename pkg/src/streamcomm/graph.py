"""Mutable undirected weighted graph with self-loops.

Adding an edge that already exists replaces its weight. A self-loop of weight
``w`` contributes ``2 * w`` to the weighted degree of its vertex, which keeps
``total_weight_2m`` equal to the sum of weighted degrees and lets an
aggregated community graph carry the same ``2m`` as the graph it came from.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Hashable, Iterable, Iterator, List, Set, Tuple

from .exceptions import MissingEdgeError, UnknownVertexError, WeightError

Vertex = Hashable


class DynGraph:
    """Undirected weighted graph supporting incremental edits.

    ``adj[u]`` maps each neighbour ``v != u`` to the edge weight and
    ``loops[u]`` holds the self-loop weight of ``u`` (absent when zero).
    Callers must treat both dictionaries as read-only.
    """

    __slots__ = ("adj", "loops", "_two_m", "_n_edges")

    def __init__(self, edges: Iterable[Tuple] = ()):
        self.adj: Dict[Vertex, Dict[Vertex, float]] = {}
        self.loops: Dict[Vertex, float] = {}
        self._two_m = 0.0
        self._n_edges = 0
        for e in edges:
            self.add_edge(*e)

    # -- queries ---------------------------------------------------------

    @property
    def total_weight_2m(self) -> float:
        return self._two_m

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return self._n_edges

    def __contains__(self, u) -> bool:
        return u in self.adj

    def __len__(self) -> int:
        return len(self.adj)

    def vertices(self) -> List[Vertex]:
        return sorted(self.adj)

    def has_edge(self, u, v) -> bool:
        if u == v:
            return u in self.loops
        return u in self.adj and v in self.adj[u]

    def weight(self, u, v) -> float:
        """Weight of edge ``(u, v)``; 0 when absent."""
        if u == v:
            return self.loops.get(u, 0.0)
        row = self.adj.get(u)
        if row is None:
            return 0.0
        return row.get(v, 0.0)

    def self_loop(self, u) -> float:
        self._check(u)
        return self.loops.get(u, 0.0)

    def neighbors(self, u) -> List[Tuple[Vertex, float]]:
        """``(neighbour, weight)`` pairs in ascending vertex order, loop excluded."""
        self._check(u)
        return sorted(self.adj[u].items())

    def weighted_degree(self, u) -> float:
        self._check(u)
        return sum(self.adj[u].values()) + 2.0 * self.loops.get(u, 0.0)

    def edges(self) -> Iterator[Tuple[Vertex, Vertex, float]]:
        """Yield each edge once as ``(u, v, w)`` with ``u <= v``, sorted."""
        for u in sorted(self.adj):
            if u in self.loops:
                yield u, u, self.loops[u]
            for v, w in sorted(self.adj[u].items()):
                if u < v:
                    yield u, v, w

    def edge_set(self) -> Dict[Tuple[Vertex, Vertex], float]:
        return {(u, v): w for u, v, w in self.edges()}

    # -- mutation --------------------------------------------------------

    def add_vertex(self, u) -> None:
        if u not in self.adj:
            self.adj[u] = {}

    def remove_vertex(self, u) -> None:
        """Delete ``u`` together with its incident edges."""
        self._check(u)
        for v in list(self.adj[u]):
            self.remove_edge(u, v)
        if u in self.loops:
            self.remove_edge(u, u)
        del self.adj[u]

    def add_edge(self, u, v, w: float = 1.0) -> None:
        """Insert edge ``(u, v)`` or replace its weight; creates missing vertices."""
        if not w > 0:
            raise WeightError(f"edge weight must be positive, got {w!r}")
        w = float(w)
        self.add_vertex(u)
        self.add_vertex(v)
        old = self.weight(u, v)
        if old == 0.0:
            self._n_edges += 1
        if u == v:
            self.loops[u] = w
        else:
            self.adj[u][v] = w
            self.adj[v][u] = w
        self._two_m += 2.0 * (w - old)

    def remove_edge(self, u, v) -> None:
        """Delete edge ``(u, v)``; both endpoints stay in the graph."""
        old = self.weight(u, v)
        if old == 0.0:
            raise MissingEdgeError(f"no edge ({u!r}, {v!r})")
        if u == v:
            del self.loops[u]
        else:
            del self.adj[u][v]
            del self.adj[v][u]
        self._n_edges -= 1
        self._two_m -= 2.0 * old
        if self._n_edges == 0:
            self._two_m = 0.0

    def add_weight(self, u, v, delta: float) -> None:
        """Add ``delta`` to the weight of ``(u, v)``, creating the edge if needed."""
        new = self.weight(u, v) + delta
        if new > 0:
            self.add_edge(u, v, new)
        elif self.has_edge(u, v):
            self.remove_edge(u, v)

    # -- derived graphs --------------------------------------------------

    def copy(self) -> "DynGraph":
        g = DynGraph()
        g.adj = {u: dict(row) for u, row in self.adj.items()}
        g.loops = dict(self.loops)
        g._two_m = self._two_m
        g._n_edges = self._n_edges
        return g

    def induced_subgraph(self, vertices: Iterable) -> "DynGraph":
        keep = set(vertices)
        for u in keep:
            self._check(u)
        g = DynGraph()
        for u in sorted(keep):
            g.add_vertex(u)
            if u in self.loops:
                g.add_edge(u, u, self.loops[u])
            for v, w in self.adj[u].items():
                if v in keep and u < v:
                    g.add_edge(u, v, w)
        return g

    def connected_components(self, vertices: Iterable | None = None) -> List[Set]:
        """Components of the subgraph induced by ``vertices`` (default: all).

        Components are returned in ascending order of their smallest member.
        """
        keep = set(self.adj) if vertices is None else set(vertices)
        for u in keep:
            self._check(u)
        seen: Set = set()
        out = []
        for s in sorted(keep):
            if s in seen:
                continue
            comp = {s}
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y in keep and y not in seen:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            out.append(comp)
        return out

    def relabel(self, mapping: Dict) -> "DynGraph":
        """Return a copy with vertices renamed through the injective ``mapping``."""
        g = DynGraph()
        for u in self.adj:
            g.add_vertex(mapping.get(u, u))
        for u, v, w in self.edges():
            g.add_edge(mapping.get(u, u), mapping.get(v, v), w)
        return g

    # -- misc ------------------------------------------------------------

    def _check(self, u) -> None:
        if u not in self.adj:
            raise UnknownVertexError(f"unknown vertex {u!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DynGraph):
            return NotImplemented
        return set(self.adj) == set(other.adj) and self.edge_set() == other.edge_set()

    __hash__ = None

    def __repr__(self) -> str:
        return f"DynGraph(vertices={self.vertex_count}, edges={self.edge_count}, 2m={self._two_m:g})"
