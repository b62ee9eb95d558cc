"""Evolving-network representations and stream windows.

A stream is a sequence of :class:`EdgeEvent` with non-decreasing timestamps.
:class:`Window` turns it into the additions and removals that keep a graph
equal to the window's current contents. :func:`expand_time_ordered` builds
the layered time-ordered graph of a snapshot sequence, on which
:func:`temporal_shortest_path` finds earliest-arrival paths.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from .exceptions import ConfigError, EmptyInputError, OutOfOrderError, UnknownVertexError


class Action(enum.Enum):
    ADD = "+"
    REMOVE = "-"


@dataclass(frozen=True)
class EdgeEvent:
    """Timestamped addition or removal of an undirected edge.

    ``weight`` is ``None`` for removals.
    """

    action: Action
    u: Hashable
    v: Hashable
    weight: Optional[float] = 1.0
    t: int = 0

    def __post_init__(self):
        if self.action is Action.REMOVE:
            object.__setattr__(self, "weight", None)
        elif self.weight is None:
            object.__setattr__(self, "weight", 1.0)

    @property
    def key(self) -> Tuple:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)

    @classmethod
    def add(cls, u, v, weight=1.0, t=0) -> "EdgeEvent":
        return cls(Action.ADD, u, v, weight, t)

    @classmethod
    def remove(cls, u, v, t=0) -> "EdgeEvent":
        return cls(Action.REMOVE, u, v, None, t)


def apply_events(graph, adds: Iterable[EdgeEvent] = (), removes: Iterable[EdgeEvent] = ()):
    """Apply window output to a :class:`~streamcomm.graph.DynGraph` in place."""
    for e in removes:
        graph.remove_edge(e.u, e.v)
    for e in adds:
        graph.add_edge(e.u, e.v, e.weight)
    return graph


# -- windows ----------------------------------------------------------------


class WindowKind(enum.Enum):
    LANDMARK = "landmark"
    SLIDING = "sliding"


class WindowMode(enum.Enum):
    COUNT = "count"
    TIME = "time"


@dataclass(frozen=True)
class WindowPolicy:
    """How much of a stream stays in view.

    A sliding window covers ``length`` units (events or time) and its start
    jumps forward in multiples of ``stride``: ``stride=1`` is the overlapping
    window, ``stride=length`` the non-overlapping one.
    """

    kind: WindowKind = WindowKind.LANDMARK
    length: int = 1
    mode: WindowMode = WindowMode.COUNT
    stride: int = 1

    def __post_init__(self):
        if self.kind is WindowKind.SLIDING:
            if self.length < 1 or self.stride < 1:
                raise ConfigError("window length and stride must be positive")
            if self.stride > self.length:
                raise ConfigError("window stride may not exceed its length")

    @classmethod
    def landmark(cls) -> "WindowPolicy":
        return cls(WindowKind.LANDMARK)

    @classmethod
    def sliding(cls, length, mode=WindowMode.COUNT, stride=1) -> "WindowPolicy":
        return cls(WindowKind.SLIDING, length, WindowMode(mode), stride)

    @classmethod
    def non_overlapping(cls, length, mode=WindowMode.COUNT) -> "WindowPolicy":
        return cls(WindowKind.SLIDING, length, WindowMode(mode), length)


class Window:
    """Stateful window over an edge-event stream.

    The window remembers the newest ADD of every live edge. A repeated ADD
    refreshes the edge's position; an explicit REMOVE forgets it. A REMOVE
    for an edge the window already evicted is absorbed, while one for an
    edge never seen is passed on for the caller to judge.
    """

    def __init__(self, policy: WindowPolicy | None = None):
        self.policy = policy or WindowPolicy.landmark()
        self._live: Dict[Tuple, Tuple[int, EdgeEvent]] = {}
        self._seq = 0
        self._t_last: Optional[int] = None
        self._evicted: set = set()

    def contents(self) -> List[EdgeEvent]:
        """Live ADD events, oldest first."""
        return [e for _, e in sorted(self._live.values(), key=lambda x: x[0])]

    def _start(self, now: int) -> int:
        pol = self.policy
        k = max(0, (now - pol.length) // pol.stride + 1)
        return k * pol.stride

    def _position(self, e: EdgeEvent) -> int:
        return self._seq if self.policy.mode is WindowMode.COUNT else e.t

    def _evict(self, now: int) -> None:
        start = self._start(now)
        for key in [k for k, (pos, _) in self._live.items() if pos < start]:
            del self._live[key]
            self._evicted.add(key)

    def advance(self, incoming: Sequence[EdgeEvent]) -> Tuple[List[EdgeEvent], List[EdgeEvent]]:
        """Feed a batch of events.

        Returns ``(adds, removes)``: applying ``removes`` then ``adds`` to a
        graph holding the previous window contents yields the new contents.
        The two lists never touch the same edge.
        """
        for e in incoming:
            if self._t_last is not None and e.t < self._t_last:
                raise OutOfOrderError(f"timestamp {e.t} after {self._t_last}")
            self._t_last = e.t
        before = {k: e for k, (_, e) in self._live.items()}
        stray: Dict[Tuple, EdgeEvent] = {}
        touched = set()
        sliding = self.policy.kind is WindowKind.SLIDING
        for e in incoming:
            key = e.key
            if e.action is Action.ADD:
                self._live[key] = (self._position(e), e)
                self._evicted.discard(key)
                touched.add(key)
                if sliding:
                    if self.policy.mode is WindowMode.COUNT:
                        self._evict(self._seq)
                        self._seq += 1
                    else:
                        self._evict(e.t)
            else:
                if key in self._evicted:
                    self._evicted.discard(key)
                elif key not in self._live and key not in before and key not in touched:
                    stray[key] = e
                self._live.pop(key, None)
                if sliding and self.policy.mode is WindowMode.TIME:
                    self._evict(e.t)
        last_t = incoming[-1].t if incoming else None
        adds = [e for e in incoming if e.action is Action.ADD and self._live.get(e.key, (None, None))[1] is e]
        removes: List[EdgeEvent] = []
        for key, old in before.items():
            if key not in self._live:
                removes.append(EdgeEvent.remove(old.u, old.v, t=last_t if last_t is not None else old.t))
        for key, e in stray.items():
            if key not in self._live:
                removes.append(e)
        return adds, removes


# -- snapshots and time-ordered graphs -------------------------------------


@dataclass(frozen=True, init=False)
class SnapshotSequence:
    """Static graphs ``G_t`` indexed by strictly increasing integer time.

    ``vertices`` defaults to every vertex mentioned by a snapshot edge.
    """

    snapshots: Tuple[Tuple[int, Tuple[Tuple, ...]], ...]
    vertices: FrozenSet = frozenset()

    def __init__(self, snapshots: Iterable, vertices: Iterable = ()):
        snaps = tuple((int(t), tuple(tuple(e) for e in edges)) for t, edges in snapshots)
        times = [t for t, _ in snaps]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        verts = set(vertices)
        for _, edges in snaps:
            for e in edges:
                verts.update(e[:2])
        object.__setattr__(self, "snapshots", snaps)
        object.__setattr__(self, "vertices", frozenset(verts))

    def edges_at(self, t: int) -> Tuple[Tuple, ...]:
        for ts, edges in self.snapshots:
            if ts == t:
                return edges
        return ()


Node = Tuple[Hashable, int]


@dataclass(frozen=True)
class TimeOrderedGraph:
    """Vertices replicated per time step; every arc advances time by one."""

    vertices: Tuple
    t_start: int
    t_end: int
    successors: Dict[Node, Tuple[Node, ...]] = field(repr=False)

    @property
    def nodes(self) -> List[Node]:
        return [(v, t) for t in range(self.t_start, self.t_end + 1) for v in self.vertices]

    def arcs(self) -> List[Tuple[Node, Node]]:
        return [(a, b) for a in self.nodes for b in self.successors.get(a, ())]

    def wait_arcs(self) -> List[Tuple[Node, Node]]:
        return [(a, b) for a, b in self.arcs() if a[0] == b[0]]

    def transit_arcs(self) -> List[Tuple[Node, Node]]:
        return [(a, b) for a, b in self.arcs() if a[0] != b[0]]


def expand_time_ordered(seq: SnapshotSequence, t_start: int, t_end: int) -> TimeOrderedGraph:
    """Build the time-ordered graph of ``seq`` over ``[t_start, t_end]``.

    Each vertex ``v`` gets a copy ``(v, t)`` per step, a waiting arc
    ``(v, t) -> (v, t+1)`` and, for every edge ``{u, v}`` of snapshot
    ``t+1``, transit arcs ``(u, t) -> (v, t+1)`` and ``(v, t) -> (u, t+1)``.
    """
    if not seq.snapshots and not seq.vertices:
        raise EmptyInputError("empty snapshot sequence")
    if not t_start < t_end:
        raise ValueError("t_start must precede t_end")
    verts = tuple(sorted(seq.vertices))
    succ: Dict[Node, Tuple[Node, ...]] = {}
    for t in range(t_start, t_end):
        nxt: Dict[Hashable, set] = {v: {v} for v in verts}
        for e in seq.edges_at(t + 1):
            a, b = e[0], e[1]
            nxt[a].add(b)
            nxt[b].add(a)
        for v in verts:
            succ[(v, t)] = tuple((w, t + 1) for w in sorted(nxt[v]))
    return TimeOrderedGraph(verts, t_start, t_end, succ)


def temporal_shortest_path(tog: TimeOrderedGraph, src, dst, t_start: int | None = None,
                           t_end: int | None = None) -> Optional[List[Node]]:
    """Earliest-arrival path from ``(src, t_start)`` to ``dst``.

    Returns the list of ``(vertex, time)`` nodes, or ``None`` when ``dst``
    cannot be reached by ``t_end``. Among paths with the same arrival time
    the breadth-first search keeps the first found with successors visited
    in ascending vertex order.
    """
    for x in (src, dst):
        if x not in tog.vertices:
            raise UnknownVertexError(f"unknown vertex {x!r}")
    t0 = tog.t_start if t_start is None else t_start
    t1 = tog.t_end if t_end is None else min(t_end, tog.t_end)
    start = (src, t0)
    if src == dst:
        return [start]
    parent: Dict[Node, Optional[Node]] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node[1] >= t1:
            continue
        for nxt in tog.successors.get(node, ()):
            if nxt in parent:
                continue
            parent[nxt] = node
            if nxt[0] == dst:
                path = [nxt]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(nxt)
    return None
