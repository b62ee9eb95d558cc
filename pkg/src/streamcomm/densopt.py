"""Density post-processing of a community assignment.

A community whose induced subgraph falls apart into several connected
components is replaced by those components when their mean density is
strictly higher than the density of the community as a whole. Density is
unweighted and ignores self-loops; a single vertex has density 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple

from .exceptions import EmptyInputError, UnknownVertexError
from .graph import DynGraph
from .louvain import canonical_mapping, groups


@dataclass
class DensityReport:
    adc_before: float
    adc_after: float
    splits: List[Tuple[object, List[object]]] = field(default_factory=list)


def community_density(g: DynGraph, members: Iterable) -> float:
    members = set(members)
    if not members:
        raise EmptyInputError("density of an empty vertex set")
    for v in members:
        if v not in g.adj:
            raise UnknownVertexError(f"unknown vertex {v!r}")
    n = len(members)
    if n < 2:
        return 0.0
    links = sum(1 for v in members for u in g.adj[v] if u in members) // 2
    return 2.0 * links / (n * (n - 1))


def adc(g: DynGraph, p: Mapping) -> float:
    """Average density per community."""
    comms = groups(getattr(p, "community_of", p))
    if not comms:
        raise EmptyInputError("no communities")
    return sum(community_density(g, m) for m in comms.values()) / len(comms)


def optimize_density(g: DynGraph, p: Mapping) -> Tuple[Dict, DensityReport]:
    """Split disconnected communities when their components are denser on average.

    Community ids in the result are the smallest member of each community.
    The report lists every split as ``(old id, [new ids])``.
    """
    mapping = canonical_mapping(getattr(p, "community_of", p))
    before = adc(g, mapping)
    out = dict(mapping)
    splits = []
    comms = groups(mapping)
    for cid in sorted(comms):
        members = comms[cid]
        parts = g.connected_components(members)
        if len(parts) < 2:
            continue
        mean_parts = sum(community_density(g, c) for c in parts) / len(parts)
        if mean_parts > community_density(g, members):
            new_ids = []
            for comp in parts:
                low = min(comp)
                new_ids.append(low)
                for v in comp:
                    out[v] = low
            splits.append((cid, new_ids))
    return out, DensityReport(before, adc(g, out), splits)
