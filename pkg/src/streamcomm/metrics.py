"""Partition comparison and timing helpers."""

from __future__ import annotations

import math
import time
from typing import Dict, Mapping

import numpy as np

from .louvain import canonical_mapping


def stability(prev: Mapping, nxt: Mapping) -> float:
    """Fraction of vertices whose community changed between two assignments.

    Both assignments are relabelled by smallest member first, so a pure
    renaming scores 0. A vertex present in only one assignment counts as
    changed.
    """
    a = canonical_mapping(prev)
    b = canonical_mapping(nxt)
    union = a.keys() | b.keys()
    if not union:
        return 0.0
    changed = sum(1 for v in union if v not in a or v not in b or a[v] != b[v])
    return changed / len(union)


def _labels(mapping: Mapping, order) -> np.ndarray:
    ids: Dict = {}
    return np.array([ids.setdefault(mapping[v], len(ids)) for v in order])


def partition_similarity(p1: Mapping, p2: Mapping) -> float:
    """Normalised mutual information with arithmetic-mean normalisation."""
    if p1.keys() != p2.keys():
        raise ValueError("partitions must cover the same vertices")
    if not p1:
        return 1.0
    order = sorted(p1)
    x = _labels(p1, order)
    y = _labels(p2, order)
    n = len(order)
    table = np.zeros((x.max() + 1, y.max() + 1))
    np.add.at(table, (x, y), 1.0)
    pxy = table / n
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    hx = -float(np.sum(px * np.log(px)))
    hy = -float(np.sum(py * np.log(py)))
    if hx == 0.0 and hy == 0.0:
        return 1.0
    nz = pxy > 0
    mi = float(np.sum(pxy[nz] * np.log(pxy[nz] / np.outer(px, py)[nz])))
    nmi = mi / ((hx + hy) / 2.0)
    return min(1.0, max(0.0, nmi)) if math.isfinite(nmi) else 0.0


class Stopwatch:
    """Accumulates wall time over any number of timed sections."""

    def __init__(self):
        self.elapsed = 0.0
        self._t0 = None

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.add(time.perf_counter() - self._t0)
        self._t0 = None
        return False

    def add(self, seconds: float) -> None:
        if seconds < 0:
            raise ValueError("negative duration")
        self.elapsed += seconds
