"""Linked-cluster enumeration and cluster-growth census.

A cluster is a connected vertex set of a :class:`ConnectivityGraph`.  Its
anchor is the minimum vertex.  Clusters with a given anchor are produced
exactly once by growing an ordered candidate list: a level may only pick
candidates positioned after the one picked on the previous level, and a
newly picked vertex appends those of its neighbours that are not yet in the
list (and are larger than the anchor).
"""

from __future__ import annotations

import math
import time
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from lcdist.graph import ConnectivityGraph


@dataclass(frozen=True, order=True)
class Cluster:
    vertices: tuple[int, ...]

    @property
    def anchor(self) -> int:
        return self.vertices[0]

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def __len__(self) -> int:
        return len(self.vertices)


def _anchor_marks(n: int, anchor: int) -> bytearray:
    marks = bytearray(n)
    marks[: anchor + 1] = b"\x01" * (anchor + 1)
    return marks


def _grow(adj: Sequence[Sequence[int]], root: int, marks: bytearray, w: int) -> Iterator[list[int]]:
    """Yield the (shared, mutable) vertex list of every size-``w`` cluster grown from ``root``.

    ``marks`` must flag ``root`` and every excluded vertex; it is restored on exit.
    """
    cluster = [root]
    if w == 1:
        yield cluster
        return
    cand: list[int] = []
    for u in adj[root]:
        if not marks[u]:
            marks[u] = 1
            cand.append(u)
    # frame: [next index, end of this level's candidates, start of the parent's additions]
    stack = [[0, len(cand), -1]]
    while stack:
        frame = stack[-1]
        i = frame[0]
        if i >= frame[1]:
            stack.pop()
            base = frame[2]
            if base >= 0:
                for u in cand[base:]:
                    marks[u] = 0
                del cand[base:]
                cluster.pop()
            continue
        frame[0] = i + 1
        v = cand[i]
        cluster.append(v)
        if len(cluster) == w:
            yield cluster
            cluster.pop()
            continue
        base = len(cand)
        for u in adj[v]:
            if not marks[u]:
                marks[u] = 1
                cand.append(u)
        stack.append([i + 1, len(cand), base])
    for u in cand:
        marks[u] = 0


def enumerate_clusters(g: ConnectivityGraph, w: int, anchor: int) -> Iterator[Cluster]:
    """Every connected ``w``-set whose minimum vertex is ``anchor``, each exactly once."""
    if w < 1:
        raise ValueError("cluster size must be at least 1")
    if not 0 <= anchor < g.n:
        raise ValueError(f"anchor {anchor} outside [0, {g.n})")
    marks = _anchor_marks(g.n, anchor)
    for verts in _grow(g.adjacency, anchor, marks, w):
        yield Cluster(tuple(sorted(verts)))


def iter_cluster_masks(g: ConnectivityGraph, w: int, anchor: int) -> Iterator[int]:
    """Bitmask form of :func:`enumerate_clusters` (cheaper for the engines)."""
    marks = _anchor_marks(g.n, anchor)
    for verts in _grow(g.adjacency, anchor, marks, w):
        m = 0
        for v in verts:
            m |= 1 << v
        yield m


class _Deadline(Exception):
    pass


def _count_from(adj, root, marks, w_max, counts, deadline=None):
    """Add to ``counts[s]`` the number of clusters of each size ``s <= w_max`` grown from ``root``.

    Same traversal as :func:`_grow`, but the last level is counted without
    being visited.
    """
    counts[1] += 1
    if w_max == 1:
        return
    cand: list[int] = []
    for u in adj[root]:
        if not marks[u]:
            marks[u] = 1
            cand.append(u)
    if w_max == 2:
        counts[2] += len(cand)
        for u in cand:
            marks[u] = 0
        return
    last = w_max - 1
    stack = [[0, len(cand), -1, 1]]
    ticks = 0
    try:
        while stack:
            frame = stack[-1]
            i, end, base, size = frame
            if i >= end:
                stack.pop()
                if base >= 0:
                    for u in cand[base:]:
                        marks[u] = 0
                    del cand[base:]
                continue
            frame[0] = i + 1
            v = cand[i]
            size += 1
            counts[size] += 1
            if size == last:
                fresh = 0
                for u in adj[v]:
                    if not marks[u]:
                        fresh += 1
                counts[w_max] += end - i - 1 + fresh
                continue
            new_base = len(cand)
            for u in adj[v]:
                if not marks[u]:
                    marks[u] = 1
                    cand.append(u)
            stack.append([i + 1, len(cand), new_base, size])
            if deadline is not None:
                ticks += 1
                if ticks & 0xFFFF == 0 and time.monotonic() > deadline:
                    raise _Deadline
    finally:
        for u in cand:
            marks[u] = 0


@dataclass
class ClusterCensus:
    """Exact cluster counts by size.

    ``per_vertex`` censuses count clusters containing ``root``; otherwise the
    counts are totals over the whole graph.
    """

    counts: dict[int, int]
    w_max: int
    n: int
    per_vertex: bool = False
    root: int | None = None
    complete: bool = True
    anchors_done: int = 0
    elapsed: float = 0.0
    fit: GrowthFit | None = field(default=None)

    def to_csv(self) -> str:
        lines = ["w,count"]
        lines += [f"{w},{self.counts[w]}" for w in sorted(self.counts)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares fit ``N = A y**w`` over ``w_lo..w_hi``; ``z_eff = y/e + 1``."""

    A: float
    y: float
    z_eff: float
    w_lo: int
    w_hi: int

    def to_text(self) -> str:
        return (
            f"A={self.A:.6g}\ny={self.y:.6g}\nz_eff={self.z_eff:.6g}\n"
            f"w_lo={self.w_lo}\nw_hi={self.w_hi}\n"
        )


def _count_anchors(adj, n, anchors, w_max, deadline):
    counts = [0] * (w_max + 1)
    done = 0
    try:
        for a in anchors:
            _count_from(adj, a, _anchor_marks(n, a), w_max, counts, deadline)
            done += 1
    except _Deadline:
        return counts, done, False
    return counts, done, True


def count_clusters(
    g: ConnectivityGraph,
    w_max: int,
    root: int | None = None,
    time_limit: float | None = None,
    workers: int = 1,
) -> ClusterCensus:
    """Exact cluster counts for ``w = 1..w_max``.

    With ``root`` given, counts the clusters that contain ``root``;
    otherwise totals over all anchors.  Anchors are split across ``workers``
    processes; counts merge by addition.  A timeout leaves a partial census
    flagged ``complete=False``.
    """
    if w_max < 1:
        raise ValueError("w_max must be at least 1")
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit
    adj = g.adjacency
    if root is not None:
        if not 0 <= root < g.n:
            raise ValueError(f"root {root} outside [0, {g.n})")
        counts = [0] * (w_max + 1)
        marks = bytearray(g.n)
        marks[root] = 1
        complete = True
        try:
            _count_from(adj, root, marks, w_max, counts, deadline)
        except _Deadline:
            complete = False
        anchors_done = int(complete)
    elif workers > 1 and g.n > workers:
        parts = [range(i, g.n, workers) for i in range(workers)]
        counts = [0] * (w_max + 1)
        complete = True
        anchors_done = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_anchors, adj, g.n, p, w_max, deadline) for p in parts]
            for fut in futures:
                part, done, ok = fut.result()
                counts = [a + b for a, b in zip(counts, part)]
                anchors_done += done
                complete = complete and ok
    else:
        counts, anchors_done, complete = _count_anchors(adj, g.n, range(g.n), w_max, deadline)
    return ClusterCensus(
        counts={w: counts[w] for w in range(1, w_max + 1)},
        w_max=w_max,
        n=g.n,
        per_vertex=root is not None,
        root=root,
        complete=complete,
        anchors_done=anchors_done,
        elapsed=time.monotonic() - start,
    )


def tree_cluster_count(z: int, w: int) -> int:
    """Clusters of size ``w`` containing a fixed vertex of the infinite ``z``-regular tree.

    ``N_w = z/(w-1) * C((z-1) w, w-2)`` for ``w >= 2``; 1 for ``w = 1``.
    """
    if w < 1:
        raise ValueError("w must be at least 1")
    if z < 0:
        raise ValueError("z must be non-negative")
    if w == 1:
        return 1
    num = z * math.comb((z - 1) * w, w - 2) if z >= 1 else 0
    q, rem = divmod(num, w - 1)
    assert rem == 0, (z, w)
    return q


def fit_growth(census: ClusterCensus, w_lo: int, w_hi: int) -> GrowthFit:
    """Fit ``log2 N = log2 A + w log2 y`` by least squares on ``w_lo..w_hi``."""
    if w_hi - w_lo < 2:
        raise ValueError("the fit window needs at least three sizes")
    ws = list(range(w_lo, w_hi + 1))
    missing = [w for w in ws if census.counts.get(w, 0) <= 0]
    if missing:
        raise ValueError(f"no positive counts for w in {missing}")
    logs = [math.log2(census.counts[w]) for w in ws]
    slope, intercept = np.polyfit(np.array(ws, dtype=float), np.array(logs), 1)
    y = float(2.0**slope)
    return GrowthFit(A=float(2.0**intercept), y=y, z_eff=y / math.e + 1.0, w_lo=w_lo, w_hi=w_hi)
