"""Qubit connectivity graph: an edge joins two qubits that share a check row."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from lcdist.algebra import bits_of
from lcdist.codes import CssCode, SparsityProfile, StabilizerCode, matrix_profile


@dataclass(frozen=True)
class ConnectivityGraph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, nbrs in enumerate(self.adjacency) for b in nbrs if a < b]

    def relabel(self, order: list[int]) -> ConnectivityGraph:
        """Graph with vertex ``order[i]`` renamed to ``i``."""
        new = {old: i for i, old in enumerate(order)}
        adj = [()] * self.n
        for old, nbrs in enumerate(self.adjacency):
            adj[new[old]] = tuple(sorted(new[b] for b in nbrs))
        return ConnectivityGraph(self.n, tuple(adj))


def _as_vertices(support) -> list[int]:
    if isinstance(support, int):
        return list(bits_of(support))
    return sorted(set(support))


def build_connectivity_graph(rows: Iterable, n: int) -> ConnectivityGraph:
    """Connect every pair of vertices that appear together in some row support.

    Supports may be given as int bitmasks or as iterables of vertex indices.
    """
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for i, support in enumerate(rows):
        verts = _as_vertices(support)
        for v in verts:
            if not 0 <= v < n:
                raise ValueError(f"row {i}: vertex {v} outside [0, {n})")
        for a in verts:
            nbrs[a].update(verts)
    for v in range(n):
        nbrs[v].discard(v)
    return ConnectivityGraph(n, tuple(tuple(sorted(s)) for s in nbrs))


def code_graph(code: StabilizerCode) -> ConnectivityGraph:
    """Graph over all generator supports (generic stabilizer search)."""
    return build_connectivity_graph(code.supports(), code.n)


def sector_graph(css: CssCode, sector: str) -> ConnectivityGraph:
    """Graph for a single-sector search.

    An X-type vector only has to satisfy the Z checks, so the ``"x"`` sector
    graph is built from ``gz`` and the ``"z"`` sector graph from ``gx``.
    """
    if sector == "x":
        return build_connectivity_graph(css.gz.rows, css.n)
    if sector == "z":
        return build_connectivity_graph(css.gx.rows, css.n)
    raise ValueError(f"unknown sector {sector!r}")


def sector_profile(css: CssCode, sector: str) -> SparsityProfile:
    return matrix_profile(css.gz if sector == "x" else css.gx)


def degree_bound(profile: SparsityProfile) -> int:
    """Maximum vertex degree ``(l - 1) j`` for a ``(j, l)``-limited check matrix."""
    return max(profile.l - 1, 0) * profile.j


def write_edge_list(g: ConnectivityGraph, path: str | Path, comments: Iterable[str] = ()) -> None:
    text = "".join(f"# {c}\n" for c in comments)
    text += "".join(f"{a} {b}\n" for a, b in g.edges())
    Path(path).write_text(text, encoding="utf-8")
