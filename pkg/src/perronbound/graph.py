"""Immutable simple undirected graphs and the structural queries the bounds need."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, InputError

__all__ = [
    "Graph",
    "ComponentPartition",
    "graph_from_edges",
    "is_connected",
    "connected_components",
    "delete_vertex",
    "induced_subgraph",
    "is_regular",
    "is_star",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is normalized on construction to a sorted tuple of ``(u, v)``
    pairs with ``u < v`` and no duplicates. ``labels`` are display names only
    and do not take part in equality.
    """

    n: int
    edges: tuple = ()
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            u, v = (int(t) for t in e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise InputError(f"expected {self.n} labels, got {len(labels)}")
            object.__setattr__(self, "labels", labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def _rows(self) -> tuple:
        # neighbour sets as int bitmasks
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def _degrees(self) -> tuple:
        return tuple(r.bit_count() for r in self._rows)

    def degrees(self) -> tuple:
        return self._degrees

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._degrees[v]

    def neighbors(self, v: int) -> list:
        self._check_vertex(v)
        r = self._rows[v]
        return [u for u in range(self.n) if r >> u & 1]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._rows[u] >> v & 1)

    def adjacency_matrix(self) -> np.ndarray:
        """Dense float64 adjacency matrix (read-only view, cached)."""
        return self._matrix

    @cached_property
    def _matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        if self.edges:
            idx = np.array(self.edges)
            a[idx[:, 0], idx[:, 1]] = 1.0
            a[idx[:, 1], idx[:, 0]] = 1.0
        a.flags.writeable = False
        return a

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def _check_vertex(self, v):
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} outside 0..{self.n - 1}")


@dataclass(frozen=True)
class ComponentPartition:
    """Vertex sets of the connected components, ordered by smallest member."""

    components: tuple

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)


def graph_from_edges(n: int, edges: Iterable[Sequence[int]],
                     labels: Optional[Sequence[str]] = None) -> Graph:
    """Build a graph from an edge list; repeated pairs collapse to one edge."""
    return Graph(n, tuple(tuple(e) for e in edges),
                 tuple(labels) if labels is not None else None)


def _component_masks(g: Graph) -> list:
    rows = g._rows
    unseen = (1 << g.n) - 1
    out = []
    while unseen:
        low = unseen & -unseen
        comp = frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = rows[bit.bit_length() - 1] & ~comp
            comp |= new
            frontier |= new
        out.append(comp)
        unseen &= ~comp
    return out


def connected_components(g: Graph) -> ComponentPartition:
    comps = []
    for mask in _component_masks(g):
        comps.append(frozenset(v for v in range(g.n) if mask >> v & 1))
    return ComponentPartition(tuple(comps))


def is_connected(g: Graph) -> bool:
    return len(_component_masks(g)) == 1


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v`` and its incident edges; vertices above ``v`` shift down by one."""
    if g.n == 1:
        raise DomainError("cannot delete the only vertex of K_1")
    g._check_vertex(v)
    edges = [(a - (a > v), b - (b > v)) for a, b in g.edges if a != v and b != v]
    labels = None
    if g.labels is not None:
        labels = g.labels[:v] + g.labels[v + 1:]
    return Graph(g.n - 1, tuple(edges), labels)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabelled in increasing order."""
    keep = sorted(set(vertices))
    if not keep:
        raise DomainError("induced subgraph on an empty vertex set")
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[a], pos[b]) for a, b in g.edges if a in pos and b in pos]
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[v] for v in keep)
    return Graph(len(keep), tuple(edges), labels)


def is_regular(g: Graph) -> Optional[int]:
    """Common degree if every vertex has the same degree, else ``None``."""
    degs = g.degrees()
    return degs[0] if min(degs) == max(degs) else None


def is_star(g: Graph) -> bool:
    # K_2 is the star K_{1,1}; K_1 is not a star.
    n = g.n
    if n < 2 or g.edge_count != n - 1:
        return False
    degs = g.degrees()
    return max(degs) == n - 1 and sorted(degs)[:-1] == [1] * (n - 1)
