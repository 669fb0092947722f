"""Named families, exhaustive enumeration and seeded random connected graphs."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from . import kernels
from .errors import InputError, SamplingError
from .graph import Graph, is_connected

__all__ = [
    "FAMILIES",
    "DEFAULT_ENUMERATION_CAP",
    "named_graph",
    "pair_order",
    "graph_from_mask",
    "enumerate_connected",
    "random_connected",
]

FAMILIES = ("complete", "star", "path", "cycle")
DEFAULT_ENUMERATION_CAP = 7
DEFAULT_MAX_ATTEMPTS = 10**5


def named_graph(family: str, n: int) -> Graph:
    """Standard families; ``star(n)`` is K_{1,n-1} with its center at vertex 0."""
    if n < 1:
        raise InputError(f"size must be at least 1, got {n}")
    if family == "complete":
        edges = [(i, j) for j in range(n) for i in range(j)]
    elif family == "star":
        edges = [(0, j) for j in range(1, n)]
    elif family == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "cycle":
        if n < 3:
            raise InputError(f"cycle needs at least 3 vertices, got {n}")
        edges = [(i, (i + 1) % n) for i in range(n)]
    else:
        raise InputError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return Graph(n, tuple(edges))


def pair_order(n: int) -> list:
    """Vertex pairs in upper-triangle column order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int) -> Graph:
    """Graph whose edge ``k`` (in :func:`pair_order`) is present iff bit ``k`` of mask is set."""
    pairs = pair_order(n)
    mask = int(mask)
    if mask >> len(pairs):
        raise InputError(f"mask {mask} has bits beyond the {len(pairs)} pairs of n={n}")
    return Graph(n, tuple(p for k, p in enumerate(pairs) if mask >> k & 1))


def enumerate_connected(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Graph]:
    """Every connected labelled graph on ``n`` vertices, in ascending edge-bitmask order."""
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if n > cap:
        raise InputError(
            f"n={n} exceeds the enumeration cap {cap}; stream graph6 input instead "
            "(e.g. from geng) or raise the cap explicitly")
    for mask in kernels.connected_masks(n):
        yield graph_from_mask(n, mask)


def random_connected(n: int, p: float, seed: int,
                     max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> Graph:
    """Erdos-Renyi G(n, p) conditioned on connectivity by rejection.

    The generator is numpy's PCG64 seeded with ``seed``. Each attempt draws
    ``n(n-1)/2`` uniforms with ``Generator.random`` and keeps pair ``k`` of
    :func:`pair_order` when its draw is ``< p``; attempts continue on the
    same stream until a connected graph appears.
    """
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = pair_order(n)
    for _ in range(max_attempts):
        keep = rng.random(len(pairs)) < p
        g = Graph(n, tuple(pr for pr, k in zip(pairs, keep) if k))
        if is_connected(g):
            return g
    raise SamplingError(
        f"no connected G({n}, {p}) sample in {max_attempts} attempts (seed {seed})")
