"""graph6 and edge-list text formats.

graph6 stores the upper triangle of the adjacency matrix in column order
(0,1), (0,2), (1,2), (0,3), ... packed big-endian into 6-bit groups, each
written as ``chr(63 + group)`` after a size header.
"""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, TextIO

from .errors import CapabilityError, FormatError, InputError
from .generators import pair_order
from .graph import Graph

__all__ = [
    "parse_graph6",
    "encode_graph6",
    "iter_graph6",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
]

log = logging.getLogger(__name__)

HEADER = ">>graph6<<"
MAX_GRAPH6_N = 68719476735


def _size_header(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    if n <= MAX_GRAPH6_N:
        return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise CapabilityError(f"graph6 cannot encode n={n}")


def _read_size(data: list) -> tuple:
    if not data:
        raise FormatError("empty graph6 record")
    if data[0] != 63:
        return data[0], 1
    if len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise FormatError("truncated 8-byte graph6 size header")
        n = 0
        for d in data[2:8]:
            n = n << 6 | d
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated 4-byte graph6 size header")
    n = 0
    for d in data[1:4]:
        n = n << 6 | d
    return n, 4


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"byte {ord(ch)} at offset {pos} is outside 63..126")
    data = [ord(ch) - 63 for ch in s]
    n, offset = _read_size(data)
    if n < 1:
        raise FormatError("graph6 record describes an empty graph")
    pairs = pair_order(n)
    payload = data[offset:]
    need = -(-len(pairs) // 6)
    if len(payload) != need:
        raise FormatError(f"payload has {len(payload)} bytes; n={n} needs {need}")
    edges = []
    for k, pr in enumerate(pairs):
        if payload[k // 6] >> (5 - k % 6) & 1:
            edges.append(pr)
    pad = 6 * need - len(pairs)
    if pad and payload[-1] & ((1 << pad) - 1):
        raise FormatError("non-zero padding bits in graph6 payload")
    return Graph(n, tuple(edges))


def encode_graph6(g: Graph) -> str:
    pairs = pair_order(g.n)
    bits = [1 if g.has_edge(i, j) else 0 for i, j in pairs]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        body.append(chr(63 + v))
    return _size_header(g.n) + "".join(body)


def iter_graph6(lines: Iterable[str]) -> Iterator[Graph]:
    """Parse a graph6 stream, skipping blank lines; errors carry the line number."""
    for num, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield parse_graph6(line)
        except FormatError as exc:
            raise FormatError(str(exc), line=num) from None
        except InputError as exc:
            raise FormatError(str(exc), line=num) from None


def read_edge_list(text: str) -> tuple:
    """Parse an edge list; returns ``(graph, duplicate_count)``.

    Format: header ``"n m"`` then ``m`` lines ``"u v"`` with 0-based vertices.
    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((num, line))
    if not rows:
        raise FormatError("missing 'n m' header", line=1)
    num, header = rows[0]
    n, m = _two_ints(header, num, "header")
    if n < 1 or m < 0:
        raise FormatError(f"header needs n >= 1 and m >= 0, got {n} {m}", line=num)
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else num)
        raise FormatError(f"header announces {m} edges, found {len(body)}", line=where)
    seen = set()
    dups = 0
    for num, line in body:
        u, v = _two_ints(line, num, "edge")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"endpoint out of range 0..{n - 1} in edge ({u}, {v})", line=num)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", line=num)
        key = (min(u, v), max(u, v))
        if key in seen:
            dups += 1
        seen.add(key)
    if dups:
        log.warning("edge list contains %d duplicate edge(s); collapsed", dups)
    return Graph(n, tuple(sorted(seen))), dups


def parse_edge_list(text: str) -> Graph:
    return read_edge_list(text)[0]


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _two_ints(line: str, num: int, what: str) -> tuple:
    parts = line.split()
    if len(parts) != 2:
        raise FormatError(f"malformed {what} {line!r}: expected two integers", line=num)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"malformed {what} {line!r}: expected two integers", line=num) from None


def read_graph(stream: TextIO, fmt: str) -> Graph:
    """Read a single graph from ``stream`` in ``fmt`` ('graph6' or 'edgelist')."""
    text = stream.read()
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        graphs = list(iter_graph6(text.splitlines()))
        if len(graphs) != 1:
            raise FormatError(f"expected exactly one graph6 record, found {len(graphs)}")
        return graphs[0]
    raise InputError(f"unknown format {fmt!r}")
