"""Sparse graph container shared by every module.

Vertices are dense integer indices 0..n-1. Undirected edges are stored
canonically (smaller endpoint first) with a multiplicity counter, so
multiplicity queries are O(1) and adjacency queries are O(degree). Loops
and parallel edges are permitted only when the multigraph flag is set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def _canon(u: int, v: int, directed: bool) -> tuple[int, int]:
    if directed or u <= v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable vertex/edge container, undirected or directed.

    Parameters
    ----------
    n : int
        Vertex count; endpoints must lie in [0, n).
    directed : bool
        Edge pairs are ordered when set.
    multigraph : bool
        Loops and parallel edges are allowed when set.

    Notes
    -----
    Instances are immutable after construction and safe to share across
    worker threads. Use :func:`build_graph` instead of calling the
    constructor directly.
    """

    n: int
    directed: bool
    multigraph: bool
    _mult: dict[tuple[int, int], int] = field(repr=False)
    _adj: dict[int, dict[int, int]] = field(repr=False)
    _radj: dict[int, dict[int, int]] | None = field(repr=False)

    @property
    def num_edges(self) -> int:
        """Edge count with multiplicity (a loop counts as one edge)."""
        return sum(self._mult.values())

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get(_canon(u, v, self.directed), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v, self.directed) in self._mult

    def neighbors(self, v: int) -> dict[int, int]:
        """Map neighbor -> multiplicity (out-neighbors when directed)."""
        return dict(self._adj.get(v, {}))

    def in_neighbors(self, v: int) -> dict[int, int]:
        if not self.directed:
            return self.neighbors(v)
        assert self._radj is not None
        return dict(self._radj.get(v, {}))

    def edge_items(self) -> Iterator[tuple[tuple[int, int], int]]:
        """Canonical (pair, multiplicity) items in sorted order."""
        return iter(sorted(self._mult.items()))

    def edge_list(self) -> list[tuple[int, int]]:
        """Canonical pairs repeated by multiplicity, sorted."""
        out: list[tuple[int, int]] = []
        for pair, m in self.edge_items():
            out.extend([pair] * m)
        return out

    def degrees(self) -> list[int] | tuple[list[int], list[int]]:
        """Per-vertex degrees.

        Undirected graphs return one table where a loop contributes 2.
        Directed graphs return (out_degrees, in_degrees); a loop
        contributes 1 to each.
        """
        if not self.directed:
            deg = [0] * self.n
            for (u, v), m in self._mult.items():
                deg[u] += m
                deg[v] += m  # loop (u == v) lands here twice, adding 2m
            return deg
        out = [0] * self.n
        incoming = [0] * self.n
        for (u, v), m in self._mult.items():
            out[u] += m
            incoming[v] += m
        return out, incoming

    def is_simple(self) -> bool:
        return all(u != v and m == 1 for (u, v), m in self._mult.items())


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    directed: bool = False,
    multigraph: bool = False,
) -> Graph:
    """Construct a graph from an edge list.

    Raises
    ------
    ValueError
        On an out-of-range endpoint, or on a loop or duplicate edge when
        ``multigraph`` is unset.
    """
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    mult: dict[tuple[int, int], int] = {}
    adj: dict[int, dict[int, int]] = {}
    radj: dict[int, dict[int, int]] | None = {} if directed else None
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if not multigraph and u == v:
            raise ValueError(f"loop at {u} in a simple graph")
        key = _canon(u, v, directed)
        newm = mult.get(key, 0) + 1
        if not multigraph and newm > 1:
            raise ValueError(f"duplicate edge ({u},{v}) in a simple graph")
        mult[key] = newm
        adj.setdefault(u, {})[v] = adj.setdefault(u, {}).get(v, 0) + 1
        if directed:
            assert radj is not None
            radj.setdefault(v, {})[u] = radj.setdefault(v, {}).get(u, 0) + 1
        elif u != v:
            adj.setdefault(v, {})[u] = adj.setdefault(v, {}).get(u, 0) + 1
    return Graph(n, directed, multigraph, mult, adj, radj)


def validate_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """True iff ``cycle`` is a vertex cycle of ``g``.

    The vertices must be distinct and every cyclically consecutive pair
    must be an edge of ``g`` (respecting orientation). The verdict is
    invariant under rotation, and under reversal for undirected graphs.
    Short cycles need a multigraph host: a length-2 undirected cycle
    requires edge multiplicity >= 2, a length-1 cycle requires a loop.
    """
    k = len(cycle)
    if k == 0 or len(set(cycle)) != k:
        return False
    if any(not (0 <= v < g.n) for v in cycle):
        return False
    if k == 1:
        return g.multiplicity(cycle[0], cycle[0]) >= 1
    if k == 2 and not g.directed:
        return g.multiplicity(cycle[0], cycle[1]) >= 2
    return all(g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


@dataclass(frozen=True)
class SimplifyReport:
    loops_removed: int
    parallel_surplus: int


def simplify(g: Graph) -> tuple[Graph, SimplifyReport]:
    """Drop loops and collapse parallel edges; idempotent.

    Returns the simple graph plus a report counting removed loops and
    the total parallel-edge surplus (multiplicity beyond the first).
    """
    loops = 0
    surplus = 0
    edges: list[tuple[int, int]] = []
    for (u, v), m in g.edge_items():
        if u == v:
            loops += m
            continue
        surplus += m - 1
        edges.append((u, v))
    return build_graph(g.n, edges, directed=g.directed), SimplifyReport(loops, surplus)


def to_edge_list_text(g: Graph) -> str:
    """Serialize to the edge-list text format.

    Line 1 is ``n m U|D`` with a trailing ``multi`` token for
    multigraphs; then m lines ``u v`` in sorted canonical order. The
    format round-trips bit-exactly through :func:`from_edge_list_text`.
    """
    flag = "D" if g.directed else "U"
    head = f"{g.n} {g.num_edges} {flag}"
    if g.multigraph:
        head += " multi"
    lines = [head]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse the edge-list text format; inverse of :func:`to_edge_list_text`."""
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty edge-list text")
    head = lines[0].split()
    if len(head) not in (3, 4):
        raise ValueError(f"malformed header {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if head[2] not in ("U", "D"):
        raise ValueError(f"orientation flag must be U or D, got {head[2]!r}")
    directed = head[2] == "D"
    multigraph = False
    if len(head) == 4:
        if head[3] != "multi":
            raise ValueError(f"unexpected header token {head[3]!r}")
        multigraph = True
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise ValueError(f"header promises {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n, edges, directed=directed, multigraph=multigraph)
