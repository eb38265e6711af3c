"""Seeded random-graph samplers.

Every sampler is a pure function of its parameters and a
:class:`SeededStream`: identical inputs give byte-identical graphs, and
distinct stream indices give independent streams, which is what the
experiment harness relies on for thread-count-independent reproducibility.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, build_graph

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    # SplitMix64 finalizer; the documented mixing function behind stream seeding.
    z &= _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeededStream:
    """A reproducible random stream identified by (master_seed, stream_index).

    The stream seed is ``splitmix64(master_seed + (stream_index + 1) *
    0x9E3779B97F4A7C15)`` over 64-bit integers, feeding a PCG64
    generator. Identical pairs yield identical value sequences; distinct
    indices yield independent streams.
    """

    master_seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of the stream."""
        z = (self.master_seed + (self.stream_index + 1) * _GOLDEN) & _MASK64
        return np.random.Generator(np.random.PCG64(_splitmix64(z)))


def sample_configuration_model(n: int, d: int, s: SeededStream) -> Graph:
    """d-regular multigraph from a uniform pairing of n*d half-edges.

    Every vertex gets degree d; loops count 2. Requires n*d even.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = s.generator()
    return _configuration_once(n, d, rng)


def _configuration_once(n: int, d: int, rng: np.random.Generator) -> Graph:
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    return build_graph(n, pairs.tolist(), multigraph=True)


def sample_regular_simple(
    n: int,
    d: int,
    s: SeededStream,
    max_attempts: int = 1000,
    return_attempts: bool = False,
) -> Graph | tuple[Graph, int]:
    """Uniform simple d-regular graph by rejection of the pairing model.

    Resamples the configuration model until the outcome has no loops and
    no parallel edges; on that event the law is uniform over simple
    d-regular graphs. The simplicity probability is bounded away from 0
    for fixed d, so exhausting ``max_attempts`` signals a bug and raises
    with the attempt count.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = s.generator()
    for attempt in range(1, max_attempts + 1):
        stubs = np.repeat(np.arange(n, dtype=np.int64), d)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        if np.any(lo == hi):
            continue
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        g = build_graph(n, pairs.tolist())
        return (g, attempt) if return_attempts else g
    raise RuntimeError(
        f"no simple {d}-regular graph on {n} vertices after {max_attempts} attempts"
    )


def cycle_edges(n: int) -> list[tuple[int, int]]:
    """Edges of the cycle on 0..n-1 in index order."""
    return [(i, (i + 1) % n) for i in range(n)]


def sample_cycle(n: int, directed: bool = False) -> Graph:
    """The deterministic cycle graph (an arc cycle when directed)."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, cycle_edges(n), directed=directed)


def uniform_perfect_matching(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform perfect matching on 0..n-1 (n even), as an edge list.

    A uniform shuffle paired off consecutively is exactly uniform over
    matchings, and the resulting edge sequence is exchangeable, so a
    prefix of it is a uniform subset of the matching's edges.
    """
    if n % 2 != 0:
        raise ValueError(f"perfect matching needs even n, got {n}")
    perm = rng.permutation(n)
    pairs = perm.reshape(-1, 2)
    pairs.sort(axis=1)
    return [(int(u), int(v)) for u, v in pairs]


def sample_ham_plus_matching(n: int, s: SeededStream) -> Graph:
    """Cycle on 0..n-1 plus an independent uniform perfect matching.

    A cubic multigraph; matching edges that coincide with cycle edges are
    kept as parallel edges.
    """
    if n % 2 != 0 or n < 4:
        raise ValueError(f"needs even n >= 4, got {n}")
    rng = s.generator()
    return build_graph(n, cycle_edges(n) + uniform_perfect_matching(n, rng), multigraph=True)


def sample_ham_plus_ham(n: int, s: SeededStream) -> Graph:
    """Cycle on 0..n-1 plus an independent uniform second spanning cycle.

    The second cycle is drawn as a uniform permutation fixing vertex 0,
    which is uniform over the (n-1)!/2 undirected spanning cycles. All
    degrees are 4, with multiplicities kept.
    """
    if n < 3:
        raise ValueError(f"needs n >= 3, got {n}")
    rng = s.generator()
    order = np.concatenate(([0], rng.permutation(np.arange(1, n))))
    second = [(int(order[i]), int(order[(i + 1) % n])) for i in range(n)]
    return build_graph(n, cycle_edges(n) + second, multigraph=True)


def _bernoulli_positions(count: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Sorted positions of successes among ``count`` Bernoulli(p) slots.

    Uses geometric gap skipping, so the cost is O(p * count) draws
    rather than one draw per slot.
    """
    if count <= 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(count, dtype=np.int64)
    out: list[np.ndarray] = []
    pos = -1  # last success position
    expect = int(count * p)
    block = max(64, expect + 4 * int(math.sqrt(expect + 1)) + 16)
    while True:
        gaps = rng.geometric(p, size=block)
        hits = pos + np.cumsum(gaps)
        if hits[-1] >= count:
            out.append(hits[hits < count])
            break
        out.append(hits)
        pos = int(hits[-1])
    return np.concatenate(out) if len(out) > 1 else out[0]


def _pairs_from_ranks_und(ranks: np.ndarray, n: int) -> np.ndarray:
    """Map ranks in [0, n*(n-1)/2) to pairs (u, v), u < v, in lex order."""
    if ranks.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    r = ranks.astype(np.float64)
    # row start S(u) = u*(2n-u-1)/2; invert the quadratic, then repair
    # float rounding at the boundaries.
    u = np.floor(((2 * n - 1) - np.sqrt((2 * n - 1) ** 2 - 8.0 * r)) / 2.0).astype(np.int64)
    u = np.clip(u, 0, n - 2)

    def start(x: np.ndarray) -> np.ndarray:
        return x * (2 * n - x - 1) // 2

    u = np.where(start(u) > ranks, u - 1, u)
    u = np.where(start(u + 1) <= ranks, u + 1, u)
    v = u + 1 + (ranks - start(u))
    return np.stack([u, v], axis=1)


def _pairs_from_ranks_dir(ranks: np.ndarray, n: int) -> np.ndarray:
    """Map ranks in [0, n*(n-1)) to ordered pairs (u, v), u != v, lex order."""
    if ranks.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    u = ranks // (n - 1)
    off = ranks % (n - 1)
    v = np.where(off >= u, off + 1, off)
    return np.stack([u, v], axis=1)


def _binomial_pairs(n: int, p: float, directed: bool, rng: np.random.Generator) -> np.ndarray:
    count = n * (n - 1) if directed else n * (n - 1) // 2
    ranks = _bernoulli_positions(count, p, rng)
    if directed:
        return _pairs_from_ranks_dir(ranks, n)
    return _pairs_from_ranks_und(ranks, n)


def sample_binomial(n: int, p: float, s: SeededStream, directed: bool = False) -> Graph:
    """Each candidate edge present independently with probability p.

    Candidates are the n*(n-1)/2 unordered pairs, or all n*(n-1) ordered
    pairs when directed. No loops either way.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must be in [0,1], got {p}")
    rng = s.generator()
    return build_graph(n, _binomial_pairs(n, p, directed, rng).tolist(), directed=directed)


def sample_ham_plus_binomial(
    n: int, p: float, s: SeededStream, directed: bool = False
) -> Graph:
    """Cycle on 0..n-1 plus independent Bernoulli(p) non-cycle edges.

    Simple by construction: the binomial part is restricted to candidate
    pairs that are not cycle edges. Implemented by sampling over all
    candidate pairs and discarding the cycle slots, which leaves the law
    on the remaining slots unchanged.
    """
    if n < 3:
        raise ValueError(f"needs n >= 3, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must be in [0,1], got {p}")
    rng = s.generator()
    pairs = _binomial_pairs(n, p, directed, rng)
    gap = (pairs[:, 1] - pairs[:, 0]) % n
    if directed:
        keep = gap != 1
    else:
        keep = (gap != 1) & (gap != n - 1)
    edges = cycle_edges(n) + pairs[keep].tolist()
    return build_graph(n, edges, directed=directed)


def sprinkle(g_prime: Graph, p: float, p_prime: float, s: SeededStream) -> Graph:
    """Top up binomial(p') to binomial(p) by adding fresh edges.

    Every candidate pair absent from ``g_prime`` is added independently
    with probability p'' = (p - p') / (1 - p'). If ``g_prime`` is
    binomial(p'), the output is distributed binomial(p). The output
    always contains ``g_prime`` edge-wise.
    """
    if not (0.0 <= p_prime <= p <= 1.0):
        raise ValueError(f"need 0 <= p' <= p <= 1, got p'={p_prime}, p={p}")
    if not g_prime.is_simple():
        raise ValueError("sprinkle needs a simple base graph")
    p_second = 0.0 if p == p_prime else (p - p_prime) / (1.0 - p_prime)
    rng = s.generator()
    fresh = _binomial_pairs(g_prime.n, p_second, g_prime.directed, rng)
    edges = g_prime.edge_list()
    edges.extend(
        (int(u), int(v)) for u, v in fresh if not g_prime.has_edge(int(u), int(v))
    )
    return build_graph(g_prime.n, edges, directed=g_prime.directed)


@dataclass(frozen=True)
class CouplingOutcome:
    """Result of :func:`couple_contract`.

    ``h`` lives on the surviving vertices relabeled by ``vertex_map``
    (order-preserving, old index -> new index). ``patch_edges`` lists the
    newly added edges in h's labels, in construction order. ``e1_holds``
    records that the matched edges formed a matching (2*ell distinct
    endpoints); ``e2_holds`` that no freed endpoint was itself deleted.
    When both hold, h is 3-regular on n - 2*ell vertices.
    """

    h: Graph
    patch_edges: list[tuple[int, int]]
    e1_holds: bool
    e2_holds: bool
    vertex_map: dict[int, int]


def couple_contract(g: Graph, ell: int, s: SeededStream) -> CouplingOutcome:
    """Delete the endpoints of ell random matched edges and patch around them.

    Picks ell distinct half-edges of a simple cubic graph uniformly at
    random. Each picked half-edge selects the edge it belongs to; the two
    endpoints of every selected edge are deleted, and for each deleted
    vertex the pair of freed neighbor half-edges is reconnected when both
    owners survive. On the event e1 and e2 the result is a uniform-style
    contraction to a cubic graph on n - 2*ell vertices; otherwise the
    partially patched graph is returned with the flags reporting what
    failed. The patched graph may be a multigraph.
    """
    n = g.n
    if g.directed or not g.is_simple():
        raise ValueError("needs a simple undirected graph")
    degs = g.degrees()
    assert isinstance(degs, list)
    if any(d != 3 for d in degs):
        raise ValueError("needs a 3-regular graph")
    if 2 * ell >= n:
        raise ValueError(f"need 2*ell < n, got ell={ell}, n={n}")
    if ell < 1:
        raise ValueError(f"need ell >= 1, got {ell}")
    rng = s.generator()
    half = rng.choice(3 * n, size=ell, replace=False)

    nbr = {v: sorted(g.neighbors(v)) for v in range(n)}
    selected: list[tuple[int, int]] = []
    for h_id in sorted(int(x) for x in half):
        u, slot = divmod(h_id, 3)
        selected.append((u, nbr[u][slot]))

    endpoints = [v for e in selected for v in e]
    e1 = len(set(endpoints)) == 2 * ell
    deleted = set(endpoints)

    # freed pairs: for each deleted endpoint, its two neighbors off the
    # selected edge, in selection order
    freed: list[tuple[int, int]] = []
    for u, v in selected:
        xu = [w for w in nbr[u] if w != v]
        xv = [w for w in nbr[v] if w != u]
        freed.append((xu[0], xu[1]))
        freed.append((xv[0], xv[1]))
    e2 = all(x not in deleted and y not in deleted for x, y in freed)

    survivors = [v for v in range(n) if v not in deleted]
    vmap = {old: new for new, old in enumerate(survivors)}
    edges = [
        (vmap[u], vmap[v])
        for (u, v) in g.edge_list()
        if u not in deleted and v not in deleted
    ]
    patches = [
        (vmap[x], vmap[y]) for x, y in freed if x not in deleted and y not in deleted
    ]
    h = build_graph(len(survivors), edges + patches, multigraph=True)
    return CouplingOutcome(h, patches, e1, e2, vmap)
