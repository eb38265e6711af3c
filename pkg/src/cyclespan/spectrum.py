"""Exact cycle-length spectra at desk scale.

Exhaustive elementary-circuit enumeration (Johnson-style blocking,
compiled with numba) yields the full set of cycle lengths and exact
per-length counts for graphs up to roughly n = 128; anchored bounded
depth-first search counts short cycles quickly at any size. A bitmask
dynamic program gives exact circumference up to n = 28.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from numba import njit
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .graphs import Graph, simplify, validate_cycle

_SHORT_K = 18
DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class CycleSpectrum:
    """Cycle lengths of a graph with exactness flags.

    ``lengths_present`` is exactly the length set when ``exhaustive``;
    otherwise a subset. ``counts[k]`` is exact for k <= ``k_counted``,
    and within that range counts[k] > 0 iff k is present.
    """

    lengths_present: frozenset[int]
    counts: dict[int, int]
    k_counted: int
    exhaustive: bool
    budget_exhausted: bool


@njit(cache=True, nogil=True)
def _search(indptr, indices, prefix0, prefix1, lmin, want, counts, need, state, wit):
    """Enumerate elementary circuits through a fixed prefix.

    Circuits either pass through the edge (prefix0, prefix1), or through
    the single vertex prefix0 when prefix1 < 0. Each found circuit of
    length >= lmin increments counts[length] and spends one unit of
    state[0] (budget). state[1] tracks how many entries of ``need`` are
    still unmet; state[2] reports the exit reason: 0 finished, 1 budget
    exhausted, 2 all needs met, 3 a circuit of length ``want`` was found
    and copied into ``wit``.
    """
    n = indptr.shape[0] - 1
    blocked = np.zeros(n, np.uint8)
    bmat = np.zeros((n, n), np.uint8)
    brow = np.zeros(n, np.int64)
    path = np.empty(n + 2, np.int32)
    ptr = np.empty(n + 2, np.int64)
    closed = np.zeros(n + 2, np.uint8)
    ustack = np.empty(n * n + 4, np.int32)
    start = prefix0
    if prefix1 >= 0:
        path[0] = prefix0
        path[1] = prefix1
        blocked[prefix0] = 1
        blocked[prefix1] = 1
        depth = 1
        stop = 1
    else:
        path[0] = prefix0
        blocked[prefix0] = 1
        depth = 0
        stop = 0
    ptr[depth] = indptr[path[depth]]
    closed[depth] = 0
    while depth >= stop:
        vlast = path[depth]
        p = ptr[depth]
        advanced = False
        while p < indptr[vlast + 1]:
            w = indices[p]
            p += 1
            if w == start:
                closed[depth] = 1
                length = depth + 1
                if length >= lmin:
                    counts[length] += 1
                    if length == want:
                        for t in range(length):
                            wit[t] = path[t]
                        state[2] = 3
                        return
                    state[0] -= 1
                    if need[length] != 0:
                        need[length] = 0
                        state[1] -= 1
                        if state[1] == 0:
                            state[2] = 2
                            return
                    if state[0] <= 0:
                        state[2] = 1
                        return
            elif blocked[w] == 0:
                ptr[depth] = p
                depth += 1
                path[depth] = w
                ptr[depth] = indptr[w]
                closed[depth] = 0
                blocked[w] = 1
                advanced = True
                break
        if advanced:
            continue
        was_closed = closed[depth]
        depth -= 1
        if was_closed == 1:
            if depth >= 0:
                closed[depth] = 1
            sp = 0
            ustack[sp] = vlast
            sp += 1
            while sp > 0:
                sp -= 1
                x = ustack[sp]
                if blocked[x] == 1:
                    blocked[x] = 0
                    if brow[x] > 0:
                        for y in range(n):
                            if bmat[x, y] == 1:
                                bmat[x, y] = 0
                                ustack[sp] = y
                                sp += 1
                        brow[x] = 0
        else:
            for q in range(indptr[vlast], indptr[vlast + 1]):
                w = indices[q]
                if bmat[w, vlast] == 0:
                    bmat[w, vlast] = 1
                    brow[w] += 1
    state[2] = 0


@njit(cache=True, nogil=True)
def _short_counts(indptr, indices, kmax, lmin, counts):
    """Count cycles of length <= kmax by min-anchored bounded DFS.

    Paths grow only through vertices larger than the anchor; closure
    back to the anchor at depth d records a cycle of length d + 1 when
    that is >= lmin. Undirected callers divide the result by two.
    """
    n = indptr.shape[0] - 1
    onpath = np.zeros(n, np.uint8)
    stack = np.empty(kmax + 2, np.int32)
    ptrs = np.empty(kmax + 2, np.int64)
    for a in range(n):
        stack[0] = a
        onpath[a] = 1
        ptrs[0] = indptr[a]
        depth = 0
        while depth >= 0:
            v = stack[depth]
            p = ptrs[depth]
            advanced = False
            while p < indptr[v + 1]:
                w = indices[p]
                p += 1
                if w == a:
                    if depth + 1 >= lmin:
                        counts[depth + 1] += 1
                elif w > a and onpath[w] == 0 and depth + 1 <= kmax - 1:
                    ptrs[depth] = p
                    depth += 1
                    stack[depth] = w
                    ptrs[depth] = indptr[w]
                    onpath[w] = 1
                    advanced = True
                    break
            if advanced:
                continue
            onpath[v] = 0
            depth -= 1


@njit(cache=True, nogil=True)
def _short_witness(indptr, indices, ell, wit):
    """Find one cycle of length exactly ell by min-anchored DFS.

    Returns 1 and fills wit[0:ell] with the vertex list on success,
    0 otherwise. Exhaustive for the given length.
    """
    n = indptr.shape[0] - 1
    onpath = np.zeros(n, np.uint8)
    stack = np.empty(ell + 2, np.int32)
    ptrs = np.empty(ell + 2, np.int64)
    for a in range(n):
        stack[0] = a
        onpath[a] = 1
        ptrs[0] = indptr[a]
        depth = 0
        while depth >= 0:
            v = stack[depth]
            p = ptrs[depth]
            advanced = False
            while p < indptr[v + 1]:
                w = indices[p]
                p += 1
                if w == a:
                    if depth + 1 == ell:
                        for t in range(ell):
                            wit[t] = stack[t]
                        return 1
                elif w > a and onpath[w] == 0 and depth + 1 <= ell - 1:
                    ptrs[depth] = p
                    depth += 1
                    stack[depth] = w
                    ptrs[depth] = indptr[w]
                    onpath[w] = 1
                    advanced = True
                    break
            if advanced:
                continue
            onpath[v] = 0
            depth -= 1
    return 0


@njit(cache=True, nogil=True)
def _witness_budgeted(indptr, indices, ell, budget, wit):
    """Budgeted variant of :func:`_short_witness`.

    Returns (status, steps): status 1 = found (wit filled), 0 = search
    space exhausted so no ell-cycle exists, 2 = step budget ran out
    first. Steps count edge scans.
    """
    n = indptr.shape[0] - 1
    onpath = np.zeros(n, np.uint8)
    stack = np.empty(ell + 2, np.int32)
    ptrs = np.empty(ell + 2, np.int64)
    steps = 0
    for a in range(n):
        stack[0] = a
        onpath[a] = 1
        ptrs[0] = indptr[a]
        depth = 0
        while depth >= 0:
            v = stack[depth]
            p = ptrs[depth]
            advanced = False
            while p < indptr[v + 1]:
                w = indices[p]
                p += 1
                steps += 1
                if steps > budget:
                    return 2, steps
                if w == a:
                    if depth + 1 == ell:
                        for t in range(ell):
                            wit[t] = stack[t]
                        return 1, steps
                elif w > a and onpath[w] == 0 and depth + 1 <= ell - 1:
                    ptrs[depth] = p
                    depth += 1
                    stack[depth] = w
                    ptrs[depth] = indptr[w]
                    onpath[w] = 1
                    advanced = True
                    break
            if advanced:
                continue
            onpath[v] = 0
            depth -= 1
    return 0, steps


def _csr_arrays(m: int, edges: Iterable[tuple[int, int]], directed: bool):
    """Sorted CSR adjacency over vertices 0..m-1."""
    adj: list[list[int]] = [[] for _ in range(m)]
    for u, v in edges:
        adj[u].append(v)
        if not directed:
            adj[v].append(u)
    indptr = np.zeros(m + 1, np.int64)
    for v in range(m):
        adj[v].sort()
        indptr[v + 1] = indptr[v] + len(adj[v])
    indices = np.empty(int(indptr[m]), np.int32)
    pos = 0
    for v in range(m):
        for w in adj[v]:
            indices[pos] = w
            pos += 1
    return indptr, indices


def _biconnected_vertex_sets(adj: dict[int, set[int]]) -> list[set[int]]:
    """Vertex sets of biconnected components with at least 3 vertices."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    comps: list[set[int]] = []
    counter = 0
    for root in sorted(adj):
        if root in disc or not adj[root]:
            continue
        disc[root] = low[root] = counter
        counter += 1
        estack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            v, parent, children = stack[-1]
            advanced = False
            for w in children:
                if w == parent:
                    continue
                if w not in disc:
                    estack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(sorted(adj[w]))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            pv = stack[-1][0]
            if low[v] < low[pv]:
                low[pv] = low[v]
            if low[v] >= disc[pv]:
                comp: set[int] = set()
                while estack:
                    a, b = estack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (pv, v):
                        break
                if len(comp) >= 3:
                    comps.append(comp)
    return comps


def _strong_components(n: int, adj: dict[int, set[int]]) -> list[set[int]]:
    """Strongly connected components with at least 2 vertices."""
    rows, cols = [], []
    for u, outs in adj.items():
        for v in outs:
            rows.append(u)
            cols.append(v)
    if not rows:
        return []
    mat = csr_matrix((np.ones(len(rows), np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(mat, directed=True, connection="strong")
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(int(labels[v]), set()).add(v)
    return [c for c in groups.values() if len(c) >= 2]


def _structural_length_bound(g: Graph) -> int:
    """Cheap exact upper bound on any cycle length in g.

    Every cycle lies inside one biconnected component (strongly
    connected component when directed), so the largest such component
    bounds the longest cycle. Returns 0 for acyclic-by-structure
    graphs.
    """
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    if g.directed:
        comps = _strong_components(g.n, adj)
    else:
        comps = _biconnected_vertex_sets(adj)
    return max((len(c) for c in comps), default=0)


def _hamilton_witness(
    n: int, edges: Sequence[tuple[int, int]], node_budget: int = 200_000
) -> tuple[str, list[int] | None]:
    """Exact Hamilton-cycle decision for simple undirected graphs.

    Branches on whether an edge lies on the cycle, with unit propagation
    (every vertex uses exactly two incident cycle edges) and subtour
    pruning via path-endpoint tracking. This settles instances where
    plain path search thrashes, e.g. most sparse regular graphs.
    Returns ('present', cycle), ('absent', None), or ('unknown', None)
    when the branch budget runs out.
    """
    m = len(edges)
    inc: list[list[int]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        inc[u].append(idx)
        inc[v].append(idx)
    if n < 3 or any(len(ix) < 2 for ix in inc):
        return "absent", None

    state = [0] * m  # 0 undecided, 1 on-cycle, -1 off-cycle
    deg_in = [0] * n
    deg_free = [len(ix) for ix in inc]
    end = list(range(n))  # path endpoint pairing for subtour detection
    nodes = 0

    def set_edge(idx: int, val: int) -> bool:
        u, v = edges[idx]
        if state[idx] != 0:
            return state[idx] == val
        state[idx] = val
        deg_free[u] -= 1
        deg_free[v] -= 1
        if val == 1:
            deg_in[u] += 1
            deg_in[v] += 1
            if deg_in[u] > 2 or deg_in[v] > 2:
                return False
            eu, ev = end[u], end[v]
            if eu == v:
                # closing a cycle; only acceptable if it spans everything
                return sum(1 for s in state if s == 1) == n
            end[eu], end[ev] = ev, eu
        return deg_in[u] + deg_free[u] >= 2 and deg_in[v] + deg_free[v] >= 2

    def propagate(queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            slack = deg_in[v] + deg_free[v]
            if slack < 2:
                return False
            if deg_in[v] == 2 or slack == 2:
                val = -1 if deg_in[v] == 2 else 1
                for idx in inc[v]:
                    if state[idx] == 0:
                        if not set_edge(idx, val):
                            return False
                        a, b = edges[idx]
                        queue.append(a)
                        queue.append(b)
        return True

    def extract_cycle() -> list[int] | None:
        nxt: dict[int, list[int]] = {}
        for idx, (u, v) in enumerate(edges):
            if state[idx] == 1:
                nxt.setdefault(u, []).append(v)
                nxt.setdefault(v, []).append(u)
        if len(nxt) != n:
            return None
        cyc = [0]
        prev, v = 0, nxt[0][0]
        while v != 0:
            cyc.append(v)
            a, b = nxt[v]
            prev, v = v, (a if a != prev else b)
        return cyc if len(cyc) == n else None

    def solve() -> str:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            return "unknown"
        if not propagate(list(range(n))):
            return "absent"
        if all(deg_in[v] == 2 for v in range(n)):
            return "present" if extract_cycle() is not None else "absent"
        pick = -1
        for v in range(n):
            if deg_in[v] < 2 and deg_free[v] > 0:
                for idx in inc[v]:
                    if state[idx] == 0:
                        pick = idx
                        break
                break
        if pick < 0:
            return "absent"
        saved = (list(state), list(deg_in), list(deg_free), list(end))
        saw_unknown = False
        for val in (1, -1):
            a, b = edges[pick]
            if set_edge(pick, val) and propagate([a, b]):
                sub = solve()
                if sub == "present":
                    return "present"
                if sub == "unknown":
                    saw_unknown = True
            state[:], deg_in[:], deg_free[:], end[:] = (
                list(saved[0]), list(saved[1]), list(saved[2]), list(saved[3]))
        return "unknown" if saw_unknown else "absent"

    verdict = solve()
    if verdict == "present":
        cyc = extract_cycle()
        assert cyc is not None
        return "present", cyc
    return verdict, None


def _near_hamilton_witness(
    g: Graph, ell: int
) -> tuple[str, list[int] | None]:
    """Exact decision for a cycle through all but n - ell vertices.

    Only used for ell = n - 1: tries the Hamilton solver on every
    single-vertex deletion.
    """
    saw_unknown = False
    for drop in range(g.n):
        keep = [v for v in range(g.n) if v != drop]
        idx = {v: i for i, v in enumerate(keep)}
        edges = [
            (idx[u], idx[v]) for u, v in g.edge_list() if u != drop and v != drop
        ]
        verdict, cyc = _hamilton_witness(g.n - 1, edges)
        if verdict == "present":
            assert cyc is not None
            return "present", [keep[i] for i in cyc]
        if verdict == "unknown":
            saw_unknown = True
    return ("unknown", None) if saw_unknown else ("absent", None)


def _ladder_seed(n: int, ell: int, round_index: int) -> int:
    # fixed arithmetic mix so retries are deterministic per call site
    x = (n * 1_000_003 + ell * 7919 + round_index) & 0xFFFFFFFFFFFFFFFF
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & 0xFFFFFFFFFFFFFFFF
    return (x ^ (x >> 27)) & 0x7FFFFFFF


def _decide_long(g: Graph, ell: int, budget: int) -> tuple[str, list[int] | None, int]:
    """Presence of an exact long cycle length, with certificates.

    Tries, in order: the component-size bound (certifies absence), the
    exact Hamilton solver for ell = n (undirected), then budgeted
    anchored search restarted under deterministic relabelings; a restart
    that exhausts its search space certifies absence, and finding a
    witness certifies presence. For ell = n - 1 (undirected) the
    deletion form of the Hamilton solver is the last resort. Returns
    (status, witness, steps_spent) with status in {'present', 'absent',
    'unknown'}.
    """
    n = g.n
    if ell > _structural_length_bound(g):
        return "absent", None, 0
    if not g.directed and ell == n:
        verdict, cyc = _hamilton_witness(n, g.edge_list())
        if verdict != "unknown":
            return verdict, cyc, 0
    edges = g.edge_list()
    spent = 0
    rounds = 0
    while spent < budget and rounds < 24:
        cap = min(1_000_000 << min(rounds, 5), budget - spent)
        if cap <= 0:
            break
        if rounds == 0:
            local = edges
            inv = None
        else:
            perm = np.random.default_rng(
                _ladder_seed(n, ell, rounds)).permutation(n)
            inv = np.empty(n, np.int64)
            inv[perm] = np.arange(n)
            local = [(int(perm[u]), int(perm[v])) for u, v in edges]
        indptr, indices = _csr_arrays(n, local, g.directed)
        wit = np.empty(ell + 2, np.int32)
        status, steps = _witness_budgeted(indptr, indices, ell, cap, wit)
        spent += int(steps)
        rounds += 1
        if status == 1:
            cyc = [int(wit[t]) for t in range(ell)]
            if inv is not None:
                cyc = [int(inv[v]) for v in cyc]
            return "present", cyc, spent
        if status == 0:
            return "absent", None, spent
    if not g.directed and ell == n - 1:
        verdict, cyc = _near_hamilton_witness(g, ell)
        if verdict != "unknown":
            return verdict, cyc, spent
    return "unknown", None, spent


def _run_kernel(comp, edges, directed, prefix, lmin, want, counts, need, state):
    """Relabel a component, run the circuit search, translate a witness."""
    verts = sorted(comp)
    idx = {v: i for i, v in enumerate(verts)}
    local_edges = [(idx[u], idx[v]) for u, v in edges]
    indptr, indices = _csr_arrays(len(verts), local_edges, directed)
    p0 = idx[prefix[0]]
    p1 = idx[prefix[1]] if len(prefix) > 1 else -1
    wit = np.empty(len(verts) + 2, np.int32)
    _search(indptr, indices, p0, p1, lmin, -1 if want is None else want,
            counts, need, state, wit)
    if state[2] == 3:
        return [verts[int(wit[t])] for t in range(int(want))]
    return None


def _enumerate(g: Graph, budget: int, need_lengths: Sequence[int] | None, want: int | None):
    """Drive the circuit search over components, one removal at a time.

    Returns (counts array, status, witness). Status is one of
    'complete', 'budget', 'needs-met', 'witness'. counts[k] holds the
    number of circuits of length k found before the stop; on
    'complete' these are the exact per-length counts.
    """
    counts = np.zeros(g.n + 2, np.int64)
    need = np.zeros(g.n + 2, np.int64)
    nneed = 0
    for k in need_lengths or ():
        lo = 2 if g.directed else 3
        if lo <= k <= g.n and need[k] == 0:
            need[k] = 1
            nneed += 1
    if need_lengths is not None and nneed == 0:
        return counts, "needs-met", None
    state = np.array([budget, nneed, 0], np.int64)
    if g.directed:
        adj = {v: set(g.neighbors(v)) for v in range(g.n)}
        while True:
            comps = _strong_components(g.n, adj)
            if not comps:
                return counts, "complete", None
            comp = min(comps, key=min)
            root = min(comp)
            edges = [(u, v) for u in comp for v in adj[u] if v in comp]
            witness = _run_kernel(comp, edges, True, (root,), 2, want,
                                  counts, need, state)
            if state[2] == 3:
                return counts, "witness", witness
            if state[2] == 1:
                return counts, "budget", None
            if state[2] == 2:
                return counts, "needs-met", None
            del adj[root]
            for outs in adj.values():
                outs.discard(root)
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    while True:
        comps = _biconnected_vertex_sets(adj)
        if not comps:
            return counts, "complete", None
        best_edge = None
        best_comp = None
        for comp in comps:
            for u in sorted(comp):
                nbrs = [w for w in adj[u] if w in comp and w > u]
                if nbrs:
                    cand = (u, min(nbrs))
                    if best_edge is None or cand < best_edge:
                        best_edge = cand
                        best_comp = comp
                    break
        assert best_edge is not None and best_comp is not None
        u, v = best_edge
        edges = []
        for a in best_comp:
            for b in adj[a]:
                if b in best_comp and a < b and (a, b) != (u, v):
                    edges.append((a, b))
        witness = _run_kernel(best_comp, edges, False, (u, v), 3, want,
                              counts, need, state)
        if state[2] == 3:
            return counts, "witness", witness
        if state[2] == 1:
            return counts, "budget", None
        if state[2] == 2:
            return counts, "needs-met", None
        adj[u].discard(v)
        adj[v].discard(u)


def _require_simple(g: Graph, op: str) -> None:
    if not g.is_simple():
        raise ValueError(f"{op} requires a simple graph; simplify() first")


def count_short_cycles(g: Graph, k: int) -> dict[int, int]:
    """Exact counts of cycles of each length 3..k.

    Undirected cycles are counted once per vertex set and cyclic
    structure; directed cycles once per cyclic arc sequence, so a digon
    pair is one 2-cycle (not reported here, which starts at 3).
    Multigraphs are accepted: parallel copies of an edge give distinct
    cycles (the subgraph-count convention), and loops never lie on a
    cycle of length >= 3.
    """
    if k < 3:
        raise ValueError(f"short-count bound must be >= 3, got {k}")
    kmax = min(k, g.n)
    counts = np.zeros(kmax + 2, np.int64)
    if kmax >= 2:
        indptr, indices = _csr_arrays(
            g.n, [(u, v) for u, v in g.edge_list() if u != v], g.directed
        )
        _short_counts(indptr, indices, kmax, 2 if g.directed else 3, counts)
    out = {}
    for kk in range(3, k + 1):
        c = int(counts[kk]) if kk <= kmax else 0
        out[kk] = c if g.directed else c // 2
    return out


def _short_count_map(g: Graph, kmax: int) -> dict[int, int]:
    """Internal short counts starting at 2 for directed graphs."""
    lo = 2 if g.directed else 3
    kk = min(kmax, g.n)
    counts = np.zeros(kk + 2, np.int64)
    if kk >= lo:
        indptr, indices = _csr_arrays(g.n, [e for e, _ in g.edge_items()], g.directed)
        _short_counts(indptr, indices, kk, lo, counts)
    out = {}
    for k in range(lo, kmax + 1):
        c = int(counts[k]) if k <= kk else 0
        out[k] = c if g.directed else c // 2
    return out


def _multigraph_short_entries(g: Graph) -> dict[int, int]:
    """Exact counts of length-1 and length-2 cycles from multiplicities."""
    loops = 0
    two = 0
    if g.directed:
        seen = set()
        for (u, v), m in g.edge_items():
            if u == v:
                loops += m
            elif (v, u) not in seen:
                seen.add((u, v))
                two += m * g.multiplicity(v, u)
    else:
        for (u, v), m in g.edge_items():
            if u == v:
                loops += m
            elif m >= 2:
                two += m * (m - 1) // 2
    out = {}
    if loops:
        out[1] = loops
    if two:
        out[2] = two
    return out


def cycle_length_set(
    g: Graph, budget: int = DEFAULT_BUDGET, allow_short: bool = False
) -> CycleSpectrum:
    """The set of cycle lengths, exhaustive when the budget allows.

    Simple graphs are enumerated fully; if the circuit budget runs out,
    the result keeps every length seen plus exact counts for lengths up
    to 18 from the bounded search, and sets budget_exhausted.

    Multigraph inputs are simplified first: lengths >= 3 (and their
    counts) refer to the simplified graph, whose length set over that
    range is the same. With ``allow_short`` the exact number of
    length-1 and length-2 cycles of the multigraph itself is added.
    """
    if g.is_simple():
        simple = g
    else:
        simple, _ = simplify(g)
    counts_arr, status, _ = _enumerate(simple, budget, None, None)
    if status == "complete":
        counts = {k: int(c) for k, c in enumerate(counts_arr) if c > 0}
        lengths = set(counts)
        k_counted = simple.n
        exhausted = False
    else:
        k0 = min(simple.n, _SHORT_K)
        counts = {k: c for k, c in _short_count_map(simple, k0).items() if c > 0}
        lengths = set(counts) | {k for k, c in enumerate(counts_arr) if c > 0}
        k_counted = k0
        exhausted = True
    if allow_short and not g.is_simple():
        extra = _multigraph_short_entries(g)
        counts = {**extra, **counts}
        lengths |= set(extra)
    return CycleSpectrum(
        lengths_present=frozenset(lengths),
        counts=counts,
        k_counted=k_counted,
        exhaustive=not exhausted,
        budget_exhausted=exhausted,
    )


def has_cycle_of_length(
    g: Graph, ell: int, budget: int = DEFAULT_BUDGET
) -> tuple[str, list[int] | None]:
    """Decide whether a cycle of length ell exists.

    Returns ('present', witness), ('absent', None), or
    ('unknown', None). Short lengths (<= 18) are decided exhaustively
    by bounded search regardless of budget; longer ones by certified
    long-length search, where exhausting the budget yields 'unknown'.
    """
    _require_simple(g, "has_cycle_of_length")
    lo = 2 if g.directed else 3
    if ell < lo or ell > g.n:
        return "absent", None
    if ell <= _SHORT_K:
        indptr, indices = _csr_arrays(g.n, [e for e, _ in g.edge_items()], g.directed)
        wit = np.empty(ell + 2, np.int32)
        if _short_witness(indptr, indices, ell, wit):
            return "present", [int(wit[t]) for t in range(ell)]
        return "absent", None
    status, witness, _ = _decide_long(g, ell, budget)
    if status == "present":
        assert witness is not None and validate_cycle(g, witness)
        return "present", witness
    return status, None


def decide_all_lengths(
    g: Graph, lengths: Sequence[int], budget: int = DEFAULT_BUDGET
) -> tuple[bool | None, int | None, int]:
    """Decide whether every requested length occurs, reporting work done.

    Returns (verdict, missing, circuits): verdict True when all lengths
    occur, False with one certified missing length, or None when the
    work budget ran out first. ``circuits`` counts the cycles inspected
    (bounded-search hits plus one per long witness). Lengths up to 18
    are decided by exhaustive bounded counting; longer ones by the
    certified long-length search, sharing one budget across lengths.
    """
    _require_simple(g, "decide_all_lengths")
    lo = 2 if g.directed else 3
    req = sorted(set(int(k) for k in lengths))
    for k in req:
        if k < lo or k > g.n:
            return False, k, 0
    circuits = 0
    short_req = [k for k in req if k <= _SHORT_K]
    if short_req:
        have = _short_count_map(g, max(short_req))
        circuits += sum(have.values())
        for k in short_req:
            if have.get(k, 0) == 0:
                return False, k, circuits
    long_req = [k for k in req if k > _SHORT_K]
    if not long_req:
        return True, None, circuits
    bound = _structural_length_bound(g)
    over = [k for k in long_req if k > bound]
    if over:
        return False, over[0], circuits
    remaining = budget
    for k in long_req:
        status, _, spent = _decide_long(g, k, remaining)
        remaining = max(1, remaining - spent)
        if status == "absent":
            return False, k, circuits
        if status == "unknown":
            return None, None, circuits
        circuits += 1
    return True, None, circuits


def has_all_lengths(
    g: Graph, lengths: Sequence[int], budget: int = DEFAULT_BUDGET
) -> tuple[bool | None, int | None]:
    """Decide whether every requested length occurs as a cycle length.

    Returns (verdict, missing) as in :func:`decide_all_lengths`,
    without the work counter.
    """
    verdict, missing, _ = decide_all_lengths(g, lengths, budget)
    return verdict, missing


def circumference(g: Graph) -> tuple[int, list[int] | None]:
    """Exact longest-cycle length with a witness, for n <= 28.

    Bitmask dynamic programming per component: states are (visited
    set, endpoint) pairs for simple paths anchored at the set's
    minimum vertex. Returns (0, None) on acyclic graphs. Raises above
    n = 28; use cycle_length_set's maximum there instead.
    """
    _require_simple(g, "circumference")
    if g.n > 28:
        raise ValueError(
            f"exact circumference is limited to n <= 28 (got {g.n}); "
            "use cycle_length_set and take the maximum"
        )
    lmin = 2 if g.directed else 3
    if g.directed:
        adj_full = {v: set(g.neighbors(v)) for v in range(g.n)}
        comps = _strong_components(g.n, adj_full)
    else:
        comps = []
        seen: set[int] = set()
        for s in range(g.n):
            if s in seen:
                continue
            comp = {s}
            queue = [s]
            seen.add(s)
            while queue:
                v = queue.pop()
                for w in g.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            if len(comp) >= 3:
                comps.append(comp)
    best_len = 0
    best_wit: list[int] | None = None
    for comp in comps:
        verts = sorted(comp)
        m = len(verts)
        idx = {v: i for i, v in enumerate(verts)}
        out_adj = [
            sorted(idx[w] for w in g.neighbors(v) if w in comp) for v in verts
        ]
        back = [
            set(idx[w] for w in (g.in_neighbors(v) if g.directed else g.neighbors(v)) if w in comp)
            for v in verts
        ]
        for a in range(m):
            if m - a < max(best_len + 1, lmin):
                break
            parent: dict[tuple[int, int], int] = {}
            frontier: list[tuple[int, int]] = []
            base = 1 << a
            for w in out_adj[a]:
                if w > a:
                    st = (base | (1 << w), w)
                    parent[st] = a
                    frontier.append(st)
            qi = 0
            while qi < len(frontier):
                mask, last = frontier[qi]
                qi += 1
                size = mask.bit_count()
                if size >= lmin and size > best_len and last in back[a]:
                    # close the cycle and rebuild the path backwards
                    best_len = size
                    path = [last]
                    cm, cl = mask, last
                    while cl != a:
                        prev = parent[(cm, cl)]
                        cm ^= 1 << cl
                        cl = prev
                        path.append(cl)
                    path.reverse()
                    best_wit = [verts[t] for t in path]
                for w in out_adj[last]:
                    if w > a and not mask & (1 << w):
                        st = (mask | (1 << w), w)
                        if st not in parent:
                            parent[st] = last
                            frontier.append(st)
    return best_len, best_wit
