"""Chord classes over a spanning cycle, partner sets, and staged exposures.

Everything here lives on the cycle with vertices 0..n-1 in index order.
A chord is a non-cycle pair; the eligible class for a target length ell
consists of chords whose cyclic span leaves room to close both a cycle
of length ell and its complementary cycle. Each eligible chord e carries
a small partner set of chords f such that adding {e, f} to the spanning
cycle creates cycles of prescribed lengths; the constructions are
explicit and validated vertex lists, not existence arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, build_graph
from .samplers import SeededStream, uniform_perfect_matching

Pair = tuple[int, int]


@dataclass(frozen=True)
class ChordContext:
    """Cycle length n, target cycle length ell, and orientation.

    Valid ranges: 4 <= ell <= floor(n/2) + 2 undirected,
    4 <= ell <= n - 4 directed.
    """

    n: int
    ell: int
    directed: bool = False

    def __post_init__(self) -> None:
        hi = self.n - 4 if self.directed else self.n // 2 + 2
        if not 4 <= self.ell <= hi:
            kind = "directed" if self.directed else "undirected"
            raise ValueError(
                f"{kind} target length must satisfy 4 <= ell <= {hi}, got {self.ell}"
            )

    @property
    def gap_bounds(self) -> tuple[int, int]:
        """Inclusive cyclic-gap interval [lo, hi] of eligible chords."""
        if self.directed:
            return 2, self.n - self.ell
        return (self.ell + 1) // 2, self.n // 2 - 1

    @property
    def partner_count(self) -> int:
        """Partner-set size: floor(ell/2) - 1 undirected, ell - 1 directed."""
        return self.ell - 1 if self.directed else self.ell // 2 - 1


def canonical_chord(n: int, e: Sequence[int]) -> Pair:
    """Orient an undirected chord as (i, j) with (j - i) mod n <= n/2.

    When the cyclic gap is exactly n/2 both orientations tie; the one
    with the smaller first index is chosen so the map is a function.
    """
    u, v = int(e[0]), int(e[1])
    duv = (v - u) % n
    dvu = (u - v) % n
    if duv < dvu:
        return (u, v)
    if dvu < duv:
        return (v, u)
    return (min(u, v), max(u, v))


def chord_gap(n: int, e: Sequence[int]) -> int:
    """Cyclic gap min((j-i) mod n, (i-j) mod n)."""
    u, v = int(e[0]), int(e[1])
    return min((v - u) % n, (u - v) % n)


def _check_endpoints(ctx: ChordContext, e: Sequence[int]) -> None:
    u, v = int(e[0]), int(e[1])
    if not (0 <= u < ctx.n and 0 <= v < ctx.n):
        raise ValueError(f"chord ({u},{v}) out of range for n={ctx.n}")
    if u == v:
        raise ValueError(f"chord endpoints must be distinct, got ({u},{v})")


def is_eligible_chord(ctx: ChordContext, e: Sequence[int]) -> bool:
    """Membership in the eligible chord class.

    Undirected: the cyclic gap lies in [ceil(ell/2), floor(n/2) - 1],
    which makes enumeration match the closed-form count exactly.
    Directed: the forward gap (j - i) mod n lies in [2, n - ell].
    """
    _check_endpoints(ctx, e)
    lo, hi = ctx.gap_bounds
    if ctx.directed:
        return lo <= (int(e[1]) - int(e[0])) % ctx.n <= hi
    return lo <= chord_gap(ctx.n, e) <= hi


def eligible_chord_count(ctx: ChordContext) -> int:
    """Closed-form size of the eligible class.

    (floor(n/2) - ceil(ell/2)) * n undirected, n * (n - ell - 1)
    directed; equals the enumeration exactly.
    """
    if ctx.directed:
        return ctx.n * (ctx.n - ctx.ell - 1)
    return (ctx.n // 2 - (ctx.ell + 1) // 2) * ctx.n


def enumerate_eligible_chords(ctx: ChordContext) -> list[Pair]:
    """All eligible chords, canonically oriented.

    Ordered by first endpoint then cyclic gap; this is the examination
    order used by :func:`staged_binomial_exposure`.
    """
    n = ctx.n
    lo, hi = ctx.gap_bounds
    return [(i, (i + g) % n) for i in range(n) for g in range(lo, hi + 1)]


def partner_chords(ctx: ChordContext, e: Sequence[int]) -> list[Pair]:
    """The partner set of an eligible chord, in construction order.

    Undirected, with e = (i, j) canonical: the pairs
    {i+k, j+ell-k-2} mod n for k = 1 .. floor(ell/2)-1, canonically
    oriented. Directed: the arcs (j+ell-k-2, i-k) mod n for
    k = 0 .. ell-2; every directed partner is itself eligible.
    """
    if not is_eligible_chord(ctx, e):
        raise ValueError(f"chord {tuple(e)} is not eligible for {ctx}")
    n, ell = ctx.n, ctx.ell
    if ctx.directed:
        i, j = int(e[0]), int(e[1])
        return [((j + ell - k - 2) % n, (i - k) % n) for k in range(ell - 1)]
    i, j = canonical_chord(n, e)
    return [
        canonical_chord(n, ((i + k) % n, (j + ell - k - 2) % n))
        for k in range(1, ell // 2)
    ]


def _partner_index(ctx: ChordContext, e: Pair, f: Sequence[int]) -> int:
    """Index k of f within the partner set of e; raises if absent."""
    n, ell = ctx.n, ctx.ell
    if ctx.directed:
        i, j = e
        key = (int(f[0]), int(f[1]))
        for k in range(ell - 1):
            if ((j + ell - k - 2) % n, (i - k) % n) == key:
                return k
    else:
        i, j = e
        key = frozenset((int(f[0]), int(f[1])))
        for k in range(1, ell // 2):
            if frozenset(((i + k) % n, (j + ell - k - 2) % n)) == key:
                return k
    raise ValueError(f"{tuple(f)} is not a partner of {e}")


def switch_cycles(
    ctx: ChordContext, e: Sequence[int], f: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Vertex lists of the two cycles created by an undirected switch.

    Adding chords e and f (f a partner of e) to the spanning cycle
    creates a cycle of length ell and one of length n - ell + 4; both
    are returned as explicit vertex lists that validate in the host
    graph. Works in the frame rotated so e starts at 0, then rotates
    back.
    """
    if ctx.directed:
        raise ValueError("switch_cycles is the undirected construction")
    n, ell = ctx.n, ctx.ell
    i, j = canonical_chord(n, e)
    if not is_eligible_chord(ctx, (i, j)):
        raise ValueError(f"chord {tuple(e)} is not eligible for {ctx}")
    k = _partner_index(ctx, (i, j), f)
    g = (j - i) % n
    short = list(range(k + 1)) + list(range(g + ell - k - 2, g - 1, -1))
    longc = list(range(g + ell - k - 2, n + 1)) + list(range(g, k - 1, -1))
    return [(t + i) % n for t in short], [(t + i) % n for t in longc]


def shortcut_cycle(ctx: ChordContext, e: Sequence[int], f: Sequence[int]) -> list[int]:
    """Vertex list of the directed cycle created by a directed switch.

    Adding arcs e and f (f a partner of e) to the directed spanning
    cycle creates a directed cycle of length exactly ell.
    """
    if not ctx.directed:
        raise ValueError("shortcut_cycle is the directed construction")
    n, ell = ctx.n, ctx.ell
    e2 = (int(e[0]), int(e[1]))
    if not is_eligible_chord(ctx, e2):
        raise ValueError(f"chord {e2} is not eligible for {ctx}")
    i, j = e2
    k = _partner_index(ctx, e2, f)
    g = (j - i) % n
    verts = [0] + list(range(g, g + ell - k - 1)) + list(range(n - k, n))
    return [(t + i) % n for t in verts]


def partner_sets_intersect(ctx: ChordContext, e1: Sequence[int], e2: Sequence[int]) -> bool:
    """O(1) test whether two eligible chords have intersecting partner sets.

    Derived by solving the partner parameterizations for a common
    member; validated exhaustively against direct set intersection.
    Expects canonically oriented chords for the undirected case.
    """
    n, ell = ctx.n, ctx.ell
    i, j = int(e1[0]), int(e1[1])
    ip, jp = int(e2[0]), int(e2[1])
    if ctx.directed:
        da = (ip - i) % n
        if da != (jp - j) % n:
            return False
        d = da if da <= n // 2 else da - n
        return d != 0 and -(ell - 2) <= d <= ell - 2
    kmax = ell // 2 - 1
    da = (ip - i) % n
    if da == (j - jp) % n:
        d = da if da <= n // 2 else da - n
        if d != 0 and -(kmax - 1) <= d <= kmax - 1:
            return True
    if (ip + jp) % n == (i + j) % n:
        s = (j + ell - 2 - ip) % n
        if 2 <= s <= 2 * kmax:
            return True
    return False


def conflicting_chords(ctx: ChordContext, e: Sequence[int]) -> list[Pair]:
    """Eligible chords e' != e whose partner set meets that of e.

    Generated in closed form (translate and counter-translate families)
    and filtered by the exact intersection test; equals a full scan of
    the eligible class. The returned list is sorted canonically.
    """
    if not is_eligible_chord(ctx, e):
        raise ValueError(f"chord {tuple(e)} is not eligible for {ctx}")
    n, ell = ctx.n, ctx.ell
    if ctx.directed:
        i, j = int(e[0]), int(e[1])
        out = set()
        for d in range(-(ell - 2), ell - 1):
            if d == 0:
                continue
            cand = ((i + d) % n, (j + d) % n)
            if cand != (i, j):
                out.add(cand)
        return sorted(out)
    i, j = canonical_chord(n, e)
    kmax = ell // 2 - 1
    cands = set()
    for d in range(-(kmax - 1), kmax):
        if d != 0:
            cands.add(frozenset(((i + d) % n, (j - d) % n)))
    for s in range(2, 2 * kmax + 1):
        w = ell - 2 - s
        cands.add(frozenset(((j + w) % n, (i - w) % n)))
    out = set()
    for c in cands:
        if len(c) != 2:
            continue
        u, v = tuple(c)
        if not is_eligible_chord(ctx, (u, v)):
            continue
        cc = canonical_chord(n, (u, v))
        if cc != (i, j) and partner_sets_intersect(ctx, (i, j), cc):
            out.add(cc)
    return sorted(out)


def partner_union_graph(ctx: ChordContext, matching: Iterable[Sequence[int]]) -> Graph:
    """Union of the partner sets of a matching's eligible chords.

    Returns a simple graph on n vertices whose edge set is the
    deduplicated union of partner sets over matching edges lying in the
    eligible class. Its maximum degree is at most ell - 3. Raises if
    the input is not a matching.
    """
    edges: set[Pair] = set()
    seen: set[int] = set()
    for e in matching:
        u, v = int(e[0]), int(e[1])
        _check_endpoints(ctx, (u, v))
        if u in seen or v in seen:
            raise ValueError(f"input is not a matching: vertex reused at ({u},{v})")
        seen.update((u, v))
        if is_eligible_chord(ctx, (u, v)):
            edges.update(partner_chords(ctx, (u, v)))
    return build_graph(ctx.n, sorted(edges), directed=ctx.directed)


@dataclass(frozen=True)
class ExposureOutcome:
    """Result of a staged exposure run.

    ``accepted`` holds the stage-one chords (canonical). For the
    matching variant ``aux_edge_count`` is the partner-union edge count
    and ``unmatched_aux_edge_count`` counts its edges with both
    endpoints unmatched after stage one; for the binomial variants
    ``aux_edge_count`` is the size of the disjoint partner union tested
    in round two and ``unmatched_aux_edge_count`` is None. ``witness``
    is a (chord, partner) pair certifying success. ``examined_pairs``
    and ``failures`` are observability counters; ``aborted`` reports a
    round-one examination overflow (binomial only).
    """

    variant: str
    params: dict[str, int | float] = field(repr=False)
    accepted: list[Pair]
    aux_edge_count: int
    unmatched_aux_edge_count: int | None
    success: bool
    witness: tuple[Pair, Pair] | None
    aborted: bool
    examined_pairs: int
    failures: int
    matching: list[Pair] | None = None


def staged_matching_exposure(
    n: int,
    ell: int,
    s: SeededStream,
    stage1_edges: int | None = None,
    stage2_steps: int | None = None,
) -> ExposureOutcome:
    """Three-stage revelation of a uniform perfect matching.

    Stage one reveals t1 = floor(n/16) uniform matching edges and builds
    the partner union of their eligible chords. Stage two runs
    t2 = floor(n/500) steps; each step reveals the match of a
    maximum-degree vertex of the partner union induced on the still
    unmatched vertices (ties broken by smallest index) and succeeds if
    the revealed edge is a partner-union edge. Stage three reveals the
    rest. The combined revelation is a uniform perfect matching: the
    matching is pre-sampled uniformly and the stages only choose the
    order in which its edges are uncovered, which by exchangeability is
    identical in law to conditional step-by-step sampling.

    ``stage1_edges`` and ``stage2_steps`` override the default stage
    sizes (useful for exercising all stages at small n, where the
    defaults floor to 0).
    """
    ctx = ChordContext(n, ell)
    if n % 2 != 0:
        raise ValueError(f"matching exposure needs even n, got {n}")
    t1 = n // 16 if stage1_edges is None else int(stage1_edges)
    t2 = n // 500 if stage2_steps is None else int(stage2_steps)
    if t1 < 0 or t1 > n // 2:
        raise ValueError(f"stage-one size must be in [0, n/2], got {t1}")
    if t2 < 0:
        raise ValueError(f"stage-two step count must be >= 0, got {t2}")
    rng = s.generator()
    matching = uniform_perfect_matching(n, rng)
    m1 = matching[:t1]
    aux = partner_union_graph(ctx, m1)

    partner_of: dict[int, int] = {}
    for u, v in matching:
        partner_of[u] = v
        partner_of[v] = u
    unmatched = set(range(n)) - {v for e in m1 for v in e}
    y0_edges = sum(
        1 for (u, v), _ in aux.edge_items() if u in unmatched and v in unmatched
    )

    eligible_m1 = [
        canonical_chord(n, e) for e in m1 if is_eligible_chord(ctx, e)
    ]
    partner_sets = {e: set(partner_chords(ctx, e)) for e in eligible_m1}

    success = False
    witness: tuple[Pair, Pair] | None = None
    steps = 0
    for _ in range(t2):
        if not unmatched:
            break
        best = min(
            unmatched,
            key=lambda v: (-sum(1 for w in aux.neighbors(v) if w in unmatched), v),
        )
        mate = partner_of[best]
        steps += 1
        if aux.has_edge(best, mate):
            f = canonical_chord(n, (best, mate))
            owner = next(e for e in eligible_m1 if f in partner_sets[e])
            success = True
            witness = (owner, f)
            break
        unmatched.discard(best)
        unmatched.discard(mate)

    return ExposureOutcome(
        variant="matching",
        params={"stage1_edges": t1, "stage2_steps": t2},
        accepted=eligible_m1,
        aux_edge_count=aux.num_edges,
        unmatched_aux_edge_count=y0_edges,
        success=success,
        witness=witness,
        aborted=False,
        examined_pairs=steps,
        failures=0,
        matching=sorted(tuple(sorted(e)) for e in matching),
    )


class _ChordOrder:
    """O(1) bijection between eligible chords and their lex positions."""

    def __init__(self, ctx: ChordContext):
        self.ctx = ctx
        self.lo, self.hi = ctx.gap_bounds
        self.row = self.hi - self.lo + 1
        self.total = ctx.n * self.row

    def position(self, e: Pair) -> int:
        i, j = e
        g = (j - i) % self.ctx.n
        return i * self.row + (g - self.lo)

    def chord(self, pos: int) -> Pair:
        i, rank = divmod(pos, self.row)
        return (i, (i + self.lo + rank) % self.ctx.n)


def _blocked_positions_reference(ctx: ChordContext, order: _ChordOrder, e: Pair) -> list[int]:
    """Per-candidate form of :func:`_blocked_positions_for`, kept as a
    cross-check oracle for the vectorized version."""
    out = {order.position(c) for c in conflicting_chords(ctx, e)}
    for f in partner_chords(ctx, e):
        cand = f if ctx.directed else canonical_chord(ctx.n, f)
        if is_eligible_chord(ctx, cand) and cand != e:
            out.add(order.position(cand))
    return sorted(out)


def _canon_arrays(n: int, u: np.ndarray, v: np.ndarray):
    """Vectorized canonical orientation and gap for chord arrays."""
    dd = (v - u) % n
    flip = dd > n - dd
    tie = dd * 2 == n
    ip = np.where(flip, v, u)
    jp = np.where(flip, u, v)
    tie_swap = tie & (u > v)
    ip = np.where(tie_swap, v, ip)
    jp = np.where(tie_swap, u, jp)
    gap = np.minimum(dd, n - dd)
    return ip, jp, gap


def _blocked_positions_for(ctx: ChordContext, order: _ChordOrder, e: Pair) -> np.ndarray:
    """Positions to freeze after accepting e: chords whose partner set
    meets e's, plus e's own eligible partners. Vectorized; agrees with
    the per-candidate reference exactly."""
    n, ell = ctx.n, ctx.ell
    i, j = e
    lo, hi = ctx.gap_bounds
    row = order.row
    if ctx.directed:
        g = (j - i) % n
        ds = np.concatenate([np.arange(-(ell - 2), 0), np.arange(1, ell - 1)])
        pos_conf = ((i + ds) % n) * row + (g - lo)
        ks = np.arange(ell - 1)
        first = (j + ell - ks - 2) % n
        gap_m = n - g - ell + 2
        pos_m = first * row + (gap_m - lo)
        return np.unique(np.concatenate([pos_conf, pos_m]))
    g = (j - i) % n
    kmax = ell // 2 - 1
    if kmax >= 2:
        ds = np.concatenate([np.arange(-(kmax - 1), 0), np.arange(1, kmax)])
    else:
        ds = np.empty(0, np.int64)
    ua = (i + ds) % n
    va = (j - ds) % n
    ss = np.arange(2, 2 * kmax + 1)
    ws = ell - 2 - ss
    ub = (j + ws) % n
    vb = (i - ws) % n
    u = np.concatenate([ua, ub])
    v = np.concatenate([va, vb])
    keep = (v - u) % n != 0
    u, v = u[keep], v[keep]
    ip, jp, gap = _canon_arrays(n, u, v)
    el = (gap >= lo) & (gap <= hi)
    ip, jp, gap = ip[el], jp[el], gap[el]
    da = (ip - i) % n
    d_signed = np.where(da <= n // 2, da, da - n)
    case_a = (da == (j - jp) % n) & (d_signed != 0) & (np.abs(d_signed) <= kmax - 1)
    s2 = (j + ell - 2 - ip) % n
    case_b = ((ip + jp) % n == (i + j) % n) & (s2 >= 2) & (s2 <= 2 * kmax)
    keep2 = (case_a | case_b) & ~((ip == i) & (jp == j))
    pos_conf = ip[keep2] * row + (gap[keep2] - lo)
    ks = np.arange(1, ell // 2)
    um = (i + ks) % n
    vm = (j + ell - ks - 2) % n
    ipm, _, gapm = _canon_arrays(n, um, vm)
    elm = (gapm >= lo) & (gapm <= hi)
    pos_m = ipm[elm] * row + (gapm[elm] - lo)
    return np.unique(np.concatenate([pos_conf, pos_m]))


def staged_binomial_exposure(
    n: int,
    ell: int,
    delta: float,
    s: SeededStream,
    directed: bool = False,
) -> ExposureOutcome:
    """Two-round exposure of a binomial edge set over the eligible chords.

    With p = delta/n the first round examines eligible chords in lex
    order with independent Bernoulli(p/2) indicators, accepting up to
    t chords (t = ceil(delta*n/15) undirected, ceil(delta*(n-ell-1)/4)
    directed) whose partner sets are pairwise disjoint: accepting a
    chord freezes every chord whose partner set meets its own, plus its
    eligible partners, and frozen chords are skipped without consuming
    randomness. The run aborts if failed examinations exceed
    m = floor(n^2/5) (undirected) or floor(3*n*(n-ell-1)/4) (directed).
    Round two tests the union of accepted partner sets against fresh
    independent Bernoulli(p'') coins, p'' = p/(2-p); the first hit
    yields the witness.

    The round-one scan uses geometric gap skipping over unfrozen
    positions, which is identical in law to per-chord sequential coins.
    """
    if not 0.0 < delta < 1.0 / 3.0:
        raise ValueError(f"delta must lie in (0, 1/3), got {delta}")
    ctx = ChordContext(n, ell, directed=directed)
    p = delta / n
    p1 = p / 2.0
    p2 = p / (2.0 - p)
    if directed:
        t_cap = math.ceil(round(delta * (n - ell - 1) / 4.0, 9))
        m_cap = (3 * n * (n - ell - 1)) // 4
    else:
        t_cap = math.ceil(round(delta * n / 15.0, 9))
        m_cap = (n * n) // 5
    order = _ChordOrder(ctx)
    rng = s.generator()

    chunks: list[np.ndarray] = []
    blocked: set[int] = set()

    def blocked_before(x: int) -> int:
        return sum(int(np.searchsorted(ch, x)) for ch in chunks)

    accepted: list[Pair] = []
    ptr = 0
    failures = 0
    aborted = False
    while len(accepted) < t_cap and ptr < order.total:
        g = int(rng.geometric(p1))
        base = blocked_before(ptr)
        remaining = (order.total - ptr) - (blocked_before(order.total) - base)
        if remaining < g:
            if failures + remaining > m_cap:
                aborted = True
                failures = m_cap + 1
            else:
                failures += remaining
            ptr = order.total
            break
        # smallest X with g unfrozen positions in [ptr, X); the hit is X-1
        lo_x, hi_x = ptr, order.total
        while lo_x < hi_x:
            mid = (lo_x + hi_x) // 2
            if (mid - ptr) - (blocked_before(mid) - base) >= g:
                hi_x = mid
            else:
                lo_x = mid + 1
        hit = lo_x - 1
        if failures + (g - 1) > m_cap:
            aborted = True
            failures = m_cap + 1
            break
        failures += g - 1
        e = order.chord(hit)
        accepted.append(e)
        ptr = hit + 1
        fresh = sorted(
            set(int(x) for x in _blocked_positions_for(ctx, order, e)) - blocked
        )
        if fresh:
            blocked.update(fresh)
            chunks.append(np.asarray(fresh, dtype=np.int64))

    members: list[Pair] = []
    owners: list[Pair] = []
    success = False
    witness: tuple[Pair, Pair] | None = None
    if not aborted:
        for e in accepted:
            for f in partner_chords(ctx, e):
                members.append(f)
                owners.append(e)
        # pairwise disjointness is what the freezing step guarantees
        assert len(set(members)) == len(members)
        if members:
            coins = rng.random(len(members)) < p2
            idx = int(np.argmax(coins)) if coins.any() else -1
            if idx >= 0:
                success = True
                witness = (owners[idx], members[idx])

    return ExposureOutcome(
        variant="binomial-directed" if directed else "binomial-undirected",
        params={
            "delta": delta,
            "accept_cap": t_cap,
            "examine_cap": m_cap,
            "p_first": p1,
            "p_second": p2,
        },
        accepted=accepted,
        aux_edge_count=len(members),
        unmatched_aux_edge_count=None,
        success=success,
        witness=witness,
        aborted=aborted,
        examined_pairs=failures + len(accepted) + len(members),
        failures=failures,
    )
