from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespan.graphs import Graph, build_graph, validate_cycle
from cyclespan.samplers import SeededStream, cycle_edges, sample_cycle
from cyclespan.spectrum import (
    CycleSpectrum,
    circumference,
    count_short_cycles,
    cycle_length_set,
    decide_all_lengths,
    has_all_lengths,
    has_cycle_of_length,
)

PETERSEN = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)


def brute_force_cycle_counts(g: Graph) -> dict[int, int]:
    """Count simple cycles by anchored DFS over vertex sequences.

    Every cycle is generated exactly once from its minimum vertex;
    undirected cycles are halved for the two traversal directions.
    """
    lmin = 2 if g.directed else 3
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    counts: dict[int, int] = {}

    def extend(anchor: int, path: list[int], onpath: set[int]) -> None:
        for w in sorted(adj[path[-1]]):
            if w == anchor and len(path) >= lmin:
                counts[len(path)] = counts.get(len(path), 0) + 1
            if w > anchor and w not in onpath:
                path.append(w)
                onpath.add(w)
                extend(anchor, path, onpath)
                onpath.discard(w)
                path.pop()

    for a in range(g.n):
        extend(a, [a], {a})
    if not g.directed:
        counts = {k: c // 2 for k, c in counts.items()}
    return counts


def random_simple_graph(n: int, m: int, directed: bool, seed: int) -> Graph:
    rng = SeededStream(seed).generator()
    if directed:
        pool = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = min(m, len(pool))
    idx = rng.choice(len(pool), size=m, replace=False)
    return build_graph(n, [pool[i] for i in idx], directed=directed)


def test_petersen_spectrum():
    spec = cycle_length_set(build_graph(10, PETERSEN))
    assert spec.exhaustive
    assert sorted(spec.lengths_present) == [5, 6, 8, 9]
    assert spec.counts == {5: 12, 6: 10, 8: 15, 9: 20}
    assert spec.k_counted == 10


def test_complete_graph_counts():
    k5 = build_graph(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    spec = cycle_length_set(k5)
    assert spec.counts == {3: 10, 4: 15, 5: 12}


def test_cycle_graph_both_orientations():
    for directed in (False, True):
        spec = cycle_length_set(sample_cycle(9, directed=directed))
        assert spec.exhaustive
        assert sorted(spec.lengths_present) == [9]
        assert spec.counts == {9: 1}


def test_tree_has_empty_spectrum():
    spec = cycle_length_set(build_graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)]))
    assert spec.exhaustive
    assert spec.lengths_present == frozenset()
    assert spec.counts == {}


def test_digon_counts_when_directed():
    g = build_graph(3, [(0, 1), (1, 0), (1, 2), (2, 0)], directed=True)
    spec = cycle_length_set(g)
    assert sorted(spec.lengths_present) == [2, 3]
    assert spec.counts == {2: 1, 3: 1}


def test_multigraph_short_lengths_are_opt_in():
    g = build_graph(4, [(0, 1), (0, 1), (2, 2), (0, 2), (2, 3), (3, 0)], multigraph=True)
    spec = cycle_length_set(g)
    assert sorted(spec.lengths_present) == [3]
    rich = cycle_length_set(g, allow_short=True)
    assert sorted(rich.lengths_present) == [1, 2, 3]
    assert rich.counts[1] == 1 and rich.counts[2] == 1


def test_count_short_cycles_matches_trace_formula():
    for seed in range(8):
        g = random_simple_graph(12, 20, False, 700 + seed)
        a = np.zeros((12, 12))
        for u, v in g.edge_list():
            a[u, v] = a[v, u] = 1
        z3 = int(round(np.trace(np.linalg.matrix_power(a, 3)))) // 6
        assert count_short_cycles(g, 3)[3] == z3


def test_count_short_cycles_multigraph_multiplicity():
    # parallel pair doubles the triangles through that pair
    g = build_graph(3, [(0, 1), (0, 1), (1, 2), (2, 0)], multigraph=True)
    assert count_short_cycles(g, 3) == {3: 2}


def test_count_short_cycles_validates_k():
    g = sample_cycle(5)
    with pytest.raises(ValueError):
        count_short_cycles(g, 2)


def test_spectrum_matches_brute_force():
    for seed in range(25):
        directed = seed % 2 == 1
        n = 6 + seed % 4
        g = random_simple_graph(n, 2 * n, directed, seed)
        want = brute_force_cycle_counts(g)
        spec = cycle_length_set(g)
        assert spec.exhaustive
        assert spec.counts == want
        kmax = max(want, default=3)
        got_short = count_short_cycles(g, max(kmax, 3))
        # the public short counter starts at 3 by contract
        assert {k: v for k, v in got_short.items() if v} == {
            k: v for k, v in want.items() if k >= 3
        }
        cmax, wit = circumference(g)
        assert cmax == max(want, default=0)
        if wit is not None:
            assert len(wit) == cmax
            assert validate_cycle(g, wit)


def test_budget_exhaustion_is_announced():
    g = build_graph(9, [(a, b) for a in range(9) for b in range(a + 1, 9)])
    spec = cycle_length_set(g, budget=50)
    assert not spec.exhaustive
    assert spec.budget_exhausted
    full = cycle_length_set(g)
    assert spec.lengths_present <= full.lengths_present
    # short lengths up to the fallback horizon are still exact
    assert {3, 4, 5} <= spec.lengths_present


def test_has_cycle_of_length_witnesses():
    g = build_graph(10, PETERSEN)
    verdict, wit = has_cycle_of_length(g, 9, budget=10_000)
    assert verdict == "present"
    assert len(wit) == 9 and validate_cycle(g, wit)
    verdict, wit = has_cycle_of_length(g, 7, budget=10_000)
    assert verdict == "absent" and wit is None


def test_has_cycle_of_length_unknown_on_tiny_budget():
    # dense graph, long target, no budget to finish
    g = build_graph(24, [(a, b) for a in range(24) for b in range(a + 1, 24)])
    verdict, wit = has_cycle_of_length(g, 23, budget=10)
    assert verdict in ("present", "unknown")
    if verdict == "present":
        assert validate_cycle(g, wit)


def test_decide_all_lengths_verdicts():
    g = build_graph(10, PETERSEN)
    verdict, missing, circuits = decide_all_lengths(g, [5, 6], budget=10_000)
    assert verdict is True and missing is None and circuits >= 0
    verdict, missing, _ = decide_all_lengths(g, [5, 6, 7], budget=10_000)
    assert verdict is False and missing == 7
    verdict, missing, _ = decide_all_lengths(g, [3], budget=10_000)
    assert verdict is False and missing == 3


def test_has_all_lengths_interval():
    k6 = build_graph(6, [(a, b) for a in range(6) for b in range(a + 1, 6)])
    verdict, missing = has_all_lengths(k6, list(range(3, 7)))
    assert verdict is True and missing is None
    verdict, missing = has_all_lengths(sample_cycle(8), list(range(3, 9)))
    assert verdict is False and missing == 3


def test_circumference_limits_and_acyclic():
    assert circumference(build_graph(4, [(0, 1), (1, 2)])) == (0, None)
    with pytest.raises(ValueError):
        circumference(sample_cycle(29))
    n, wit = circumference(sample_cycle(28))
    assert n == 28 and validate_cycle(sample_cycle(28), wit)


def test_directed_two_cycle_is_shortest():
    g = build_graph(4, [(0, 1), (1, 0), (2, 3), (3, 2)], directed=True)
    spec = cycle_length_set(g)
    assert spec.counts == {2: 2}
    assert circumference(g)[0] == 2


@given(st.integers(min_value=3, max_value=16), st.booleans())
@settings(max_examples=40, deadline=None)
def test_cycle_spectrum_of_cycle(n: int, directed: bool):
    spec = cycle_length_set(sample_cycle(n, directed=directed))
    assert sorted(spec.lengths_present) == [n]
    assert spec.counts == {n: 1}


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=25, deadline=None)
def test_spectrum_random_graphs_short_counts_consistent(seed: int):
    g = random_simple_graph(9, 14, False, seed)
    spec = cycle_length_set(g)
    short = count_short_cycles(g, 9)
    assert spec.counts == {k: v for k, v in short.items() if v}
