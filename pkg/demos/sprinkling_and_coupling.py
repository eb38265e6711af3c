"""
Sprinkling and contraction couplings between graph models
=========================================================

Two coupling tools: topping up a sparse binomial graph to a denser
one without disturbing the marginal, and contracting a cubic graph
to a smaller cubic graph by deleting matched edges.
"""

from cyclespan.samplers import SeededStream, couple_contract, sample_binomial, sample_regular_simple, sprinkle

n = 300
p, p_prime = 3.0 / n, 2.0 / n

# adding each missing pair with probability (p - p') / (1 - p') turns
# an edge-set drawn at density p' into one drawn at density p
base = sample_binomial(n, p_prime, SeededStream(1))
topped = sprinkle(base, p, p_prime, SeededStream(2))
print("base edges:", base.num_edges, " after sprinkling:", topped.num_edges)
print("expected around", round(p * n * (n - 1) / 2), "edges at density p")
print("base is contained edge-wise:",
      all(topped.has_edge(u, v) for u, v in base.edge_list()))

# deleting the endpoints of l matched edges and reconnecting the freed
# half-edges contracts a cubic graph onto n - 2l vertices
g = sample_regular_simple(120, 3, SeededStream(3))
out = couple_contract(g, 6, SeededStream(4))
print("contraction by l=6 matched edges:")
print("  survivors:", out.h.n, " patch edges:", len(out.patch_edges))
print("  matching event:", out.e1_holds, " patch event:", out.e2_holds)
if out.e1_holds and out.e2_holds:
    degs = out.h.degrees()
    print("  contracted graph is cubic:", set(degs) == {3})
