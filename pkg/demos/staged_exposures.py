"""
Staged exposure of chords over a Hamilton cycle
===============================================

Runs the two randomized procedures that hunt for a prescribed cycle
length by revealing extra edges in stages: once with a perfect
matching as the extra randomness, once with binomial sprinkles.
"""

from cyclespan.samplers import SeededStream
from cyclespan.switching import staged_binomial_exposure, staged_matching_exposure

# stage one accepts matching chords that are eligible and mutually
# non-conflicting; stage two looks for a partner among the leftovers
out = staged_matching_exposure(2000, 64, SeededStream(5))
print("matching variant, n=2000, l=64:")
print("  accepted stage-one chords:", len(out.accepted))
print("  auxiliary edges:", out.aux_edge_count,
      " (floor n*l/128 =", 2000 * 64 // 128, ")")
print("  with both endpoints unmatched:", out.unmatched_aux_edge_count,
      " (floor n*l/200 =", 2000 * 64 // 200, ")")
print("  success:", out.success, " witness:", out.witness)

# the binomial variant exposes each candidate chord independently and
# certifies the found pair against the chord geometry
b = staged_binomial_exposure(1000, 300, 0.3, SeededStream(5))
print("binomial variant, n=1000, l=300, delta=0.3:")
print("  examined pairs:", b.examined_pairs, " failures:", b.failures)
print("  success:", b.success, " aborted:", b.aborted)
if b.witness is not None:
    e, f = b.witness
    print("  witness chord", e, "with partner", f)
