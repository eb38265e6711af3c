"""
Chord geometry on a Hamilton cycle
==================================

Walks through the chord classes behind the switching construction:
which chords of a host cycle are eligible for a target length, which
partner chords complete them, and what the two replacement cycles
look like.
"""

from cyclespan.graphs import build_graph, validate_cycle
from cyclespan.samplers import cycle_edges
from cyclespan.switching import (
    ChordContext,
    conflicting_chords,
    eligible_chord_count,
    enumerate_eligible_chords,
    partner_chords,
    shortcut_cycle,
    switch_cycles,
)

ctx = ChordContext(n=12, ell=6, directed=False)
chords = enumerate_eligible_chords(ctx)
print("n=12, target length 6:", eligible_chord_count(ctx), "eligible chords")

e = chords[0]
partners = partner_chords(ctx, e)
print("chord", e, "has partners", partners)

# adding the chord and one partner to the host cycle creates a cycle of
# the target length and a complementary one of length n - ell + 4
f = partners[0]
short, long_cycle = switch_cycles(ctx, e, f)
host = build_graph(12, cycle_edges(12) + [e, f], multigraph=True)
print("switch with", f, "-> lengths", len(short), "and", len(long_cycle))
print("both validate in the host:",
      validate_cycle(host, short) and validate_cycle(host, long_cycle))

# the conflict degree counts other chords whose partner sets overlap;
# it governs how much independence survives a matching of chords
print("conflict degree of", e, "=", len(conflicting_chords(ctx, e)),
      "(at most 2*ell-8 =", 2 * ctx.ell - 8, "undirected)")

# the directed variant uses one partner to shortcut the cycle instead
dctx = ChordContext(n=12, ell=6, directed=True)
de = enumerate_eligible_chords(dctx)[0]
df = partner_chords(dctx, de)[0]
dcyc = shortcut_cycle(dctx, de, df)
dhost = build_graph(12, cycle_edges(12) + [de, df], directed=True, multigraph=True)
print("directed shortcut via", de, df, "-> length", len(dcyc),
      "valid =", validate_cycle(dhost, dcyc))
print("directed conflict degree =", len(conflicting_chords(dctx, de)),
      "(observed sharp bound 2*ell-4 =", 2 * dctx.ell - 4, ")")
