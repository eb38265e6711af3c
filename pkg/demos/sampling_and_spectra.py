"""
Sampling sparse random graphs and reading off their cycle spectra
=================================================================

Draws one graph from each generator, then asks the spectrum layer
which cycle lengths are present, how many short cycles there are,
and how long the longest cycle is.
"""

from cyclespan.samplers import SeededStream, sample_binomial, sample_configuration_model, sample_regular_simple
from cyclespan.spectrum import circumference, count_short_cycles, cycle_length_set
from cyclespan.theory import lambda_k

# a cubic configuration-model multigraph on 200 vertices
g = sample_configuration_model(200, 3, SeededStream(7))
print("configuration model: n =", g.n, "simple =", g.is_simple())
print("  triangles and squares:", count_short_cycles(g, 4))
print("  expected in the limit: lambda_3 =", round(lambda_k(3, 2.0), 4),
      " lambda_4 =", round(lambda_k(4, 2.0), 4))

# rejection sampling conditions the same generator on simplicity
h = sample_regular_simple(60, 3, SeededStream(7))
spec = cycle_length_set(h)
print("simple 3-regular, n=60: every length 3..60 present =",
      spec.lengths_present == frozenset(range(3, 61)))

# the exact longest-cycle routine is a bitmask dynamic program, so it
# only accepts small graphs
small = sample_regular_simple(24, 3, SeededStream(7))
lmax, wit = circumference(small)
print("n=24 cubic: circumference =", lmax, " witness starts", wit[:6], "...")

# sparse binomial digraph; directed spectra may contain 2-cycles
d = sample_binomial(60, 2.0 / 60, SeededStream(8), directed=True)
dspec = cycle_length_set(d)
print("binomial digraph at c=2: lengths present =", sorted(dspec.lengths_present))
