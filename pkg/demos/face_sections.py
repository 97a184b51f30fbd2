"""
Planar sections through a face and through the state space
==========================================================

First a section of the three dimensional face met near the end of a 3x3
search: its boundary consists of extreme points of two rank types.  Then a
plane through the Horodecki state and one of the extreme points it splits
into.  Both are written as CSV for plotting elsewhere.
"""

from collections import Counter

from pptextreme import convex_split, find_extreme, horodecki_state, maximally_mixed
from pptextreme.sections import locate_joins, sample_section, samples_to_csv, section_through, trace_face_section

# first seed whose search ends with the step (7,6) -> (7,5)
for seed in range(200):
    trace = find_extreme(maximally_mixed("3x3").rho, seed)
    if trace.rank_pairs[-2:] == [(7, 6), (7, 5)]:
        break
print("trace seed", seed, trace.rank_pairs)

sec = trace_face_section(trace, rng_seed=0, grid=(41, 41), num_rays=180)
print("boundary rank pairs", dict(sec.boundary_pairs()))
print("joins", [j.rank_pair for j in locate_joins(sec)])
with open("face_section.csv", "w") as fh:
    samples_to_csv(sec.samples, fh)

h = horodecki_state(0.42).rho
a, _, _ = convex_split(h, rng_seed=0)
samples = sample_section(section_through(h, a, grid=(81, 81), rng=0))
print("regions", Counter(s.region.value for s in samples))
with open("horodecki_section.csv", "w") as fh:
    samples_to_csv(samples, fh)
