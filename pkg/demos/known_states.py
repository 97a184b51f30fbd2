"""
Two bound entangled states from the literature
==============================================

The state built from the Tiles unextendible product basis is an extreme
point.  The Horodecki 3x3 state is not; it lies inside a face, and a line
through it within that face ends at two extreme points.
"""

import numpy as np

from pptextreme import convex_split, horodecki_state, test_extremality, upb_tiles_state

tiles = upb_tiles_state().rho
rep = test_extremality(tiles)
print("Tiles:", rep.rank_pair, "b_rank", rep.b_rank, "gap", round(rep.spectrum_gap, 4))

h = horodecki_state(0.42).rho
rep = test_extremality(h)
print("Horodecki a=0.42:", rep.rank_pair, "face dimension", rep.b_rank - 1)

a, b, w = convex_split(h, rng_seed=0)
print("ends", test_extremality(a).rank_pair, test_extremality(b).rank_pair, "weight", round(w, 4))
print("recombination error", np.linalg.norm(w * a.mat + (1 - w) * b.mat - h.mat))
