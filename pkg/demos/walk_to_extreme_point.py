"""
Walking from the maximally mixed state to an extreme PPT state
==============================================================

Every step picks a random direction inside the current face, follows it
until the state or its partial transpose loses rank, and repeats until the
face is a single point.
"""

import numpy as np

from pptextreme import find_extreme, maximally_mixed, test_extremality

rho = maximally_mixed("3x3").rho
trace = find_extreme(rho, rng_seed=7)

# rank pairs (n, m) along the way, with the face dimension b_rank - 1
for state, rep in zip(trace.states, trace.reports):
    print(rep.rank_pair, "face dimension", rep.b_rank - 1)

final = trace.final_report
print("terminal ranks", final.rank_pair, "spectral gap", final.spectrum_gap)

# the terminal state is PPT, has unit trace and passes the test on its own
end = trace.terminal
print("min eigenvalues", np.linalg.eigvalsh(end.mat)[0], np.linalg.eigvalsh(end.pt())[0])
print("extreme:", test_extremality(end).is_extreme)
