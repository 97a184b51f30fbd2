"""
Typical ranks of extreme PPT states
===================================

Histogram of terminal rank pairs from random searches started at 1/N, for
the smaller dimension pairs.  Pass ``--runs`` to change the sample size.
"""

import argparse

from pptextreme import rank_survey

parser = argparse.ArgumentParser()
parser.add_argument("--runs", type=int, default=20)
args = parser.parse_args()

for dims in ["2x4", "3x3", "2x5", "2x6", "3x4", "3x5", "4x4"]:
    hist = rank_survey(dims, args.runs, rng_seed=0)
    print(dims, dict(sorted(hist.items())))
