"""
Random nodes on the unit interval
=================================

Uniform random placements have clusters and holes.  A dense cluster next to
an empty stretch cuts the network under a regular coloring, so the channel
count has to grow with n.  This script estimates the k needed for 95%
connectivity and shows a gap witness.
"""

from sinrconn import (RandomSpec, SinrParams, detect_gap_condition, is_connected,
                      regular_coloring_1d, sample_uniform_1d)

params = SinrParams(2, 1)


def success(n, k, trials=40, seed=1):
    ok = sum(is_connected(sample_uniform_1d(RandomSpec(n, seed, t)),
                          regular_coloring_1d(n, k), params) for t in range(trials))
    return ok / trials


for n in (64, 256, 1024):
    row = {k: success(n, k) for k in (2, 4, 8, 16, 24)}
    print(f"n={n:5d}  " + "  ".join(f"k={k}:{f:.2f}" for k, f in row.items()))

###############################################################################
# A witness: [x, x+l] holds at least (4/beta) k nodes, (x+l, x+2l) is empty
# and [x+2l, x+3l] is occupied.  Whenever one exists the graph is cut.

n, k = 1000, 2
for trial in range(20):
    nodes = sample_uniform_1d(RandomSpec(n, 3, trial))
    w = detect_gap_condition(nodes, k, params.beta, min_ell=4 * k / n)
    if w is not None:
        print(f"trial {trial}: x={w.x:.4f} l={w.ell:.4f} counts={w.counts} "
              f"connected={is_connected(nodes, regular_coloring_1d(n, k), params)}")
        break
