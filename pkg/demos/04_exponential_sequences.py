"""
Exponential sequences defeat any coloring
=========================================

If nodes sit at roughly a + 2/n, a + 4/n, a + 8/n, ... then each node is
twice as far from the anchor as the previous one.  With fewer than
gamma * h channels some link along that run is always drowned out,
whatever the coloring.  Here a sequence is planted and every coloring of a
small instance is tried.
"""

import numpy as np

from sinrconn import (NodeSet, SinrParams, detect_exponential_sequence, gamma_threshold,
                      min_colors_exhaustive)

n = 16
pts = [0.125, 0.25, 0.5] + list(np.linspace(0.6, 1.0, 13))
nodes = NodeSet(pts)
w = detect_exponential_sequence(nodes, epsilon=0.25, h_min=3)
print("witness:", w)

params = SinrParams(2, 1)
print("gamma(eps=0.1):", round(gamma_threshold(params, 0.1), 4))

###############################################################################
# The exhaustive oracle on a tiny doubling instance: no coloring with fewer
# colors than it reports connects the nodes.

tiny = NodeSet([0.0, 0.02, 0.06, 0.14, 0.3, 0.62])
res = min_colors_exhaustive(tiny, params, 6)
print("exhaustive k_min:", res.k_min, "witness coloring:", res.coloring.colors.tolist())
