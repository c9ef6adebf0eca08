"""
Round-robin channels on a line
==============================

Nodes sit at 1, 2, ..., n and node i gets channel (i mod k) + 1.  With
uniform power and no noise, a link u -> v survives when the signal beats
beta times the interference from u's co-channel nodes.  The closed-form
count below is enough for every n; the search shows the true minimum.
"""

from sinrconn import (SinrParams, build_graph, grid_1d, min_k_regular,
                      regular_coloring_1d, sinr_edge, sufficient_k_1d)

params = SinrParams(alpha=2, beta=1)

# the smallest case: three nodes, two channels
nodes = grid_1d(3)
col = regular_coloring_1d(3, 2)
print("colors:", col.colors.tolist())
e = sinr_edge(nodes, col, 1, 2, params)
print(f"1 -> 2: signal {e.signal}, interference {e.interference}, edge {e.is_edge}")
print("edges:", build_graph(nodes, col, params).edges())

###############################################################################
# The guarantee versus reality

print("sufficient k:", sufficient_k_1d(params))
for n in (16, 64, 256, 1024):
    res = min_k_regular(grid_1d(n), params, "regular-1d", 6)
    print(f"n={n:5d}  k_min={res.k_min}")

# Stronger decoding thresholds need more channels, roughly like beta**(1/alpha).
for beta in (1, 4, 16, 64):
    p = SinrParams(2, beta)
    res = min_k_regular(grid_1d(256), p, "regular-1d", 20)
    print(f"beta={beta:3d}  k_min={res.k_min}  bound={sufficient_k_1d(p)}")
