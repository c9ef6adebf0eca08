"""
Square lattices: how the path-loss exponent changes the picture
===============================================================

On a side x side lattice the regular coloring uses k**2 channels and puts
same-channel nodes k apart.  For alpha > 2 the interference series
converges and a fixed k works at every size; at alpha = 2 it grows like
log(n) / k**2, and below 2 it grows polynomially.
"""

import math

from sinrconn import (SinrParams, fit_scaling, grid_2d, interference_profile,
                      min_k_regular, regular_coloring_2d, sufficient_k_2d)

SIZES = (64, 256, 1024, 4096)

for alpha in (4, 2, 1.5):
    params = SinrParams(alpha, 1)
    counts = []
    for n in SIZES:
        res = min_k_regular(grid_2d(n), params, "regular-2d", min(10, math.isqrt(n)))
        counts.append((n, res.colors))
    print(f"alpha={alpha}: colors {[c for _, c in counts]}")
    fit = fit_scaling(counts)
    print(f"   power exponent {fit.power_exponent:.3f}, "
          f"log residual {fit.log_residual_norm:.2f} vs power residual {fit.power_residual_norm:.2f}")

print("closed-form k for alpha=4:", sufficient_k_2d(SinrParams(4, 1)))

###############################################################################
# Interference at (0, 1) when (0, 0) transmits, alpha = 2.  Scaled by
# k**2 / ln n it should settle to a constant.

params = SinrParams(2, 1)
for k in (2, 3, 4):
    row = []
    for n in SIZES:
        nodes = grid_2d(n)
        col = regular_coloring_2d(math.isqrt(n), k)
        prof = interference_profile(nodes, col, params, nodes.index_of((0, 1)))
        row.append(prof.for_sender(nodes.index_of((0, 0)), col) * k * k / math.log(n))
    print(f"k={k}: " + "  ".join(f"{v:.3f}" for v in row))
