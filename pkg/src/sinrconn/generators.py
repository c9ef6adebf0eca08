"""Instance families and colorings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import REGULAR_1D, REGULAR_2D, Coloring, NodeSet, ValidationError

RNG_ID = "numpy.random.PCG64+SeedSequence(seed, spawn_key=(n, trial))/v1"

MAX_ENUM_N = 10


@dataclass(frozen=True)
class RandomSpec:
    n: int
    seed: int = 0
    trial: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if self.trial < 0:
            raise ValidationError("trial must be >= 0")

    def rng(self) -> np.random.Generator:
        """Independent stream for this (seed, n, trial)."""
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.n, self.trial))
        return np.random.Generator(np.random.PCG64(ss))


def grid_1d(n: int) -> NodeSet:
    """Nodes at 1, 2, ..., n."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    return NodeSet(np.arange(1, n + 1, dtype=float), 1)


def grid_2d(n: int) -> NodeSet:
    """sqrt(n) x sqrt(n) unit lattice with corner (0, 0), ordered x-major.

    Node ``x * side + y + 1`` sits at ``(x, y)``.
    """
    side = math.isqrt(n) if n >= 0 else 0
    if n < 1 or side * side != n:
        raise ValidationError(f"n={n} is not a positive perfect square")
    xs, ys = np.divmod(np.arange(n), side)
    return NodeSet(np.column_stack([xs, ys]).astype(float), 2, grid_side=side)


def sample_uniform_1d(spec: RandomSpec) -> NodeSet:
    """``spec.n`` i.i.d. uniform points in [0, 1], sorted ascending."""
    pts = np.sort(spec.rng().random(spec.n))
    # ties have probability ~n^2 / 2^53; redraw deterministically if one shows up
    attempt = 0
    while len(pts) > 1 and np.any(np.diff(pts) == 0):
        attempt += 1
        pts = np.sort(RandomSpec(spec.n, spec.seed, spec.trial + attempt * 2**32).rng().random(spec.n))
    return NodeSet(pts, 1)


def regular_coloring_1d(n: int, k: int) -> Coloring:
    """Round-robin coloring ``c(p_i) = (i mod k) + 1`` for ``i = 1..n``."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    i = np.arange(1, n + 1)
    return Coloring(k, i % k + 1, REGULAR_1D)


def regular_coloring_2d(side: int, k: int) -> Coloring:
    """Sublattice coloring on a ``side x side`` grid with ``k**2`` colors.

    ``color(x, y) = (x mod k) * k + (y mod k) + 1``; nodes in :func:`grid_2d` order.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if k > side:
        raise ValidationError(f"k={k} exceeds the grid side {side}")
    xs, ys = np.divmod(np.arange(side * side), side)
    return Coloring(k * k, (xs % k) * k + (ys % k) + 1, REGULAR_2D)


def enumerate_colorings(n: int, k: int) -> Iterator[Coloring]:
    """All colorings of n nodes with at most k colors, one per relabeling class.

    Colors appear in first-occurrence order (restricted growth strings), so
    the count is the sum of Stirling numbers S(n, 1) + ... + S(n, k).
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise ValidationError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}")
    if not 1 <= k <= n:
        raise ValidationError("enumeration needs 1 <= k <= n")
    colors = [1] * n

    def rec(i: int, used: int):
        if i == n:
            yield Coloring(k, np.array(colors))
            return
        for c in range(1, min(used + 1, k) + 1):
            colors[i] = c
            yield from rec(i + 1, max(used, c))

    yield from rec(1, 1)
