import itertools
import math

import numpy as np
import pytest
from scipy import stats

from sinrconn import (
    RandomSpec,
    ValidationError,
    enumerate_colorings,
    grid_1d,
    grid_2d,
    regular_coloring_1d,
    regular_coloring_2d,
    sample_uniform_1d,
)


def test_grid_1d():
    assert grid_1d(3).coords.tolist() == [1, 2, 3]
    assert grid_1d(1).coords.tolist() == [1]
    assert grid_1d(4).coords.tolist() == [1, 2, 3, 4]
    with pytest.raises(ValidationError):
        grid_1d(0)


def test_grid_2d():
    assert sorted(map(tuple, grid_2d(4).positions.tolist())) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    g = grid_2d(9)
    assert g.grid_side == 3
    assert g.positions.min() == 0 and g.positions.max() == 2
    assert g.index_of((0, 0)) == 1
    with pytest.raises(ValidationError):
        grid_2d(5)


def test_uniform_sampling_is_reproducible():
    a = sample_uniform_1d(RandomSpec(5, seed=99, trial=3))
    b = sample_uniform_1d(RandomSpec(5, seed=99, trial=3))
    assert a == b
    c = sample_uniform_1d(RandomSpec(5, seed=99, trial=4))
    assert a != c


def test_uniform_sampling_contract():
    nodes = sample_uniform_1d(RandomSpec(10_000, seed=1))
    x = nodes.coords
    assert np.all(np.diff(x) > 0)
    assert x.min() >= 0 and x.max() <= 1
    assert 0.45 <= x.mean() <= 0.55


def test_uniform_sampling_ks():
    x = sample_uniform_1d(RandomSpec(10_000, seed=2024)).coords
    stat = stats.kstest(x, "uniform").statistic
    # asymptotic 1% critical value
    assert stat < 1.628 / math.sqrt(len(x))


def test_regular_coloring_1d_examples():
    assert regular_coloring_1d(5, 2).colors.tolist() == [2, 1, 2, 1, 2]
    assert regular_coloring_1d(3, 1).colors.tolist() == [1, 1, 1]
    assert regular_coloring_1d(4, 4).colors.tolist() == [2, 3, 4, 1]
    with pytest.raises(ValidationError):
        regular_coloring_1d(3, 0)


@pytest.mark.parametrize("n,k", [(10, 3), (17, 4), (9, 9), (20, 1)])
def test_regular_coloring_1d_is_periodic(n, k):
    c = regular_coloring_1d(n, k).colors
    for i in range(n - k):
        assert c[i] == c[i + k]


def test_regular_coloring_2d_examples():
    c = regular_coloring_2d(4, 2)
    assert c.k == 4 and c.used_colors() == 4
    g = grid_2d(16)
    assert c.color_of(g.index_of((0, 0))) == c.color_of(g.index_of((2, 0)))
    assert set(regular_coloring_2d(3, 1).colors.tolist()) == {1}
    with pytest.raises(ValidationError):
        regular_coloring_2d(3, 4)


@pytest.mark.parametrize("side", range(1, 9))
def test_regular_coloring_2d_min_same_color_distance(side):
    nodes = grid_2d(side * side)
    for k in range(1, side + 1):
        colors = regular_coloring_2d(side, k).colors
        best = math.inf
        for i, j in itertools.combinations(range(side * side), 2):
            if colors[i] == colors[j]:
                best = min(best, float(np.hypot(*(nodes.positions[i] - nodes.positions[j]))))
        if side > k:
            assert best == k
        else:
            assert best == math.inf  # every class is a single node


def _canonical(colors):
    relabel = {}
    return tuple(relabel.setdefault(c, len(relabel) + 1) for c in colors)


def test_enumerate_examples():
    assert [c.colors.tolist() for c in enumerate_colorings(2, 2)] == [[1, 1], [1, 2]]
    assert [c.colors.tolist() for c in enumerate_colorings(3, 1)] == [[1, 1, 1]]
    got = [c.colors.tolist() for c in enumerate_colorings(3, 3)]
    assert got == [[1, 1, 1], [1, 1, 2], [1, 2, 1], [1, 2, 2], [1, 2, 3]]


@pytest.mark.parametrize("n", range(1, 6))
def test_enumerate_covers_all_assignments(n):
    for k in range(1, n + 1):
        listed = [tuple(c.colors.tolist()) for c in enumerate_colorings(n, k)]
        assert len(set(map(_canonical, listed))) == len(listed)
        raw = {_canonical(a) for a in itertools.product(range(1, k + 1), repeat=n)}
        assert raw == set(listed)


def test_enumerate_limits():
    with pytest.raises(ValidationError):
        next(enumerate_colorings(11, 2))
    with pytest.raises(ValidationError):
        next(enumerate_colorings(3, 4))
