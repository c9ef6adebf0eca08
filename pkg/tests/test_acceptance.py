"""End-to-end acceptance experiments.

Each test carries an ``acceptance`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from _oracles import exact_edges
from sinrconn import (
    Coloring,
    NodeSet,
    RandomSpec,
    SinrParams,
    build_graph,
    detect_exponential_sequence,
    detect_gap_condition,
    fit_scaling,
    gamma_threshold,
    grid_1d,
    grid_2d,
    interference_profile,
    is_connected,
    min_colors_exhaustive,
    min_k_regular,
    regular_coloring_1d,
    regular_coloring_2d,
    sample_uniform_1d,
    sufficient_k_1d,
    sufficient_k_2d,
)

SIZES_2D = (64, 256, 1024, 4096)


def acceptance(num, title):
    return pytest.mark.acceptance(num, title)


@acceptance(1, "graph construction matches exact rational evaluation")
def test_01_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    pairs = 0
    for _ in range(200):
        n = int(rng.integers(2, 9))
        alpha = int(rng.choice([2, 3]))
        beta = float(rng.choice([1, 1.5, 2, 5]))
        pts = np.unique(np.round(rng.random(n), 6))
        k = int(rng.integers(1, len(pts) + 1))
        colors = rng.integers(1, k + 1, len(pts))
        g = build_graph(NodeSet(pts), Coloring(k, colors), SinrParams(alpha, beta))
        assert set(g.edges()) == exact_edges([(x,) for x in pts], colors, alpha, beta)
        pairs += len(pts) * (len(pts) - 1)
    assert pairs > 0
    assert time.perf_counter() - start < 10


@acceptance(2, "1D grid, alpha=2: constant minimum k, within the sufficient k")
def test_02_grid_1d_constant():
    start = time.perf_counter()
    params = SinrParams(2, 1)
    bound = sufficient_k_1d(params)
    assert bound == 3
    ks = {n: min_k_regular(grid_1d(n), params, "regular-1d", 6).k_min
          for n in (16, 64, 256, 1024)}
    assert len(set(ks.values())) == 1, ks
    assert ks[16] is not None and ks[16] <= bound
    assert time.perf_counter() - start < 60


@acceptance(3, "2D grid, alpha=4: constant minimum k, within the sufficient k")
def test_03_grid_2d_constant():
    start = time.perf_counter()
    params = SinrParams(4, 1)
    bound = sufficient_k_2d(params)
    assert bound == 3
    ks = {n: min_k_regular(grid_2d(n), params, "regular-2d", 5).k_min for n in (64, 256, 1024)}
    assert len(set(ks.values())) == 1, ks
    assert ks[64] is not None and ks[64] <= bound
    assert time.perf_counter() - start < 300


def _min_colors_2d(alpha):
    params = SinrParams(alpha, 1)
    out = []
    for n in SIZES_2D:
        res = min_k_regular(grid_2d(n), params, "regular-2d", min(10, math.isqrt(n)))
        assert res.found, n
        out.append((n, res.colors))
    return out


@acceptance(4, "2D grid, alpha=2: growing color count, logarithmic fit, log n / k^2 profile")
def test_04_grid_2d_alpha2_profile():
    params = SinrParams(2, 1)
    for k in (2, 3, 4):
        scaled = []
        for n in SIZES_2D:
            side = math.isqrt(n)
            nodes = grid_2d(n)
            col = regular_coloring_2d(side, k)
            prof = interference_profile(nodes, col, params, nodes.index_of((0, 1)))
            scaled.append(prof.for_sender(nodes.index_of((0, 0)), col) * k * k / math.log(n))
        mean = np.mean(scaled)
        assert np.max(np.abs(np.array(scaled) / mean - 1)) < 0.30, (k, scaled)


@acceptance(4, "2D grid, alpha=2: growing color count, logarithmic fit, log n / k^2 profile")
def test_04_grid_2d_alpha2_log_fit():
    counts = _min_colors_2d(2)
    assert len({c for _, c in counts}) > 1, counts
    fit = fit_scaling(counts)
    assert fit.prefers_log, (counts, fit.log_residual_norm, fit.power_residual_norm)


@acceptance(5, "2D grid, alpha=1.5: power-law exponent near 1/3")
def test_05_grid_2d_alpha_15_exponent():
    start = time.perf_counter()
    fit = fit_scaling(_min_colors_2d(1.5))
    assert abs(fit.power_exponent - 1 / 3) <= 0.15, fit.power_exponent
    assert time.perf_counter() - start < 900


@acceptance(6, "gap witness implies disconnection (alpha=2, regular colorings)")
def test_06_gap_soundness():
    fired = 0
    for trial in range(1000):
        rng = np.random.default_rng(trial)
        n = int(rng.choice([50, 100, 200, 400]))
        k = int(rng.integers(1, 5))
        beta = float(rng.choice([1, 2, 4]))
        nodes = sample_uniform_1d(RandomSpec(n, seed=606, trial=trial))
        w = detect_gap_condition(nodes, k, beta, min_ell=4 / beta * k / n)
        if w is None:
            continue
        fired += 1
        assert w.ell >= 4 / beta * k / n
        assert not is_connected(nodes, regular_coloring_1d(n, k), SinrParams(2, beta)), (n, k, beta, w)
    assert fired >= 100, fired


def _exp_instance(rng, n, eps):
    """Random points, or a planted noisy doubling run with nothing else inside it."""
    if rng.random() < 0.5:
        return NodeSet(np.unique(rng.random(n)))
    h = int(rng.integers(3, int(math.log2(n)) - 1))
    a = rng.uniform(0, 0.3)
    run = a + 2.0 ** np.arange(1, h + 1) / n * (1 + rng.uniform(-eps, eps, h) * 0.9)
    rest = rng.random(4 * n)
    rest = rest[(rest < a - 1e-9) | (rest > run[-1] + 1e-9)][: n - h]
    return NodeSet(np.unique(np.r_[run, rest]))


@acceptance(7, "exponential sequence with k < gamma h colors implies disconnection")
def test_07_exp_sequence_soundness():
    tested = 0
    for trial in range(1000):
        rng = np.random.default_rng(7000 + trial)
        alpha = float(rng.choice([1, 1.5, 2, 3]))
        beta = float(rng.choice([1, 4, 10, 30]))
        eps = float(rng.choice([0.05, 0.1, 0.2, 0.3]))
        n = int(rng.choice([64, 128, 256]))
        nodes = _exp_instance(rng, n, eps)
        w = detect_exponential_sequence(nodes, eps, h_min=2)
        if w is None:
            continue
        params = SinrParams(alpha, beta)
        k_limit = math.ceil(gamma_threshold(params, eps) * w.h) - 1  # largest k < gamma h
        if k_limit < 1:
            continue
        k = int(rng.integers(1, k_limit + 1))
        if rng.random() < 0.5:
            colors = rng.integers(1, k + 1, len(nodes))
        else:
            # spread the witness over as many colors as allowed
            colors = rng.integers(1, k + 1, len(nodes))
            idx = np.asarray(w.indices) - 1
            colors[idx] = np.arange(len(idx)) % k + 1
        tested += 1
        assert not is_connected(nodes, Coloring(k, colors), params), (alpha, beta, eps, w, k)
    assert tested >= 100, tested


def _k_emp(n, trials=100, target=95, seed=2024):
    params = SinrParams(2, 1)
    k = 1
    while True:
        fails = 0
        for t in range(trials):
            nodes = sample_uniform_1d(RandomSpec(n, seed=seed, trial=t))
            if not is_connected(nodes, regular_coloring_1d(n, k), params):
                fails += 1
                if fails > trials - target:
                    break
        if fails <= trials - target:
            return k
        k += 1


@acceptance(8, "random 1D: k needed grows at most logarithmically; fewer colors disconnect more")
def test_08_random_bracket():
    start = time.perf_counter()
    small, large = _k_emp(64), _k_emp(4096)
    assert large / small <= 3, (small, large)

    params = SinrParams(2, 1)
    fails = {2: 0, 8: 0}
    for t in range(100):
        nodes = sample_uniform_1d(RandomSpec(1024, seed=88, trial=t))
        for k in fails:
            fails[k] += not is_connected(nodes, regular_coloring_1d(1024, k), params)
    assert fails[2] >= fails[8], fails
    assert time.perf_counter() - start < 1200


@acceptance(9, "exhaustive minimum never exceeds the regular minimum")
def test_09_exhaustive_dominance():
    start = time.perf_counter()
    rng = np.random.default_rng(909)
    for _ in range(100):
        n = int(rng.integers(2, 8))
        params = SinrParams(float(rng.choice([1.5, 2, 3])), float(rng.choice([1, 2, 4])))
        nodes = NodeSet(np.unique(rng.random(n)))
        n = len(nodes)
        ex = min_colors_exhaustive(nodes, params, n)
        reg = min_k_regular(nodes, params, "regular-1d", n)
        assert ex.found and reg.found  # k = n always connects
        assert ex.k_min <= reg.k_min
    for trial in range(20):
        pair = sample_uniform_1d(RandomSpec(2, seed=9, trial=trial))
        assert min_colors_exhaustive(pair, SinrParams(2, 1), 2).k_min == 2
    assert time.perf_counter() - start < 300


REPLAY = [
    ["grid1d", "--n", "16", "--n", "256", "--kmax", "6"],
    ["grid2d", "--n", "64", "--n", "256", "--alpha", "4", "--kmax", "4", "--format", "json"],
    ["random1d", "--n", "64", "--n", "128", "--kmax", "6", "--trials", "10", "--seed", "42",
     "--workers", "2"],
    ["witness", "--n", "500", "--k", "2", "--trials", "8", "--seed", "5"],
    ["oracle", "--n", "6", "--kmax", "4", "--trials", "4", "--seed", "3", "--format", "json"],
    ["scaling", "--n", "64", "--n", "256", "--n", "1024", "--dim", "2", "--kmax", "6"],
]


@acceptance(10, "CLI replay is byte-identical")
@pytest.mark.parametrize("argv", REPLAY, ids=[a[0] for a in REPLAY])
def test_10_replay(argv):
    cmd = [sys.executable, "-m", "sinrconn.cli", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first and first == second
