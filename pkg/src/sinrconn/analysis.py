"""Color-count searches, closed-form sufficient k, interference profiles and
disconnection witnesses."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from .core import Coloring, NodeSet, SinrParams, ValidationError
from .generators import enumerate_colorings, regular_coloring_1d, regular_coloring_2d
from .sinr import _gain_sq, build_graph, is_strongly_connected

FAMILIES = ("regular-1d", "regular-2d", "exhaustive")


# -- closed forms -------------------------------------------------------------

def zeta_partial(alpha: float, terms: int | None = None) -> float:
    """Upper bound on ``sum_{j>=1} j**-alpha`` (alpha > 1).

    Sums ``terms`` terms exactly and bounds the rest by
    ``integral_{T+1/2}^inf x**-alpha dx``, which dominates the tail because
    ``x**-alpha`` is convex.  With ``terms=None`` the cut-off is chosen so the
    overshoot, at most ``alpha * T**-(alpha+1) / 24``, stays below 1e-10.
    """
    if not alpha > 1:
        raise ValidationError("the series diverges for alpha <= 1")
    if terms is None:
        terms = max(16, math.ceil((alpha / 24 * 1e10) ** (1 / (alpha + 1))))
    if terms < 1:
        raise ValidationError("terms must be >= 1")
    j = np.arange(terms, 0, -1, dtype=float)  # small terms first
    head = float(np.sum(np.exp(-alpha * np.log(j))))
    tail = (terms + 0.5) ** (1 - alpha) / (alpha - 1)
    return head + tail


def sufficient_k_1d(params: SinrParams) -> int:
    """Round-robin color count that guarantees a connected 1D grid:
    ``ceil(1 + (2 beta g(alpha)) ** (1/alpha))``."""
    a = params.alpha
    if not a > 1:
        raise ValidationError("needs alpha > 1")
    return math.ceil(1 + (2 * params.beta * zeta_partial(a)) ** (1 / a))


def sufficient_k_2d_bound(params: SinrParams) -> float:
    """The lattice spacing that must be strictly exceeded on a 2D grid (alpha > 2)."""
    a = params.alpha
    if not a > 2:
        raise ValidationError("needs alpha > 2")
    return (3 * 2 ** (a - 1) * params.beta * (a - 1) / (a - 2)) ** (1 / a)


def sufficient_k_2d(params: SinrParams) -> int:
    """Smallest integer spacing k above :func:`sufficient_k_2d_bound`; uses k**2 colors."""
    return math.floor(sufficient_k_2d_bound(params)) + 1


def coarse_colors_2d(params: SinrParams) -> float:
    """The looser color count ``(6 2**alpha beta (alpha-1)/(alpha-2)) ** (2/alpha)``.

    Reported for comparison only; it need not be a perfect square.
    """
    a = params.alpha
    if not a > 2:
        raise ValidationError("needs alpha > 2")
    return (6 * 2 ** a * params.beta * (a - 1) / (a - 2)) ** (2 / a)


def gamma_threshold(params: SinrParams, epsilon: float, variant: str = "proof") -> float:
    """Fraction gamma such that fewer than ``gamma * h`` colors disconnect an
    exponential sequence of length h.

    ``variant="proof"`` uses ``(1 + (1+eps)/(1-3eps)) ** alpha`` (the default,
    and the smaller of the two); ``"statement"`` uses ``(1-eps)`` on top.
    """
    if not 0 < epsilon < 1 / 3:
        raise ValidationError("epsilon must lie in (0, 1/3)")
    if variant == "proof":
        top = 1 + epsilon
    elif variant == "statement":
        top = 1 - epsilon
    else:
        raise ValueError(f"unknown variant {variant!r}")
    b = params.beta
    return b / (b + (1 + top / (1 - 3 * epsilon)) ** params.alpha)


# -- color searches -----------------------------------------------------------

@dataclass
class MinColorResult:
    family: str
    feasibility: dict[int, bool]
    k_min: int | None
    k_max: int
    coloring: Coloring | None = field(default=None, repr=False)  # a connected coloring at k_min

    @property
    def found(self) -> bool:
        return self.k_min is not None

    @property
    def colors(self) -> int | None:
        """Number of colors at ``k_min`` (``k_min**2`` for the 2D family)."""
        if self.k_min is None:
            return None
        return self.k_min ** 2 if self.family == "regular-2d" else self.k_min

    def to_dict(self) -> dict:
        d = {"family": self.family, "k_min": self.k_min, "k_max": self.k_max,
             "feasibility": {str(k): v for k, v in self.feasibility.items()}}
        if self.coloring is not None:
            d["coloring"] = self.coloring.to_dict()
        return d


def _regular(nodes: NodeSet, family: str, k: int) -> Coloring:
    if family == "regular-1d":
        return regular_coloring_1d(len(nodes), k)
    return regular_coloring_2d(nodes.grid_side, k)


def min_k_regular(nodes: NodeSet, params: SinrParams, family: str, k_max: int) -> MinColorResult:
    """Check every k in 1..k_max for the regular family and report the smallest feasible.

    The whole feasibility vector is kept: connectivity need not be monotone in k.
    """
    if family == "regular-1d":
        if nodes.dimension != 1:
            raise ValidationError("regular-1d needs a 1D node set")
        limit = len(nodes)
    elif family == "regular-2d":
        if nodes.grid_side is None:
            raise ValidationError("regular-2d needs a node set built by grid_2d")
        limit = nodes.grid_side
    else:
        raise ValidationError(f"unknown family {family!r}")
    if not 1 <= k_max <= limit:
        raise ValidationError(f"k_max must lie in 1..{limit}")
    feas = {k: is_strongly_connected(build_graph(nodes, _regular(nodes, family, k), params))
            for k in range(1, k_max + 1)}
    k_min = next((k for k, ok in feas.items() if ok), None)
    col = _regular(nodes, family, k_min) if k_min else None
    return MinColorResult(family, feas, k_min, k_max, col)


def min_colors_exhaustive(nodes: NodeSet, params: SinrParams, k_max: int) -> MinColorResult:
    """Smallest k for which *some* coloring with at most k colors is connected."""
    n = len(nodes)
    if k_max < 1:
        raise ValidationError("k_max must be >= 1")
    if n == 1:
        return MinColorResult("exhaustive", {1: True}, 1, 1, Coloring(1, [1]))
    k_max = min(k_max, n)
    feas: dict[int, bool] = {}
    witness = None
    for k in range(1, k_max + 1):
        if witness is None:
            # colorings with fewer colors were already tried at smaller k
            witness = next((col for col in enumerate_colorings(n, k) if col.used_colors() == k
                            and is_strongly_connected(build_graph(nodes, col, params))), None)
        feas[k] = witness is not None
    k_min = next((k for k, ok in feas.items() if ok), None)
    return MinColorResult("exhaustive", feas, k_min, k_max, witness)


# -- interference -------------------------------------------------------------

@dataclass
class InterferenceProfile:
    """Received power at one node, split by color class.

    ``totals[c]`` sums over every class-``c`` node except the receiver;
    ``worst[c]`` is the interference seen when the farthest class member is
    the intended sender (the largest over senders in that class).
    Receivers inside class ``c`` see infinite interference from any other
    class member; those entries are ``inf`` in ``worst``.
    """

    receiver: int
    totals: dict[int, float]
    worst: dict[int, float]
    terms: dict[int, np.ndarray] = field(repr=False)

    def for_sender(self, sender: int, coloring: Coloring) -> float:
        """Interference at the receiver when ``sender`` transmits to it."""
        c = coloring.color_of(sender)
        members = [int(i) + 1 for i in np.flatnonzero(coloring.colors == c)]
        if self.receiver in members and sender != self.receiver:
            return math.inf
        vals = self.terms[c]
        return float(sum(v for m, v in zip(members, vals) if m != sender and m != self.receiver))


def interference_profile(nodes: NodeSet, coloring: Coloring, params: SinrParams,
                         receiver: int) -> InterferenceProfile:
    if not 1 <= receiver <= len(nodes):
        raise IndexError(f"receiver {receiver} out of range")
    r = nodes.positions[receiver - 1]
    totals, worst, terms = {}, {}, {}
    for c, members in coloring.classes().items():
        diff = nodes.positions[members] - r
        g = _gain_sq((diff * diff).sum(axis=1), params.alpha)
        terms[c] = g
        finite = g[members != receiver - 1]
        totals[c] = float(finite.sum())
        if (members == receiver - 1).any():
            worst[c] = math.inf if len(members) > 1 else 0.0
        elif len(finite):
            worst[c] = float(finite.sum() - finite.min())
        else:
            worst[c] = 0.0
    return InterferenceProfile(receiver, totals, worst, terms)


def grid_interference_envelope(side: int, k: int, alpha: float) -> tuple[float, float]:
    """Ring-counting bounds on the interference at (0, 1) from the class of (0, 0).

    Ring ``i`` holds at most ``2i + 1`` class members, each at distance
    between ``k*i - 1`` and ``sqrt(2)*k*i`` from (0, 1).  The lower bound uses
    only rings that fit completely inside the grid.
    """
    if k < 2:
        raise ValidationError("needs k >= 2")
    full = (side - 1) // k
    i = np.arange(1, side + 1, dtype=float)
    upper = float(np.sum((2 * i + 1) / (k * i - 1) ** alpha))
    j = i[:full]
    lower = float(np.sum((2 * j + 1) / (math.sqrt(2) * k * j) ** alpha))
    return lower, upper


# -- witnesses ----------------------------------------------------------------

@dataclass(frozen=True)
class GapWitness:
    x: float
    ell: float
    counts: tuple[int, int, int]

    def to_dict(self) -> dict:
        return asdict(self)


def _gap_counts(pts: np.ndarray, x, ell):
    a = np.searchsorted(pts, x, side="left")
    b = np.searchsorted(pts, x + ell, side="right")
    c = np.searchsorted(pts, x + 2 * ell, side="left")
    d = np.searchsorted(pts, x + 3 * ell, side="right")
    return b - a, c - b, d - c


def gap_counts(nodes: NodeSet, x: float, ell: float) -> tuple[int, int, int]:
    """Node counts in ``[x, x+l]``, ``(x+l, x+2l)`` and ``[x+2l, x+3l]``."""
    first, mid, last = _gap_counts(nodes.coords, x, ell)
    return int(first), int(mid), int(last)


def detect_gap_condition(nodes: NodeSet, k: int, beta: float, *, min_ell: float = 0.0,
                         ells=None) -> GapWitness | None:
    """Look for a dense / empty / occupied triple of adjacent intervals.

    Conditions: at least ``(4/beta) k`` nodes in ``[x, x+l]``, none in
    ``(x+l, x+2l)``, at least one in ``[x+2l, x+3l]``, with ``0 < l < 1/3``
    and ``x`` in ``[0, 1-3l]``.  Lengths tried: a geometric grid from 1/n to
    1/3 (ratio 1.1), the canonical ``(4/beta)(k/n)`` and every inter-node
    gap, unless ``ells`` is given.  Anchors: each node, each node shifted
    left by l or 2l, and 0.  Among valid witnesses the one with the most
    nodes in the dense interval is returned (ties: larger l, then smaller x).
    """
    pts = nodes.coords
    n = len(pts)
    need = 4.0 / beta * k
    candidates = []  # (ell, anchors)
    if ells is None:
        ell = 1.0 / n
        while ell < 1 / 3:
            candidates.append((ell, None))
            ell *= 1.1
        candidates.append((need / n, None))
        # each gap as the empty middle interval, anchored one length to its left
        gaps = np.diff(pts)
        for g, left in zip(gaps, pts[:-1]):
            candidates.append((float(g), np.array([left - g])))
    else:
        candidates = [(float(e), None) for e in np.atleast_1d(ells)]

    best = None
    for ell, xs in candidates:
        if not (0 < ell < 1 / 3 and ell >= min_ell):
            continue
        if xs is None:
            xs = np.concatenate([pts, pts - ell, pts - 2 * ell, [0.0]])
        xs = np.unique(np.clip(xs, 0.0, 1.0 - 3 * ell))
        first, mid, last = _gap_counts(pts, xs, ell)
        ok = (first >= need) & (mid == 0) & (last >= 1)
        if not ok.any():
            continue
        idx = np.flatnonzero(ok)
        j = idx[np.argmax(first[idx])]  # argmax keeps the smallest x on ties
        cand = (int(first[j]), ell, -float(xs[j]))
        if best is None or cand > best:
            best = cand
    if best is None:
        return None
    x, ell = -best[2], best[1]
    return GapWitness(x, ell, gap_counts(nodes, x, ell))


@dataclass(frozen=True)
class ExpSeqWitness:
    a: float
    b: float
    indices: tuple[int, ...]
    epsilon: float
    h: int

    def to_dict(self) -> dict:
        return asdict(self)


def exp_sequence_ok(nodes: NodeSet, a: float, indices, epsilon: float) -> bool:
    """Check the band condition, exclusivity of ``[a, q_h]`` and ``n >= 2**h``."""
    pts = nodes.coords
    n = len(pts)
    h = len(indices)
    if h == 0 or n < 2 ** h or a < 0:
        return False
    idx = np.asarray(indices) - 1
    if np.any(np.diff(idx) != 1):
        return False
    off = pts[idx] - a
    scale = 2.0 ** np.arange(1, h + 1) / n
    if np.any(off < (1 - epsilon) * scale) or np.any(off > (1 + epsilon) * scale):
        return False
    inside = np.flatnonzero((pts >= a) & (pts <= pts[idx[-1]]))
    return np.array_equal(inside, idx)


def detect_exponential_sequence(nodes: NodeSet, epsilon: float, h_min: int = 2) -> ExpSeqWitness | None:
    """Longest run of consecutive nodes forming an exponential sequence.

    For a run starting at node j the admissible anchors ``a`` form an interval:
    the intersection of ``[q_i - (1+eps) 2**i/n, q_i - (1-eps) 2**i/n]`` over the
    run, restricted to ``a >= 0`` and ``a > p_{j-1}`` so that no other node
    falls in ``[a, q_h]``.  The run is extended while that interval stays
    nonempty, so every anchor is considered, not just a candidate set.
    """
    if not 0 < epsilon < 1 / 3:
        raise ValidationError("epsilon must lie in (0, 1/3)")
    if h_min < 2:
        raise ValidationError("h_min must be >= 2")
    pts = nodes.coords
    n = len(pts)
    h_cap = int(math.floor(math.log2(n))) if n > 0 else 0
    if h_cap < h_min:
        return None

    best = None
    for j in range(n):
        lo = 0.0 if j == 0 else float(np.nextafter(pts[j - 1], np.inf))
        hi = float(pts[j])
        h = 0
        while h < h_cap and j + h < n:
            s = 2.0 ** (h + 1) / n
            q = pts[j + h]
            new_lo = max(lo, q - (1 + epsilon) * s)
            new_hi = min(hi, q - (1 - epsilon) * s)
            if new_lo > new_hi:
                break
            lo, hi = new_lo, new_hi
            h += 1
        while h >= h_min:
            if best is not None and h <= best.h:
                break
            w = _anchor_witness(nodes, j, h, lo, hi, epsilon)
            if w is not None:
                best = w
                break
            h -= 1  # float rounding at the band edge; try a shorter run
            lo, hi = _anchor_interval(pts, j, h, epsilon)
    return best


def _anchor_interval(pts, j, h, epsilon):
    n = len(pts)
    lo = 0.0 if j == 0 else float(np.nextafter(pts[j - 1], np.inf))
    hi = float(pts[j])
    for i in range(1, h + 1):
        s = 2.0 ** i / n
        lo = max(lo, pts[j + i - 1] - (1 + epsilon) * s)
        hi = min(hi, pts[j + i - 1] - (1 - epsilon) * s)
    return lo, hi


def _anchor_witness(nodes, j, h, lo, hi, epsilon):
    if lo > hi:
        return None
    pts = nodes.coords
    n = len(pts)
    centers = pts[j:j + h] - 2.0 ** np.arange(1, h + 1) / n
    indices = tuple(range(j + 1, j + h + 1))
    for a in (float(np.clip(np.median(centers), lo, hi)), 0.5 * (lo + hi), lo, hi):
        if exp_sequence_ok(nodes, a, indices, epsilon):
            return ExpSeqWitness(a, float(pts[j + h - 1]), indices, epsilon, h)
    return None


# -- scaling fits -------------------------------------------------------------

@dataclass
class ScalingFit:
    """Two fits of color count against n.

    ``power_*``: ``log k = log c + b log n``; ``log_*``: ``k = c0 + c ln n``.
    Both residual vectors are in units of k so their norms are comparable.
    """

    power_exponent: float
    power_exponent_stderr: float
    power_prefactor: float
    log_coefficient: float
    log_coefficient_stderr: float
    log_intercept: float
    power_residuals: np.ndarray
    log_residuals: np.ndarray

    @property
    def power_residual_norm(self) -> float:
        return float(np.linalg.norm(self.power_residuals))

    @property
    def log_residual_norm(self) -> float:
        return float(np.linalg.norm(self.log_residuals))

    @property
    def prefers_log(self) -> bool:
        return self.log_residual_norm < self.power_residual_norm

    def to_dict(self) -> dict:
        d = asdict(self)
        d["power_residuals"] = self.power_residuals.tolist()
        d["log_residuals"] = self.log_residuals.tolist()
        return d


def fit_scaling(points) -> ScalingFit:
    """Least-squares power-law and logarithmic fits to ``(n, k)`` pairs."""
    data = np.asarray(points, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValidationError("points must be (n, k) pairs")
    n, k = data[:, 0], data[:, 1]
    if len(np.unique(n)) < 3:
        raise ValidationError("need at least 3 distinct n values")
    if np.any(n <= 0) or np.any(k <= 0):
        raise ValidationError("n and k must be positive")
    ln = np.log(n)
    pw = stats.linregress(ln, np.log(k))
    lg = stats.linregress(ln, k)
    pref = math.exp(pw.intercept)
    return ScalingFit(
        power_exponent=float(pw.slope),
        power_exponent_stderr=float(pw.stderr),
        power_prefactor=pref,
        log_coefficient=float(lg.slope),
        log_coefficient_stderr=float(lg.stderr),
        log_intercept=float(lg.intercept),
        power_residuals=k - pref * n ** pw.slope,
        log_residuals=k - (lg.intercept + lg.slope * ln),
    )
