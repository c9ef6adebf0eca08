"""SINR edge test, graph construction and strong connectivity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import Coloring, NodeSet, SinrGraph, SinrParams, ValidationError, _check_index

#: relative slack on the threshold: ``signal >= beta * (1 - TIE_TOL) * interference``
TIE_TOL = 1e-9

# pairs whose vectorized ratio lands this close to the threshold are
# re-evaluated with the exact ascending-order sum
_RECHECK = 1e-6

# max float64 elements per block in build_graph
_BLOCK = 1 << 21


def _is_integral(alpha: float) -> bool:
    return float(alpha).is_integer()


def _repeat_mul(x, m: int):
    out = x
    for _ in range(m - 1):
        out = out * x
    return out


def path_loss_sq(d2, alpha: float):
    """``d ** alpha`` from the squared distance ``d2``.

    Integer exponents use repeated multiplication (of ``d2`` when alpha is
    even, so lattice distances stay exact); other exponents go through
    ``exp(alpha / 2 * log d2)``.
    """
    if _is_integral(alpha):
        m = int(alpha)
        if m % 2 == 0:
            return _repeat_mul(d2, m // 2)
        return _repeat_mul(np.sqrt(d2), m)
    with np.errstate(divide="ignore"):
        return np.exp(0.5 * alpha * np.log(d2))


def _gain_sq(d2, alpha: float):
    if alpha == 2 and isinstance(d2, np.ndarray):
        with np.errstate(divide="ignore"):
            return np.reciprocal(d2, out=d2)
    with np.errstate(divide="ignore"):
        return 1.0 / path_loss_sq(d2, alpha)


def _sq_dist(a, b) -> np.float64:
    diff = a - b
    return np.float64(np.dot(diff, diff))


@dataclass(frozen=True)
class EdgeEvaluation:
    sender: int
    receiver: int
    signal: float
    interference: float
    ratio: float
    is_edge: bool
    tie: bool = False  # ratio within TIE_TOL of beta


def _passes(signal: float, interference: float, beta: float) -> bool:
    return interference == 0 or signal >= beta * (1 - TIE_TOL) * interference


def interference_at(nodes: NodeSet, coloring: Coloring, sender: int, receiver: int,
                    params: SinrParams) -> float:
    """Sum of ``d(w, receiver) ** -alpha`` over co-colored ``w != sender``.

    If the receiver shares the sender's color its own term has distance 0 and
    the result is ``inf``.  Terms are added in ascending node order.
    """
    s = _check_index(nodes, sender)
    r = _check_index(nodes, receiver)
    if s == r:
        raise ValidationError("sender and receiver must differ")
    _check_coloring(nodes, coloring)
    c = coloring.colors[s]
    pts = nodes.positions
    total = 0.0
    for w in np.flatnonzero(coloring.colors == c):
        if w == s:
            continue
        if w == r:
            return math.inf
        total += float(_gain_sq(_sq_dist(pts[w], pts[r]), params.alpha))
    return total


def sinr_edge(nodes: NodeSet, coloring: Coloring, sender: int, receiver: int,
              params: SinrParams) -> EdgeEvaluation:
    """Evaluate the reception condition for the ordered pair ``sender -> receiver``."""
    interference = interference_at(nodes, coloring, sender, receiver, params)
    signal = float(_gain_sq(_sq_dist(nodes.positions[sender - 1], nodes.positions[receiver - 1]),
                            params.alpha))
    if interference == 0:
        ratio = math.inf
    else:
        ratio = signal / interference
    tie = math.isfinite(ratio) and abs(ratio - params.beta) <= TIE_TOL * params.beta
    return EdgeEvaluation(sender, receiver, signal, interference, ratio,
                          _passes(signal, interference, params.beta), tie)


def _check_coloring(nodes: NodeSet, coloring: Coloring) -> None:
    if len(coloring) != len(nodes):
        raise ValidationError(f"coloring covers {len(coloring)} nodes, node set has {len(nodes)}")


def _pairwise_sq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.subtract.outer(a[:, 0], b[:, 0])
    out *= out
    for j in range(1, a.shape[1]):
        dj = np.subtract.outer(a[:, j], b[:, j])
        dj *= dj
        out += dj
    return out


def build_graph(nodes: NodeSet, coloring: Coloring, params: SinrParams) -> SinrGraph:
    """Build the SINR graph: ``u -> v`` iff ``v`` decodes ``u`` against its color class.

    Each color class is handled as a block: the total received power from
    the class at every receiver is summed once and the sender's own term is
    subtracted.  Pairs whose ratio falls near the threshold are recomputed
    with :func:`interference_at` so the outcome matches the direct sum.
    """
    _check_coloring(nodes, coloring)
    n = len(nodes)
    pts = nodes.positions
    alpha, beta = params.alpha, params.beta
    adj = np.zeros((n, n), dtype=bool)

    thr = beta * (1 - TIE_TOL)
    lo, hi = beta * (1 - _RECHECK), beta * (1 + _RECHECK)
    for members in coloring.classes().values():
        if len(members) == 1:
            adj[members[0], :] = True
            adj[members[0], members[0]] = False
            continue
        # received power from every class member at every node
        gain = _gain_sq(_pairwise_sq(pts[members], pts), alpha)
        total = gain.sum(axis=0)  # inf at receivers inside the class
        rows = max(1, _BLOCK // n)
        for start in range(0, len(members), rows):
            g = gain[start:start + rows]
            sub = members[start:start + rows]
            # ratio: inf when nothing else transmits, 0 for receivers in the
            # class, nan on the sender's own column
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.subtract(total, g)
                np.divide(g, ratio, out=ratio)
            ok = ratio >= thr
            near = np.nonzero((ratio >= lo) & (ratio <= hi))
            for i, v in zip(*near):
                ok[i, v] = sinr_edge(nodes, coloring, int(sub[i]) + 1, int(v) + 1, params).is_edge
            ok[np.arange(len(sub)), sub] = False
            adj[sub] = ok
    return SinrGraph(adj)


def is_strongly_connected(graph: SinrGraph) -> bool:
    """True iff every node reaches every other node along directed edges."""
    if graph.n <= 1:
        return True
    adj = csr_matrix(graph.adjacency)
    count, _ = connected_components(adj, directed=True, connection="strong")
    return count == 1


def strong_components(graph: SinrGraph) -> list[list[int]]:
    """Strongly connected components as sorted lists of 1-based node indices."""
    count, labels = connected_components(csr_matrix(graph.adjacency), directed=True,
                                         connection="strong")
    comps = [sorted(int(i) + 1 for i in np.flatnonzero(labels == c)) for c in range(count)]
    return sorted(comps)


def is_connected(nodes: NodeSet, coloring: Coloring, params: SinrParams) -> bool:
    return is_strongly_connected(build_graph(nodes, coloring, params))
