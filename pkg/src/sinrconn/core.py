"""Domain types shared by the rest of the package.

Node indices are 1-based everywhere in the public API (node ``i`` sits at
``nodes.positions[i - 1]``); colors are integers in ``1..k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

REGULAR_1D = "regular-1d"
REGULAR_2D = "regular-2d"
EXPLICIT = "explicit"
COLORING_KINDS = (REGULAR_1D, REGULAR_2D, EXPLICIT)


class ValidationError(ValueError):
    """Raised when a node set, coloring or parameter set is malformed."""


@dataclass(frozen=True)
class Violation:
    kind: str  # "duplicate" | "unsorted" | "shape" | "nonfinite"
    indices: tuple[int, ...]
    message: str


def validate(positions, dimension: int | None = None) -> list[Violation]:
    """Check raw positions and return the list of violations (empty if ok).

    ``positions`` is anything ``np.asarray`` accepts: a flat sequence for 1D,
    or an ``(n, d)`` array.  1D input must be strictly ascending.
    """
    pts = np.asarray(positions, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if dimension is None:
        dimension = pts.shape[1] if pts.ndim == 2 else 0
    if pts.ndim != 2 or pts.shape[1] != dimension or dimension not in (1, 2):
        return [Violation("shape", (), f"expected an (n, {dimension}) array of 1D or 2D points")]

    report: list[Violation] = []
    if not np.all(np.isfinite(pts)):
        bad = tuple(int(i) + 1 for i in np.flatnonzero(~np.isfinite(pts).all(axis=1)))
        report.append(Violation("nonfinite", bad, "positions must be finite"))
        return report

    _, first, counts = np.unique(pts, axis=0, return_index=True, return_counts=True)
    for idx, c in zip(first, counts):
        if c > 1:
            dup = np.flatnonzero((pts == pts[idx]).all(axis=1))
            report.append(Violation("duplicate", tuple(int(i) + 1 for i in dup),
                                    f"position {pts[idx].tolist()} occurs {c} times"))
    if dimension == 1 and len(pts) > 1:
        down = np.flatnonzero(np.diff(pts[:, 0]) < 0)
        if len(down):
            report.append(Violation("unsorted", tuple(int(i) + 1 for i in down),
                                    "1D positions must be in ascending order"))
    return report


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Pairwise distinct points in 1D or 2D.

    ``positions`` is stored as a read-only ``(n, dimension)`` float array.
    ``grid_side`` is set for 2D lattices built by :func:`sinrconn.grid_2d`
    and records the lattice side length (nodes are ordered ``x``-major).
    """

    positions: np.ndarray
    dimension: int = 1
    grid_side: int | None = None

    def __post_init__(self):
        pts = np.array(self.positions, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        problems = validate(pts, self.dimension)
        if problems:
            raise ValidationError("; ".join(p.message for p in problems))
        if len(pts) == 0:
            raise ValidationError("a node set needs at least one node")
        pts.setflags(write=False)
        object.__setattr__(self, "positions", pts)

    @classmethod
    def from_points(cls, points, dimension: int | None = None) -> "NodeSet":
        pts = np.asarray(points, dtype=float)
        if dimension is None:
            dimension = 1 if pts.ndim == 1 else pts.shape[1]
        return cls(pts, dimension)

    def __len__(self) -> int:
        return self.positions.shape[0]

    @property
    def n(self) -> int:
        return len(self)

    @property
    def coords(self) -> np.ndarray:
        """1D coordinates as a flat array (1D node sets only)."""
        if self.dimension != 1:
            raise ValidationError("coords is only defined for 1D node sets")
        return self.positions[:, 0]

    def index_of(self, point) -> int:
        """1-based index of the node located exactly at ``point``."""
        target = np.atleast_1d(np.asarray(point, dtype=float))
        hit = np.flatnonzero((self.positions == target).all(axis=1))
        if not len(hit):
            raise KeyError(f"no node at {target.tolist()}")
        return int(hit[0]) + 1

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "positions": self.positions.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "NodeSet":
        return cls(np.asarray(data["positions"], dtype=float), int(data["dimension"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "NodeSet":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, NodeSet):
            return NotImplemented
        return self.dimension == other.dimension and np.array_equal(self.positions, other.positions)

    __hash__ = None


def _check_index(nodes: NodeSet, i: int) -> int:
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= len(nodes):
        raise IndexError(f"node index {i!r} out of range 1..{len(nodes)}")
    return int(i) - 1


def distance(nodes: NodeSet, u: int, v: int) -> float:
    """Euclidean distance between nodes ``u`` and ``v`` (1-based)."""
    a = nodes.positions[_check_index(nodes, u)]
    b = nodes.positions[_check_index(nodes, v)]
    return math.hypot(*(a - b))


def distance_matrix(nodes: NodeSet) -> np.ndarray:
    diff = nodes.positions[:, None, :] - nodes.positions[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


@dataclass(frozen=True)
class SinrParams:
    """Path-loss exponent and SINR threshold; noise 0 and power 1 are fixed."""

    alpha: float = 2.0
    beta: float = 1.0
    noise: float = field(default=0.0, init=False)
    power: float = field(default=1.0, init=False)

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 1):
            raise ValidationError(f"alpha must be >= 1, got {self.alpha}")
        if not (math.isfinite(self.beta) and self.beta >= 1):
            raise ValidationError(f"beta must be >= 1, got {self.beta}")


@dataclass(frozen=True, eq=False)
class Coloring:
    """Assignment of each node (by position in the node order) to a color in 1..k."""

    k: int
    colors: np.ndarray
    kind: str = EXPLICIT

    def __post_init__(self):
        cols = np.array(self.colors, dtype=np.int64).ravel()
        if int(self.k) < 1:
            raise ValidationError("k must be a positive integer")
        if len(cols) and (cols.min() < 1 or cols.max() > self.k):
            raise ValidationError(f"colors must lie in 1..{self.k}")
        if self.kind not in COLORING_KINDS:
            raise ValidationError(f"unknown coloring kind {self.kind!r}")
        cols.setflags(write=False)
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "colors", cols)

    def __len__(self) -> int:
        return len(self.colors)

    def color_of(self, i: int) -> int:
        """Color of node ``i`` (1-based)."""
        if not 1 <= i <= len(self.colors):
            raise IndexError(f"node index {i!r} out of range 1..{len(self.colors)}")
        return int(self.colors[i - 1])

    def classes(self) -> dict[int, np.ndarray]:
        """Map color -> 0-based node indices in ascending order (nonempty classes only)."""
        order = np.argsort(self.colors, kind="stable")
        cols = self.colors[order]
        cuts = np.flatnonzero(np.diff(cols)) + 1
        return {int(cols[g[0]]): order[g] for g in np.split(np.arange(len(cols)), cuts) if len(g)}

    def used_colors(self) -> int:
        return len(np.unique(self.colors))

    def to_dict(self) -> dict:
        return {"k": self.k, "colors": self.colors.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Coloring":
        return cls(int(data["k"]), np.asarray(data["colors"], dtype=np.int64))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Coloring":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.colors, other.colors)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SinrGraph:
    """Directed graph on nodes ``1..n`` stored as a dense boolean adjacency matrix.

    ``adjacency[u - 1, v - 1]`` is true iff there is an edge ``u -> v``.
    """

    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValidationError("adjacency must be a square matrix")
        if adj.diagonal().any():
            raise ValidationError("self-loops are not allowed")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, edges) -> "SinrGraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValidationError(f"edge ({u}, {v}) out of range 1..{n}")
            adj[u - 1, v - 1] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum())

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of 1-based ``(u, v)`` pairs."""
        us, vs = np.nonzero(self.adjacency)
        return [(int(u) + 1, int(v) + 1) for u, v in zip(us, vs)]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u - 1, v - 1])

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "SinrGraph":
        return cls.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SinrGraph":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, SinrGraph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    __hash__ = None
