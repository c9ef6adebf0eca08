"""Experiment runner and tidy CSV / JSON emitter."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Iterator

from . import __version__
from .analysis import (
    detect_exponential_sequence,
    detect_gap_condition,
    fit_scaling,
    min_colors_exhaustive,
    min_k_regular,
)
from .core import SinrParams, ValidationError
from .generators import (
    MAX_ENUM_N,
    RNG_ID,
    RandomSpec,
    grid_1d,
    grid_2d,
    regular_coloring_1d,
    regular_coloring_2d,
    sample_uniform_1d,
)
from .sinr import build_graph, is_strongly_connected

log = logging.getLogger(__name__)

COMMANDS = ("grid1d", "grid2d", "random1d", "witness", "oracle", "scaling")
FORMATS = ("csv", "json")
COLUMNS = ("command", "n", "k", "colors", "trial", "connected", "edges",
           "success_fraction", "k_min", "seed")

#: fraction of connected trials at which a k counts as sufficient for random1d
TARGET_FRACTION = 0.95


class UsageError(ValueError):
    """The experiment spec is invalid."""


@dataclass
class ExperimentSpec:
    command: str
    sizes: list[int]
    alpha: float = 2.0
    beta: float = 1.0
    k: int | None = None
    k_max: int | None = None
    trials: int = 1
    seed: int = 0
    dim: int = 1
    epsilon: float = 0.1
    h_min: int = 3
    format: str = "csv"
    out: str | None = None
    workers: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.sizes:
            raise UsageError("at least one --n is required")
        if any(n < 1 for n in self.sizes):
            raise UsageError("sizes must be positive")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if self.k is not None and self.k < 1 or self.k_max is not None and self.k_max < 1:
            raise UsageError("--k and --kmax must be >= 1")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        if self.dim not in (1, 2):
            raise UsageError("--dim must be 1 or 2")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        try:
            SinrParams(self.alpha, self.beta)
        except ValidationError as exc:
            raise UsageError(str(exc)) from None
        grid2 = self.command == "grid2d" or (self.command == "scaling" and self.dim == 2)
        if grid2:
            bad = [n for n in self.sizes if math.isqrt(n) ** 2 != n]
            if bad:
                raise UsageError(f"grid2d sizes must be perfect squares, got {bad}")
        if self.command in ("grid1d", "grid2d", "random1d", "scaling") and self.k is None and self.k_max is None:
            raise UsageError(f"{self.command} needs --k or --kmax")
        if self.command == "witness":
            if self.k is None and self.k_max is None:
                raise UsageError("witness needs --k or --kmax")
            if not 0 < self.epsilon < 1 / 3:
                raise UsageError("--epsilon must lie in (0, 1/3)")
            if self.h_min < 2:
                raise UsageError("--hmin must be >= 2")
        if self.command == "oracle" and max(self.sizes) > MAX_ENUM_N:
            raise UsageError(f"oracle supports n <= {MAX_ENUM_N}")

    @property
    def params(self) -> SinrParams:
        return SinrParams(self.alpha, self.beta)

    def ks(self, limit: int) -> list[int]:
        if self.k is not None:
            return [self.k] if self.k <= limit else []
        return list(range(1, min(self.k_max, limit) + 1))


@dataclass
class ExperimentRecord:
    command: str
    n: int
    k: int | None
    colors: int | None
    trial: int
    connected: bool
    edges: int
    success_fraction: float | None
    k_min: int | None
    seed: int
    witness: dict | None = field(default=None, compare=False)

    def row(self) -> dict:
        return {c: getattr(self, c) for c in COLUMNS}


def metadata(spec: ExperimentSpec) -> dict:
    return {"tool": "sinrconn", "version": __version__, "rng": RNG_ID,
            "timestamp": datetime.now(timezone.utc).isoformat(), "spec": asdict(spec)}


# -- runners ------------------------------------------------------------------

def _grid_rows(spec: ExperimentSpec, n: int, dim: int) -> list[ExperimentRecord]:
    params = spec.params
    if dim == 1:
        nodes, ks = grid_1d(n), spec.ks(n)
    else:
        nodes = grid_2d(n)
        ks = spec.ks(nodes.grid_side)
    out = []
    for k in ks:
        col = regular_coloring_1d(n, k) if dim == 1 else regular_coloring_2d(nodes.grid_side, k)
        g = build_graph(nodes, col, params)
        ok = is_strongly_connected(g)
        out.append(ExperimentRecord(spec.command, n, k, col.k, 0, ok, g.edge_count,
                                    1.0 if ok else 0.0, None, spec.seed))
    k_min = next((r.k for r in out if r.connected), None)
    for r in out:
        r.k_min = k_min
    return out


def _random_trial(args) -> tuple[bool, int, dict | None]:
    spec, n, k, trial = args
    nodes = sample_uniform_1d(RandomSpec(n, spec.seed, trial))
    g = build_graph(nodes, regular_coloring_1d(n, k), spec.params)
    witness = None
    if spec.command == "witness":
        gap = detect_gap_condition(nodes, k, spec.beta, min_ell=4 / spec.beta * k / n)
        seq = (detect_exponential_sequence(nodes, spec.epsilon, spec.h_min)
               if n >= 2 ** spec.h_min else None)
        witness = {"gap": gap.to_dict() if gap else None,
                   "exp_sequence": seq.to_dict() if seq else None}
    return is_strongly_connected(g), g.edge_count, witness


def _random_rows(spec: ExperimentSpec, n: int, pool) -> list[ExperimentRecord]:
    rows = []
    k_min = None
    for k in spec.ks(n):
        jobs = [(spec, n, k, t) for t in range(spec.trials)]
        results = list(pool.map(_random_trial, jobs)) if pool else [_random_trial(j) for j in jobs]
        frac = sum(ok for ok, _, _ in results) / spec.trials
        if k_min is None and frac >= TARGET_FRACTION:
            k_min = k
        for t, (ok, edges, wit) in enumerate(results):
            rows.append(ExperimentRecord(spec.command, n, k, k, t, ok, edges, frac, None,
                                         spec.seed, wit))
            if wit is not None:
                log.info("n=%d k=%d trial=%d connected=%s witness=%s", n, k, t, ok,
                         json.dumps(wit, sort_keys=True))
    for r in rows:
        r.k_min = k_min
    return rows


def _oracle_rows(spec: ExperimentSpec, n: int) -> list[ExperimentRecord]:
    params = spec.params
    k_max = min(spec.k_max or spec.k or n, n)
    found = []
    results = []
    for t in range(spec.trials):
        nodes = sample_uniform_1d(RandomSpec(n, spec.seed, t))
        res = min_colors_exhaustive(nodes, params, k_max)
        edges = 0
        if res.coloring is not None:
            edges = build_graph(nodes, res.coloring, params).edge_count
        found.append(res.found)
        results.append((t, res, edges))
    frac = sum(found) / len(found)
    return [ExperimentRecord(spec.command, n, k_max, k_max, t, res.found, edges, frac, res.k_min,
                             spec.seed) for t, res, edges in results]


def _scaling_rows(spec: ExperimentSpec, n: int) -> ExperimentRecord:
    params = spec.params
    if spec.dim == 1:
        nodes, family, limit = grid_1d(n), "regular-1d", n
    else:
        nodes = grid_2d(n)
        family, limit = "regular-2d", nodes.grid_side
    k_max = min(spec.k_max or spec.k, limit)
    res = min_k_regular(nodes, params, family, k_max)
    edges = 0
    if res.k_min is not None:
        col = (regular_coloring_1d(n, res.k_min) if spec.dim == 1
               else regular_coloring_2d(limit, res.k_min))
        edges = build_graph(nodes, col, params).edge_count
    return ExperimentRecord(spec.command, n, res.k_min, res.colors, 0, res.found, edges,
                            1.0 if res.found else 0.0, res.k_min, spec.seed)


def run(spec: ExperimentSpec) -> Iterator[ExperimentRecord]:
    """Execute ``spec`` and yield records ordered by (n, k, trial).

    Records for one size are yielded as soon as that size is done.
    """
    spec.validate()
    pool = ProcessPoolExecutor(spec.workers) if spec.workers > 1 else None
    try:
        scaling = []
        for n in sorted(spec.sizes):
            if spec.command in ("grid1d", "grid2d"):
                yield from _grid_rows(spec, n, 1 if spec.command == "grid1d" else 2)
            elif spec.command in ("random1d", "witness"):
                yield from _random_rows(spec, n, pool)
            elif spec.command == "oracle":
                yield from _oracle_rows(spec, n)
            else:
                rec = _scaling_rows(spec, n)
                scaling.append(rec)
                yield rec
        pts = [(r.n, r.colors) for r in scaling if r.colors]
        if len({n for n, _ in pts}) >= 3:
            fit = fit_scaling(pts)
            log.info("scaling fit: %s", json.dumps(fit.to_dict(), sort_keys=True))
    finally:
        if pool is not None:
            pool.shutdown()


# -- emit ---------------------------------------------------------------------

def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def iter_emit(records: Iterable[ExperimentRecord], fmt: str = "csv") -> Iterator[bytes]:
    """Serialize records chunk by chunk (UTF-8, LF line endings)."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        yield buf.getvalue().encode()
        for r in records:
            buf.seek(0)
            buf.truncate()
            writer.writerow([_csv_value(v) for v in r.row().values()])
            yield buf.getvalue().encode()
    elif fmt == "json":
        first = True
        for r in records:
            yield ("[\n" if first else ",\n").encode() + json.dumps(r.row()).encode()
            first = False
        yield b"[]\n" if first else b"\n]\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")


def emit(records: Iterable[ExperimentRecord], fmt: str = "csv") -> bytes:
    return b"".join(iter_emit(records, fmt))


def _from_csv(value: str, column: str):
    if value == "":
        return None
    if column == "connected":
        return value == "true"
    if column == "command":
        return value
    if column == "success_fraction":
        return float(value)
    return int(value)


def parse(data: bytes, fmt: str = "csv") -> list[ExperimentRecord]:
    """Inverse of :func:`emit`."""
    text = data.decode()
    if fmt == "json":
        rows = json.loads(text)
    else:
        reader = csv.DictReader(io.StringIO(text))
        rows = [{c: _from_csv(row[c], c) for c in COLUMNS} for row in reader]
    return [ExperimentRecord(**row) for row in rows]
