"""Triangle census: class multiplicities, pair counts and the Cauchy-Schwarz bound."""

from __future__ import annotations

import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .exact import HypothesisReport, Point, integer_coords, validate_hypothesis
from .keys import INT_KERNELS, VECTOR_KERNELS, VECTOR_SIDE_LIMIT, KeyKind, format_key, key_from_int

log = logging.getLogger(__name__)

THREADS_ENV = "TRILIFT_THREADS"


class HypothesisViolation(RuntimeError):
    def __init__(self, report: HypothesisReport):
        super().__init__(report.describe())
        self.report = report


def default_workers() -> int:
    value = os.environ.get(THREADS_ENV)
    if value:
        return max(1, int(value))
    return 1


def enumerate_triangles(P: Sequence[Point], include_degenerate: bool = False) -> Iterator[tuple[int, int, int]]:
    """Index triples ``i < j < k`` in lexicographic order."""
    if len(P) < 3:
        raise ValueError("need at least 3 points")
    coords, _ = integer_coords(P)
    n = len(coords)
    for i in range(n):
        xi, yi = coords[i]
        for j in range(i + 1, n):
            ux, uy = coords[j][0] - xi, coords[j][1] - yi
            for k in range(j + 1, n):
                if include_degenerate or ux * (coords[k][1] - yi) != uy * (coords[k][0] - xi):
                    yield (i, j, k)


def _count_block_scalar(coords, rows: Sequence[int], kind: KeyKind, include_degenerate: bool) -> Counter:
    kernel = INT_KERNELS[kind]
    n = len(coords)
    xs = [c[0] for c in coords]
    ys = [c[1] for c in coords]
    counts: Counter = Counter()
    for i in rows:
        xi, yi = xs[i], ys[i]
        di = [(xs[k] - xi) ** 2 + (ys[k] - yi) ** 2 for k in range(n)]
        for j in range(i + 1, n):
            xj, yj = xs[j], ys[j]
            ux, uy = xj - xi, yj - yi
            ab = di[j]
            for k in range(j + 1, n):
                xk, yk = xs[k], ys[k]
                C = ux * (yk - yi) - uy * (xk - xi)
                if C == 0 and not include_degenerate:
                    continue
                counts[kernel(ab, (xk - xj) ** 2 + (yk - yj) ** 2, di[k], C)] += 1
    return counts


def _unique_rows(keys: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Merge equal rows of ``keys`` summing ``weights``; rows come out sorted."""
    if len(keys) == 0:
        return keys, weights
    order = np.lexsort(keys.T[::-1])
    keys = keys[order]
    weights = weights[order]
    start = np.ones(len(keys), dtype=bool)
    start[1:] = (keys[1:] != keys[:-1]).any(axis=1)
    idx = np.flatnonzero(start)
    return keys[idx], np.add.reduceat(weights, idx)


_FLUSH_ROWS = 1 << 21


def _count_block_vector(coords, rows: Sequence[int], kind: KeyKind, include_degenerate: bool):
    kernel = VECTOR_KERNELS[kind]
    xy = np.asarray(coords, dtype=np.int64)
    x, y = xy[:, 0], xy[:, 1]
    n = len(xy)
    dist = (x[:, None] - x[None, :]) ** 2 + (y[:, None] - y[None, :]) ** 2
    keys, weights = [], []
    acc_keys = np.zeros((0, 0), dtype=np.int64)
    acc_w = np.zeros(0, dtype=np.int64)
    pending = 0
    for i in rows:
        m = n - i - 1
        if m < 2:
            continue
        jj, kk = np.triu_indices(m, 1)
        jj += i + 1
        kk += i + 1
        C = (x[jj] - x[i]) * (y[kk] - y[i]) - (y[jj] - y[i]) * (x[kk] - x[i])
        if not include_degenerate:
            keep = C != 0
            jj, kk, C = jj[keep], kk[keep], C[keep]
        if len(C) == 0:
            continue
        keys.append(kernel(dist[i, jj], dist[jj, kk], dist[i, kk], C))
        weights.append(np.ones(len(C), dtype=np.int64))
        pending += len(C)
        if pending >= _FLUSH_ROWS:
            if acc_keys.size:
                keys.insert(0, acc_keys)
                weights.insert(0, acc_w)
            acc_keys, acc_w = _unique_rows(np.concatenate(keys), np.concatenate(weights))
            keys, weights, pending = [], [], 0
    if keys:
        if acc_keys.size:
            keys.insert(0, acc_keys)
            weights.insert(0, acc_w)
        acc_keys, acc_w = _unique_rows(np.concatenate(keys), np.concatenate(weights))
    return acc_keys, acc_w


def _vector_safe(coords) -> bool:
    if not coords:
        return True
    xs = [c[0] for c in coords]
    ys = [c[1] for c in coords]
    span = (max(xs) - min(xs)) ** 2 + (max(ys) - min(ys)) ** 2
    return span <= VECTOR_SIDE_LIMIT


def _blocks(n: int, workers: int) -> list[list[int]]:
    # round-robin over rows so each block gets a similar share of triples
    nblocks = max(1, min(n, workers * 4))
    return [list(range(b, max(n - 2, 0), nblocks)) for b in range(nblocks)]


def _count_block_star(args):
    vector = args[0]
    if vector:
        return _count_block_vector(*args[1:])
    return _count_block_scalar(*args[1:])


@dataclass(eq=False)
class ClassCensus:
    """Multiplicity of every triangle class of a point set.

    ``keys`` holds one row per class in ascending lexicographic order and
    ``counts`` the matching multiplicities. Keys come from the integer
    kernels applied to the set scaled by ``scale``; :meth:`public_key` turns
    one back into the key type of :mod:`trilift.keys`.
    """

    kind: KeyKind
    keys: np.ndarray
    counts: np.ndarray
    n_points: int = 0
    scale: int = 1
    include_degenerate: bool = False
    hypothesis: HypothesisReport | None = None

    @property
    def n_classes(self) -> int:
        return len(self.counts)

    @property
    def n_triangles(self) -> int:
        return int(sum(self.counts.tolist()))

    @cached_property
    def multiplicities(self) -> dict[tuple, int]:
        return dict(zip(map(tuple, self.keys.tolist()), self.counts.tolist()))

    def public_key(self, key):
        return key_from_int(self.kind, tuple(key), self.scale)

    def top(self, k: int = 10) -> list[tuple[tuple, int]]:
        """The ``k`` largest classes, ties broken by ascending key."""
        order = np.argsort(-self.counts, kind="stable")[:k]
        return [(tuple(self.keys[i].tolist()), int(self.counts[i])) for i in order]


def census(
    P: Sequence[Point],
    kind: KeyKind | str = KeyKind.CONGRUENCE_FULL,
    *,
    workers: int | None = None,
    include_degenerate: bool = False,
    strict: bool = False,
    vectorized: bool | None = None,
) -> ClassCensus:
    """Count triangles of ``P`` per class of the given kind.

    Work is split into row blocks and merged by addition, so the result does
    not depend on ``workers``. ``vectorized=None`` picks the numpy kernels
    whenever the coordinates are small enough for int64 arithmetic.
    """
    kind = KeyKind(kind)
    hyp = validate_hypothesis(P)
    if not hyp.ok:
        if strict:
            raise HypothesisViolation(hyp)
        log.warning("hypothesis not met, counts remain exact: %s", hyp.describe())
    coords, scale = integer_coords(P)
    safe = _vector_safe(coords)
    if vectorized is None:
        vectorized = safe
    elif vectorized and not safe:
        raise ValueError("coordinates too large for the vectorized kernels")
    workers = default_workers() if workers is None else max(1, workers)
    tasks = [(vectorized, coords, b, kind, include_degenerate) for b in _blocks(len(coords), workers) if b]
    if workers == 1 or len(tasks) == 1:
        parts = [_count_block_star(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_block_star, tasks))

    width = 4 if kind is not KeyKind.CONGRUENCE_FULL else 3
    if vectorized:
        parts = [p for p in parts if len(p[1])]
        if parts:
            keys, counts = _unique_rows(np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))
        else:
            keys, counts = np.zeros((0, width), dtype=np.int64), np.zeros(0, dtype=np.int64)
    else:
        total: Counter = Counter()
        for p in parts:
            total.update(p)
        items = sorted(total.items())
        keys = np.empty((len(items), width), dtype=object)
        for r, (k, _) in enumerate(items):
            keys[r] = k
        counts = np.array([m for _, m in items], dtype=np.int64)
    return ClassCensus(
        kind=kind,
        keys=keys,
        counts=counts,
        n_points=len(coords),
        scale=scale,
        include_degenerate=include_degenerate,
        hypothesis=hyp,
    )


@dataclass(frozen=True)
class PairCounts:
    Q: int
    sum_m_sq: int


def _multiplicities(c: ClassCensus | Mapping | Iterable[int]) -> list[int]:
    if isinstance(c, ClassCensus):
        return c.counts.tolist()
    if isinstance(c, Mapping):
        return list(c.values())
    return list(c)


def pair_counts(c: ClassCensus | Mapping | Iterable[int]) -> PairCounts:
    ms = _multiplicities(c)
    return PairCounts(Q=sum(m * (m - 1) // 2 for m in ms), sum_m_sq=sum(m * m for m in ms))


def class_lower_bound(c: ClassCensus | Mapping | Iterable[int]) -> Fraction:
    """``|T|^2 / sum m_c^2``, never more than the number of classes."""
    ms = _multiplicities(c)
    total = sum(ms)
    if total < 1:
        raise ValueError("class_lower_bound needs at least one triangle")
    return Fraction(total * total, sum(m * m for m in ms))


def census_report(c: ClassCensus, top: int = 10) -> dict:
    pc = pair_counts(c)
    bound = class_lower_bound(c) if c.n_triangles else Fraction(0)
    n = c.n_points
    report = {
        "n_points": n,
        "n_triangles": c.n_triangles,
        "key_kind": c.kind.value,
        "include_degenerate": c.include_degenerate,
        "n_classes": c.n_classes,
        "Q": pc.Q,
        "sum_m_sq": pc.sum_m_sq,
        "cs_lower_bound_num": bound.numerator,
        "cs_lower_bound_den": bound.denominator,
        "classes_over_n_sq": c.n_classes / (n * n) if n else 0.0,
        "classes_log_n_over_n_sq": c.n_classes * math.log(n) / (n * n) if n > 1 else 0.0,
        "top_multiplicities": [
            {"key": format_key(c.kind, c.public_key(k)), "m": m} for k, m in c.top(top)
        ],
    }
    if c.hypothesis is not None:
        report["max_collinear"] = c.hypothesis.max_collinear
        report["hypothesis_ok"] = c.hypothesis.ok
    return report


def triangle_keys(
    P: Sequence[Point], kind: KeyKind | str, include_degenerate: bool = False
) -> list[tuple[tuple[int, int, int], tuple]]:
    """Per-triangle census keys, in :func:`enumerate_triangles` order."""
    kernel = INT_KERNELS[KeyKind(kind)]
    coords, _ = integer_coords(P)
    out = []
    for i, j, k in enumerate_triangles(P, include_degenerate):
        (xa, ya), (xb, yb), (xc, yc) = coords[i], coords[j], coords[k]
        ab = (xa - xb) ** 2 + (ya - yb) ** 2
        bc = (xb - xc) ** 2 + (yb - yc) ** 2
        ca = (xc - xa) ** 2 + (yc - ya) ** 2
        C = (xb - xa) * (yc - ya) - (yb - ya) * (xc - xa)
        out.append(((i, j, k), kernel(ab, bc, ca, C)))
    return out
