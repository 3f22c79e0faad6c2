"""Rich points of motion-line (R^3) and conformal-line (C^2) arrangements.

Multiplicities are exact: every pair of lines is intersected in rational
arithmetic and hits are grouped by the exact intersection point.
"""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import conformal, motion
from .conformal import ConformalLine
from .motion import MotionLine

MOTION = "R3"
CONFORMAL = "C2"

DEFAULT_MAX_POINTS = 60


class ArrangementInvariantError(RuntimeError):
    pass


@dataclass
class RichPointHistogram:
    """Exact multiplicity census of an arrangement.

    ``finite`` maps k to the number of finite points where exactly k lines
    meet; for conformal arrangements only points with ``a != 0`` count as
    finite. ``translations`` holds the parallel classes of motion lines that
    share a nonzero displacement, ``identity`` the size of the class of
    vertical lines ``L_pp`` and ``a_zero`` the conformal points with
    ``a = 0``. The last two are kept out of :func:`triple_count` by default.
    """

    space: str
    n_lines: int
    finite: dict[int, int] = field(default_factory=dict)
    translations: dict[int, int] = field(default_factory=dict)
    identity: int = 0
    a_zero: dict[int, int] = field(default_factory=dict)
    points: dict = field(default_factory=dict, repr=False)
    translation_classes: dict = field(default_factory=dict, repr=False)
    a_zero_points: dict = field(default_factory=dict, repr=False)
    finite_pairs: int = 0

    def combined(self) -> dict[int, int]:
        """Finite points together with translation classes."""
        out = dict(self.finite)
        for k, c in self.translations.items():
            out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    @property
    def max_multiplicity(self) -> int:
        return max(self.finite, default=0)


def _intersect_key(space: str, L1, L2):
    """Group key for the meeting of two lines, or None if they never meet."""
    if space == MOTION:
        hit = motion.intersect_motion_lines(L1, L2)
        if isinstance(hit, motion.FinitePoint):
            return ("finite", hit.point)
        if isinstance(hit, motion.ParallelWithSharedTranslation):
            return ("translation", hit.v)
        if isinstance(hit, motion.SharedIdentity):
            return ("identity", None)
        return None
    hit = conformal.intersect_c(L1, L2)
    if isinstance(hit, conformal.Similitude):
        return ("finite", (hit.a, hit.b))
    if isinstance(hit, conformal.DegenerateAtAZero):
        return ("a_zero", hit.b)
    return None


def _space_of(lines) -> str:
    if not lines:
        return MOTION
    if all(isinstance(L, MotionLine) for L in lines):
        return MOTION
    if all(isinstance(L, ConformalLine) for L in lines):
        return CONFORMAL
    raise TypeError("lines must be all MotionLine or all ConformalLine")


def _pair_hits(args):
    space, lines, rows = args
    groups: dict = {}
    n = len(lines)
    for i in rows:
        Li = lines[i]
        for j in range(i + 1, n):
            key = _intersect_key(space, Li, lines[j])
            if key is None:
                continue
            g = groups.get(key)
            if g is None:
                g = groups[key] = [set(), 0]
            g[0].add(i)
            g[0].add(j)
            g[1] += 1
    return groups


def rich_points(lines: Sequence, *, workers: int = 1) -> RichPointHistogram:
    lines = list(lines)
    space = _space_of(lines)
    if len({(L.source, L.target) for L in lines}) != len(lines):
        raise ValueError("lines must be pairwise distinct")
    n = len(lines)
    nblocks = max(1, min(n, workers * 4))
    tasks = [(space, lines, list(range(b, n, nblocks))) for b in range(nblocks)]
    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_pair_hits, tasks))
    else:
        parts = [_pair_hits(t) for t in tasks]
    groups: dict = {}
    for part in parts:
        for key, (members, pairs) in part.items():
            g = groups.get(key)
            if g is None:
                groups[key] = [set(members), pairs]
            else:
                g[0] |= members
                g[1] += pairs

    h = RichPointHistogram(space=space, n_lines=n)
    for (section, where), (members, pairs) in groups.items():
        k = len(members)
        if pairs != k * (k - 1) // 2:
            raise ArrangementInvariantError(
                f"{section} point {where}: {pairs} meeting pairs but {k} lines (expected {k * (k - 1) // 2})"
            )
        if section == "finite":
            h.finite[k] = h.finite.get(k, 0) + 1
            h.points[where] = k
            h.finite_pairs += pairs
        elif section == "translation":
            h.translations[k] = h.translations.get(k, 0) + 1
            h.translation_classes[where] = k
        elif section == "identity":
            h.identity = k
        else:
            h.a_zero[k] = h.a_zero.get(k, 0) + 1
            h.a_zero_points[where] = k
    h.finite = dict(sorted(h.finite.items()))
    h.translations = dict(sorted(h.translations.items()))
    h.a_zero = dict(sorted(h.a_zero.items()))
    h.points = dict(sorted(h.points.items()))
    h.translation_classes = dict(sorted(h.translation_classes.items()))
    h.a_zero_points = dict(sorted(h.a_zero_points.items()))
    return h


def _c3(k: int) -> int:
    return k * (k - 1) * (k - 2) // 6


def triple_count(h: RichPointHistogram | dict, include_identity: bool = False) -> int:
    """Number of concurrent triples of distinct lines.

    Counts finite points and translation classes; the identity class only on
    request. Points with ``a = 0`` are never counted.
    """
    if isinstance(h, dict):
        return sum(c * _c3(k) for k, c in h.items())
    total = sum(c * _c3(k) for k, c in h.combined().items())
    if include_identity:
        total += _c3(h.identity)
    return total


@dataclass(frozen=True)
class DyadicBuckets:
    threshold: int
    buckets: dict[int, int]  # j -> points with multiplicity in [2^j, 2^(j+1))
    majorant: int  # sum_j (2^(j+1))^3 * |S_(2^j)|
    triples: int  # concurrent triples at points with multiplicity >= threshold

    @property
    def dominates(self) -> bool:
        return self.majorant >= 6 * self.triples


def dyadic_buckets(h: RichPointHistogram | dict, k0: int = 3) -> DyadicBuckets:
    if k0 < 2:
        raise ValueError("threshold must be at least 2")
    hist = h if isinstance(h, dict) else h.combined()
    buckets: dict[int, int] = {}
    triples = 0
    for k, c in hist.items():
        if k < k0 or c == 0:
            continue
        j = k.bit_length() - 1
        buckets[j] = buckets.get(j, 0) + c
        triples += c * _c3(k)
    majorant = sum((2 ** (j + 1)) ** 3 * c for j, c in buckets.items())
    return DyadicBuckets(k0, dict(sorted(buckets.items())), majorant, triples)


GK = "GK"
ST = "ST"


@dataclass(frozen=True)
class EnvelopeRow:
    k: int
    count_exact: int
    count_at_least: int
    dyadic_bucket: int
    envelope_ratio: Fraction


def bound_diagnostics(h: RichPointHistogram, N: int, regime: str = GK, k_max: int | None = None) -> list[EnvelopeRow]:
    """Points of multiplicity >= k against ``N^3/k^2`` (GK) or ``N^4/k^3`` (ST).

    Uses the finite section only; the envelopes count points of the space.
    Ratios are descriptive, the constants in the bounds are unknown.
    """
    if regime not in (GK, ST):
        raise ValueError(f"unknown regime {regime!r}")
    hist = h.finite
    top = k_max if k_max is not None else max(hist, default=2)
    rows = []
    for k in range(2, top + 1):
        at_least = sum(c for m, c in hist.items() if m >= k)
        envelope = Fraction(N**3, k**2) if regime == GK else Fraction(N**4, k**3)
        rows.append(EnvelopeRow(k, hist.get(k, 0), at_least, k.bit_length() - 1, at_least / envelope))
    return rows


def diagnostics_csv(rows: Sequence[EnvelopeRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "count_exact", "count_at_least", "dyadic_bucket", "envelope_ratio"])
    for r in rows:
        w.writerow([r.k, r.count_exact, r.count_at_least, r.dyadic_bucket, repr(float(r.envelope_ratio))])
    return buf.getvalue()


@dataclass(frozen=True)
class AuditResult:
    ok: bool
    limit: int
    max_multiplicity: int
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def concurrency_audit(lines_or_hist, N: int) -> AuditResult:
    """No finite (non-excluded) point or translation class has more than N lines."""
    h = lines_or_hist if isinstance(lines_or_hist, RichPointHistogram) else rich_points(lines_or_hist)
    worst, witness = 0, None
    for where, k in list(h.points.items()) + list(h.translation_classes.items()):
        if k > worst:
            worst, witness = k, where
    return AuditResult(worst <= N, N, worst, witness if worst > N else None)


def a_zero_audit(h: RichPointHistogram, targets: Sequence, N: int) -> AuditResult:
    """Every ``(0, q)`` with q a target point carries exactly N lines."""
    targets = [conformal.as_complex(q) for q in targets]
    bad = [q for q in targets if h.a_zero_points.get(q, 0) != N]
    extra = [b for b in h.a_zero_points if b not in set(targets)]
    worst = max(h.a_zero_points.values(), default=0)
    witness = (bad or extra or [None])[0]
    return AuditResult(not bad and not extra, N, worst, witness)


COPLANARITY_MAX_LINES = 144


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _plane_key(normal, point):
    lead = next(c for c in normal if c != 0)
    n = tuple(c / lead for c in normal)
    return n, sum(a * b for a, b in zip(n, point))


def coplanarity_audit(lines: Sequence[MotionLine], N: int) -> AuditResult:
    """Largest number of motion lines lying in one plane, brute force.

    Two distinct lines in a plane meet or are parallel, so grouping coplanar
    pairs by their plane recovers every plane holding two or more lines.
    """
    lines = list(lines)
    if len(lines) > COPLANARITY_MAX_LINES:
        raise ValueError(f"coplanarity audit is limited to {COPLANARITY_MAX_LINES} lines")
    planes: dict = defaultdict(set)
    for i, L1 in enumerate(lines):
        for j in range(i + 1, len(lines)):
            L2 = lines[j]
            hit = motion.intersect_motion_lines(L1, L2)
            if isinstance(hit, motion.FinitePoint):
                normal = _cross3(L1.direction, L2.direction)
            elif isinstance(hit, (motion.ParallelWithSharedTranslation, motion.SharedIdentity)):
                diff = tuple(b - a for a, b in zip(L1.anchor, L2.anchor))
                normal = _cross3(L1.direction, diff)
            else:
                continue
            key = _plane_key(normal, L1.anchor)
            planes[key].update((i, j))
    worst, witness = 0, None
    for key, members in sorted(planes.items()):
        if len(members) > worst:
            worst, witness = len(members), key
    return AuditResult(worst <= N, N, worst, witness if worst > N else None)


def check_size(n_points: int, cap: int = DEFAULT_MAX_POINTS) -> None:
    if n_points > cap:
        raise ValueError(f"arrangement path is capped at {cap} points (got {n_points}); raise the cap explicitly")

