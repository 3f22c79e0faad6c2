"""Brute-force ground truth.

Everything here is computed directly from the point set: motions and
similitudes are recovered from pairs of point pairs and applied to every
point, triangle pairs are compared over all vertex correspondences. Nothing
in this module looks at canonical keys or lifted lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Hashable, Sequence

from .exact import GaussRat, Point, integer_coords
from .keys import KeyKind
from .motion import Identity, RigidMotion, Rotation, Translation, apply

DEFAULT_CAP = 10


def motion_between(p: Point, p2: Point, q: Point, q2: Point) -> RigidMotion:
    """The direct isometry with ``p -> q`` and ``p2 -> q2``.

    Needs ``p != p2`` and segments of equal length.
    """
    ux, uy = p2.x - p.x, p2.y - p.y
    wx, wy = q2.x - q.x, q2.y - q.y
    n = ux * ux + uy * uy
    if n == 0:
        raise ValueError("source points must be distinct")
    if n != wx * wx + wy * wy:
        raise ValueError("segments differ in length")
    cos = (ux * wx + uy * wy) / n
    sin = (ux * wy - uy * wx) / n
    if sin == 0 and cos == 1:
        v = (q.x - p.x, q.y - p.y)
        return Identity() if v == (0, 0) else Translation(v)
    # cot(theta/2) = sin / (1 - cos); the centre solves (I - R) c = q - R p
    t = sin / (1 - cos)
    rx = q.x - (cos * p.x - sin * p.y)
    ry = q.y - (sin * p.x + cos * p.y)
    a, b = 1 - cos, sin
    det = a * a + b * b
    return Rotation(Point((a * rx - b * ry) / det, (b * rx + a * ry) / det), t)


def _motion_sort_key(m: RigidMotion):
    if isinstance(m, Identity):
        return (0,)
    if isinstance(m, Translation):
        return (1, m.v)
    return (2, m.center, m.t)


@dataclass(frozen=True)
class MotionRecord:
    motion: RigidMotion
    n: int


@dataclass(frozen=True)
class MotionTable:
    records: tuple[MotionRecord, ...]

    @property
    def identity(self) -> list[MotionRecord]:
        return [r for r in self.records if isinstance(r.motion, Identity)]

    @property
    def translations(self) -> list[MotionRecord]:
        return [r for r in self.records if isinstance(r.motion, Translation)]

    @property
    def rotations(self) -> list[MotionRecord]:
        return [r for r in self.records if isinstance(r.motion, Rotation)]

    def find(self, m: RigidMotion) -> MotionRecord | None:
        return next((r for r in self.records if r.motion == m), None)

    def triple_sum(self, include_identity: bool = False) -> int:
        return sum(
            _c3(r.n) for r in self.records if include_identity or not isinstance(r.motion, Identity)
        )


def _c3(n: int) -> int:
    return n * (n - 1) * (n - 2) // 6


def motion_multiplicity(m: RigidMotion, P: Sequence[Point]) -> int:
    members = set(P)
    return sum(1 for x in P if apply(m, x) in members)


def enumerate_motions(P: Sequence[Point]) -> MotionTable:
    """Every direct motion realised between point pairs of ``P``.

    Two-point correspondences determine a motion exactly. Each single
    correspondence ``p -> q`` also contributes its translation and its
    half-turn about the midpoint, so the table lists motions with ``n = 1``
    too; they add nothing to triple counts.
    """
    P = list(P)
    if len(P) < 2:
        raise ValueError("need at least 2 points")
    seen: set = {Identity()}
    half = Fraction(1, 2)
    for p in P:
        for q in P:
            if p != q:
                seen.add(Translation((q.x - p.x, q.y - p.y)))
            seen.add(Rotation(Point((p.x + q.x) * half, (p.y + q.y) * half), Fraction(0)))
    by_length: dict[Fraction, list[tuple[Point, Point]]] = {}
    for p in P:
        for p2 in P:
            if p != p2:
                d = (p2.x - p.x) ** 2 + (p2.y - p.y) ** 2
                by_length.setdefault(d, []).append((p, p2))
    for segs in by_length.values():
        for p, p2 in segs:
            for q, q2 in segs:
                seen.add(motion_between(p, p2, q, q2))
    records = tuple(MotionRecord(m, motion_multiplicity(m, P)) for m in sorted(seen, key=_motion_sort_key))
    return MotionTable(records)


@dataclass(frozen=True)
class SimilitudeRecord:
    a: GaussRat
    b: GaussRat
    n: int

    def __call__(self, z: GaussRat, reflections: bool = False) -> GaussRat:
        return self.a * (z.conjugate() if reflections else z) + self.b


@dataclass(frozen=True)
class SimilitudeTable:
    records: tuple[SimilitudeRecord, ...]
    reflections: bool = False

    def find(self, a, b) -> SimilitudeRecord | None:
        a, b = GaussRat.of(a), GaussRat.of(b)
        return next((r for r in self.records if r.a == a and r.b == b), None)

    def triple_sum(self) -> int:
        return sum(_c3(r.n) for r in self.records)


def enumerate_similitudes(P: Sequence[Point], reflections: bool = False) -> SimilitudeTable:
    """All maps ``z -> a z + b`` (``a conj(z) + b`` with reflections), a != 0,
    sending two distinct points of ``P`` into ``P``."""
    zs = [p.to_complex() for p in P]
    if len(zs) < 2:
        raise ValueError("need at least 2 points")
    src = [z.conjugate() for z in zs] if reflections else zs
    found: set = set()
    for i, j in permutations(range(len(zs)), 2):
        dp = src[i] - src[j]
        for q in zs:
            for q2 in zs:
                if q == q2:
                    continue
                a = (q - q2) / dp
                found.add((a, q - a * src[i]))
    members = set(zs)
    records = []
    for a, b in sorted(found):
        n = sum(1 for z in src if a * z + b in members)
        records.append(SimilitudeRecord(a, b, n))
    return SimilitudeTable(tuple(records), reflections)


# Pairwise triangle tests. A triangle is a triple of vertices given either as
# Points or as (x, y) pairs of exact numbers.


def _xy(v) -> tuple:
    return (v.x, v.y) if isinstance(v, Point) else tuple(v)


def _sq(u, v):
    return (u[0] - v[0]) ** 2 + (u[1] - v[1]) ** 2


def _signed_area(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def congruent_pair_test(t1, t2, allow_reflections: bool = False) -> bool:
    """Some vertex correspondence matches all three sides (and orientation
    unless reflections are allowed)."""
    a = [_xy(v) for v in t1]
    b = [_xy(v) for v in t2]
    sides_a = (_sq(a[0], a[1]), _sq(a[1], a[2]), _sq(a[2], a[0]))
    orient_a = _signed_area(*a)
    for perm in permutations(b):
        if (_sq(perm[0], perm[1]), _sq(perm[1], perm[2]), _sq(perm[2], perm[0])) != sides_a:
            continue
        if allow_reflections or _signed_area(*perm) == orient_a:
            return True
    return False


def similar_pair_test(t1, t2, allow_reflections: bool = False) -> bool:
    """Some correspondence ``z_i -> w_i`` is realised by ``z -> a z + b``
    (or ``a conj(z) + b``): ``(z3 - z1)(w2 - w1) = (w3 - w1)(z2 - z1)``."""
    z = [_xy(v) for v in t1]
    mirrored = [(x, -y) for x, y in z]
    for src in (z, mirrored) if allow_reflections else (z,):
        u = (src[1][0] - src[0][0], src[1][1] - src[0][1])
        v = (src[2][0] - src[0][0], src[2][1] - src[0][1])
        for w in permutations(_xy(x) for x in t2):
            s = (w[1][0] - w[0][0], w[1][1] - w[0][1])
            r = (w[2][0] - w[0][0], w[2][1] - w[0][1])
            # v * s == r * u as complex numbers
            if v[0] * s[0] - v[1] * s[1] == r[0] * u[0] - r[1] * u[1] and v[0] * s[1] + v[1] * s[0] == r[0] * u[1] + r[1] * u[0]:
                return True
    return False


def equivalent(kind: KeyKind | str, t1, t2) -> bool:
    kind = KeyKind(kind)
    if kind.is_similarity:
        return similar_pair_test(t1, t2, kind.allows_reflections)
    return congruent_pair_test(t1, t2, kind.allows_reflections)


@dataclass(frozen=True)
class EquivalenceVerdict:
    ok: bool
    kind: KeyKind
    n_triangles: int
    counterexample: tuple | None = None  # (triple1, triple2, keys_equal, oracle_equal)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok, "kind": self.kind.value, "n_triangles": self.n_triangles}
        if self.counterexample is not None:
            t1, t2, keq, oeq = self.counterexample
            out["counterexample"] = {"triangle_1": list(t1), "triangle_2": list(t2), "keys_equal": keq, "oracle_equal": oeq}
        return out


KeyFunction = Callable[[Point, Point, Point], Hashable]


def census_equivalence_check(
    P: Sequence[Point],
    kind: KeyKind | str,
    *,
    key_fn: KeyFunction | None = None,
    include_degenerate: bool = False,
    cap: int = DEFAULT_CAP,
) -> EquivalenceVerdict:
    """Compare the partition of triangles by census keys against pairwise tests.

    ``key_fn`` replaces the census keys (used for fault injection).
    """
    kind = KeyKind(kind)
    if len(P) > cap:
        raise ValueError(f"oracle check capped at {cap} points (got {len(P)})")
    # relations are invariant under uniform scaling, so compare on integers
    coords, _ = integer_coords(P)
    if key_fn is None:
        from .census import triangle_keys

        keyed = triangle_keys(P, kind, include_degenerate)
    else:
        keyed = []
        for tri in combinations(range(len(P)), 3):
            a, b, c = (P[i] for i in tri)
            if include_degenerate or _signed_area(*(coords[i] for i in tri)) != 0:
                keyed.append((tri, key_fn(a, b, c)))
    verts = [tuple(coords[i] for i in tri) for tri, _ in keyed]
    for x in range(len(keyed)):
        for y in range(x + 1, len(keyed)):
            keys_equal = keyed[x][1] == keyed[y][1]
            oracle_equal = equivalent(kind, verts[x], verts[y])
            if keys_equal != oracle_equal:
                return EquivalenceVerdict(False, kind, len(keyed), (keyed[x][0], keyed[y][0], keys_equal, oracle_equal))
    return EquivalenceVerdict(True, kind, len(keyed))


def pairwise_class_count(P: Sequence[Point], kind: KeyKind | str, include_degenerate: bool = False) -> tuple[int, int]:
    """(number of classes, number of equivalent pairs) by pairwise testing only."""
    kind = KeyKind(kind)
    coords, _ = integer_coords(P)
    tris = [
        tuple(coords[i] for i in tri)
        for tri in combinations(range(len(coords)), 3)
        if include_degenerate or _signed_area(*(coords[i] for i in tri)) != 0
    ]
    reps: list = []
    pairs = 0
    for x, t in enumerate(tris):
        pairs += sum(1 for u in tris[:x] if equivalent(kind, t, u))
        if not any(equivalent(kind, t, r) for r in reps):
            reps.append(t)
    return len(reps), pairs
