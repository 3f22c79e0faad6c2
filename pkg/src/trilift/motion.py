"""Orientation-preserving rigid motions of the plane as lines in R^3.

A rotation with centre ``(x, y)`` and half-angle cotangent ``t = cot(theta/2)``
is the point ``(x, y, t)``. The motions taking ``p`` to ``q`` then form the line

    (midpoint(p, q), 0) + t * ((q - p)^perp / 2, 1),    (u, v)^perp = (-v, u),

and for ``p == q`` the vertical line over ``p``. Translations have no finite
point; lines sharing the displacement ``q - p`` are parallel and meet "at
infinity" in the translation by that displacement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exact import Point

Vec3 = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class Rotation:
    center: Point
    t: Fraction

    def cos_sin(self) -> tuple[Fraction, Fraction]:
        t2 = self.t * self.t
        return (t2 - 1) / (t2 + 1), 2 * self.t / (t2 + 1)


@dataclass(frozen=True)
class Translation:
    v: tuple[Fraction, Fraction]

    def __post_init__(self):
        if self.v[0] == 0 and self.v[1] == 0:
            raise ValueError("zero translation is the identity")


@dataclass(frozen=True)
class Identity:
    pass


RigidMotion = Union[Rotation, Translation, Identity]


def apply(m: RigidMotion, p: Point) -> Point:
    if isinstance(m, Identity):
        return p
    if isinstance(m, Translation):
        return Point(p.x + m.v[0], p.y + m.v[1])
    c, s = m.cos_sin()
    dx, dy = p.x - m.center.x, p.y - m.center.y
    return Point(m.center.x + c * dx - s * dy, m.center.y + s * dx + c * dy)


@dataclass(frozen=True)
class MotionLine:
    source: Point
    target: Point
    anchor: Vec3
    direction: Vec3

    @property
    def displacement(self) -> tuple[Fraction, Fraction]:
        return (self.target.x - self.source.x, self.target.y - self.source.y)

    def at(self, t) -> Vec3:
        t = Fraction(t)
        a, d = self.anchor, self.direction
        return (a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2])

    def contains(self, point: Vec3) -> bool:
        # every direction has third component 1, so the height fixes the parameter
        return self.at(point[2] - self.anchor[2]) == tuple(point)


def lift(p: Point, q: Point) -> MotionLine:
    if p == q:
        return MotionLine(p, q, (p.x, p.y, Fraction(0)), (Fraction(0), Fraction(0), Fraction(1)))
    half = Fraction(1, 2)
    anchor = ((p.x + q.x) * half, (p.y + q.y) * half, Fraction(0))
    direction = (-(q.y - p.y) * half, (q.x - p.x) * half, Fraction(1))
    return MotionLine(p, q, anchor, direction)


def lift_all(P: Sequence[Point], include_identity_lines: bool = True) -> list[MotionLine]:
    """All ``N^2`` lines ``L_pq`` (or ``N^2 - N`` without the vertical ones)."""
    return [lift(p, q) for p in P for q in P if include_identity_lines or p != q]


def decode(point: Sequence) -> Rotation:
    x, y, z = (Fraction(v) for v in point)
    return Rotation(Point(x, y), z)


@dataclass(frozen=True)
class FinitePoint:
    point: Vec3


@dataclass(frozen=True)
class ParallelWithSharedTranslation:
    v: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SharedIdentity:
    """Two vertical lines ``L_pp``: parallel, sharing only the identity at infinity."""


@dataclass(frozen=True)
class Disjoint:
    pass


class IdenticalLinesError(ValueError):
    pass


def intersect_motion_lines(
    L1: MotionLine, L2: MotionLine
) -> FinitePoint | ParallelWithSharedTranslation | SharedIdentity | Disjoint:
    """Exact intersection of two motion lines.

    Both lines are parameterised by height, so they meet iff one height ``z``
    solves ``(d1 - d2) z = a2 - a1`` in the plane coordinates.
    """
    if (L1.source, L1.target) == (L2.source, L2.target):
        raise IdenticalLinesError(f"same line L({L1.source} -> {L1.target}) given twice")
    (a1x, a1y, _), (d1x, d1y, _) = L1.anchor, L1.direction
    (a2x, a2y, _), (d2x, d2y, _) = L2.anchor, L2.direction
    ex, ey = d1x - d2x, d1y - d2y
    rx, ry = a2x - a1x, a2y - a1y
    if ex == 0 and ey == 0:
        if L1.displacement == (0, 0):
            return SharedIdentity()
        return ParallelWithSharedTranslation(L1.displacement)
    if ex * ry != ey * rx:
        return Disjoint()
    z = rx / ex if ex != 0 else ry / ey
    return FinitePoint(L1.at(z))

