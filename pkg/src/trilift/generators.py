"""Point-set constructions: lattice squares, random dyadic sets, sets at the
collinearity boundary, and mirror images."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Point, PointSet


def grid(m: int) -> PointSet:
    if m < 2:
        raise ValueError("grid side must be at least 2")
    return PointSet([Point(x, y) for x in range(m) for y in range(m)])


def random_rational(
    n: int,
    seed: int = 0,
    coord_range: tuple[int, int] = (-4, 4),
    denominator_bits: int = 3,
    max_tries: int | None = None,
) -> PointSet:
    """``n`` distinct points with dyadic coordinates ``k / 2**denominator_bits``
    drawn uniformly from ``coord_range`` (inclusive) in both axes."""
    if n < 3:
        raise ValueError("need at least 3 points")
    lo, hi = coord_range
    den = 1 << denominator_bits
    side = (hi - lo) * den + 1
    if n > side * side:
        raise ValueError(f"cannot draw {n} distinct points from a lattice of {side * side}")
    rng = random.Random(seed)
    chosen: dict[tuple[int, int], None] = {}
    tries = 0
    limit = max_tries if max_tries is not None else 100 * n + 1000
    while len(chosen) < n:
        tries += 1
        if tries > limit:
            raise RuntimeError(f"gave up after {limit} draws with {len(chosen)} distinct points")
        chosen.setdefault((rng.randint(lo * den, hi * den), rng.randint(lo * den, hi * den)))
    return PointSet([Point(Fraction(x, den), Fraction(y, den)) for x, y in chosen])


def half_line_config(n: int) -> PointSet:
    """``n/2`` points on the x-axis and ``n/2`` off it, none three on a line
    except the axis points."""
    if n < 6 or n % 2:
        raise ValueError("n must be even and at least 6")
    h = n // 2
    on_axis = [Point(i, 0) for i in range(h)]
    # points on the parabola y = x^2 + 1: no three collinear, none on the axis,
    # and a line through two of them meets the axis at most once
    off_axis = [Point(Fraction(2 * i + 1, 3), Fraction(2 * i + 1, 3) ** 2 + 1) for i in range(h)]
    return PointSet(on_axis + off_axis)


@dataclass(frozen=True)
class MirrorLine:
    """The line ``a x + b y = c`` with rational coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ValueError("degenerate line")

    def reflect(self, p: Point) -> Point:
        s = 2 * (self.a * p.x + self.b * p.y - self.c) / (self.a * self.a + self.b * self.b)
        return Point(p.x - s * self.a, p.y - s * self.b)


class MirrorOverlapError(ValueError):
    pass


def default_mirror_line(P: Sequence[Point]) -> MirrorLine:
    """A vertical line right of the bounding box, at a lopsided offset."""
    xmax = max(p.x for p in P)
    xmin = min(p.x for p in P)
    return MirrorLine(1, 0, xmax + (xmax - xmin) / 3 + Fraction(7, 5))


def mirror(P: Sequence[Point], line: MirrorLine | None = None, *, require_disjoint: bool = True) -> PointSet:
    line = line if line is not None else default_mirror_line(P)
    image = [line.reflect(p) for p in P]
    if require_disjoint:
        shared = set(image) & set(P)
        if shared:
            raise MirrorOverlapError(f"mirror image meets the set at ({min(shared)})")
    return PointSet(image, min_size=0)
