"""Exact rational geometry: rationals, Gaussian rationals, points and point sets.

Every geometric decision in the package goes through this module, and none of
it touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

Rat = Fraction
RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, ``"num/den"`` string or Fraction to a Fraction.

    Floats are refused; they would smuggle rounding into exact code.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


def format_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class GaussRat:
    """Complex number with rational parts.

    The ordering is lexicographic on ``(re, im)``. It has no geometric meaning
    and exists only to pick canonical representatives.
    """

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", rat(self.re))
        object.__setattr__(self, "im", rat(self.im))

    @classmethod
    def of(cls, value: "GaussRat | RatLike") -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return cls(rat(value), Fraction(0))

    def __add__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.of(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussRat.of(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussRat.of(other).inverse()

    def __rtruediv__(self, other):
        return GaussRat.of(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        return f"{format_rat(self.re)}{'+' if self.im >= 0 else '-'}{format_rat(abs(self.im))}i"


I = GaussRat(Fraction(0), Fraction(1))


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def to_complex(self) -> GaussRat:
        return GaussRat(self.x, self.y)

    @classmethod
    def from_complex(cls, z: GaussRat) -> "Point":
        return cls(z.re, z.im)

    def __str__(self) -> str:
        return f"{format_rat(self.x)} {format_rat(self.y)}"


def sq_dist(a: Point, b: Point) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def cross(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of ``abc``."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orientation(a: Point, b: Point, c: Point) -> int:
    v = cross(a, b, c)
    return (v > 0) - (v < 0)


class DuplicatePointError(ValueError):
    pass


class PointSet(Sequence[Point]):
    """Ordered, duplicate-free collection of points; indices are identities."""

    __slots__ = ("_points",)

    def __init__(self, points: Iterable[Point], *, min_size: int = 3):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in points)
        seen: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointError(f"point ({p}) repeated at indices {seen[p]} and {i}")
            seen[p] = i
        if len(pts) < min_size:
            raise ValueError(f"a point set needs at least {min_size} points, got {len(pts)}")
        self._points = pts

    def __getitem__(self, i):
        return self._points[i]

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"PointSet({list(self._points)!r})"

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def as_set(self) -> frozenset[Point]:
        return frozenset(self._points)


def integer_coords(points: Iterable[Point]) -> tuple[list[tuple[int, int]], int]:
    """Scale points by the lcm of all denominators.

    Returns the integer coordinates and the scale factor. Congruence and
    similarity relations among triangles are unchanged by a uniform scaling,
    so fast paths may work on these.
    """
    pts = list(points)
    scale = 1
    for p in pts:
        scale = lcm(scale, p.x.denominator, p.y.denominator)
    coords = [(p.x.numerator * (scale // p.x.denominator), p.y.numerator * (scale // p.y.denominator)) for p in pts]
    return coords, scale


def _direction(dx: int, dy: int) -> tuple[int, int]:
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def collinear_groups(P: Sequence[Point]) -> tuple[int, tuple[int, ...]]:
    """Largest collinear subset of ``P`` as (size, sorted member indices)."""
    coords, _ = integer_coords(P)
    n = len(coords)
    best: tuple[int, tuple[int, ...]] = (min(n, 1), (0,) if n else ())
    for i in range(n):
        xi, yi = coords[i]
        lines: dict[tuple[int, int], list[int]] = {}
        for j in range(i + 1, n):
            xj, yj = coords[j]
            lines.setdefault(_direction(xj - xi, yj - yi), []).append(j)
        for members in lines.values():
            if len(members) + 1 > best[0]:
                best = (len(members) + 1, (i, *members))
    return best


def max_collinear(P: Sequence[Point]) -> int:
    if len(P) < 2:
        raise ValueError("max_collinear needs at least 2 points")
    return collinear_groups(P)[0]


@dataclass(frozen=True)
class HypothesisReport:
    """Outcome of checking that no line carries more than half the points."""

    n_points: int
    max_collinear: int
    witness: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return 2 * self.max_collinear <= self.n_points

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"ok: max collinear {self.max_collinear} <= {self.n_points}/2"
        return (
            f"violation: {self.max_collinear} of {self.n_points} points lie on one line "
            f"(indices {list(self.witness)})"
        )


def validate_hypothesis(P: Sequence[Point]) -> HypothesisReport:
    if len(P) < 3:
        raise ValueError("validate_hypothesis needs at least 3 points")
    size, members = collinear_groups(P)
    return HypothesisReport(len(P), size, members)


# point-set text format


class PointFormatError(ValueError):
    pass


def parse_points(text: str) -> PointSet:
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PointFormatError(f"line {lineno}: expected 'x y', got {raw!r}")
        try:
            x, y = (Fraction(f) for f in fields)
        except (ValueError, ZeroDivisionError) as exc:
            raise PointFormatError(f"line {lineno}: bad coordinate in {raw!r}") from exc
        if any("." in f or "e" in f.lower() for f in fields):
            raise PointFormatError(f"line {lineno}: coordinates must be integers or num/den")
        pts.append(Point(x, y))
    return PointSet(pts)


def format_points(P: Iterable[Point], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.extend(str(p) for p in P)
    return "\n".join(lines) + "\n"


def read_points(path: str | Path) -> PointSet:
    return parse_points(Path(path).read_text(encoding="utf-8"))


def write_points(P: Iterable[Point], path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_points(P, comment), encoding="utf-8")
