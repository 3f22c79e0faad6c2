"""Similarities ``z -> a z + b`` of the complex plane as lines in C^2.

The maps sending ``p`` to ``q`` are the line ``{(a, b) : a p + b = q}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import GaussRat, Point


@dataclass(frozen=True, order=True)
class Similitude:
    a: GaussRat
    b: GaussRat

    @property
    def is_group_element(self) -> bool:
        return not self.a.is_zero()


IDENTITY = Similitude(GaussRat.of(1), GaussRat.of(0))


@dataclass(frozen=True)
class ConformalLine:
    source: GaussRat
    target: GaussRat

    def contains(self, a: GaussRat, b: GaussRat) -> bool:
        return a * self.source + b == self.target


def as_complex(z) -> GaussRat:
    if isinstance(z, Point):
        return z.to_complex()
    return GaussRat.of(z)


def lift_c(p, q) -> ConformalLine:
    return ConformalLine(as_complex(p), as_complex(q))


def lift_all_c(P: Sequence[Point], reflections: bool = False) -> list[ConformalLine]:
    """All ``N^2`` lines of a point set.

    With ``reflections`` the sources are conjugated, so points of the
    arrangement are the maps ``z -> a conj(z) + b``.
    """
    zs = [as_complex(p) for p in P]
    srcs = [z.conjugate() for z in zs] if reflections else zs
    return [ConformalLine(s, q) for s in srcs for q in zs]


@dataclass(frozen=True)
class DegenerateAtAZero:
    b: GaussRat


@dataclass(frozen=True)
class Parallel:
    pass


class IdenticalLinesError(ValueError):
    pass


def intersect_c(L1: ConformalLine, L2: ConformalLine) -> Similitude | DegenerateAtAZero | Parallel:
    if L1 == L2:
        raise IdenticalLinesError(f"same line L({L1.source} -> {L1.target}) given twice")
    dp = L1.source - L2.source
    if dp.is_zero():
        return Parallel()
    a = (L1.target - L2.target) / dp
    b = L1.target - a * L1.source
    if a.is_zero():
        return DegenerateAtAZero(b)
    return Similitude(a, b)


def apply_sim(s: Similitude, z) -> GaussRat:
    if not s.is_group_element:
        raise ValueError("a = 0 is not a similarity")
    return s.a * as_complex(z) + s.b
