from fractions import Fraction

import pytest

from trilift.census import census
from trilift.exact import Point, validate_hypothesis
from trilift.generators import MirrorLine, MirrorOverlapError, grid, half_line_config, mirror, random_rational
from trilift.keys import KeyKind


def test_grid_shape():
    g = grid(3)
    assert len(g) == 9
    assert Point(2, 2) in g
    with pytest.raises(ValueError):
        grid(1)


def test_random_is_seeded():
    assert list(random_rational(8, seed=5)) == list(random_rational(8, seed=5))
    assert list(random_rational(8, seed=5)) != list(random_rational(8, seed=6))


def test_random_coordinates_on_lattice():
    pts = random_rational(20, seed=1, coord_range=(-1, 1), denominator_bits=2)
    for p in pts:
        assert -1 <= p.x <= 1 and -1 <= p.y <= 1
        assert (p.x * 4).denominator == 1 and (p.y * 4).denominator == 1


def test_random_too_many_points():
    with pytest.raises(ValueError):
        random_rational(10, coord_range=(0, 1), denominator_bits=0)
    with pytest.raises(RuntimeError):
        random_rational(4, coord_range=(0, 1), denominator_bits=0, max_tries=1)


@pytest.mark.parametrize("n", [6, 8, 12])
def test_half_line_sits_on_boundary(n):
    h = validate_hypothesis(half_line_config(n))
    assert h.max_collinear == n // 2
    assert h.ok


def test_half_line_rejects_odd():
    with pytest.raises(ValueError):
        half_line_config(7)


def test_mirror_is_involution_and_disjoint():
    pts = random_rational(7, seed=2)
    line = MirrorLine(1, 2, Fraction(1, 3))
    back = mirror(mirror(pts, line, require_disjoint=False), line, require_disjoint=False)
    assert list(back) == list(pts)
    img = mirror(pts)
    assert not set(img) & set(pts)


def test_mirror_overlap_detected():
    pts = [Point(0, 0), Point(1, 1), Point(3, 2)]
    with pytest.raises(MirrorOverlapError):
        mirror(pts, MirrorLine(1, 0, 0))
    with pytest.raises(ValueError):
        MirrorLine(0, 0, 1)


def test_mirror_preserves_full_census_and_swaps_direct():
    pts = random_rational(7, seed=4)
    img = mirror(pts)
    for kind in KeyKind:
        a, b = census(pts, kind), census(img, kind)
        assert a.n_classes == b.n_classes
        assert sorted(a.counts.tolist()) == sorted(b.counts.tolist())
