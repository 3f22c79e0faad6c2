from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from trilift.exact import (
    DuplicatePointError,
    GaussRat,
    Point,
    PointFormatError,
    PointSet,
    format_points,
    integer_coords,
    max_collinear,
    orientation,
    parse_points,
    sq_dist,
    validate_hypothesis,
)
from trilift.generators import grid

from conftest import P, points, small_rats


def brute_max_collinear(pts):
    best = 2 if len(pts) >= 2 else len(pts)
    for a, b in combinations(pts, 2):
        on = sum(1 for c in pts if (b.x - a.x) * (c.y - a.y) == (b.y - a.y) * (c.x - a.x))
        best = max(best, on)
    return best


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0, 0), (3, 4), 25),
        ((0, 0), (0, 0), 0),
        ((Fraction(1, 2), 0), (0, Fraction(1, 2)), Fraction(1, 2)),
    ],
)
def test_sq_dist(a, b, expected):
    assert sq_dist(Point(*a), Point(*b)) == expected


@pytest.mark.parametrize(
    "pts, expected",
    [
        (((0, 0), (1, 0), (0, 1)), 1),
        (((0, 0), (1, 1), (2, 2)), 0),
        (((0, 0), (0, 1), (1, 0)), -1),
    ],
)
def test_orientation(pts, expected):
    assert orientation(*(Point(*p) for p in pts)) == expected


def test_max_collinear_examples():
    g3 = grid(3)
    assert brute_max_collinear(list(g3)) == 3
    assert max_collinear(g3) == 3
    assert max_collinear(P((0, 0), (5, 1), (2, 7))) == 2
    assert max_collinear(P((0, 0), (1, 0), (2, 0), (0, 1))) == 3


def test_validate_hypothesis_examples():
    assert validate_hypothesis(grid(2)).ok
    rep = validate_hypothesis(P((0, 0), (1, 0), (2, 0), (3, 0), (0, 1)))
    assert not rep.ok
    assert rep.max_collinear == 4
    assert sorted(rep.witness) == [0, 1, 2, 3]
    assert "violation" in rep.describe()
    assert validate_hypothesis(grid(3)).ok


@given(small_rats, small_rats, small_rats)
def test_rat_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(points(), points(), points(), points())
def test_sq_dist_symmetric_and_translation_invariant(a, b, v, w):
    assert sq_dist(a, b) == sq_dist(b, a)
    assert sq_dist(a + v, b + v) == sq_dist(a, b)


@given(points(), points(), points())
def test_orientation_antisymmetric(a, b, c):
    s = orientation(a, b, c)
    assert orientation(b, a, c) == -s
    assert orientation(a, c, b) == -s
    assert orientation(c, b, a) == -s


@given(st.lists(points(), min_size=2, max_size=8, unique=True))
@settings(max_examples=60)
def test_max_collinear_matches_brute_force(pts):
    m = max_collinear(pts)
    assert m == brute_max_collinear(pts)
    assert m <= len(pts)
    all_collinear = all(orientation(pts[0], pts[1], c) == 0 for c in pts)
    assert (m == len(pts)) == all_collinear


def test_max_collinear_all_on_a_line():
    pts = [Point(Fraction(i, 3), Fraction(2 * i, 3) + 1) for i in range(6)]
    assert max_collinear(pts) == 6


def test_pointset_rejects_duplicates():
    with pytest.raises(DuplicatePointError):
        P((0, 0), (1, 1), (0, 0))
    with pytest.raises(ValueError):
        P((0, 0), (1, 1))


def test_floats_refused():
    with pytest.raises(TypeError):
        Point(0.5, 1)


def test_gaussrat_arithmetic():
    i = GaussRat(0, 1)
    assert i * i == GaussRat(-1, 0)
    assert GaussRat(1, 1) / GaussRat(1, -1) == i
    assert (GaussRat(3, 4) * GaussRat(3, 4).inverse()) == GaussRat(1, 0)
    assert GaussRat(0, -1) < GaussRat(0, 1) < GaussRat(1, -5)
    with pytest.raises(ZeroDivisionError):
        GaussRat(0, 0).inverse()


def test_integer_coords_scales_by_lcm():
    coords, scale = integer_coords([Point(Fraction(1, 2), Fraction(1, 3)), Point(1, Fraction(-5, 4))])
    assert scale == 12
    assert coords == [(6, 4), (12, -15)]


def test_point_file_round_trip(tmp_path):
    text = "# a comment\n0 0\n1/2 -3/4\n\n 5 7 \n"
    pts = parse_points(text)
    assert list(pts) == [Point(0, 0), Point(Fraction(1, 2), Fraction(-3, 4)), Point(5, 7)]
    again = parse_points(format_points(pts, "round trip"))
    assert again == pts


@pytest.mark.parametrize("bad", ["0 0\n1\n2 2\n", "0 0\n1 x\n2 2\n", "0 0\n0.5 1\n2 2\n", "0 0\n1/0 1\n2 2\n"])
def test_point_file_rejects_malformed(bad):
    with pytest.raises(PointFormatError):
        parse_points(bad)
