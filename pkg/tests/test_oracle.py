from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import P, triangles
from trilift.census import census, pair_counts
from trilift.exact import GaussRat, Point
from trilift.generators import grid, random_rational
from trilift.keys import KeyKind, congruence_key
from trilift.motion import Identity, Rotation, Translation, apply
from trilift.oracle import (
    census_equivalence_check,
    congruent_pair_test,
    enumerate_motions,
    enumerate_similitudes,
    equivalent,
    motion_between,
    motion_multiplicity,
    pairwise_class_count,
    similar_pair_test,
)

F = Fraction


def test_two_point_motion_table():
    pts = [Point(0, 0), Point(2, 0)]
    table = enumerate_motions(pts)
    assert table.find(Rotation(Point(1, 0), F(0))).n == 2
    assert table.find(Identity()).n == 2
    assert table.find(Translation((F(2), F(0)))).n == 1
    assert table.find(Rotation(Point(0, 0), F(0))).n == 1
    assert table.find(Rotation(Point(2, 0), F(0))).n == 1
    assert table.triple_sum() == 0


def test_scalene_triangle_only_identity_is_rich():
    table = enumerate_motions(P((0, 0), (4, 0), (1, 2)))
    assert [r.motion for r in table.records if r.n >= 3] == [Identity()]
    # the only other motions with n = 2 swap a pair by a half-turn
    pairs = [r.motion for r in table.records if r.n == 2]
    assert len(pairs) == 3 and all(m.t == 0 for m in pairs)
    assert table.triple_sum() == 0


def test_grid2_quarter_turn():
    table = enumerate_motions(grid(2))
    assert table.find(Rotation(Point(F(1, 2), F(1, 2)), F(1))).n == 4
    assert table.find(Rotation(Point(F(1, 2), F(1, 2)), F(-1))).n == 4


def test_motion_between_recovers_rotation():
    m = Rotation(Point(F(1, 3), -2), F(5, 7))
    p, p2 = Point(1, 1), Point(-3, F(1, 2))
    assert motion_between(p, p2, apply(m, p), apply(m, p2)) == m
    assert motion_between(p, p2, p, p2) == Identity()
    t = Translation((F(1), F(2)))
    assert motion_between(p, p2, apply(t, p), apply(t, p2)) == t
    with pytest.raises(ValueError):
        motion_between(p, p2, p, Point(0, 0))


def test_table_records_are_recounted():
    pts = random_rational(6, seed=3, coord_range=(-1, 1), denominator_bits=1)
    table = enumerate_motions(pts)
    for r in table.records:
        assert r.n == motion_multiplicity(r.motion, pts)


def test_similitude_examples():
    sims = enumerate_similitudes(P((0, 0), (1, 0), (0, 1)))
    assert sims.find(GaussRat(0, 1), 0).n == 2
    assert sims.find(1, 0).n == 3
    line = enumerate_similitudes(P((0, 0), (1, 0), (2, 0)))
    assert line.find(2, 0).n == 2
    assert line.find(-1, 2).n == 3
    assert all(not r.a.is_zero() for r in line.records)


def test_reflected_similitudes_contain_conjugation():
    sims = enumerate_similitudes(P((0, 0), (1, 0), (2, 0)), reflections=True)
    assert sims.find(1, 0).n == 3
    assert sims.reflections


def test_pair_tests_examples():
    t = ((0, 0), (3, 0), (0, 1))
    mirrored = ((0, 0), (-3, 0), (0, 1))
    assert congruent_pair_test(t, t)
    assert congruent_pair_test(t, mirrored, allow_reflections=True)
    assert not congruent_pair_test(t, mirrored)
    doubled = ((0, 0), (6, 0), (0, 2))
    assert similar_pair_test(t, doubled)
    assert not congruent_pair_test(t, doubled, True)
    assert similar_pair_test(t, ((1, 1), (1, -5), (3, 1)), True)
    assert not similar_pair_test(t, ((0, 0), (-6, 0), (0, 2)))
    assert similar_pair_test(t, ((0, 0), (-6, 0), (0, 2)), True)


@settings(max_examples=60, deadline=None)
@given(triangles())
def test_pair_tests_under_motion(tri):
    m = Rotation(Point(F(1, 2), 3), F(-2, 5))
    moved = tuple(apply(m, v) for v in tri)
    for kind in KeyKind:
        assert equivalent(kind, tri, moved)
    flipped = tuple(Point(-v.x, v.y) for v in tri)
    assert equivalent(KeyKind.CONGRUENCE_FULL, tri, flipped)
    assert equivalent(KeyKind.SIMILARITY_FULL, tri, flipped)


@pytest.mark.parametrize("kind", list(KeyKind))
def test_census_agrees_with_oracle(kind):
    for seed in range(4):
        pts = random_rational(6, seed=seed, coord_range=(-1, 1), denominator_bits=1)
        assert census_equivalence_check(pts, kind)
    assert census_equivalence_check(grid(3), kind)


def test_fault_injection_is_caught():
    # sorted sides forget orientation, so they cannot stand in for direct keys
    pts = P((0, 0), (3, 0), (0, 1), (-3, 0))
    v = census_equivalence_check(pts, KeyKind.CONGRUENCE_DIRECT, key_fn=congruence_key)
    assert not v.ok
    t1, t2, keys_equal, oracle_equal = v.counterexample
    assert keys_equal and not oracle_equal
    payload = v.to_json()
    assert payload["counterexample"]["keys_equal"] is True
    const = census_equivalence_check(pts, KeyKind.SIMILARITY_FULL, key_fn=lambda a, b, c: 0)
    assert not const.ok


def test_oracle_cap():
    with pytest.raises(ValueError):
        census_equivalence_check(grid(4), KeyKind.CONGRUENCE_FULL)
    assert census_equivalence_check(grid(4), KeyKind.CONGRUENCE_FULL, cap=16)


def test_pairwise_counts_match_census():
    pts = random_rational(6, seed=9, coord_range=(-1, 1), denominator_bits=1)
    for kind in KeyKind:
        classes, pairs = pairwise_class_count(pts, kind)
        c = census(pts, kind)
        assert classes == c.n_classes
        assert pairs == pair_counts(c).Q


def test_full_pairs_split_into_direct_and_mirror_only():
    pts = grid(3)
    _, full = pairwise_class_count(pts, KeyKind.CONGRUENCE_FULL)
    _, direct = pairwise_class_count(pts, KeyKind.CONGRUENCE_DIRECT)
    from itertools import combinations

    tris = [t for t in combinations([(p.x, p.y) for p in pts], 3)
            if (t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) != (t[1][1] - t[0][1]) * (t[2][0] - t[0][0])]
    mirror_only = sum(
        1 for s, u in combinations(tris, 2) if congruent_pair_test(s, u, True) and not congruent_pair_test(s, u)
    )
    assert full == direct + mirror_only
