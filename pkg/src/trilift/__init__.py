"""Exact counting of congruent and similar triangles in planar point sets,
with the rigid-motion (R^3) and similarity (C^2) line lifts checked against
brute force."""

from .census import ClassCensus, PairCounts, census, class_lower_bound, enumerate_triangles, pair_counts
from .exact import GaussRat, Point, PointSet, max_collinear, orientation, sq_dist, validate_hypothesis
from .keys import KeyKind, anharmonic_orbit, congruence_key, direct_congruence_key, similarity_key

__all__ = [
    "ClassCensus",
    "GaussRat",
    "KeyKind",
    "PairCounts",
    "Point",
    "PointSet",
    "anharmonic_orbit",
    "census",
    "class_lower_bound",
    "congruence_key",
    "direct_congruence_key",
    "enumerate_triangles",
    "max_collinear",
    "orientation",
    "pair_counts",
    "similarity_key",
    "sq_dist",
    "validate_hypothesis",
]
