"""Canonical class keys for triangles.

Two triangles get equal keys exactly when they are equivalent under the
chosen relation, so class counting becomes hashing. The public functions take
exact points; the ``*_int`` kernels further down take precomputed integer
side data and are what the census loops call.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import gcd
from typing import NamedTuple

import numpy as np

from .exact import GaussRat, Point, cross, sq_dist


class KeyKind(str, Enum):
    CONGRUENCE_FULL = "congruence-full"
    CONGRUENCE_DIRECT = "congruence-direct"
    SIMILARITY_DIRECT = "similarity-direct"
    SIMILARITY_FULL = "similarity-full"

    @property
    def is_similarity(self) -> bool:
        return self in (KeyKind.SIMILARITY_DIRECT, KeyKind.SIMILARITY_FULL)

    @property
    def allows_reflections(self) -> bool:
        return self in (KeyKind.CONGRUENCE_FULL, KeyKind.SIMILARITY_FULL)


class DegenerateTriangleError(ValueError):
    """Raised for coincident vertices, or collinear ones outside degenerate mode."""


CongruenceKey = tuple  # (s1, s2, s3) ascending squared side lengths


class DirectCongruenceKey(NamedTuple):
    sides: tuple
    degenerate: bool = False


class SimilarityKey(NamedTuple):
    shape: GaussRat
    reflections: bool = False


def _check_distinct(a: Point, b: Point, c: Point) -> None:
    if a == b or b == c or a == c:
        raise DegenerateTriangleError(f"repeated vertex in ({a}), ({b}), ({c})")


def min_rotation(seq: tuple) -> tuple:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def congruence_key(a: Point, b: Point, c: Point) -> CongruenceKey:
    _check_distinct(a, b, c)
    return tuple(sorted((sq_dist(a, b), sq_dist(a, c), sq_dist(b, c))))


def direct_congruence_key(a: Point, b: Point, c: Point, *, degenerate_ok: bool = False) -> DirectCongruenceKey:
    """Squared sides read counter-clockwise, rotated to the smallest cyclic shift."""
    _check_distinct(a, b, c)
    s = cross(a, b, c)
    ab, bc, ca = sq_dist(a, b), sq_dist(b, c), sq_dist(c, a)
    if s > 0:
        return DirectCongruenceKey(min_rotation((ab, bc, ca)))
    if s < 0:
        return DirectCongruenceKey(min_rotation((ca, bc, ab)))
    if not degenerate_ok:
        raise DegenerateTriangleError(f"collinear triple ({a}), ({b}), ({c})")
    # a segment is its own mirror image, so both readings are the same class
    return DirectCongruenceKey(min(min_rotation((ab, bc, ca)), min_rotation((ca, bc, ab))), True)


def anharmonic_orbit(r: GaussRat) -> frozenset[GaussRat]:
    r = GaussRat.of(r)
    if r.is_zero() or r == GaussRat.of(1):
        raise DegenerateTriangleError(f"shape parameter {r} has a coincident vertex")
    one = GaussRat.of(1)
    return frozenset(
        {
            r,
            one / r,
            one - r,
            one / (one - r),
            r / (r - one),
            (r - one) / r,
        }
    )


def shape_parameter(a: Point, b: Point, c: Point) -> GaussRat:
    za, zb, zc = a.to_complex(), b.to_complex(), c.to_complex()
    return (zc - za) / (zb - za)


def similarity_key(
    a: Point, b: Point, c: Point, reflections: bool = False, *, degenerate_ok: bool = False
) -> SimilarityKey:
    _check_distinct(a, b, c)
    if cross(a, b, c) == 0 and not degenerate_ok:
        raise DegenerateTriangleError(f"collinear triple ({a}), ({b}), ({c})")
    orbit = anharmonic_orbit(shape_parameter(a, b, c))
    if reflections:
        orbit = orbit | {z.conjugate() for z in orbit}
    return SimilarityKey(min(orbit), reflections)


def triangle_key(kind: KeyKind, a: Point, b: Point, c: Point, *, degenerate_ok: bool = False):
    kind = KeyKind(kind)
    if kind is KeyKind.CONGRUENCE_FULL:
        if not degenerate_ok and cross(a, b, c) == 0:
            raise DegenerateTriangleError(f"collinear triple ({a}), ({b}), ({c})")
        return congruence_key(a, b, c)
    if kind is KeyKind.CONGRUENCE_DIRECT:
        return direct_congruence_key(a, b, c, degenerate_ok=degenerate_ok)
    return similarity_key(a, b, c, kind is KeyKind.SIMILARITY_FULL, degenerate_ok=degenerate_ok)


# Integer kernels. Inputs are the three squared sides ab, bc, ca and the
# doubled signed area C of a triangle (a, b, c) with integer coordinates.


def congruence_key_int(ab: int, bc: int, ca: int, C: int) -> tuple:
    if ab <= bc:
        if bc <= ca:
            return (ab, bc, ca)
        return (ab, ca, bc) if ab <= ca else (ca, ab, bc)
    if ab <= ca:
        return (bc, ab, ca)
    return (bc, ca, ab) if bc <= ca else (ca, bc, ab)


def direct_congruence_key_int(ab: int, bc: int, ca: int, C: int) -> tuple:
    if C > 0:
        return (*min((ab, bc, ca), (bc, ca, ab), (ca, ab, bc)), 0)
    if C < 0:
        return (*min((ca, bc, ab), (bc, ab, ca), (ab, ca, bc)), 0)
    return (*min((ab, bc, ca), (bc, ca, ab), (ca, ab, bc), (ca, bc, ab), (bc, ab, ca), (ab, ca, bc)), 1)


def _similarity_int(ab: int, bc: int, ca: int, C: int, reflections: bool) -> tuple:
    # Shape parameter for base v, unit u, third w is
    # (|vu|^2 + |vw|^2 - |uw|^2 + 2i cross(v,u,w)) / (2|vu|^2).
    # Even relabelings of (a,b,c) keep the sign of C, odd ones flip it.
    c2 = 2 * C
    cands = (
        (ab + ca - bc, c2, 2 * ab),  # (a,b,c)
        (ab + bc - ca, -c2, 2 * ab),  # (b,a,c)
        (bc + ab - ca, c2, 2 * bc),  # (b,c,a)
        (bc + ca - ab, -c2, 2 * bc),  # (c,b,a)
        (ca + bc - ab, c2, 2 * ca),  # (c,a,b)
        (ca + ab - bc, -c2, 2 * ca),  # (a,c,b)
    )
    best_re, best_im, best_den = cands[0]
    if reflections and best_im > 0:
        best_im = -best_im
    for re, im, den in cands[1:]:
        if reflections and im > 0:
            im = -im
        lhs = re * best_den
        rhs = best_re * den
        if lhs < rhs or (lhs == rhs and im * best_den < best_im * den):
            best_re, best_im, best_den = re, im, den
    g = gcd(best_re, best_den)
    h = gcd(best_im, best_den)
    return (best_re // g, best_den // g, best_im // h, best_den // h)


def similarity_direct_key_int(ab: int, bc: int, ca: int, C: int) -> tuple:
    return _similarity_int(ab, bc, ca, C, False)


def similarity_full_key_int(ab: int, bc: int, ca: int, C: int) -> tuple:
    return _similarity_int(ab, bc, ca, C, True)


INT_KERNELS = {
    KeyKind.CONGRUENCE_FULL: congruence_key_int,
    KeyKind.CONGRUENCE_DIRECT: direct_congruence_key_int,
    KeyKind.SIMILARITY_DIRECT: similarity_direct_key_int,
    KeyKind.SIMILARITY_FULL: similarity_full_key_int,
}


def key_from_int(kind: KeyKind, key: tuple, scale: int = 1):
    """Translate an integer-kernel key back to the public key type.

    ``scale`` is the factor the coordinates were multiplied by; congruence
    keys carry it squared, similarity keys do not depend on it.
    """
    kind = KeyKind(kind)
    s2 = scale * scale
    if kind is KeyKind.CONGRUENCE_FULL:
        return tuple(Fraction(v, s2) for v in key)
    if kind is KeyKind.CONGRUENCE_DIRECT:
        return DirectCongruenceKey(tuple(Fraction(v, s2) for v in key[:3]), bool(key[3]))
    re_n, re_d, im_n, im_d = key
    return SimilarityKey(GaussRat(Fraction(re_n, re_d), Fraction(im_n, im_d)), kind is KeyKind.SIMILARITY_FULL)


def format_key(kind: KeyKind, key) -> str:
    kind = KeyKind(kind)
    if kind is KeyKind.CONGRUENCE_FULL:
        return "(" + ",".join(_fmt(v) for v in key) + ")"
    if kind is KeyKind.CONGRUENCE_DIRECT:
        tag = ";degenerate" if key.degenerate else ""
        return "(" + ",".join(_fmt(v) for v in key.sides) + ")" + tag
    return str(key.shape)


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# Vectorized kernels: same keys as the integer kernels, on int64 arrays.
# Callers must make sure the products below cannot overflow (see
# ``VECTOR_SIDE_LIMIT``).

VECTOR_SIDE_LIMIT = 1 << 29


def _lex_less(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    less = np.zeros(len(A), dtype=bool)
    equal = np.ones(len(A), dtype=bool)
    for col in range(A.shape[1]):
        less |= equal & (A[:, col] < B[:, col])
        equal &= A[:, col] == B[:, col]
    return less


def _lex_min(*cands: np.ndarray) -> np.ndarray:
    best = cands[0]
    for cand in cands[1:]:
        best = np.where(_lex_less(cand, best)[:, None], cand, best)
    return best


def congruence_keys_vec(ab, bc, ca, C) -> np.ndarray:
    return np.sort(np.stack([ab, bc, ca], axis=1), axis=1)


def direct_congruence_keys_vec(ab, bc, ca, C) -> np.ndarray:
    pos = [np.stack(s, axis=1) for s in ((ab, bc, ca), (bc, ca, ab), (ca, ab, bc))]
    neg = [np.stack(s, axis=1) for s in ((ca, bc, ab), (bc, ab, ca), (ab, ca, bc))]
    out = np.where((C > 0)[:, None], _lex_min(*pos), _lex_min(*neg))
    flat = C == 0
    if flat.any():
        out[flat] = _lex_min(*(s[flat] for s in pos + neg))
    return np.concatenate([out, flat.astype(np.int64)[:, None]], axis=1)


def _similarity_keys_vec(ab, bc, ca, C, reflections: bool) -> np.ndarray:
    c2 = 2 * C
    cands = (
        (ab + ca - bc, c2, 2 * ab),
        (ab + bc - ca, -c2, 2 * ab),
        (bc + ab - ca, c2, 2 * bc),
        (bc + ca - ab, -c2, 2 * bc),
        (ca + bc - ab, c2, 2 * ca),
        (ca + ab - bc, -c2, 2 * ca),
    )
    best_re, best_im, best_den = (x.copy() for x in cands[0])
    if reflections:
        best_im = -np.abs(best_im)
    for re, im, den in cands[1:]:
        if reflections:
            im = -np.abs(im)
        lhs = re * best_den
        rhs = best_re * den
        take = (lhs < rhs) | ((lhs == rhs) & (im * best_den < best_im * den))
        best_re = np.where(take, re, best_re)
        best_im = np.where(take, im, best_im)
        best_den = np.where(take, den, best_den)
    g = np.gcd(best_re, best_den)
    h = np.gcd(best_im, best_den)
    return np.stack([best_re // g, best_den // g, best_im // h, best_den // h], axis=1)


def similarity_direct_keys_vec(ab, bc, ca, C) -> np.ndarray:
    return _similarity_keys_vec(ab, bc, ca, C, False)


def similarity_full_keys_vec(ab, bc, ca, C) -> np.ndarray:
    return _similarity_keys_vec(ab, bc, ca, C, True)


VECTOR_KERNELS = {
    KeyKind.CONGRUENCE_FULL: congruence_keys_vec,
    KeyKind.CONGRUENCE_DIRECT: direct_congruence_keys_vec,
    KeyKind.SIMILARITY_DIRECT: similarity_direct_keys_vec,
    KeyKind.SIMILARITY_FULL: similarity_full_keys_vec,
}
