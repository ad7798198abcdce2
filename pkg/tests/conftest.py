"""Shared helpers: seeded random generators for exact objects and an
independent triangle-interior oracle used to cross-check enumeration."""

from __future__ import annotations

import random
from fractions import Fraction

from mpcquant.exact import Covector, UnimodularMatrix


def random_unimodular(rng: random.Random, k: int = 2, bound: int = 5) -> UnimodularMatrix:
    """Rejection-sample an integer matrix with entries in [-bound, bound]
    and determinant +/-1."""
    if k == 1:
        return UnimodularMatrix([[rng.choice((1, -1))]])
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]
        try:
            return UnimodularMatrix(rows)
        except ValueError:
            continue


def random_fraction(rng: random.Random, lo: int, hi: int, max_den: int = 8) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def random_covector(rng: random.Random, k: int, lo: int = -10, hi: int = 10) -> Covector:
    return Covector(random_fraction(rng, lo, hi) for _ in range(k))


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def strictly_inside_triangle(a, b, c, x) -> bool:
    """Exact interior test by edge orientations, independent of any
    halfspace machinery.  Degenerate triangles have empty interior."""
    d1 = _cross(a, b, x)
    d2 = _cross(b, c, x)
    d3 = _cross(c, a, x)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)
