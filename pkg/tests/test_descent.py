"""Rank bounds and finite point sets for quartic conditions."""

from math import gcd, isqrt

import pytest

from diophant.descent import (
    finite_curve_points,
    nagell_lutz_points,
    two_isogeny_rank_bound,
)


# Tunnell/classical results: 1, 2, 3 are not congruent numbers; 5, 6, 7 are,
# and the curves y^2 = x^3 - n^2 x have rank exactly 1 for these.
@pytest.mark.parametrize("n,rank", [(1, 0), (2, 0), (3, 0), (5, 1), (6, 1), (7, 1)])
def test_congruent_number_curves(n, rank):
    bound = two_isogeny_rank_bound(0, -n * n)
    assert bound.lower <= rank <= bound.upper
    assert bound.upper == rank


def test_singular_cubic_rejected():
    with pytest.raises(ValueError):
        two_isogeny_rank_bound(2, 1)
    with pytest.raises(ValueError):
        two_isogeny_rank_bound(3, 0)


def test_nagell_lutz_on_classical_curves():
    # y^2 = x^3 + 1 has torsion group of order 6
    assert nagell_lutz_points(0, 0, 1) == [(-1, 0), (0, -1), (0, 1), (2, -3), (2, 3)]
    # y^2 = x^3 - x has full 2-torsion and nothing else
    assert nagell_lutz_points(0, -1, 0) == [(-1, 0), (0, 0), (1, 0)]


def _square_values(coeffs, height):
    out = set()
    for u in range(-height, height + 1):
        for v in range(0, height + 1):
            if (u or v) and gcd(u, v) == 1 and (v > 0 or u > 0):
                val = sum(c * u ** (4 - i) * v ** i for i, c in enumerate(coeffs))
                if val >= 0 and isqrt(val) ** 2 == val:
                    out.add((u, v))
    return out


def test_finite_curve_points_factored_quartic():
    coeffs = [0, -2, -6, -4, 0]  # -2 u v (u + v)(u + 2 v)
    pts = finite_curve_points(coeffs)
    assert pts == [(0, 1), (1, -1), (1, 0), (2, -1)]
    # every small square value is accounted for
    normalized = {(u, v) if u > 0 or (u == 0 and v > 0) else (-u, -v) for u, v in _square_values(coeffs, 40)}
    assert normalized <= set(pts)


def test_finite_curve_points_returns_none_without_root():
    assert finite_curve_points([1, 0, 0, 0, 1]) is None


def test_finite_curve_points_returns_none_for_positive_rank():
    # u v (u - v)(u + v) * 6 ~ congruent number 6 curve, which has rank 1
    assert finite_curve_points([0, 6, 0, -6, 0]) is None
