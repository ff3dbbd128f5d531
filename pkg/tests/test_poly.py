import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestlab.errors import NonIntegralResultError, SingularMatrixError
from forestlab.intpoly import (
    IntPoly,
    binomial,
    divide_by_power,
    evaluate,
    interpolate,
    one_plus_z_power,
    reconstruct_details,
    reconstruct_from_prefix,
    shift_sub,
    solve_exact,
    unshift_sub,
)

small_polys = st.lists(st.integers(-100, 100), min_size=0, max_size=10).map(IntPoly)


def test_normalization_and_degree():
    assert IntPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert IntPoly(()).degree() == -1
    assert IntPoly((0,)).is_zero()
    assert IntPoly((3,)).degree() == 0


def test_arithmetic_basics():
    p = IntPoly((1, 1))  # 1 + z
    assert (p * p).coeffs == (1, 2, 1)
    assert (p - p).is_zero()
    assert p.mul(p, max_degree=1).coeffs == (1, 2)
    assert p.shift_up(2).coeffs == (0, 0, 1, 1)
    assert p.scale(3).coeffs == (3, 3)


@given(small_polys, small_polys, st.integers(-5, 5))
@settings(max_examples=100)
def test_evaluation_is_ring_homomorphism(p, q, v):
    assert evaluate(p * q, v) == evaluate(p, v) * evaluate(q, v)
    assert evaluate(p + q, v) == evaluate(p, v) + evaluate(q, v)


def test_binomial_matches_comb_on_nonnegatives():
    for n in range(0, 12):
        for k in range(0, 8):
            assert binomial(n, k) == math.comb(n, k)
    # generalized upper argument
    assert binomial(-2, 3) == -4
    assert binomial(-1, 2) == 1


def test_one_plus_z_power():
    assert one_plus_z_power(3).coeffs == (1, 3, 3, 1)
    assert one_plus_z_power(0).coeffs == (1,)


def test_solve_exact_and_singularity():
    sol = solve_exact([[2, 0], [0, 4]], [1, 1])
    assert sol == [Fraction(1, 2), Fraction(1, 4)]
    with pytest.raises(SingularMatrixError):
        solve_exact([[1, 1], [2, 2]], [1, 2])


def test_interpolate_exact_and_distinct_nodes():
    p = IntPoly((5, -3, 2))
    pts = [(a, evaluate(p, a)) for a in (0, 1, 2)]
    assert interpolate(pts).coeffs == p.coeffs
    with pytest.raises(ValueError):
        interpolate([(1, 1), (1, 2)])
    with pytest.raises(NonIntegralResultError):
        interpolate([(0, 0), (2, 1)])  # slope 1/2


@given(small_polys)
@settings(max_examples=100)
def test_shift_round_trip(p):
    assert unshift_sub(shift_sub(p)).coeffs == p.coeffs
    assert shift_sub(unshift_sub(p)).coeffs == p.coeffs


def test_shift_sub_is_substitution():
    p = IntPoly((0, 0, 1))  # z^2
    assert shift_sub(p).coeffs == (1, -2, 1)  # (y-1)^2


def test_divide_by_power():
    p = IntPoly((0, 0, 3, 1))
    assert divide_by_power(p, 2).coeffs == (3, 1)
    with pytest.raises(NonIntegralResultError):
        divide_by_power(IntPoly((1, 2)), 1)


@given(
    st.integers(0, 14),
    st.integers(0, 6),
    st.lists(st.integers(-30, 30), min_size=7, max_size=7),
    st.integers(0, 0),
)
@settings(max_examples=100)
def test_prefix_reconstruction_round_trip(dp, k, coeffs, _):
    d = dp + k
    poly = IntPoly()
    for i, c in zip(range(dp, d + 1), coeffs):
        poly = poly + one_plus_z_power(i).scale(c)
    prefix = [poly.coeff(t) for t in range(k + 1)]
    rec = reconstruct_details(prefix, d, dp)
    assert rec.polynomial.coeffs == poly.coeffs


def test_reconstruction_validates_input():
    with pytest.raises(ValueError):
        reconstruct_from_prefix([1, 2], D=5, Dp=3)  # needs 3 coefficients
    with pytest.raises(ValueError):
        reconstruct_from_prefix([1], D=2, Dp=3)
