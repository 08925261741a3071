from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fanocalc import exact
from fanocalc.exact import (DeltaMismatchError, arg_less_than, cos_sq_pi_over,
                            is_negative_real, quad, quad_pow, tan_sq_pi_over)

rationals = st.fractions(min_value=-10, max_value=10,
                         max_denominator=6)
deltas = st.fractions(max_value=Fraction(-1, 6), min_value=-20,
                      max_denominator=6)


def test_quad_pow_fourth_power_of_one_plus_i():
    z = quad(1, 1, -1)
    assert quad_pow(z, 4) == quad(-4, 0, -1)


def test_quad_pow_cube_with_delta_minus_twelve():
    # (2+s)^3 with s^2 = -12: 8 + 12s + 6s^2 + s^3 = 8 + 12s - 72 - 12s.
    z = quad(2, 1, -12)
    assert quad_pow(z, 3) == quad(-64, 0, -12)


def test_quad_pow_cube_with_delta_minus_three():
    # (3+s)^3 with s^2 = -3: 27 + 27s + 9s^2 + s^3 = 27 + 27s - 27 - 3s.
    z = quad(3, 1, -3)
    assert quad_pow(z, 3) == quad(0, 24, -3)


def test_is_negative_real():
    assert is_negative_real(quad(-64, 0, -12))
    assert not is_negative_real(quad(0, 24, -3))
    assert is_negative_real(quad(-4, 0, -1))
    assert not is_negative_real(quad(1, 0, -1))


def test_arg_less_than_exact_third():
    # arg(1 + sqrt(-3)) is exactly pi/3: the cube is the real number -8.
    z = quad(1, 1, -3)
    assert quad_pow(z, 3) == quad(-8, 0, -3)
    assert not arg_less_than(z, 3)


def test_arg_less_than_quarter_below_third():
    z = quad(2, 1, -4)
    assert arg_less_than(z, 3)
    assert (quad_pow(z, 2).im_sign(), quad_pow(z, 3).im_sign()) == (1, 1)


def test_arg_less_than_not_strict_at_quarter():
    assert not arg_less_than(quad(1, 1, -1), 4)


def test_arg_less_than_rejects_zero_and_bad_inputs():
    with pytest.raises(ValueError):
        arg_less_than(quad(0, 0, -1), 3)
    with pytest.raises(ValueError):
        arg_less_than(quad(1, 1, -1), 1)
    with pytest.raises(ValueError):
        arg_less_than(quad(-1, -1, -1), 3)


def test_trig_lookup_tables():
    assert tan_sq_pi_over(6) == Fraction(1, 3)
    assert tan_sq_pi_over(4) == 1
    assert tan_sq_pi_over(3) == 3
    assert tan_sq_pi_over(5) is None
    assert tan_sq_pi_over(2) is None
    assert cos_sq_pi_over(2) == 0
    assert cos_sq_pi_over(3) == Fraction(1, 4)
    assert cos_sq_pi_over(4) == Fraction(1, 2)
    assert cos_sq_pi_over(6) == Fraction(3, 4)
    assert cos_sq_pi_over(5) is None
    with pytest.raises(ValueError):
        tan_sq_pi_over(1)
    with pytest.raises(ValueError):
        cos_sq_pi_over(0)


def test_delta_mixing_rejected():
    with pytest.raises(DeltaMismatchError):
        quad(1, 1, -1) + quad(1, 1, -2)
    with pytest.raises(ValueError):
        quad(1, 1, 2)


@given(rationals, rationals, deltas,
       st.integers(min_value=0, max_value=12),
       st.integers(min_value=0, max_value=12))
def test_quad_pow_multiplicative(a, b, delta, m, k):
    z = quad(a, b, delta)
    assert quad_pow(z, m + k) == quad_pow(z, m) * quad_pow(z, k)


@given(rationals, rationals, rationals, rationals, deltas)
def test_norm_multiplicative(a, b, c, d, delta):
    z, w = quad(a, b, delta), quad(c, d, delta)
    assert (z * w).norm() == z.norm() * w.norm()


@given(rationals, rationals, deltas)
def test_norm_positive_definite(a, b, delta):
    z = quad(a, b, delta)
    assert z.norm() >= 0
    assert (z.norm() == 0) == z.is_zero()


@given(st.fractions(min_value=Fraction(1, 6), max_value=8, max_denominator=6),
       st.fractions(min_value=Fraction(1, 6), max_value=8, max_denominator=6),
       deltas, st.integers(min_value=2, max_value=9))
def test_arg_less_than_antitone(a, b, delta, q):
    z = quad(a, b, delta)
    if arg_less_than(z, q):
        for smaller in range(2, q):
            assert arg_less_than(z, smaller)


def test_exact_angle_for_admissible_dimensions():
    for n in (2, 3, 5):
        tan_sq = tan_sq_pi_over(n + 1)
        for tau in (1, 2, 3):
            delta = -Fraction(tau * tau) * tan_sq
            assert is_negative_real(quad_pow(quad(tau, 1, delta), n + 1))
