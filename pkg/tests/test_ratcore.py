from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from probdowling import (Params, binom, binom_general, degen_falling, falling,
                         format_rational, rat)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=12)
small_n = st.integers(min_value=0, max_value=9)


def test_falling_frozen_values():
    assert falling(5, 0) == 1
    assert falling(5, 3) == 60            # 5*4*3
    assert falling(Fraction(1, 2), 2) == Fraction(-1, 4)   # (1/2)(-1/2)


def test_degen_falling_frozen_values():
    assert degen_falling(3, 0, 7) == 1
    assert degen_falling(3, 2, Fraction(1, 2)) == Fraction(15, 2)  # 3*(5/2)
    assert degen_falling(2, 3, 0) == 8


@given(x=rationals, n=small_n)
def test_degen_falling_lambda_one_is_falling(x, n):
    assert degen_falling(x, n, 1) == falling(x, n)


@given(x=rationals, n=small_n)
def test_degen_falling_lambda_zero_is_power(x, n):
    assert degen_falling(x, n, 0) == x**n


@given(x=rationals, n=st.integers(min_value=1, max_value=9), lam=rationals)
def test_degen_falling_product_recurrence(x, n, lam):
    assert degen_falling(x, n, lam) == \
        degen_falling(x, n - 1, lam) * (x - (n - 1) * lam)


def test_binom_frozen_values():
    assert binom(4, 2) == 6
    assert binom(3, 0) == 1
    assert binom(2, 5) == 0


@given(n=st.integers(min_value=1, max_value=12),
       k=st.integers(min_value=1, max_value=12))
def test_binom_pascal(n, k):
    assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)


def test_binom_general_frozen_values():
    assert binom_general(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom_general(Fraction(7, 3), 0) == 1
    assert binom_general(4, 2) == binom(4, 2)


@given(x=rationals, n=small_n, lam=rationals)
def test_canonical_form_closure(x, n, lam):
    v = degen_falling(x, n, lam)
    assert v.denominator > 0
    assert gcd(v.numerator, v.denominator) == 1


def test_rat_and_format_round_trip():
    assert rat("1/3") == Fraction(1, 3)
    assert rat("-7") == -7
    assert format_rational(Fraction(11, 3)) == "11/3"
    assert format_rational(Fraction(4, 2)) == "2"
    assert rat(format_rational(Fraction(-5, 15))) == Fraction(-1, 3)
    with pytest.raises(TypeError):
        rat(0.5)


def test_params_validation():
    p = Params(2, "1/3", 0)
    assert p.lam == Fraction(1, 3) and p.r == 0
    with pytest.raises(ValueError):
        Params(0, Fraction(1))
    with pytest.raises(ValueError):
        Params(1, Fraction(1), -1)
