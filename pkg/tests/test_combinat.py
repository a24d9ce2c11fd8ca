"""Binomial conventions, harmonic numbers, and the product formulas."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asmref.combinat import (
    binom,
    binom_at,
    binom_plus,
    harmonic,
    refined_asm_count,
    total_asm_count,
)
from asmref.errors import NonIntegralError

from reference_tables import REFINED_TRIANGLE, TOTALS

ints = st.integers(min_value=-40, max_value=40)
small_nonneg = st.integers(min_value=0, max_value=40)


def test_binom_nonneg_matches_math_comb():
    for n in range(0, 12):
        for k in range(0, 14):
            assert binom(n, k) == math.comb(n, k)


def test_binom_negative_upper_argument():
    # falling-factorial convention: C(-1, k) = (-1)^k
    for k in range(0, 8):
        assert binom(-1, k) == (-1) ** k
    assert binom(-3, 2) == 6
    assert binom(-2, 3) == -4


def test_binom_negative_lower_argument_is_zero():
    assert binom(5, -1) == 0
    assert binom(-5, -2) == 0
    assert binom(0, -1) == 0


def test_binom_plus_zero_for_negative_upper():
    assert binom_plus(-1, 0) == 0
    assert binom_plus(-2, 3) == 0
    assert binom_plus(3, 1) == 3
    assert binom_plus(3, -1) == 0
    for n in range(0, 9):
        for k in range(-2, 11):
            assert binom_plus(n, k) == binom(n, k)


@given(ints, st.integers(min_value=-3, max_value=14))
def test_binom_pascal(n, k):
    assert binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1)


@given(ints, st.integers(min_value=0, max_value=14))
def test_binom_sign_reflection(n, k):
    assert binom(n, k) == (-1) ** k * binom(k - n - 1, k)


@given(small_nonneg, small_nonneg, st.integers(min_value=0, max_value=20))
def test_binom_chu_vandermonde(m, n, k):
    lhs = binom(m + n, k)
    rhs = sum(binom(m, j) * binom(n, k - j) for j in range(0, k + 1))
    assert lhs == rhs


def test_binom_at_rational_upper():
    assert binom_at(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom_at(Fraction(5, 2), 0) == 1
    assert binom_at(Fraction(5, 2), -1) == 0
    for n in range(-6, 7):
        for k in range(0, 6):
            assert binom_at(Fraction(n), k) == binom(n, k)


def test_harmonic_values():
    assert harmonic(0) == 0
    assert harmonic(-3) == 0
    assert harmonic(1) == 1
    assert harmonic(4) == Fraction(25, 12)


@given(st.integers(min_value=1, max_value=60))
def test_harmonic_difference(m):
    assert harmonic(m) - harmonic(m - 1) == Fraction(1, m)


def test_total_asm_count_published_values():
    for n, expected in enumerate(TOTALS):
        assert total_asm_count(n) == expected


def test_refined_asm_count_published_triangle():
    for n, row in REFINED_TRIANGLE.items():
        assert tuple(refined_asm_count(n, k) for k in range(1, n + 1)) == row


def test_refined_row_sums_to_total():
    for n in range(1, 16):
        assert sum(refined_asm_count(n, k) for k in range(1, n + 1)) == total_asm_count(n)


def test_refined_row_symmetry():
    for n in range(1, 16):
        for k in range(1, n + 1):
            assert refined_asm_count(n, k) == refined_asm_count(n, n + 1 - k)


def test_refined_first_column_shifts_totals():
    for n in range(1, 14):
        assert refined_asm_count(n, 1) == total_asm_count(n - 1)


def test_refined_neighbour_ratio():
    # A(n,k+1)/A(n,k) = (n-k)(n+k-1) / (k(2n-k-1)) for 1 <= k < n
    for n in range(2, 12):
        for k in range(1, n):
            lhs = refined_asm_count(n, k + 1) * k * (2 * n - k - 1)
            rhs = refined_asm_count(n, k) * (n - k) * (n + k - 1)
            assert lhs == rhs


def test_refined_count_out_of_range():
    with pytest.raises(ValueError):
        refined_asm_count(4, 0)
    with pytest.raises(ValueError):
        refined_asm_count(4, 5)
    with pytest.raises(ValueError):
        total_asm_count(-1)


def test_nonintegral_error_is_value_error():
    assert issubclass(NonIntegralError, Exception)
