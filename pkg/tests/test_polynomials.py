"""The counting polynomial, its specializations, and the basis expansion.

Oracle: a hand-derived closed form for the order-3 counting polynomial,
checked symbolically against brute-force counts on integer rows and then
used to pin rational evaluations, including points where the integer count
and the polynomial disagree in meaning (weakly increasing vs arbitrary).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asmref.config import Budget
from asmref.errors import (
    BudgetError,
    IdentityViolationError,
    NonIntegralError,
    ValidationError,
)
from asmref.polynomials import (
    BinomBasisExpansion,
    PolyMulti,
    alpha_eval,
    alpha_polynomial,
    expand_in_binomial_basis,
    gn_poly,
    sample_rational_points,
    verify_alpha_identities,
    verify_gn_reflection,
)
from asmref.triangles import alpha_count

from reference_tables import EXTENDED_MATRICES


def alpha3_closed_form(x, y, z) -> Fraction:
    """Order-3 counting polynomial, derived by summing the two-row counts.

    Summing (b - a + 1) over interlacing middle rows a <= y <= b with
    x <= a, b <= z, a < b, minus the correction for the a = b boundary,
    collapses to the expression below.
    """
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    term1 = (y - x) * ((z + 1) * (z + 2) - y * (y + 1)) / 2
    term2 = (z - y + 1) * (y * (y - 1) - x * (x - 1)) / 2
    term3 = (z - y + 1) * (z - y + 2) / 2
    return term1 - term2 + term3 - 1


def test_closed_form_matches_counts_on_integer_rows():
    for x in range(0, 5):
        for y in range(x, 5):
            for z in range(y, 5):
                assert alpha3_closed_form(x, y, z) == alpha_count((x, y, z))


def test_alpha_eval_matches_closed_form_on_rational_points():
    rng = random.Random(7)
    for _ in range(40):
        pt = tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(3))
        assert alpha_eval(3, pt) == alpha3_closed_form(*pt)


def test_alpha_eval_decreasing_integer_point():
    # the polynomial extends past the weakly increasing region; at the
    # reversed staircase it is negative, not a count
    assert alpha_eval(3, (3, 2, 1)) == -1
    assert alpha3_closed_form(3, 2, 1) == -1


def test_alpha_eval_known_values():
    assert alpha_eval(3, (1, 2, 3)) == 7
    assert alpha_eval(3, (1, 1, 2)) == 2
    assert alpha_eval(3, (1, 1, 1)) == 0
    assert alpha_eval(3, (1, 4, 5)) == 23
    assert alpha_eval(1, (Fraction(22, 7),)) == 1
    assert alpha_eval(2, (Fraction(1, 2), Fraction(7, 2))) == 4


def test_alpha_eval_agrees_with_counts_outside_sample_grid():
    # the interpolation grid for order n stops at n*n - 1; extrapolated
    # integer evaluations must still be counts
    for n in range(1, 5):
        rows = [
            tuple(range(50, 50 + n)),
            tuple(2 * i + 40 for i in range(n)),
            tuple([30] * n),
        ]
        for row in rows:
            assert alpha_eval(n, row) == alpha_count(row)


def test_alpha_polynomial_degree_bound():
    for n in range(1, 5):
        degrees = alpha_polynomial(n).newton_degrees()
        assert len(degrees) == n
        assert all(deg <= n - 1 for deg in degrees)
    # degree n-1 is attained in each variable for n >= 2
    assert alpha_polynomial(3).newton_degrees() == (2, 2, 2)


def test_alpha_polynomial_budget():
    with pytest.raises(BudgetError):
        alpha_polynomial(7, Budget(alpha_poly_max_n=6))
    with pytest.raises(ValidationError):
        alpha_polynomial(0)


def test_interpolate_reproduces_samples():
    nodes = ((0, 1, 2), (-1, 0, 1))
    values = [Fraction(x * x + 3 * y) for x, y in itertools.product(*nodes)]
    poly = PolyMulti.interpolate(nodes, values)
    for x, y in itertools.product(range(-3, 4), repeat=2):
        assert poly.evaluate((x, y)) == x * x + 3 * y


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(min_value=-8, max_value=8), min_size=4, max_size=4),
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=-5, max_value=5),
)
def test_interpolate_exact_for_low_degree(coeffs, px, py):
    a, b, c, d = coeffs

    def f(x, y):
        return a + b * x + c * y + d * x * y

    nodes = ((0, 1), (0, 1))
    poly = PolyMulti.interpolate(
        nodes, [Fraction(f(x, y)) for x, y in itertools.product(*nodes)]
    )
    assert poly.evaluate((px, py)) == f(px, py)
    assert poly.evaluate((Fraction(1, 2), Fraction(-3, 2))) == f(
        Fraction(1, 2), Fraction(-3, 2)
    )


def test_interpolate_rejects_bad_shapes():
    with pytest.raises(ValidationError):
        PolyMulti.interpolate(((0, 0),), [Fraction(1), Fraction(2)])
    with pytest.raises(ValidationError):
        PolyMulti.interpolate(((0, 1),), [Fraction(1)])


def test_gn_poly_matches_counts_at_integer_shifts():
    # variable r perturbs staircase entry n-d+r; integer shift vectors that
    # keep the row weakly increasing must give genuine counts
    for n, d in ((3, 1), (4, 1), (3, 2), (4, 2), (4, 3)):
        poly = gn_poly(n, d)
        shifts = itertools.product(range(0, 3), repeat=d)
        for shift in shifts:
            row = list(range(1, n + 1))
            for r, z in enumerate(shift):
                row[n - d + r] += z
            if any(a > b for a, b in zip(row, row[1:])):
                continue
            assert poly.evaluate(shift) == alpha_count(tuple(row))


def test_gn_poly_relates_to_full_polynomial():
    # specialization pins the first n-d variables at the staircase
    n, d = 4, 2
    poly = gn_poly(n, d)
    rng = random.Random(11)
    for _ in range(15):
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        y = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        full = alpha_eval(n, (1, 2, 3 + x, 4 + y))
        assert poly.evaluate((x, y)) == full


def test_gn_poly_budget_and_validation():
    with pytest.raises(BudgetError):
        gn_poly(11, 2)
    with pytest.raises(BudgetError):
        gn_poly(3, 3, Budget(gn_poly_max_n={1: 12, 2: 10}))
    with pytest.raises(ValidationError):
        gn_poly(2, 3)
    with pytest.raises(ValidationError):
        gn_poly(3, 0)


def test_expansion_coefficients_match_extended_arrays():
    for n in (3, 4, 5):
        expansion = expand_in_binomial_basis(gn_poly(n, 2), n, 2)
        expected = EXTENDED_MATRICES[n]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert expansion.coefficient((i, j)) == expected[i - 1][j - 1]
        assert expansion.is_integral
        grid = expansion.integer_grid()
        assert len(grid) == n * n


def test_expansion_reconstructs_polynomial():
    for n, d in ((3, 1), (3, 2), (4, 2)):
        poly = gn_poly(n, d)
        expansion = expand_in_binomial_basis(poly, n, d)
        rng = random.Random(5)
        for _ in range(12):
            pt = tuple(
                Fraction(rng.randint(-25, 25), rng.randint(1, 6)) for _ in range(d)
            )
            assert expansion.evaluate(pt) == poly.evaluate(pt)


def test_expansion_flags_non_integral_coefficients():
    # f(x) = x/2 on nodes 0,1 has expansion coefficients 0, 1/2
    poly = PolyMulti.interpolate(((0, 1),), [Fraction(0), Fraction(1, 2)])
    expansion = expand_in_binomial_basis(poly, 2, 1)
    assert not expansion.is_integral
    with pytest.raises(NonIntegralError):
        expansion.integer_grid()


def test_expansion_coefficient_index_validation():
    expansion = expand_in_binomial_basis(gn_poly(3, 2), 3, 2)
    with pytest.raises(ValidationError):
        expansion.coefficient((0, 1))
    with pytest.raises(ValidationError):
        expansion.coefficient((1, 4))
    with pytest.raises(ValidationError):
        expansion.coefficient((1,))


def test_sample_rational_points_deterministic():
    pts1 = sample_rational_points(3, 20, 9, 123)
    pts2 = sample_rational_points(3, 20, 9, 123)
    pts3 = sample_rational_points(3, 20, 9, 124)
    assert pts1 == pts2
    assert pts1 != pts3
    assert len(pts1) == 20
    for pt in pts1:
        assert len(pt) == 3
        for value in pt:
            assert isinstance(value, Fraction)
            assert 1 <= value.denominator <= 7
            assert abs(value) <= 9 * 7


def test_verify_alpha_identities_names_and_passes():
    reports = verify_alpha_identities(3, num_points=6)
    names = [r.claim for r in reports]
    assert names == [
        "translation",
        "reversal",
        "rotation",
        "six-term",
        "symmetric-difference-annihilation",
        "shift-expansion",
    ]
    assert all(r.passed for r in reports)


def test_verify_alpha_identities_budget():
    with pytest.raises(BudgetError):
        verify_alpha_identities(6)


def test_verify_gn_reflection_passes():
    reports = verify_gn_reflection(3, 1, num_points=8)
    assert [r.claim for r in reports] == ["gn-reflection"]
    reports = verify_gn_reflection(3, 2, num_points=8)
    assert [r.claim for r in reports] == ["gn-reflection", "gn-six-term"]
    assert all(r.passed for r in reports)


def test_identity_violation_error_carries_witness():
    err = IdentityViolationError("demo", (1, 2), Fraction(3), Fraction(4))
    assert err.identity == "demo"
    assert err.point == (1, 2)
    assert err.lhs == 3 and err.rhs == 4
    assert "demo" in str(err)


def test_reflection_of_specialization_at_integer_points():
    # the reflected argument of the one-variable specialization lands on
    # integers where both sides are counts with opposite orientation
    n = 4
    poly = gn_poly(n, 1)
    sign = 1 if (n - 1) % 2 == 0 else -1
    for x in range(0, 4):
        assert poly.evaluate((x,)) == sign * poly.evaluate((-2 * n - x,))
