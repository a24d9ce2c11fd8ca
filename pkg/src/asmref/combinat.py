"""Exact binomial, harmonic, and product-formula arithmetic.

Everything here is exact: integers are Python ints, rationals are
fractions.Fraction. The binomial coefficient is the falling-factorial version
that stays defined for a negative upper argument.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import NonIntegralError, ValidationError


def binom(n: int, k: int) -> int:
    """n(n-1)...(n-k+1) / k! for k >= 0, and 0 for k < 0."""
    if k < 0:
        return 0
    num = 1
    for r in range(k):
        num *= n - r
    # a product of k consecutive integers is divisible by k!
    return num // math.factorial(k)


def binom_plus(n: int, k: int) -> int:
    """binom(n, k) for n >= 0, and 0 for n < 0."""
    return binom(n, k) if n >= 0 else 0


def binom_at(x, k: int) -> Fraction:
    """The degree-k binomial polynomial x(x-1)...(x-k+1)/k! at a rational point."""
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for r in range(k):
        num *= Fraction(x) - r
    return num / math.factorial(k)


@lru_cache(maxsize=None)
def harmonic(m: int) -> Fraction:
    """Sum of 1/d for d = 1..m, and 0 for m < 1."""
    if m < 1:
        return Fraction(0)
    return harmonic(m - 1) + Fraction(1, m)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralError(f"{what} evaluated to the non-integer {value}")
    return value.numerator


@lru_cache(maxsize=None)
def total_asm_count(n: int) -> int:
    """Number of alternating sign matrices of order n, by the product formula."""
    if n < 0:
        raise ValidationError(f"order must be nonnegative, got {n}")
    value = Fraction(1)
    for j in range(n):
        value *= Fraction(math.factorial(3 * j + 1), math.factorial(n + j))
    return _as_int(value, f"total count at n={n}")


@lru_cache(maxsize=None)
def refined_asm_count(n: int, k: int) -> int:
    """Number of order-n ASMs whose first row has its 1 in column k (product formula)."""
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if not 1 <= k <= n:
        raise ValidationError(f"column index must lie in 1..{n}, got {k}")
    value = Fraction(binom(n + k - 2, k - 1))
    value *= Fraction(math.factorial(2 * n - k - 1), math.factorial(n - k))
    for j in range(n - 1):
        value *= Fraction(math.factorial(3 * j + 1), math.factorial(n + j))
    return _as_int(value, f"refined count at n={n}, k={k}")
