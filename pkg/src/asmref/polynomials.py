"""Exact polynomial machinery for the triangle-counting function.

The counting function of alpha_count extends to a polynomial of degree n - 1
in each bottom-row entry.  This module interpolates that polynomial from exact
counts, builds the specializations obtained by perturbing only the last few
entries of the staircase row, expands those specializations in a shifted
binomial product basis, and checks the operator and symmetry identities the
counting function is known to satisfy.

All interpolation is tensor-product Newton form over integer node grids, with
fractions.Fraction coefficients, so every evaluation is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .combinat import binom, binom_at
from .config import DEFAULT_BUDGET, DEFAULT_SEED, Budget
from .errors import (
    BudgetError,
    IdentityViolationError,
    NonIntegralError,
    ValidationError,
)
from .linalg import invert_matrix
from .reports import VerificationReport
from .triangles import alpha_count


def _divided_differences(nodes: Sequence[int], values: Sequence) -> list[Fraction]:
    coeffs = [Fraction(v) for v in values]
    for j in range(1, len(coeffs)):
        for i in range(len(coeffs) - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (nodes[i] - nodes[i - j])
    return coeffs


def _apply_axis(flat: list, k: int, num_vars: int, axis: int, fn: Callable) -> list:
    """Apply fn to every length-k fiber along the given axis of a row-major tensor."""
    stride = k ** (num_vars - axis - 1)
    block = stride * k
    out = list(flat)
    for start in range(0, len(flat), block):
        for off in range(stride):
            base = start + off
            fiber = [out[base + t * stride] for t in range(k)]
            for t, v in enumerate(fn(fiber)):
                out[base + t * stride] = v
    return out


@dataclass(frozen=True)
class PolyMulti:
    """Dense multivariate polynomial in tensor-product Newton form.

    coeffs and values are row-major flat tuples of shape
    (degree_bound + 1,) ** num_vars, with the last variable fastest; values
    holds the original samples on the node grid.
    """

    num_vars: int
    degree_bound: int
    nodes: tuple[tuple[int, ...], ...]
    coeffs: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValidationError("polynomial needs at least one variable")
        k = self.degree_bound + 1
        if len(self.nodes) != self.num_vars:
            raise ValidationError("one node list per variable is required")
        for node_list in self.nodes:
            if len(node_list) != k or len(set(node_list)) != k:
                raise ValidationError(f"need {k} distinct nodes per variable")
        size = k**self.num_vars
        if len(self.coeffs) != size or len(self.values) != size:
            raise ValidationError(f"coefficient and value tensors must have size {size}")

    @classmethod
    def interpolate(cls, nodes: Sequence[Sequence[int]], values: Sequence) -> "PolyMulti":
        """Interpolate exact samples given on the tensor grid spanned by nodes."""
        node_tuples = tuple(tuple(int(v) for v in ns) for ns in nodes)
        if not node_tuples:
            raise ValidationError("at least one variable is required")
        k = len(node_tuples[0])
        num_vars = len(node_tuples)
        for ns in node_tuples:
            if len(ns) != k or len(set(ns)) != k:
                raise ValidationError(f"need {k} distinct nodes per variable, got {ns}")
        flat = [Fraction(v) for v in values]
        if len(flat) != k**num_vars:
            raise ValidationError(
                f"value tensor must have size {k**num_vars}, got {len(flat)}"
            )
        for axis in range(num_vars):
            flat = _apply_axis(
                flat, k, num_vars, axis,
                lambda fiber, ns=node_tuples[axis]: _divided_differences(ns, fiber),
            )
        return cls(
            num_vars=num_vars,
            degree_bound=k - 1,
            nodes=node_tuples,
            coeffs=tuple(flat),
            values=tuple(Fraction(v) for v in values),
        )

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a rational point (nested Horner in Newton form)."""
        if len(point) != self.num_vars:
            raise ValidationError(
                f"point must have {self.num_vars} coordinates, got {len(point)}"
            )
        k = self.degree_bound + 1
        flat: list[Fraction] = list(self.coeffs)
        for axis in range(self.num_vars - 1, -1, -1):
            x = Fraction(point[axis])
            diffs = [x - node for node in self.nodes[axis]]
            reduced = []
            for s in range(0, len(flat), k):
                acc = flat[s + k - 1]
                for i in range(k - 2, -1, -1):
                    acc = acc * diffs[i] + flat[s + i]
                reduced.append(acc)
            flat = reduced
        return flat[0]

    def newton_degrees(self) -> tuple[int, ...]:
        """Per-variable degree as witnessed by the nonzero Newton coefficients."""
        k = self.degree_bound + 1
        degrees = []
        for axis in range(self.num_vars):
            stride = k ** (self.num_vars - axis - 1)
            top = -1
            for pos, c in enumerate(self.coeffs):
                if c != 0:
                    idx = (pos // stride) % k
                    if idx > top:
                        top = idx
            degrees.append(top)
        return tuple(degrees)


_alpha_poly_cache: dict[int, PolyMulti] = {}
_gn_poly_cache: dict[tuple[int, int], PolyMulti] = {}


def alpha_polynomial(n: int, budget: Budget = DEFAULT_BUDGET) -> PolyMulti:
    """Interpolate the counting polynomial in all n bottom-row variables.

    Samples live on the block grid where variable i (1-based) ranges over
    (i-1)*n .. i*n - 1, so every grid point is strictly increasing and the
    samples are genuine monotone triangle counts.
    """
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if n > budget.alpha_poly_max_n:
        raise BudgetError(
            f"counting polynomial at n={n} exceeds the budget cap {budget.alpha_poly_max_n}"
        )
    cached = _alpha_poly_cache.get(n)
    if cached is None:
        nodes = tuple(tuple(range(i * n, i * n + n)) for i in range(n))
        values = [alpha_count(pt) for pt in itertools.product(*nodes)]
        cached = PolyMulti.interpolate(nodes, values)
        _alpha_poly_cache[n] = cached
    return cached


def alpha_eval(n: int, point: Sequence, budget: Budget = DEFAULT_BUDGET) -> Fraction:
    """The counting polynomial of order n evaluated at an arbitrary rational point."""
    return alpha_polynomial(n, budget).evaluate(point)


def _monomial_eval(flat: list[Fraction], k: int, point: Sequence) -> Fraction:
    cur = flat
    for axis in range(len(point) - 1, -1, -1):
        x = Fraction(point[axis])
        reduced = []
        for s in range(0, len(cur), k):
            acc = cur[s + k - 1]
            for i in range(k - 2, -1, -1):
                acc = acc * x + cur[s + i]
            reduced.append(acc)
        cur = reduced
    return cur[0]


def gn_poly(n: int, d: int, budget: Budget = DEFAULT_BUDGET) -> PolyMulti:
    """The counting polynomial with only the last d staircase entries perturbed.

    Variable r (1-based) shifts entry n - d + r of the reference bottom row
    1..n.  Samples are taken on an integer staircase that keeps the perturbed
    row weakly increasing, interpolated one variable at a time into monomial
    form, and the result is re-anchored as Newton form on the tensor grid
    0..n-1 per variable.
    """
    if d < 1:
        raise ValidationError(f"depth must be positive, got {d}")
    if d > n:
        raise ValidationError(f"depth {d} exceeds the order {n}")
    cap = budget.gn_poly_max_n.get(d)
    if cap is None:
        raise BudgetError(f"no specialization budget is configured for depth d={d}")
    if n > cap:
        raise BudgetError(f"specialization at n={n}, d={d} exceeds the budget cap {cap}")
    key = (n, d)
    cached = _gn_poly_cache.get(key)
    if cached is not None:
        return cached

    prefix = tuple(range(1, n - d + 1))

    def build(args: tuple[int, ...], r: int) -> list[Fraction]:
        # returns the monomial tensor in variables r.. (0-based), x_r axis major
        if r == d:
            return [Fraction(alpha_count(args))]
        base = n - d + r + 1
        last = args[-1] if args else base - 1
        lo = last - base  # smallest shift keeping the row weakly increasing
        node_list = list(range(lo, lo + n))
        children = [build(args + (base + x,), r + 1) for x in node_list]
        width = len(children[0])
        # componentwise divided differences over the children
        rows = [list(child) for child in children]
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                dd = node_list[i] - node_list[i - j]
                rows[i] = [(a - b) / dd for a, b in zip(rows[i], rows[i - 1])]
        # Newton form -> monomial coefficients in x_r (Horner with tensor slots)
        out = [[Fraction(0)] * width for _ in range(n)]
        for i in range(n - 1, -1, -1):
            node = node_list[i]
            for e in range(n - 1, 0, -1):
                out[e] = [a - node * b for a, b in zip(out[e - 1], out[e])]
            out[0] = [a - node * b for a, b in zip(rows[i], out[0])]
        return [c for slot in out for c in slot]

    mono = build(prefix, 0)
    grid = tuple(tuple(range(n)) for _ in range(d))
    values = [_monomial_eval(mono, n, pt) for pt in itertools.product(*grid)]
    poly = PolyMulti.interpolate(grid, values)
    _gn_poly_cache[key] = poly
    return poly


@dataclass(frozen=True)
class BinomBasisExpansion:
    """Coefficients of a d-variable polynomial in the shifted binomial basis.

    Basis element (j_1, ..., j_d), all 1-based in 1..n, is the product over
    axes r of binom(x_r + j_r + r - 2, j_r - 1); coeffs is row-major with the
    last index fastest.
    """

    n: int
    d: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n**self.d:
            raise ValidationError(f"expected {self.n ** self.d} coefficients")

    def coefficient(self, indices: Sequence[int]) -> Fraction:
        if len(indices) != self.d:
            raise ValidationError(f"need {self.d} indices, got {len(indices)}")
        pos = 0
        for j in indices:
            if not 1 <= j <= self.n:
                raise ValidationError(f"indices must lie in 1..{self.n}: {tuple(indices)}")
            pos = pos * self.n + (j - 1)
        return self.coeffs[pos]

    def evaluate(self, point: Sequence) -> Fraction:
        """Reconstruct the polynomial value at a rational point."""
        if len(point) != self.d:
            raise ValidationError(f"point must have {self.d} coordinates")
        cur = list(self.coeffs)
        for axis in range(self.d - 1, -1, -1):
            x = Fraction(point[axis])
            basis = [binom_at(x + j + axis - 1, j - 1) for j in range(1, self.n + 1)]
            cur = [
                sum(cur[s + t] * basis[t] for t in range(self.n))
                for s in range(0, len(cur), self.n)
            ]
        return cur[0]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_grid(self) -> tuple[int, ...]:
        """All coefficients as ints; raises if any has a nontrivial denominator."""
        for pos, c in enumerate(self.coeffs):
            if c.denominator != 1:
                raise NonIntegralError(
                    f"coefficient at flat position {pos} is the non-integer {c}"
                )
        return tuple(c.numerator for c in self.coeffs)


def expand_in_binomial_basis(poly: PolyMulti, n: int, d: int) -> BinomBasisExpansion:
    """Exact expansion of a d-variable polynomial in the shifted binomial basis.

    The expansion is computed from samples on the grid 0..n-1 per variable by
    exact per-axis solves; the basis matrices are triangular in degree, hence
    invertible, so the coefficients are unique.
    """
    if poly.num_vars != d:
        raise ValidationError(f"polynomial has {poly.num_vars} variables, expected {d}")
    if poly.degree_bound > n - 1:
        raise ValidationError(
            f"degree bound {poly.degree_bound} exceeds basis degree {n - 1}"
        )
    grid = tuple(tuple(range(n)) for _ in range(d))
    if poly.nodes == grid:
        vals = list(poly.values)
    else:
        vals = [poly.evaluate(pt) for pt in itertools.product(*grid)]
    for axis in range(d):
        basis_matrix = [
            [binom(x + j + axis - 1, j - 1) for j in range(1, n + 1)] for x in range(n)
        ]
        inv = invert_matrix(basis_matrix)
        vals = _apply_axis(
            vals, n, d, axis,
            lambda fiber, inv=inv: [
                sum(row[t] * fiber[t] for t in range(n)) for row in inv
            ],
        )
    return BinomBasisExpansion(n, d, tuple(Fraction(v) for v in vals))


def _draw_point(rng: random.Random, dim: int, bound: int) -> tuple[Fraction, ...]:
    coords = []
    for _ in range(dim):
        q = rng.randint(1, 7)
        p = rng.randint(-bound * q, bound * q)
        coords.append(Fraction(p, q))
    return tuple(coords)


def sample_rational_points(
    dim: int, count: int, bound: int, seed: int = DEFAULT_SEED
) -> list[tuple[Fraction, ...]]:
    """Reproducible rational sample points in [-bound, bound] with denominators <= 7."""
    rng = random.Random(seed)
    return [_draw_point(rng, dim, bound) for _ in range(count)]


def _shift(point: tuple, positions: Sequence[int], amount: int = 1) -> tuple:
    out = list(point)
    for pos in positions:
        out[pos] += amount
    return tuple(out)


def verify_alpha_identities(
    n: int,
    *,
    seed: int = DEFAULT_SEED,
    num_points: int = 20,
    budget: Budget = DEFAULT_BUDGET,
) -> tuple[VerificationReport, ...]:
    """Check the symmetry and operator identities of the counting polynomial.

    Identities checked at exact random rational points: invariance under
    translation, the reverse-and-negate symmetry, the rotation relation, the
    six-term neighbour exchange, annihilation by the elementary symmetric
    polynomials in the difference operators, and the expansion of a repeated
    shift in one variable through shift subsets of the remaining variables.

    Returns one report per identity; raises IdentityViolationError as soon as
    any identity fails, naming the identity and the witness point.
    """
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if n > budget.identity_max_n:
        raise BudgetError(
            f"identity checks at n={n} exceed the budget cap {budget.identity_max_n}"
        )
    poly = alpha_polynomial(n, budget)
    cache: dict[tuple, Fraction] = {}

    def ev(point: tuple) -> Fraction:
        value = cache.get(point)
        if value is None:
            value = poly.evaluate(point)
            cache[point] = value
        return value

    rng = random.Random(seed)
    bound = 3 * n
    reports = []

    def finish(name: str, detail: str = ""):
        checked = f"n={n}, {num_points} rational points (seed {seed})" + detail
        reports.append(VerificationReport(name, checked, True))

    # translation invariance
    for _ in range(num_points):
        pt = _draw_point(rng, n, bound)
        (t,) = _draw_point(rng, 1, bound)
        lhs = ev(pt)
        rhs = poly.evaluate(tuple(x + t for x in pt))
        if lhs != rhs:
            raise IdentityViolationError("translation", pt, lhs, rhs)
    finish("translation")

    # reverse and negate
    for _ in range(num_points):
        pt = _draw_point(rng, n, bound)
        lhs = ev(pt)
        rhs = ev(tuple(-x for x in reversed(pt)))
        if lhs != rhs:
            raise IdentityViolationError("reversal", pt, lhs, rhs)
    finish("reversal")

    # rotation: moving the first variable to the end, shifted down by n
    sign = 1 if n % 2 == 1 else -1
    for _ in range(num_points):
        pt = _draw_point(rng, n, bound)
        lhs = ev(pt[1:] + (pt[0] - n,))
        rhs = sign * ev(pt)
        if lhs != rhs:
            raise IdentityViolationError("rotation", pt, lhs, rhs)
    finish("rotation")

    # six-term exchange of two neighbouring variables
    for _ in range(num_points):
        pt = _draw_point(rng, n, bound)
        for i in range(n - 1):
            a, b = pt[i], pt[i + 1]

            def at(u, v):
                return ev(pt[:i] + (u, v) + pt[i + 2 :])

            lhs = at(a, b) + at(a + 1, b + 1) - at(a, b + 1)
            rhs = -at(b, a) - at(b + 1, a + 1) + at(b, a + 1)
            if lhs != rhs:
                raise IdentityViolationError(f"six-term (positions {i+1},{i+2})", pt, lhs, rhs)
    finish("six-term", f", all {max(n - 1, 0)} neighbour pairs")

    # elementary symmetric polynomials in the difference operators annihilate
    positions = range(n)
    for _ in range(num_points):
        pt = _draw_point(rng, n, bound)
        for q in range(1, n):
            total = Fraction(0)
            for subset in itertools.combinations(positions, q):
                for t_size in range(q + 1):
                    term_sign = 1 if (q - t_size) % 2 == 0 else -1
                    for chosen in itertools.combinations(subset, t_size):
                        total += term_sign * ev(_shift(pt, chosen))
            if total != 0:
                raise IdentityViolationError(
                    f"symmetric-difference-annihilation (q={q})", pt, total, 0
                )
    finish("symmetric-difference-annihilation", f", q=1..{n - 1}")

    # repeated shift in one variable expanded over shift subsets of the others
    for _ in range(num_points):
        pt = _draw_point(rng, n, bound)
        for r in range(n):
            others = [pos for pos in positions if pos != r]
            for z in range(4):
                lhs = ev(_shift(pt, (r,), z))
                rhs = Fraction(0)
                for p in range(z + 1):
                    coeff = binom(-n, z - p)
                    if coeff == 0:
                        continue
                    for subset in itertools.combinations(others, p):
                        rhs += coeff * ev(_shift(pt, subset))
                rhs *= 1 if z % 2 == 0 else -1
                if lhs != rhs:
                    raise IdentityViolationError(
                        f"shift-expansion (variable {r + 1}, power {z})", pt, lhs, rhs
                    )
    finish("shift-expansion", ", powers 0..3, every variable")

    return tuple(reports)


def verify_gn_reflection(
    n: int,
    d: int,
    *,
    seed: int = DEFAULT_SEED,
    num_points: int = 20,
    budget: Budget = DEFAULT_BUDGET,
) -> tuple[VerificationReport, ...]:
    """Check the reflection symmetry of the d-variable specialization.

    For d = 2 the six-term exchange identity of the specialization is checked
    as well.  Raises IdentityViolationError on any failure.
    """
    poly = gn_poly(n, d, budget)
    sign = 1 if ((n - 1) * d) % 2 == 0 else -1
    rng = random.Random(seed)
    bound = 3 * n
    reports = []
    detail = f"n={n}, d={d}, {num_points} rational points (seed {seed})"

    for _ in range(num_points):
        pt = _draw_point(rng, d, bound)
        lhs = poly.evaluate(pt)
        rhs = sign * poly.evaluate(tuple(-2 * n - x for x in reversed(pt)))
        if lhs != rhs:
            raise IdentityViolationError("gn-reflection", pt, lhs, rhs)
    reports.append(VerificationReport("gn-reflection", detail, True))

    if d == 2:
        for _ in range(num_points):
            x, y = _draw_point(rng, 2, bound)
            lhs = (
                poly.evaluate((x, y))
                + poly.evaluate((x + 1, y + 1))
                - poly.evaluate((x, y + 1))
            )
            rhs = (
                -poly.evaluate((y + 1, x - 1))
                - poly.evaluate((y + 2, x))
                + poly.evaluate((y + 1, x))
            )
            if lhs != rhs:
                raise IdentityViolationError("gn-six-term", (x, y), lhs, rhs)
        reports.append(VerificationReport("gn-six-term", detail, True))

    return tuple(reports)


def clear_caches() -> None:
    """Drop the interpolated-polynomial caches."""
    _alpha_poly_cache.clear()
    _gn_poly_cache.clear()
