"""Topological invariants of complete-intersection members.

Everything here is exact integer/rational arithmetic in the Chow ring of
the ambient product of projective spaces:

* Euler numbers via Gauss-Bonnet (tangent Chern class times the Segre
  inverse of the defining bundle, capped with its top Chern class);
* second Betti numbers via the alternating-sum recursion coming from the
  Lefschetz-type exact sequence for the ample divisor sum;
* Hodge pairs (h11, h21) for Calabi-Yau 3-fold members;
* Hilbert polynomials from the Koszul resolution of the member;
* complete-intersection point counts and branched double-cover Euler
  numbers for the composite double-solid bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from .chow import (
    AmbientSpace,
    ChowClass,
    MultiDegree,
    _DenseTable,
    chern_of_sum,
    chi_line_bundle,
    segre_inverse,
    tangent_chern,
)
from .configuration import ConfigurationMatrix, is_block_diagonal, is_cicy


# ----------------------------------------------------------------------
# Euler numbers


def _euler_from_columns(
    factors: tuple[int, ...], columns: tuple[MultiDegree, ...]
) -> int:
    """Point-class coefficient of c(TV) * s(E) * c_top(E), computed densely.

    One multiply/divide pass per linear factor keeps this linear in the
    lattice size; coefficients are exact Python integers throughout.
    """
    table = _DenseTable(AmbientSpace(factors))
    for i, n in enumerate(factors):
        for _ in range(n + 1):
            table.mul_one_plus_var(i)
    for col in columns:
        table.div_one_plus_linear(col)
    for col in columns:
        table.mul_linear(col)
    return table.point_coefficient()


@lru_cache(maxsize=65536)
def _euler_cached(factors: tuple[int, ...], columns: tuple[MultiDegree, ...]) -> int:
    return _euler_from_columns(factors, columns)


def euler_number(cfg: ConfigurationMatrix) -> int:
    """Topological Euler number of a general smooth member.

    Gauss-Bonnet: with E the direct sum of the defining line bundles,
    e = int_V { c(TV) * s(E) }_dimension * c_m(E).  Defined for members of
    any dimension >= 1 (the Betti recursion and double-solid bookkeeping
    need surfaces, not only 3-folds).

    Examples
    --------
    >>> euler_number(ConfigurationMatrix([4], [[5]]))
    -200
    """
    # Sorting the columns makes the cache hit on column-permuted variants.
    return _euler_cached(cfg.factors, tuple(sorted(cfg.columns())))


def euler_number_by_definition(cfg: ConfigurationMatrix) -> int:
    """Euler number via the public Chow-ring operations, term by term.

    Slower than :func:`euler_number`; used to cross-check the dense fast
    path on small inputs.
    """
    ambient = cfg.ambient
    columns = cfg.columns()
    total = tangent_chern(ambient) * segre_inverse(chern_of_sum(ambient, columns))
    integrand = total.graded_part(cfg.dimension) * chern_of_sum(
        ambient, columns
    ).graded_part(cfg.m)
    return integrand.integrate()


def ci_point_count(ambient: AmbientSpace, bundles: Sequence[Iterable[int]]) -> int:
    """Number of intersection points of sum(n_i) general divisors.

    The expected dimension must be zero: the number of bundles has to equal
    the ambient dimension.  Returns int prod_j c_1(L_j).

    Examples
    --------
    >>> ci_point_count(AmbientSpace([3]), [(4,), (4,), (4,)])
    64
    """
    bundles = [ambient.check_degree(d) for d in bundles]
    if len(bundles) != ambient.dim:
        raise ValueError(
            f"need {ambient.dim} divisors for a point count on {ambient}, got {len(bundles)}"
        )
    product = ChowClass.one(ambient)
    for d in bundles:
        product = product * ChowClass.linear_form(ambient, d)
    return product.integrate()


def double_cover_euler(e_base: int, e_branch: int) -> int:
    """Euler number of a double cover: 2 * e(base) - e(branch divisor)."""
    return 2 * e_base - e_branch


# ----------------------------------------------------------------------
# second Betti number


class BettiBaseCaseError(ValueError):
    """A Betti recursion reached a piece of dimension <= 1 (no rule applies)."""


def betti2(cfg: ConfigurationMatrix) -> int:
    """Second Betti number of a general smooth member.

    For dimension >= 3 the Lefschetz-type exact sequence for the ample
    divisor sum gives the alternating recursion

        b2(X) = (-1)^(m+1) * ( k + sum_{r=1}^{m-1} (-1)^r sum_{|J|=r} b2(D_J) )

    with b2 of the ambient equal to the number k of factors.  Every partial
    intersection D_J splits off the projective factors on which all selected
    columns vanish (each contributes 1 by Kunneth; first Betti numbers all
    vanish), and the complementary complete intersection recurses.  Base
    cases: no columns -> number of factors; dimension 2 -> e - 2 (simply
    connected surface); dimension <= 1 -> error.

    Examples
    --------
    >>> betti2(ConfigurationMatrix([4], [[5]]))
    1
    """
    if is_block_diagonal(cfg):
        raise ValueError("betti2 needs a non-block-diagonal configuration")
    return _betti2_cached(cfg.factors, tuple(sorted(cfg.columns())))


@lru_cache(maxsize=65536)
def _betti2_cached(factors: tuple[int, ...], columns: tuple[MultiDegree, ...]) -> int:
    k, m = len(factors), len(columns)
    dim = sum(factors) - m
    if dim <= 1:
        raise BettiBaseCaseError(
            f"no rule for a piece of dimension {dim} (factors {factors}, {m} columns)"
        )
    if dim == 2:
        return _euler_cached(factors, columns) - 2
    total = k
    sign = 1
    for r in range(1, m):
        sign = -sign
        subtotal = 0
        for subset in combinations(range(m), r):
            subtotal += _betti2_piece(factors, tuple(columns[j] for j in subset))
        total += sign * subtotal
    return total if m % 2 == 1 else -total


def _betti2_piece(factors: tuple[int, ...], columns: tuple[MultiDegree, ...]) -> int:
    """b2 of a partial intersection D_J, splitting off untouched factors."""
    live = [i for i in range(len(factors)) if any(col[i] for col in columns)]
    split_off = len(factors) - len(live)  # each P^{n} factor adds b2 = 1
    if not live:
        return split_off
    sub_factors = tuple(factors[i] for i in live)
    sub_columns = tuple(sorted(tuple(col[i] for i in live) for col in columns))
    return split_off + _betti2_cached(sub_factors, sub_columns)


# ----------------------------------------------------------------------
# Hodge numbers


@dataclass(frozen=True)
class HodgePair:
    """The interesting Hodge numbers of a Calabi-Yau 3-fold member."""

    h11: int
    h21: int

    @property
    def euler(self) -> int:
        return 2 * (self.h11 - self.h21)


def hodge_numbers(cfg: ConfigurationMatrix) -> HodgePair:
    """Hodge pair (h11, h21) of a CICY 3-fold member.

    h11 equals b2 (simply connected Calabi-Yau 3-fold, h20 = 0), and h21
    follows from e = 2 (h11 - h21).
    """
    if not is_cicy(cfg):
        raise ValueError("hodge_numbers needs a CICY 3-fold configuration")
    h11 = betti2(cfg)
    e = euler_number(cfg)
    if e % 2:
        raise ArithmeticError(f"odd Euler number {e}: internal inconsistency")
    return HodgePair(h11=h11, h21=h11 - e // 2)


# ----------------------------------------------------------------------
# Hilbert polynomials


@dataclass(frozen=True)
class HilbertPolynomial:
    """chi(O_X(l * polarization)) as an exact polynomial in l.

    ``coefficients[p]`` is the exact rational coefficient of l^p, with the
    list running up to the member dimension.
    """

    coefficients: tuple[Fraction, ...]
    polarization: MultiDegree

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, l: int) -> Fraction:
        value = Fraction(0)
        power = Fraction(1)
        for c in self.coefficients:
            value += c * power
            power *= l
        return value

    def value_at(self, l: int) -> int:
        """Evaluate at an integer, checking integrality."""
        value = self(l)
        if value.denominator != 1:
            raise ArithmeticError(f"chi({l}) = {value} is not an integer")
        return int(value)

    def render(self) -> str:
        """Human form, highest power first: ``(5/6)*l^3 + (25/6)*l`` style."""
        pieces = []
        for p in range(self.degree, -1, -1):
            c = self.coefficients[p]
            if c == 0:
                continue
            if p == 0:
                body = str(abs(c))
            else:
                mag = abs(c)
                prefix = "" if mag == 1 else (
                    f"{mag}*" if mag.denominator == 1 else f"({mag})*"
                )
                body = prefix + ("l" if p == 1 else f"l^{p}")
            pieces.append(("-" if c < 0 else "+", body))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = render


def _chi_member(cfg: ConfigurationMatrix, twist: MultiDegree) -> int:
    """chi(O_X(twist)) by the Koszul alternating sum over column subsets."""
    ambient = cfg.ambient
    columns = cfg.columns()
    total = 0
    for r in range(cfg.m + 1):
        sign = -1 if r % 2 else 1
        for subset in combinations(columns, r):
            shifted = tuple(
                t - sum(col[i] for col in subset) for i, t in enumerate(twist)
            )
            total += sign * chi_line_bundle(ambient, shifted)
    return total


def hilbert_polynomial(
    cfg: ConfigurationMatrix, polarization: Iterable[int]
) -> HilbertPolynomial:
    """Exact Hilbert polynomial chi(O_X(l * polarization)) of a member.

    The Koszul resolution of the member by the defining bundles turns chi
    into an alternating sum of line-bundle Euler characteristics, each a
    polynomial in l of degree at most dim V; exact rational interpolation
    through dim V + 1 sample points recovers it, and all coefficients above
    the member dimension must cancel (checked).
    """
    polarization = cfg.ambient.check_degree(polarization)
    if any(p < 1 for p in polarization):
        raise ValueError(f"polarization must be ample (all entries >= 1), got {polarization}")
    bound = cfg.ambient.dim
    samples = [
        _chi_member(cfg, tuple(l * p for p in polarization)) for l in range(bound + 1)
    ]
    coeffs = _interpolate(samples)
    d = cfg.dimension
    for p in range(d + 1, bound + 1):
        if coeffs[p] != 0:
            raise ArithmeticError(
                f"chi polynomial has unexpected degree-{p} coefficient {coeffs[p]}"
            )
    return HilbertPolynomial(coefficients=tuple(coeffs[: d + 1]), polarization=polarization)


def _interpolate(values: Sequence[int]) -> list[Fraction]:
    """Coefficients of the unique polynomial through (0, v0), (1, v1), ...

    Newton forward differences with exact rationals.
    """
    n = len(values)
    diffs = [Fraction(v) for v in values]
    newton = [diffs[0]]
    for order in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0] / factorial(order))
    # expand sum_j newton[j] * l(l-1)...(l-j+1) into monomial coefficients
    coeffs = [Fraction(0)] * n
    falling = [Fraction(1)]  # coefficients of the rising product, start with 1
    for j in range(n):
        for p, c in enumerate(falling):
            coeffs[p] += newton[j] * c
        # multiply the falling factorial by (l - j) for the next round
        falling = [Fraction(0)] + falling
        for p in range(len(falling) - 1):
            falling[p] -= j * falling[p + 1]
    return coeffs
