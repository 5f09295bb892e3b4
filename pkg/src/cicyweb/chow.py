"""Exact arithmetic in the Chow ring of a product of projective spaces.

The Chow ring of V = P^{n_1} x ... x P^{n_k} is the truncated polynomial
ring Z[s_1, ..., s_k] / (s_i^{n_i + 1}), where s_i is the hyperplane class
pulled back from the i-th factor.  Classes are stored sparsely as maps from
exponent vectors to arbitrary-precision integers, so every computation is
exact; there is no floating point anywhere in this module.

Integration over the fundamental class extracts the coefficient of the
point class s_1^{n_1} * ... * s_k^{n_k}.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Iterable, Iterator, Mapping

#: A multidegree is a plain tuple of integers, one entry per ambient factor.
#: Entries may be negative (duals inside Koszul-type alternating sums).
MultiDegree = tuple[int, ...]


class AmbientSpace:
    """A product of projective spaces P^{n_1} x ... x P^{n_k}.

    Parameters
    ----------
    factors : iterable of int
        The dimensions (n_1, ..., n_k); every n_i must be >= 1 and k >= 1.

    Examples
    --------
    >>> V = AmbientSpace([3, 1])
    >>> V.dim
    4
    >>> V.point_exponent
    (3, 1)
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[int]):
        factors = tuple(int(n) for n in factors)
        if not factors:
            raise ValueError("ambient needs at least one projective factor")
        if any(n < 1 for n in factors):
            raise ValueError(f"every factor dimension must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("AmbientSpace is immutable")

    @property
    def k(self) -> int:
        """Number of projective factors."""
        return len(self.factors)

    @property
    def dim(self) -> int:
        """Total dimension sum(n_i)."""
        return sum(self.factors)

    @property
    def point_exponent(self) -> tuple[int, ...]:
        """Exponent vector of the point class, (n_1, ..., n_k)."""
        return self.factors

    def lattice_size(self) -> int:
        """Number of monomials in the truncated ring, prod(n_i + 1)."""
        size = 1
        for n in self.factors:
            size *= n + 1
        return size

    def exponents(self) -> Iterator[tuple[int, ...]]:
        """Iterate over all exponent vectors of the monomial lattice."""
        exps = [0] * self.k
        while True:
            yield tuple(exps)
            for i in range(self.k - 1, -1, -1):
                if exps[i] < self.factors[i]:
                    exps[i] += 1
                    break
                exps[i] = 0
            else:
                return

    def check_degree(self, d: Iterable[int]) -> MultiDegree:
        """Validate a multidegree against this ambient and return it as a tuple."""
        d = tuple(int(x) for x in d)
        if len(d) != self.k:
            raise ValueError(f"multidegree {d} has length {len(d)}, ambient has k={self.k}")
        return d

    def __eq__(self, other) -> bool:
        return isinstance(other, AmbientSpace) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(("AmbientSpace", self.factors))

    def __repr__(self) -> str:
        return "AmbientSpace(%s)" % (list(self.factors),)

    def __str__(self) -> str:
        return " x ".join(f"P^{n}" for n in self.factors)


class ChowClass:
    """An element of the Chow ring of an :class:`AmbientSpace`.

    Terms are stored as a map from exponent vectors (e_1, ..., e_k) with
    0 <= e_i <= n_i to nonzero integers.  All ring operations truncate:
    any monomial with some e_i > n_i is discarded (s_i^{n_i+1} = 0).

    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: AmbientSpace, terms: Mapping[tuple[int, ...], int]):
        clean: dict[tuple[int, ...], int] = {}
        for exp, coeff in terms.items():
            coeff = int(coeff)
            if coeff == 0:
                continue
            exp = tuple(int(e) for e in exp)
            if len(exp) != ambient.k or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for ambient {ambient}")
            if any(e > n for e, n in zip(exp, ambient.factors)):
                continue  # truncated away by s_i^{n_i+1} = 0
            clean[exp] = coeff
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ChowClass is immutable")

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(ambient: AmbientSpace) -> "ChowClass":
        return ChowClass(ambient, {})

    @staticmethod
    def constant(ambient: AmbientSpace, value: int) -> "ChowClass":
        return ChowClass(ambient, {(0,) * ambient.k: value})

    @staticmethod
    def one(ambient: AmbientSpace) -> "ChowClass":
        return ChowClass.constant(ambient, 1)

    @staticmethod
    def hyperplane(ambient: AmbientSpace, i: int) -> "ChowClass":
        """The hyperplane class s_i of the i-th factor (0-based)."""
        if not 0 <= i < ambient.k:
            raise ValueError(f"factor index {i} out of range for {ambient}")
        exp = [0] * ambient.k
        exp[i] = 1
        return ChowClass(ambient, {tuple(exp): 1})

    @staticmethod
    def linear_form(ambient: AmbientSpace, d: Iterable[int]) -> "ChowClass":
        """The degree-1 class sum_i d_i s_i, i.e. c_1 of the line bundle O(d)."""
        d = ambient.check_degree(d)
        terms = {}
        for i, di in enumerate(d):
            if di:
                exp = [0] * ambient.k
                exp[i] = 1
                terms[tuple(exp)] = di
        return ChowClass(ambient, terms)

    # ------------------------------------------------------------------
    # ring structure

    def _coerce(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            if other.ambient != self.ambient:
                raise ValueError(
                    f"ambient mismatch: {self.ambient} vs {other.ambient}"
                )
            return other
        if isinstance(other, int):
            return ChowClass.constant(self.ambient, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "ChowClass":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = out.get(exp, 0) + coeff
            if new:
                out[exp] = new
            else:
                out.pop(exp, None)
        return ChowClass(self.ambient, out)

    __radd__ = __add__

    def __neg__(self) -> "ChowClass":
        return ChowClass(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ChowClass":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ChowClass":
        return (-self) + other

    def __mul__(self, other) -> "ChowClass":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        bounds = self.ambient.factors
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                if any(e > n for e, n in zip(exp, bounds)):
                    continue
                new = out.get(exp, 0) + c1 * c2
                if new:
                    out[exp] = new
                else:
                    del out[exp]
        return ChowClass(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "ChowClass":
        if not isinstance(power, int) or power < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ChowClass.one(self.ambient)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ChowClass.constant(self.ambient, other).terms
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ------------------------------------------------------------------
    # graded structure

    def graded_part(self, p: int) -> "ChowClass":
        """The homogeneous piece of total degree p."""
        return ChowClass(
            self.ambient, {e: c for e, c in self.terms.items() if sum(e) == p}
        )

    def max_degree(self) -> int:
        """Largest total degree carrying a nonzero term (−1 for the zero class)."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ambient.k, 0)

    def coefficient(self, exp: Iterable[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def integrate(self) -> int:
        """Integral over the fundamental class: coefficient of the point class."""
        return self.terms.get(self.ambient.point_exponent, 0)

    # ------------------------------------------------------------------
    # rendering

    def __repr__(self) -> str:
        return f"ChowClass({self.ambient!r}, {self.render()!r})"

    def render(self) -> str:
        """Debug rendering with terms in graded-lex order, e.g. ``5*s1^2 + 4*s1*s2``."""
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            coeff = self.terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(f"s{i + 1}")
                elif e > 1:
                    factors.append(f"s{i + 1}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = render


# ----------------------------------------------------------------------
# module-level operations


def add(a: ChowClass, b: ChowClass) -> ChowClass:
    """Sum of two classes on the same ambient."""
    return a + b


def mul(a: ChowClass, b: ChowClass) -> ChowClass:
    """Intersection product of two classes on the same ambient."""
    return a * b


def integrate(a: ChowClass) -> int:
    """Integral over the fundamental class (coefficient of the point class)."""
    return a.integrate()


def chern_of_sum(ambient: AmbientSpace, bundles: Iterable[Iterable[int]]) -> ChowClass:
    """Total Chern class of a direct sum of line bundles.

    For line bundles L_j of multidegree d_j, returns
    prod_j (1 + sum_i d_{ji} s_i), truncated; the degree-p graded part
    is c_p of the direct sum.  An empty list gives 1 (the rank-0 bundle).
    """
    total = ChowClass.one(ambient)
    for d in bundles:
        total = total * (ChowClass.one(ambient) + ChowClass.linear_form(ambient, d))
    return total


def segre_inverse(c: ChowClass) -> ChowClass:
    """Multiplicative inverse of a class with constant term 1.

    Computed degree by degree through the Newton-style recursion
    s_p = -sum_{i=1}^{p} c_i * s_{p-i}, which stays inside the truncated
    ring and never needs rational arithmetic.  For c the total Chern class
    of a bundle this is its total Segre class.
    """
    if c.constant_term() != 1:
        raise ValueError("segre_inverse needs a class with constant term 1")
    ambient = c.ambient
    top = ambient.dim
    c_parts = [c.graded_part(p) for p in range(top + 1)]
    s_parts = [ChowClass.one(ambient)]
    for p in range(1, top + 1):
        acc = ChowClass.zero(ambient)
        for i in range(1, p + 1):
            if c_parts[i]:
                acc = acc + c_parts[i] * s_parts[p - i]
        s_parts.append(-acc)
    total = ChowClass.zero(ambient)
    for part in s_parts:
        total = total + part
    return total


def tangent_chern(ambient: AmbientSpace) -> ChowClass:
    """Total Chern class of the tangent bundle, prod_i (1 + s_i)^{n_i+1}.

    Each factor expands by the Euler sequence on P^{n_i} and is truncated
    at s_i^{n_i}.
    """
    terms: dict[tuple[int, ...], int] = {}
    for exp in ambient.exponents():
        coeff = 1
        for e, n in zip(exp, ambient.factors):
            coeff *= comb(n + 1, e)
        terms[exp] = coeff
    return ChowClass(ambient, terms)


def binomial_poly(a: int, n: int) -> int:
    """The polynomial binomial C(a, n) = a(a-1)...(a-n+1)/n!, any integer a."""
    if n < 0:
        raise ValueError("n must be non-negative")
    num = 1
    for i in range(n):
        num *= a - i
    return num // factorial(n)


def chi_line_bundle(ambient: AmbientSpace, d: Iterable[int]) -> int:
    """Euler characteristic of the line bundle O(d) on the ambient.

    chi(O(d)) = prod_i C(d_i + n_i, n_i) with the polynomial binomial, so
    negative twists (as in Koszul-complex alternating sums) need no case
    split.
    """
    d = ambient.check_degree(d)
    chi = 1
    for di, n in zip(d, ambient.factors):
        chi *= binomial_poly(di + n, n)
    return chi


# ----------------------------------------------------------------------
# dense fast path
#
# Euler-number style integrals are products of linear factors, inverse
# linear factors and binomial row factors.  Evaluating them on a dense
# coefficient table over the exponent lattice (mixed-radix indexed) takes
# one O(lattice) pass per factor instead of a quadratic sparse product.
# This is an internal optimization only: coefficients stay exact Python
# integers and the public API above is unaffected.


class _DenseTable:
    """Dense coefficient table over the exponent lattice of an ambient."""

    __slots__ = ("ambient", "strides", "coeffs")

    def __init__(self, ambient: AmbientSpace):
        self.ambient = ambient
        strides = [0] * ambient.k
        size = 1
        for i in range(ambient.k - 1, -1, -1):
            strides[i] = size
            size *= ambient.factors[i] + 1
        self.strides = strides
        self.coeffs = [0] * size
        self.coeffs[0] = 1  # start at the unit class

    def _axis_runs(self, i: int) -> Iterator[tuple[int, int]]:
        """Yield (base, count) runs along axis i: indices base + t*strides[i]."""
        n = self.ambient.factors[i]
        stride = self.strides[i]
        block = stride * (n + 1)
        size = len(self.coeffs)
        for start in range(0, size, block):
            for offset in range(stride):
                yield start + offset, n + 1

    def mul_one_plus_var(self, i: int) -> None:
        """Multiply in place by (1 + s_i), truncated."""
        stride = self.strides[i]
        coeffs = self.coeffs
        for base, count in self._axis_runs(i):
            for t in range(count - 1, 0, -1):
                idx = base + t * stride
                coeffs[idx] += coeffs[idx - stride]

    def mul_linear(self, d: MultiDegree) -> None:
        """Multiply in place by the linear form sum_i d_i s_i, truncated."""
        coeffs = self.coeffs
        out = [0] * len(coeffs)
        for i, di in enumerate(d):
            if not di:
                continue
            stride = self.strides[i]
            for base, count in self._axis_runs(i):
                for t in range(1, count):
                    idx = base + t * stride
                    prev = coeffs[idx - stride]
                    if prev:
                        out[idx] += di * prev
        self.coeffs = out

    def div_one_plus_linear(self, d: MultiDegree) -> None:
        """Divide in place by 1 + sum_i d_i s_i (a unit: 1 + nilpotent).

        Solves q = a - l*q by a single forward pass: the mixed-radix index
        of every proper divisor monomial is strictly smaller, so q at each
        cell only needs already-computed cells.
        """
        coeffs = self.coeffs
        moves = [(i, self.strides[i], di) for i, di in enumerate(d) if di]
        factors = self.ambient.factors
        k = self.ambient.k
        exps = [0] * k
        for idx in range(len(coeffs)):
            acc = coeffs[idx]
            for i, stride, di in moves:
                if exps[i]:
                    acc -= di * coeffs[idx - stride]
            coeffs[idx] = acc
            for i in range(k - 1, -1, -1):
                if exps[i] < factors[i]:
                    exps[i] += 1
                    break
                exps[i] = 0

    def point_coefficient(self) -> int:
        return self.coeffs[-1]

    def to_chow(self) -> ChowClass:
        terms = {}
        for idx, exp in enumerate(self.ambient.exponents()):
            if self.coeffs[idx]:
                terms[exp] = self.coeffs[idx]
        return ChowClass(self.ambient, terms)
