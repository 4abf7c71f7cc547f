"""Exact rational arithmetic and combinatorial primitives.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).  This module adds the pieces ``Fraction`` lacks: the
generalized binomial, double factorials, elementary symmetric polynomials and a
small sparse polynomial type in one variable.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DomainError

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings; floats are refused."""
    if isinstance(x, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {x!r}") from exc
    raise DomainError(f"expected an exact rational, got {type(x).__name__}")


def format_rational(x: RationalLike) -> str:
    """Serialize as "n" for integers and "num/den" otherwise."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_binomial(r: RationalLike, k: int) -> Fraction:
    """Generalized binomial coefficient prod_{i<k} (r - i) / k! for k >= 0."""
    if k < 0:
        raise DomainError(f"binomial lower index must be >= 0, got {k}")
    r = as_rational(r)
    num = Fraction(1)
    for i in range(k):
        num *= r - i
    return num / math.factorial(k)


def double_factorial(n: int) -> int:
    if n < -1:
        raise DomainError(f"double factorial undefined for n={n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def elementary_symmetric_all(values: Iterable[RationalLike]) -> list[Fraction]:
    """All of e_0, ..., e_m of the given values, by the product recurrence."""
    vals = [as_rational(v) for v in values]
    e = [Fraction(1)] + [Fraction(0)] * len(vals)
    for i, v in enumerate(vals, start=1):
        for h in range(i, 0, -1):
            e[h] += v * e[h - 1]
    return e


def elementary_symmetric(values: Iterable[RationalLike], h: int) -> Fraction:
    vals = list(values)
    if h < 0 or h > len(vals):
        raise DomainError(f"e_{h} undefined for {len(vals)} values")
    return elementary_symmetric_all(vals)[h]


class RationalPolynomial:
    """Sparse polynomial with exact rational coefficients.

    Immutable.  Zero coefficients are never stored, so two polynomials are
    equal exactly when their coefficient maps are equal.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None):
        clean: dict[int, Fraction] = {}
        for exp, c in (coeffs or {}).items():
            exp = int(exp)
            if exp < 0:
                raise DomainError(f"negative exponent {exp}")
            c = as_rational(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self._coeffs = {e: c for e, c in sorted(clean.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: RationalLike = 1) -> "RationalPolynomial":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalPolynomial":
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def coeff(self, exp: int) -> Fraction:
        return self._coeffs.get(exp, Fraction(0))

    def exponents(self) -> list[int]:
        return list(self._coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._coeffs, default=-1)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_odd(self) -> bool:
        return all(e % 2 == 1 for e in self._coeffs)

    def is_even(self) -> bool:
        return all(e % 2 == 0 for e in self._coeffs)

    def __call__(self, x: RationalLike) -> Fraction:
        return polynomial_eval(self, x)

    def evaluate_float(self, x: float) -> float:
        return math.fsum(float(c) * x**e for e, c in self._coeffs.items())

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers are not polynomials")
        out = RationalPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def compose_square(self) -> "RationalPolynomial":
        """p(x) -> p(x**2)."""
        return RationalPolynomial({2 * e: c for e, c in self._coeffs.items()})

    def shift(self, a: RationalLike) -> "RationalPolynomial":
        """p(x) -> p(x + a)."""
        a = as_rational(a)
        out = RationalPolynomial()
        base = RationalPolynomial({0: a, 1: 1})
        for e, c in self._coeffs.items():
            out = out + c * base**e
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def to_json_obj(self) -> dict[str, str]:
        return {str(e): format_rational(c) for e, c in self._coeffs.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, str]) -> "RationalPolynomial":
        return cls({int(e): as_rational(c) for e, c in obj.items()})

    def format(self, var: str = "u") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self._coeffs.items():
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{format_rational(abs(c))}*{mono}"
            else:
                body = format_rational(abs(c))
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"RationalPolynomial({self.format('x')})"


def _as_poly(x) -> RationalPolynomial:
    if isinstance(x, RationalPolynomial):
        return x
    return RationalPolynomial.constant(as_rational(x))


def polynomial_eval(poly: RationalPolynomial, x: RationalLike) -> Fraction:
    """Exact Horner evaluation (gaps in the sparse exponents are handled)."""
    x = as_rational(x)
    acc = Fraction(0)
    prev = None
    for e in sorted(poly.exponents(), reverse=True):
        if prev is not None:
            acc *= x ** (prev - e)
        acc += poly.coeff(e)
        prev = e
    if prev:
        acc *= x**prev
    return acc


def poly_from_roots(roots: Iterable[RationalLike], lead: RationalLike = 1) -> RationalPolynomial:
    """lead * prod (x - r)."""
    out = RationalPolynomial.constant(lead)
    for r in roots:
        out = out * RationalPolynomial({1: 1, 0: -as_rational(r)})
    return out


_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {n}")
    # sum_{k<=m} C(m+1, k) B_k = 0 for m >= 1
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = sum(math.comb(m + 1, k) * _BERNOULLI[k] for k in range(m))
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def bernoulli_polynomial(n: int, x: RationalLike) -> Fraction:
    x = as_rational(x)
    return sum((math.comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)),
               Fraction(0))


def hurwitz_at_nonpositive(m: int, a: RationalLike) -> Fraction:
    """Exact zeta_H(-m, a) = -B_{m+1}(a)/(m+1) for integers m >= 0."""
    if m < 0:
        raise DomainError(f"need a non-positive argument, got -m = {-m}")
    return -bernoulli_polynomial(m + 1, a) / (m + 1)
