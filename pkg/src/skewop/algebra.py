"""Exact rational scalars and sparse univariate polynomials.

Scalars are :class:`fractions.Fraction`, which already normalises to lowest
terms with a positive denominator and raises on division by zero.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .errors import PoleError

ExactRational = Fraction
Scalar = Union[int, Fraction]

#: Degree of the zero polynomial.
ZERO_DEGREE = -math.inf


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal. Decimal notation is refused."""
    s = text.strip()
    if not s or any(c in s for c in ".eE") or s.count("/") > 1:
        raise ValueError(f"not an exact rational: {text!r} (use p/q or an integer)")
    num, _, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if den else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    """Always ``"p/q"``, including integers (``"3/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class UniPoly:
    """Immutable sparse polynomial in one variable over the rationals."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"degree must be a nonnegative int, got {k!r}")
            c = as_rational(c)
            if c:
                clean[k] = c
        self._terms = MappingProxyType(dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "UniPoly":
        return cls({degree: coeff})

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls({0: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "UniPoly":
        """Build from an ascending coefficient list."""
        return cls(dict(enumerate(coeffs)))

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return self._terms

    @property
    def degree(self):
        return max(self._terms) if self._terms else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._terms

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.degree] if self._terms else Fraction(0)

    def is_monic(self) -> bool:
        return self.leading_coefficient() == 1

    def is_even(self) -> bool:
        return all(k % 2 == 0 for k in self._terms)

    def is_odd(self) -> bool:
        return all(k % 2 == 1 for k in self._terms)

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def coeffs(self) -> list[Fraction]:
        """Dense ascending coefficients (empty for the zero polynomial)."""
        if not self._terms:
            return []
        return [self.coeff(k) for k in range(self.degree + 1)]

    def __call__(self, x):
        # Horner on the dense form; works for Fractions, floats and arrays
        acc = 0
        for c in reversed(self.coeffs()):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(as_rational(other))
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(as_rational(other))
        return poly_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            out: dict[int, Fraction] = {}
            for i, a in self._terms.items():
                for j, b in other._terms.items():
                    out[i + j] = out.get(i + j, 0) + a * b
            return UniPoly(out)
        c = as_rational(other)
        return UniPoly({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return dict(self._terms) == dict(other._terms)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"UniPoly({dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_add(a: UniPoly, b: UniPoly) -> UniPoly:
    out = dict(a.terms)
    for k, c in b.terms.items():
        out[k] = out.get(k, 0) + c
    return UniPoly(out)


def poly_shift_mul(p: UniPoly, k: int) -> UniPoly:
    """Multiply by ``z**k``."""
    if k < 0:
        raise ValueError("shift must be nonnegative")
    return UniPoly({d + k: c for d, c in p.terms.items()})


def rising_factorial(u: Scalar, m: int) -> Fraction:
    """``u (u+1) ... (u+m-1)``; the empty product is 1."""
    if m < 0:
        raise ValueError("rising factorial length must be nonnegative")
    u = as_rational(u)
    out = Fraction(1)
    for i in range(m):
        out *= u + i
    return out


def gamma_ratio(a: Scalar, b: Scalar) -> Fraction:
    """Exact ``Gamma(a) / Gamma(b)`` for ``a - b`` an integer.

    The ratio is read as its analytic continuation, so a pole in both
    arguments gives the finite limit and a pole only in ``b`` gives zero.
    A pole only in ``a`` raises :class:`PoleError`.
    """
    a, b = as_rational(a), as_rational(b)
    diff = a - b
    if diff.denominator != 1:
        raise ValueError(f"gamma_ratio needs an integer argument difference, got {a} - {b}")
    k = int(diff)
    if k >= 0:
        return rising_factorial(b, k)
    den = rising_factorial(a, -k)
    if den == 0:
        raise PoleError("Gamma pole in numerator only", a=a, b=b)
    return 1 / den
