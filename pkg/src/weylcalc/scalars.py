"""Exact coefficients: complex rationals, polynomials in hbar, special numbers.

Nothing in this module ever rounds.  ``hbar`` is a formal indeterminate and
all rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Mapping, Union

__all__ = [
    "ComplexRational",
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "HBAR",
    "IHBAR",
    "factorial_reciprocal",
    "falling_factorial",
    "gamma_ratio_negative",
    "euler_number",
    "bernoulli_number",
    "bernoulli_half",
]

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ComplexRational:
    """``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "ComplexRational":
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ComplexRational")

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ComplexRational({self.re}, {self.im})"

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __add__(self, other) -> "ComplexRational":
        o = ComplexRational.coerce(other)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexRational":
        o = ComplexRational.coerce(other)
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "ComplexRational":
        return ComplexRational.coerce(other) - self

    def __mul__(self, other) -> "ComplexRational":
        if isinstance(other, (int, Fraction)):
            return ComplexRational(self.re * other, self.im * other)
        o = ComplexRational.coerce(other)
        return ComplexRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexRational":
        o = ComplexRational.coerce(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero complex rational")
        return ComplexRational(
            (self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d
        )

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)


class Scalar:
    """Finite polynomial in hbar with :class:`ComplexRational` coefficients.

    Immutable; zero coefficients are never stored, so the zero scalar has an
    empty term map and equality is plain map comparison.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, ComplexRational] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if k < 0:
                    raise ValueError("hbar powers must be non-negative")
                c = ComplexRational.coerce(c)
                if c:
                    clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        s = object.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def of(cls, x) -> "Scalar":
        """Coerce an int, Fraction, ComplexRational or Scalar."""
        if isinstance(x, Scalar):
            return x
        c = ComplexRational.coerce(x)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, coeff, power: int = 0) -> "Scalar":
        c = ComplexRational.coerce(coeff)
        return cls._raw({power: c} if c else {})

    @classmethod
    def ihbar_power(cls, k: int, factor: Number = 1) -> "Scalar":
        """``factor * (i*hbar)**k``."""
        f = _frac(factor)
        if not f:
            return ZERO
        unit = (f, 0) if k % 4 == 0 else (0, f) if k % 4 == 1 else (-f, 0) if k % 4 == 2 else (0, -f)
        return cls._raw({k: ComplexRational(*unit)})

    def items(self) -> Iterator[tuple[int, ComplexRational]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, power: int) -> ComplexRational:
        return self._terms.get(power, ComplexRational())

    @property
    def degree(self) -> int:
        return max(self._terms) if self._terms else -1

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(0) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ComplexRational)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({dict(self.items())!r})"

    def __neg__(self) -> "Scalar":
        return Scalar._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other) -> "Scalar":
        o = Scalar.of(other)
        out = dict(self._terms)
        for k, c in o._terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return Scalar._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other) -> "Scalar":
        return Scalar.of(other) - self

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar._raw({k: c * other for k, c in self._terms.items()})
        o = Scalar.of(other)
        out: dict[int, ComplexRational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in o._terms.items():
                k = k1 + k2
                prod = c1 * c2
                out[k] = out[k] + prod if k in out else prod
        return Scalar._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        """Division by a nonzero constant (hbar-free) scalar only."""
        o = Scalar.of(other)
        if len(o._terms) != 1 or 0 not in o._terms:
            raise ZeroDivisionError("can only divide by a nonzero hbar-free constant")
        c = o._terms[0]
        return Scalar._raw({k: v / c for k, v in self._terms.items()})

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            raise ValueError("negative powers of scalars are not supported")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "Scalar":
        return Scalar._raw({k: c.conjugate() for k, c in self._terms.items()})

    def at_hbar_zero(self) -> "Scalar":
        c = self._terms.get(0)
        return Scalar._raw({0: c} if c is not None else {})


ZERO = Scalar()
ONE = Scalar.of(1)
I = Scalar.of(ComplexRational(0, 1))
HBAR = Scalar.monomial(1, 1)
IHBAR = Scalar.ihbar_power(1)


def factorial_reciprocal(k: int) -> Fraction:
    """1/k! with the reciprocal-gamma convention 1/k! = 0 for k < 0."""
    if k < 0:
        return Fraction(0)
    return Fraction(1, factorial(k))


def falling_factorial(x: int, k: int) -> int:
    """x (x-1) ... (x-k+1); valid for any integer x."""
    out = 1
    for i in range(k):
        out *= x - i
    return out


def gamma_ratio_negative(n: int, m: int) -> Fraction:
    """Gamma(-n) / Gamma(-n-m) for non-negative integers, as a finite limit.

    Both gammas sit on poles; the ratio of residues is (-1)^m (n+m)!/n!.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    return Fraction((-1) ** m * factorial(n + m), factorial(n))


@lru_cache(maxsize=None)
def _euler_even(n: int) -> int:
    # sum_{k=0}^{n} C(2n, 2k) E_{2k} = 0 for n >= 1
    if n == 0:
        return 1
    return -sum(comb(2 * n, 2 * k) * _euler_even(k) for k in range(n))


def euler_number(u: int) -> Fraction:
    """Euler number E_u (secant convention: E_0 = 1, E_2 = -1, E_4 = 5)."""
    if u < 0:
        raise ValueError("u must be non-negative")
    if u % 2:
        return Fraction(0)
    return Fraction(_euler_even(u // 2))


@lru_cache(maxsize=None)
def bernoulli_number(u: int) -> Fraction:
    """B_u with B_1 = -1/2, from sum_{k<=m} C(m+1, k) B_k = 0."""
    if u < 0:
        raise ValueError("u must be non-negative")
    if u == 0:
        return Fraction(1)
    return -sum(comb(u + 1, k) * bernoulli_number(k) for k in range(u)) / (u + 1)


def bernoulli_half(u: int) -> Fraction:
    """Bernoulli polynomial B_u(x) at x = 1/2, i.e. (2^(1-u) - 1) B_u."""
    return (Fraction(2) ** (1 - u) - 1) * bernoulli_number(u)
