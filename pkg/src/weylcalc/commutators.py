"""Commutators: brute force via normal ordering, and closed-form basis series.

The series express [A_{m,n}, A_{r,s}] for T (Weyl), S (simplest symmetric)
and B (Born-Jordan) images back in the same basis.  Their formal infinite
sums are truncated where a reciprocal factorial of a negative integer
vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra import Expression, NormalForm, multiply, normal_order
from .errors import NegativeIndexUnsupported
from .quantization import BORN_JORDAN, SYMMETRIC, WEYL, BasisIndex, OrderingRule, basis_operator
from .scalars import Scalar, bernoulli_half, euler_number, factorial_reciprocal, falling_factorial

__all__ = [
    "CommutatorSeriesTerm",
    "commutator",
    "commutator_brute",
    "commutator_series",
    "expand_series",
    "SERIES_RULES",
]

SERIES_RULES = {"weyl": WEYL, "sym": SYMMETRIC, "bj": BORN_JORDAN}


@dataclass(frozen=True)
class CommutatorSeriesTerm:
    target: BasisIndex
    coefficient: Scalar

    @property
    def ihbar_power(self) -> int:
        return self.coefficient.degree


def commutator(a: Expression, b: Expression) -> Expression:
    """ab - ba as an (unordered) expression."""
    return multiply(a, b) - multiply(b, a)


def commutator_brute(a: Expression, b: Expression) -> NormalForm:
    return normal_order(commutator(a, b))


def _ff(x: int, k: int) -> Fraction:
    """x!/(x-k)! for x >= 0 with the reciprocal-gamma convention (0 if k > x)."""
    if x < 0:
        raise ValueError("x must be non-negative")
    return factorial(x) * factorial_reciprocal(x - k)


def _weyl_terms(m, n, r, s, acc):
    for j in range((m + n + r + s) // 2 + 1):
        big = 2 * j + 1
        pre = Fraction(2, factorial(big) * 2**big)
        total = Fraction(0)
        for k in range(big + 1):
            total += (
                (-1) ** k
                * comb(big, k)
                * _ff(m, k)
                * _ff(n, big - k)
                * _ff(r, big - k)
                * _ff(s, k)
            )
        if total:
            acc[(BasisIndex(m + r - big, n + s - big), big)] += pre * total


def _dressed_terms(m, n, r, s, acc, *, basis: str):
    bound = m + n + r + s
    for j in range(bound // 2 + 1):
        big = 2 * j + 1
        pre_j = Fraction(2, factorial(big) * 2**big)
        for k in range(big + 1):
            pre_k = pre_j * comb(big, k) * (-1) ** k
            for l in range(bound // 2 + 1):
                fm = _ff(m, k + 2 * l)
                fn = _ff(n, big - k + 2 * l)
                if not (fm and fn):
                    continue
                wl = factorial_reciprocal(2 * l) if basis == "sym" else factorial_reciprocal(2 * l + 1)
                for t in range(bound // 2 + 1):
                    fr = _ff(r, big - k + 2 * t)
                    fs = _ff(s, k + 2 * t)
                    if not (fr and fs):
                        continue
                    wt = factorial_reciprocal(2 * t) if basis == "sym" else factorial_reciprocal(2 * t + 1)
                    base = pre_k * Fraction(1, 2 ** (2 * l + 2 * t)) * wl * wt * fm * fn * fr * fs
                    top_m = m + r - big - 2 * l - 2 * t
                    top_n = n + s - big - 2 * l - 2 * t
                    for u in range(min(top_m, top_n) + 1):
                        if basis == "sym":
                            special = euler_number(u) * Fraction((-1) ** u, 2**u)
                        else:
                            special = bernoulli_half(u) * (-1) ** u
                        if not special:
                            continue
                        c = (
                            base
                            * special
                            * factorial_reciprocal(u)
                            * falling_factorial(top_m, u)
                            * falling_factorial(top_n, u)
                        )
                        if c:
                            power = big + 2 * l + 2 * t + u
                            acc[(BasisIndex(top_m - u, top_n - u), power)] += c


class _Acc(dict):
    def __missing__(self, key):
        return Fraction(0)


def commutator_series(basis: str, a, b) -> list[CommutatorSeriesTerm]:
    """[A_a, A_b] as a finite list of (target index, (i hbar)^k * rational).

    ``basis`` is ``"weyl"``, ``"sym"`` or ``"bj"``; all four indices must be
    non-negative.
    """
    m, n = a
    r, s = b
    if min(m, n, r, s) < 0:
        raise NegativeIndexUnsupported("commutator series are stated for non-negative indices")
    acc = _Acc()
    if basis == "weyl":
        _weyl_terms(m, n, r, s, acc)
    elif basis in ("sym", "bj"):
        _dressed_terms(m, n, r, s, acc, basis=basis)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    merged: dict[BasisIndex, Scalar] = {}
    for (idx, power), c in acc.items():
        if c:
            merged[idx] = merged.get(idx, Scalar()) + Scalar.ihbar_power(power, c)
    return [
        CommutatorSeriesTerm(idx, c)
        for idx, c in sorted(merged.items(), key=lambda kv: (-kv[0].m - kv[0].n, -kv[0].m))
        if c
    ]


def expand_series(basis: str, terms: list[CommutatorSeriesTerm]) -> Expression:
    rule: OrderingRule = SERIES_RULES[basis]
    out = Expression()
    for term in terms:
        out = out + basis_operator(rule, term.target).scale(term.coefficient)
    return out
