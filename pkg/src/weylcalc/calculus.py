"""Differentiation of operators with respect to q or p.

Four rules are provided:

* ``dq1``: the cyclic first-type quotient.  For each occurrence of the
  variable in a word, emit (factors after it)(factors before it).
* ``dq1_weyl_mod``: the same rotations weighted by
  count/2^(count-1) * C(count-1, l-1), where ``count`` is the number of
  occurrences and ``l`` the 1-based rank of the chosen one.
* ``dq1_sym_mod``: only the first and last occurrence, each weighted count/2.
* ``dq2``: the second-type (limit) quotient, computed as the formal product
  rule X^k -> k X^(k-1), valid for negative k as well.

The first-type family depends on how an operator is written, not only on the
operator, so its results are returned exactly as generated (no reordering).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .algebra import LETTERS, P, Q, Expression, Word, concat_words, make_word
from .errors import NegativeExponentUnsupported
from .quantization import BasisIndex
from .scalars import Scalar, factorial_reciprocal, gamma_ratio_negative

__all__ = [
    "DerivativeKind",
    "dq1",
    "dq1_weyl_mod",
    "dq1_sym_mod",
    "dq2",
    "differentiate",
    "diff_n",
    "mixed_partial",
    "multiple_derivative_coefficient",
    "closed_form_multiple",
    "dq2_by_limit",
]


class DerivativeKind(Enum):
    FIRST = "first"
    WEYL_MOD = "weyl-mod"
    SYM_MOD = "sym-mod"
    SECOND = "second"

    @property
    def is_first_type(self) -> bool:
        return self is not DerivativeKind.SECOND


def _check_letter(wrt: str) -> None:
    if wrt not in LETTERS:
        raise ValueError(f"can only differentiate with respect to q or p, not {wrt!r}")


def _units(w: Word) -> list[str]:
    letters = []
    for letter, e in w:
        if e < 0:
            raise NegativeExponentUnsupported(
                f"first-type quotients need positive exponents, got {letter}^{e}"
            )
        letters.extend([letter] * e)
    return letters


def _cyclic(e: Expression, wrt: str, weight: Callable[[int, int], Fraction]) -> Expression:
    _check_letter(wrt)
    out = Expression()
    for w, c in e.terms():
        units = _units(w)
        count = units.count(wrt)
        if not count:
            continue
        terms: dict[Word, Scalar] = {}
        rank = 0
        for pos, letter in enumerate(units):
            if letter != wrt:
                continue
            rank += 1
            wt = weight(count, rank)
            if not wt:
                continue
            rotated = make_word((x, 1) for x in units[pos + 1 :] + units[:pos])
            terms[rotated] = terms.get(rotated, Scalar()) + wt
        out = out + Expression(terms).scale(c)
    return out


def dq1(e: Expression, wrt: str) -> Expression:
    """First-type (cyclic) differential quotient."""
    return _cyclic(e, wrt, lambda count, rank: Fraction(1))


def _weyl_weight(count: int, rank: int) -> Fraction:
    return Fraction(count * comb(count - 1, rank - 1), 2 ** (count - 1))


def _sym_weight(count: int, rank: int) -> Fraction:
    # (count/2) * (delta_{rank,1} + delta_{rank,count}); a lone occurrence gets both
    return Fraction(count, 2) * ((rank == 1) + (rank == count))


def dq1_weyl_mod(e: Expression, wrt: str) -> Expression:
    """First-type quotient reweighted so Weyl images map to Weyl images."""
    return _cyclic(e, wrt, _weyl_weight)


def dq1_sym_mod(e: Expression, wrt: str) -> Expression:
    """First-type quotient keeping only the outermost occurrences."""
    return _cyclic(e, wrt, _sym_weight)


def dq2(e: Expression, wrt: str) -> Expression:
    """Second-type quotient: d/dX of each word by the product rule."""
    _check_letter(wrt)
    terms: dict[Word, Scalar] = {}
    for w, c in e.terms():
        for i, (letter, k) in enumerate(w):
            if letter != wrt:
                continue
            new = concat_words(concat_words(w[:i], make_word(((letter, k - 1),))), w[i + 1 :])
            terms[new] = terms.get(new, Scalar()) + c * k
    return Expression(terms)


_DISPATCH = {
    DerivativeKind.FIRST: dq1,
    DerivativeKind.WEYL_MOD: dq1_weyl_mod,
    DerivativeKind.SYM_MOD: dq1_sym_mod,
    DerivativeKind.SECOND: dq2,
}


def differentiate(e: Expression, wrt: str, kind: DerivativeKind = DerivativeKind.SECOND) -> Expression:
    return _DISPATCH[DerivativeKind(kind)](e, wrt)


def diff_n(e: Expression, wrt: str, order: int, kind: DerivativeKind = DerivativeKind.SECOND) -> Expression:
    """Apply a derivative ``order`` times (default: second type)."""
    if order < 0:
        raise ValueError("order must be non-negative")
    for _ in range(order):
        e = differentiate(e, wrt, kind)
    return e


def mixed_partial(e: Expression, s: int, t: int) -> Expression:
    """d^s/dp^s d^t/dq^t by the second-type rule, computed in both orders.

    Raises AssertionError if the two orders disagree.
    """
    p_first = diff_n(diff_n(e, P, s), Q, t)
    q_first = diff_n(diff_n(e, Q, t), P, s)
    if p_first != q_first:
        from .algebra import equals

        if not equals(p_first, q_first):
            raise AssertionError("mixed partials depend on the order of differentiation")
    return p_first


def multiple_derivative_coefficient(k: int, order: int) -> Fraction:
    """Factor c with d^order/dX^order A = c * A' when A carries X-index ``k``.

    k >= 0 gives k!/(k-order)! (zero once order > k); k < 0 gives
    Gamma(-(|k|-1)) / Gamma(-(|k|-1) - order) = (-1)^order (|k|+order-1)!/(|k|-1)!.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if k >= 0:
        return factorial(k) * factorial_reciprocal(k - order)
    return gamma_ratio_negative(-k - 1, order)


def closed_form_multiple(idx, wrt: str, order: int) -> tuple[Fraction, BasisIndex]:
    """Coefficient and target index of d^order A_idx / dX^order."""
    m, n = idx
    if wrt == P:
        return multiple_derivative_coefficient(m, order), BasisIndex(m - order, n)
    return multiple_derivative_coefficient(n, order), BasisIndex(m, n - order)


def _series_power(letter: str, k: int, depth: int) -> list[Expression]:
    """Coefficients of delta^0..delta^depth in (X + delta)^k, truncated."""
    x = Expression.word((letter, 1))
    if k >= 0:
        base = [x, Expression.constant(1)]
    else:
        # (X + delta)^-1 = X^-1 sum_i (-delta X^-1)^i
        inv = Expression.word((letter, -1))
        base = [inv]
        term = inv
        for _ in range(depth):
            term = (term * inv).scale(-1)
            base.append(term)
    out = [Expression.constant(1)]
    for _ in range(abs(k)):
        out = _truncated_product(out, base, depth)
    return out


def _truncated_product(a: list[Expression], b: list[Expression], depth: int) -> list[Expression]:
    out = [Expression() for _ in range(depth + 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= depth:
                out[i + j] = out[i + j] + x * y
    return out


def dq2_by_limit(e: Expression, wrt: str, depth: int = 2) -> Expression:
    """Second-type quotient straight from the limit definition.

    Substitutes X -> X + delta*1 in every factor, expands each word as a
    polynomial in delta (truncated at ``depth``) and keeps the linear
    coefficient.  Independent of :func:`dq2`; intended as a check on small
    words.
    """
    _check_letter(wrt)
    out = Expression()
    for w, c in e.terms():
        series = [Expression.constant(1)]
        for letter, k in w:
            if letter == wrt:
                factor = _series_power(letter, k, depth)
            else:
                factor = [Expression.word((letter, k))]
            series = _truncated_product(series, factor, depth)
        if len(series) > 1:
            out = out + series[1].scale(c)
    return out
