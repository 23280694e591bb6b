"""Ordering rules and the basis operators T, S, B (and custom A) they produce."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, NamedTuple, Sequence

from .algebra import P, Q, Expression, NormalForm, Polynomial, Word, make_word, normal_order
from .errors import (
    BasisEliminationFailed,
    BothIndicesNegative,
    WeightCountMismatch,
    WeightsNotNormalized,
)
from .scalars import ONE, Scalar

__all__ = [
    "BasisIndex",
    "OrderingRule",
    "WEYL",
    "SYMMETRIC",
    "BORN_JORDAN",
    "BUILTIN_RULES",
    "basis_operator",
    "quantize",
    "express_in_basis",
    "expand_basis",
]


class BasisIndex(NamedTuple):
    """Subscripts (m, n) of A_{m,n}, the image of p^m q^n."""

    m: int
    n: int

    def validate(self) -> "BasisIndex":
        if self.m < 0 and self.n < 0:
            raise BothIndicesNegative(f"no quantization of p^{self.m} q^{self.n}")
        return self


_BUILTIN = {"weyl": "T", "sym": "S", "bj": "B"}


@dataclass(frozen=True)
class OrderingRule:
    """A coefficient family resolving the ordering of p^m q^n.

    Built-in rules (``weyl``, ``sym``, ``bj``) supply weights for every
    sandwich size.  A ``custom`` rule carries one weight vector and one
    orientation: ``"q"`` means the weights a_j sit on q^j p^m q^(n-j), ``"p"``
    means they sit on p^j q^n p^(m-j).
    """

    kind: str
    weights: tuple[Fraction, ...] | None = None
    orientation: str | None = None

    def __post_init__(self):
        if self.kind in _BUILTIN:
            return
        if self.kind != "custom":
            raise ValueError(f"unknown ordering rule {self.kind!r}")
        if self.orientation not in (Q, P):
            raise ValueError("custom rules need orientation 'q' or 'p'")
        if not self.weights:
            raise WeightCountMismatch("custom rule needs at least one weight")
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if sum(ws) != 1:
            raise WeightsNotNormalized(f"weights sum to {sum(ws)}, not 1")

    @classmethod
    def custom(cls, weights: Sequence, orientation: str = Q) -> "OrderingRule":
        return cls("custom", tuple(Fraction(w) for w in weights), orientation)

    @property
    def is_builtin(self) -> bool:
        return self.kind in _BUILTIN

    @property
    def symbol(self) -> str:
        return _BUILTIN.get(self.kind, "A")

    def sandwich_weights(self, size: int) -> list[Fraction]:
        """Weights w_0..w_size for a sandwich over ``size`` outer factors."""
        if self.kind == "weyl":
            return [Fraction(comb(size, j), 2**size) for j in range(size + 1)]
        if self.kind == "sym":
            return [Fraction((j == 0) + (j == size), 2) for j in range(size + 1)]
        if self.kind == "bj":
            return [Fraction(1, size + 1)] * (size + 1)
        if len(self.weights) != size + 1:
            raise WeightCountMismatch(
                f"custom rule has {len(self.weights)} weights, need {size + 1}"
            )
        return list(self.weights)

    def __str__(self) -> str:
        if self.is_builtin:
            return self.kind
        ws = " ".join(str(w) for w in self.weights)
        return f"custom[{self.orientation}: {ws}]"


WEYL = OrderingRule("weyl")
SYMMETRIC = OrderingRule("sym")
BORN_JORDAN = OrderingRule("bj")
BUILTIN_RULES = (WEYL, SYMMETRIC, BORN_JORDAN)


def _sandwich(outer: str, inner: str, inner_exp: int, size: int, weights) -> Expression:
    terms: dict[Word, Scalar] = {}
    for j, w in enumerate(weights):
        if w:
            word = make_word(((outer, j), (inner, inner_exp), (outer, size - j)))
            terms[word] = terms.get(word, Scalar()) + w
    return Expression(terms)


def basis_operator(rule: OrderingRule, idx, orientation: str | None = None) -> Expression:
    """A_{m,n} under ``rule`` as an explicit sandwich of words.

    ``orientation="q"`` gives sum_j a_j q^j p^m q^(n-j) (needs n >= 0);
    ``orientation="p"`` gives sum_j b_j p^j q^n p^(m-j) (needs m >= 0).  For
    built-in rules the default is the q-sandwich when n >= 0; custom rules use
    their own orientation.
    """
    m, n = BasisIndex(*idx).validate()
    if orientation is None:
        orientation = rule.orientation if not rule.is_builtin else (Q if n >= 0 else P)
    elif not rule.is_builtin and orientation != rule.orientation:
        raise ValueError(f"custom rule is defined only in orientation {rule.orientation!r}")
    if orientation == Q:
        if n < 0:
            raise ValueError(f"q-sandwich needs n >= 0, got n = {n}")
        return _sandwich(Q, P, m, n, rule.sandwich_weights(n))
    if orientation == P:
        if m < 0:
            raise ValueError(f"p-sandwich needs m >= 0, got m = {m}")
        return _sandwich(P, Q, n, m, rule.sandwich_weights(m))
    raise ValueError(f"orientation must be 'q' or 'p', not {orientation!r}")


def quantize(f: Polynomial, rule: OrderingRule, orientation: str | None = None) -> Expression:
    """Linear extension of p^m q^n -> A_{m,n}."""
    out = Expression()
    for (q_exp, p_exp), c in f.items():
        idx = BasisIndex(p_exp, q_exp)
        idx.validate()
        orient = orientation
        if orient == Q and q_exp < 0:
            orient = P
        elif orient == P and p_exp < 0:
            orient = Q
        out = out + basis_operator(rule, idx, orient).scale(c)
    return out


def expand_basis(rule: OrderingRule, coeffs: Mapping) -> Expression:
    """sum_idx c_idx A_idx as an expression."""
    out = Expression()
    for idx, c in coeffs.items():
        out = out + basis_operator(rule, idx).scale(c)
    return out


def _elimination_key(key: tuple[int, int]):
    a, b = key
    return (abs(a) + abs(b), a)


def express_in_basis(nf: NormalForm, rule: OrderingRule) -> dict[BasisIndex, Scalar]:
    """Coefficients c with sum c_{m,n} A_{m,n} equal to ``nf``.

    Each basis operator normal-orders to q^n p^m plus terms strictly lower in
    (total degree, q exponent), so peeling the top term repeatedly is a
    unitriangular solve.
    """
    remainder = dict(nf.items())
    out: dict[BasisIndex, Scalar] = {}
    guard = 0
    while remainder:
        top = max(remainder, key=_elimination_key)
        c = remainder[top]
        idx = BasisIndex(top[1], top[0])
        image = normal_order(basis_operator(rule, idx))
        lead = image.coefficient(top[0], top[1])
        if lead != ONE:
            raise BasisEliminationFailed(f"leading coefficient of {idx} is {lead}")
        out[idx] = out.get(idx, Scalar()) + c
        for key, v in image.items():
            s = remainder.get(key, Scalar()) - v * c
            if s:
                remainder[key] = s
            else:
                remainder.pop(key, None)
        if top in remainder:
            raise BasisEliminationFailed(f"term {top} did not cancel")
        guard += 1
        if guard > 100_000:
            raise BasisEliminationFailed("elimination did not terminate")
    return {k: v for k, v in out.items() if v}
