"""The Weyl algebra generated by q and p with [q, p] = i*hbar.

Operators are :class:`Expression` objects: finite linear combinations of
words in q and p with integer (possibly negative) exponents.  Products
concatenate words without reordering.  :func:`normal_order` rewrites an
expression into the canonical q-left/p-right :class:`NormalForm`, which is
what operator equality is decided on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import MixedNegativePowers
from .scalars import ONE, ZERO, Scalar, falling_factorial

__all__ = [
    "Q",
    "P",
    "Word",
    "make_word",
    "word_degree",
    "Expression",
    "NormalForm",
    "Polynomial",
    "normal_order",
    "multiply",
    "adjoint",
    "equals",
    "classical_limit",
    "q",
    "p",
    "one",
]

Q = "q"
P = "p"
LETTERS = (Q, P)

Word = tuple  # tuple[tuple[str, int], ...]; adjacent letters differ, no zero exponents


def make_word(factors: Iterable[tuple[str, int]]) -> Word:
    """Build a word from (letter, exponent) pairs, merging runs and dropping zeros."""
    stack: list[list] = []
    for letter, exp in factors:
        if letter not in LETTERS:
            raise ValueError(f"unknown generator {letter!r}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == letter:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([letter, exp])
    return tuple((l, e) for l, e in stack)


def concat_words(a: Word, b: Word) -> Word:
    if not a:
        return b
    if not b:
        return a
    if a[-1][0] != b[0][0]:
        return a + b
    return make_word(a + b)


def word_degree(w: Word) -> int:
    return sum(abs(e) for _, e in w)


def _coerce_scalar(c) -> Scalar:
    return Scalar.of(c)


class Expression:
    """Finite linear combination of words over :class:`Scalar`.

    ``==`` compares representations term by term.  Use :func:`equals` to
    compare as operators.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean: dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                w = make_word(w)
                c = _coerce_scalar(c)
                if not c:
                    continue
                if w in clean:
                    c = clean[w] + c
                    if c:
                        clean[w] = c
                    else:
                        del clean[w]
                else:
                    clean[w] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Expression":
        e = object.__new__(cls)
        e._terms = terms
        return e

    @classmethod
    def word(cls, *factors: tuple[str, int], coeff=1) -> "Expression":
        c = _coerce_scalar(coeff)
        if not c:
            return cls._raw({})
        return cls._raw({make_word(factors): c})

    @classmethod
    def constant(cls, c) -> "Expression":
        c = _coerce_scalar(c)
        return cls._raw({(): c} if c else {})

    def terms(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(make_word(word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def words(self) -> list[Word]:
        return list(self._terms)

    def min_exponent(self) -> int:
        return min((e for w in self._terms for _, e in w), default=1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .formatting import format_expression

        return f"Expression({format_expression(self)!r})"

    def __neg__(self) -> "Expression":
        return Expression._raw({w: -c for w, c in self._terms.items()})

    def __add__(self, other) -> "Expression":
        if not isinstance(other, Expression):
            other = Expression.constant(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return Expression._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Expression":
        if not isinstance(other, Expression):
            other = Expression.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Expression":
        return Expression.constant(other) - self

    def scale(self, c) -> "Expression":
        c = _coerce_scalar(c)
        if not c:
            return Expression._raw({})
        if c.is_one():
            return self
        out = {}
        for w, v in self._terms.items():
            s = v * c
            if s:
                out[w] = s
        return Expression._raw(out)

    def __mul__(self, other) -> "Expression":
        if not isinstance(other, Expression):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other) -> "Expression":
        return self.scale(other)

    def __pow__(self, n: int) -> "Expression":
        if n < 0:
            raise ValueError("use word exponents for negative powers of generators")
        out = one()
        for _ in range(n):
            out = out * self
        return out


def q(k: int = 1) -> Expression:
    return Expression.word((Q, k))


def p(k: int = 1) -> Expression:
    return Expression.word((P, k))


def one() -> Expression:
    return Expression.constant(1)


def multiply(a: Expression, b: Expression) -> Expression:
    """Free product: concatenate words (merging runs) and multiply coefficients."""
    out: dict[Word, Scalar] = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            w = concat_words(w1, w2)
            c = c1 * c2
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            elif c:
                out[w] = c
    return Expression._raw(out)


def adjoint(e: Expression) -> Expression:
    """Formal adjoint: reverse each word, conjugate each coefficient."""
    return Expression._raw({tuple(reversed(w)): c.conjugate() for w, c in e._terms.items()})


class NormalForm:
    """sum c_{a,b} q^a p^b, keyed by (q exponent, p exponent)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = _coerce_scalar(c)
                if c:
                    a, b = key
                    if a < 0 and b < 0:
                        raise MixedNegativePowers(f"term q^{a} p^{b} is out of scope")
                    clean[(a, b)] = clean[(a, b)] + c if (a, b) in clean else c
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "NormalForm":
        nf = object.__new__(cls)
        nf._terms = terms
        return nf

    def items(self) -> Iterator[tuple[tuple[int, int], Scalar]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (-abs(kv[0][0]) - abs(kv[0][1]), -kv[0][0], -kv[0][1])))

    def keys(self):
        return self._terms.keys()

    def coefficient(self, q_exp: int, p_exp: int) -> Scalar:
        return self._terms.get((q_exp, p_exp), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .formatting import format_normal_form

        return f"NormalForm({format_normal_form(self)!r})"

    def __neg__(self) -> "NormalForm":
        return NormalForm._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other: "NormalForm") -> "NormalForm":
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return NormalForm._raw(out)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + (-other)

    def scale(self, c) -> "NormalForm":
        c = _coerce_scalar(c)
        out = {}
        for k, v in self._terms.items():
            s = v * c
            if s:
                out[k] = s
        return NormalForm._raw(out)

    def to_expression(self) -> Expression:
        return Expression._raw({make_word(((Q, a), (P, b))): c for (a, b), c in self._terms.items()})


def _accumulate(out: dict, items) -> None:
    for k, c in items:
        if k in out:
            s = out[k] + c
            if s:
                out[k] = s
            else:
                del out[k]
        elif c:
            out[k] = c


def _reorder_coefficients(a: int, b: int):
    """p^a q^b = sum_k c_k q^(b-k) p^(a-k) with c_k = (-i hbar)^k (a)_k (b)_k / k!.

    Finite whenever a >= 0 or b >= 0 since one falling factorial vanishes.
    """
    if a < 0 and b < 0:
        raise MixedNegativePowers(f"cannot reorder p^{a} q^{b}: both exponents negative")
    top = a if a >= 0 else b
    if a >= 0 and b >= 0:
        top = min(a, b)
    out = []
    kfact = 1
    for k in range(top + 1):
        if k:
            kfact *= k
        num = falling_factorial(a, k) * falling_factorial(b, k)
        if num:
            # (-i)^k
            out.append((k, Scalar.ihbar_power(k, Fraction(num * (-1) ** k, kfact))))
    return out


@lru_cache(maxsize=200_000)
def _normal_order_word(w: Word) -> tuple:
    state: dict[tuple[int, int], Scalar] = {(0, 0): ONE}
    for letter, c in w:
        new: dict[tuple[int, int], Scalar] = {}
        if letter == P:
            for (a, b), s in state.items():
                key = (a, b + c)
                if a < 0 and b + c < 0:
                    raise MixedNegativePowers(f"word {w!r} reorders into q^{a} p^{b + c}")
                _accumulate(new, [(key, s)])
        else:
            for (a, b), s in state.items():
                for k, coeff in _reorder_coefficients(b, c):
                    key = (a + c - k, b - k)
                    if key[0] < 0 and key[1] < 0:
                        raise MixedNegativePowers(f"word {w!r} reorders into q^{key[0]} p^{key[1]}")
                    _accumulate(new, [(key, s * coeff)])
        state = new
    return tuple(state.items())


def normal_order(e: Expression) -> NormalForm:
    """Canonical q-left/p-right form of ``e``.

    Words are folded left to right; each time a q-power meets the p-power
    already on the right of the partial result, the pair is swapped with the
    closed-form rule for p^a q^b.  Raises :class:`MixedNegativePowers` when a
    term needs both a negative q and a negative p exponent.
    """
    out: dict[tuple[int, int], Scalar] = {}
    for w, c in e._terms.items():
        for key, s in _normal_order_word(w):
            _accumulate(out, [(key, s * c)])
    return NormalForm._raw(out)


def equals(a: Expression, b: Expression) -> bool:
    """Operator equality: identical normal forms."""
    return normal_order(a - b).is_zero()


class Polynomial:
    """Commutative Laurent polynomial in q and p, keyed by (q exponent, p exponent)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        out: dict = {}
        if terms:
            _accumulate(out, ((k, _coerce_scalar(c)) for k, c in terms.items()))
        self._terms = out

    @classmethod
    def monomial(cls, q_exp: int, p_exp: int, coeff=1) -> "Polynomial":
        return cls({(q_exp, p_exp): coeff})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({(0, 0): c})

    def items(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (-abs(kv[0][0]) - abs(kv[0][1]), -kv[0][0], -kv[0][1])))

    def coefficient(self, q_exp: int, p_exp: int) -> Scalar:
        return self._terms.get((q_exp, p_exp), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        from .formatting import format_polynomial

        return f"Polynomial({format_polynomial(self)!r})"

    def __neg__(self) -> "Polynomial":
        return Polynomial._from({k: -c for k, c in self._terms.items()})

    @classmethod
    def _from(cls, terms: dict) -> "Polynomial":
        poly = object.__new__(cls)
        poly._terms = terms
        return poly

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return Polynomial._from(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                _accumulate(out, [((a1 + a2, b1 + b2), c1 * c2)])
        return Polynomial._from(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((a, b), c), = self._terms.items()
            if not c.is_one():
                raise ValueError("only unit monomials can be raised to negative powers")
            return Polynomial.monomial(a * n, b * n)
        out = Polynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, letter: str) -> "Polynomial":
        out: dict = {}
        for (a, b), c in self._terms.items():
            if letter == Q and a:
                _accumulate(out, [((a - 1, b), c * a)])
            elif letter == P and b:
                _accumulate(out, [((a, b - 1), c * b)])
        return Polynomial._from(out)


def classical_limit(e: Expression) -> Polynomial:
    """Normal-order, set hbar = 0, and read q, p as commuting variables."""
    nf = normal_order(e)
    out = {}
    for key, c in nf._terms.items():
        c0 = c.at_hbar_zero()
        if c0:
            out[key] = c0
    return Polynomial._from(out)
