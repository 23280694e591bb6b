"""Text input for operators and classical polynomials.

Grammar (whitespace is insignificant)::

    expr     := [+|-] term {(+|-) term}
    term     := power {[*] power}          juxtaposition is a product
    power    := atom [^ exponent]
    exponent := [+|-] INT | '{' [+|-] INT '}' | '(' [+|-] INT ')'
    atom     := INT [/ INT] | q | p | i | hbar | '(' expr ')' | (T|S|B) '[' INT , INT ']'

In operator mode products keep their order; in classical mode q and p
commute and basis symbols are rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import P, Q, Expression, Polynomial
from .errors import DomainError, ParseError
from .formatting import from_structured
from .quantization import BORN_JORDAN, SYMMETRIC, WEYL, basis_operator
from .scalars import ComplexRational, Scalar

__all__ = ["parse", "parse_expression", "parse_polynomial", "parse_structured"]

_BASIS = {"T": WEYL, "S": SYMMETRIC, "B": BORN_JORDAN}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z]+)
  | (?P<op>[-+*/^(){}\[\],])
    """,
    re.VERBOSE,
)

_ALIASES = {"−": "-", "·": "*", "⋅": "*"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch in _ALIASES:
            toks.append(_Tok("op", _ALIASES[ch], pos))
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind == "name":
            word = m.group()
            if word in ("hbar", "i", "T", "S", "B", "q", "p"):
                toks.append(_Tok("name", word, pos))
            elif set(word) <= {"q", "p"}:
                # "qpq" is shorthand for "q p q"
                toks.extend(_Tok("name", ch, pos + k) for k, ch in enumerate(word))
            else:
                raise ParseError(f"unknown name {word!r}", _byte_offset(text, pos))
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, classical: bool):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.classical = classical

    # value helpers -------------------------------------------------------
    def const(self, c) -> Expression | Polynomial:
        s = Scalar.of(c) if not isinstance(c, Scalar) else c
        return Polynomial.constant(s) if self.classical else Expression.constant(s)

    def gen(self, letter: str, k: int):
        if self.classical:
            return Polynomial.monomial(k if letter == Q else 0, k if letter == P else 0)
        return Expression.word((letter, k))

    # token helpers -------------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, _byte_offset(self.text, tok.pos))

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def integer(self) -> int:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    # grammar -------------------------------------------------------------
    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty input")
        v = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return v

    def expr(self):
        neg = False
        if self.accept("-"):
            neg = True
        else:
            self.accept("+")
        v = self.term()
        if neg:
            v = -v
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("int", "name") or (t.kind == "op" and t.text == "(")

    def term(self):
        v = self.power()
        while True:
            if self.accept("*"):
                v = v * self.power()
            elif self._starts_atom():
                v = v * self.power()
            else:
                return v

    def exponent(self) -> int:
        if self.accept("{"):
            k = self.integer()
            self.expect("}")
            return k
        if self.accept("("):
            k = self.integer()
            self.expect(")")
            return k
        return self.integer()

    def power(self):
        start = self.tok
        kind, v = self.atom()
        if not self.accept("^"):
            return v
        k = self.exponent()
        if kind == "gen":
            return self.gen(start.text, k)
        if k >= 0:
            return v**k
        inverse = self._constant_inverse(v)
        if inverse is None:
            raise self.error("negative exponents need q, p or a nonzero hbar-free constant", start)
        return inverse ** (-k)

    def _constant_inverse(self, v):
        terms = list(v.items() if self.classical else v.terms())
        if len(terms) != 1:
            return None
        key, c = terms[0]
        if key not in ((), (0, 0)) or c.degree != 0:
            return None
        return self.const(Scalar.of(1) / c.coefficient(0))

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            num = int(t.text)
            if self.accept("/"):
                if self.tok.kind != "int":
                    raise self.error("expected a denominator")
                den = int(self.tok.text)
                if den == 0:
                    raise self.error("zero denominator")
                self.i += 1
                return "number", self.const(Fraction(num, den))
            return "number", self.const(Fraction(num))
        if t.kind == "name":
            self.i += 1
            if t.text in (Q, P):
                return "gen", self.gen(t.text, 1)
            if t.text == "i":
                return "i", self.const(ComplexRational(0, 1))
            if t.text == "hbar":
                return "hbar", self.const(Scalar.monomial(1, 1))
            if self.classical:
                raise self.error(f"basis symbol {t.text!r} is not allowed in classical mode", t)
            self.expect("[")
            m = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect("]")
            try:
                return "basis", basis_operator(_BASIS[t.text], (m, n))
            except DomainError as exc:
                raise self.error(str(exc), t) from exc
        if self.accept("("):
            v = self.expr()
            self.expect(")")
            return "group", v
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse(text: str, mode: str = "operator"):
    """Parse ``text`` as an operator Expression or a classical Polynomial."""
    if mode not in ("operator", "classical"):
        raise ValueError(f"unknown mode {mode!r}")
    return _Parser(text, classical=mode == "classical").parse()


def parse_expression(text: str) -> Expression:
    return parse(text, "operator")


def parse_polynomial(text: str) -> Polynomial:
    return parse(text, "classical")


def parse_structured(text: str) -> Expression:
    """Inverse of :func:`weylcalc.formatting.to_structured` (JSON text)."""
    try:
        data = json.loads(text)
        return from_structured(data)
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, json.JSONDecodeError):
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
        raise ParseError(f"invalid structured expression: {exc}", 0) from exc
