"""Plain-text, LaTeX and structured (JSON-ready) renderings.

Plain text is the canonical form: it parses back to the same expression and
terms are sorted graded-lexicographically (higher total degree first, then
q before p, then larger exponents first).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import P, Q, Expression, NormalForm, Polynomial, Word, make_word, word_degree
from .scalars import ComplexRational, Scalar

__all__ = [
    "word_sort_key",
    "format_scalar",
    "format_word",
    "format_expression",
    "format_normal_form",
    "format_polynomial",
    "format_basis_map",
    "to_structured",
    "basis_map_to_structured",
    "render",
]

FORMATS = ("plain", "latex", "structured")


def word_sort_key(w: Word):
    return (-word_degree(w), tuple((0 if l == Q else 1, -e) for l, e in w))


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _frac_latex(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else rf"\frac{{{x.numerator}}}{{{x.denominator}}}"


def _monomial_parts(c: ComplexRational, power: int, latex: bool):
    """(negative, [factor strings]) for a pure real or pure imaginary c*hbar^power."""
    if c.im == 0:
        mag, imag = c.re, False
    else:
        mag, imag = c.im, True
    neg = mag < 0
    mag = abs(mag)
    parts = []
    if mag != 1:
        parts.append(_frac_latex(mag) if latex else _frac_str(mag))
    if imag:
        parts.append("i")
    if power:
        if latex:
            parts.append(r"\hbar" if power == 1 else rf"\hbar^{{{power}}}")
        else:
            parts.append("hbar" if power == 1 else f"hbar^{power}")
    return neg, parts


def _is_monomial(s: Scalar) -> bool:
    items = list(s.items())
    return len(items) == 1 and (items[0][1].re == 0 or items[0][1].im == 0)


def format_scalar(s: Scalar, latex: bool = False) -> str:
    """A scalar on its own, e.g. ``-1/2*i*hbar`` or ``1 + 2*i*hbar``."""
    if s.is_zero():
        return "0"
    pieces = []
    for power, c in s.items():
        comps = []
        if c.re:
            comps.append(ComplexRational(c.re, 0))
        if c.im:
            comps.append(ComplexRational(0, c.im))
        for comp in comps:
            neg, parts = _monomial_parts(comp, power, latex)
            if not parts:
                parts = ["1"]
            sep = " " if latex else "*"
            pieces.append((neg, sep.join(parts)))
    out = ""
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def format_word(w: Word, latex: bool = False) -> str:
    if not w:
        return "1"
    if latex:
        return "".join(
            rf"\mathbf{{{l}}}" if e == 1 else rf"\mathbf{{{l}}}^{{{e}}}" for l, e in w
        )
    return " ".join(l if e == 1 else f"{l}^{e}" for l, e in w)


def _term(c: Scalar, body: str | None, latex: bool) -> tuple[bool, str]:
    """(negative, text) for coefficient c times ``body`` (None for a bare scalar)."""
    sep = " " if latex else "*"
    if _is_monomial(c):
        (power, comp), = c.items()
        neg, parts = _monomial_parts(comp, power, latex)
        if body is None:
            return neg, sep.join(parts) if parts else "1"
        return neg, sep.join(parts + [body]) if parts else body
    inner = format_scalar(c, latex)
    wrapped = rf"\left({inner}\right)" if latex else f"({inner})"
    if body is None:
        return False, wrapped
    return False, f"{wrapped}{sep}{body}"


def _join(terms: list[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    out = ""
    for k, (neg, text) in enumerate(terms):
        if k == 0:
            out = ("-" if neg else "") + text
        else:
            out += (" - " if neg else " + ") + text
    return out


def format_expression(e: Expression, latex: bool = False) -> str:
    terms = []
    for w, c in sorted(e.terms(), key=lambda wc: word_sort_key(wc[0])):
        terms.append(_term(c, format_word(w, latex) if w else None, latex))
    return _join(terms)


def format_normal_form(nf: NormalForm, latex: bool = False) -> str:
    return format_expression(nf.to_expression(), latex)


def format_polynomial(f: Polynomial, latex: bool = False) -> str:
    terms = []
    for (a, b), c in f.items():
        w = make_word(((P, b), (Q, a)))
        terms.append(_term(c, format_word(w, latex) if w else None, latex))
    return _join(terms)


def _basis_sort_key(idx):
    m, n = idx
    return (-(abs(m) + abs(n)), -m, -n)


def format_basis_map(symbol: str, coeffs: Mapping, latex: bool = False) -> str:
    terms = []
    for idx in sorted(coeffs, key=_basis_sort_key):
        m, n = idx
        body = rf"\mathbf{{{symbol}}}_{{{m},{n}}}" if latex else f"{symbol}[{m},{n}]"
        terms.append(_term(coeffs[idx], body, latex))
    return _join(terms)


def scalar_to_structured(s: Scalar) -> list[dict]:
    return [
        {
            "hbar_power": power,
            "re": [c.re.numerator, c.re.denominator],
            "im": [c.im.numerator, c.im.denominator],
        }
        for power, c in s.items()
    ]


def scalar_from_structured(data) -> Scalar:
    terms = {}
    for entry in data:
        re = Fraction(*entry["re"])
        im = Fraction(*entry["im"])
        terms[int(entry["hbar_power"])] = ComplexRational(re, im)
    return Scalar(terms)


def to_structured(e: Expression | NormalForm) -> list[dict]:
    """Term list ``[{"coeff": [...], "word": [[letter, exp], ...]}, ...]``."""
    if isinstance(e, NormalForm):
        e = e.to_expression()
    return [
        {"coeff": scalar_to_structured(c), "word": [[l, x] for l, x in w]}
        for w, c in sorted(e.terms(), key=lambda wc: word_sort_key(wc[0]))
    ]


def from_structured(data) -> Expression:
    out = Expression()
    for entry in data:
        w = make_word((l, int(x)) for l, x in entry["word"])
        out = out + Expression({w: scalar_from_structured(entry["coeff"])})
    return out


def basis_map_to_structured(symbol: str, coeffs: Mapping) -> list[dict]:
    return [
        {"coeff": scalar_to_structured(coeffs[idx]), "basis": symbol, "index": [idx[0], idx[1]]}
        for idx in sorted(coeffs, key=_basis_sort_key)
    ]


def polynomial_to_structured(f: Polynomial) -> list[dict]:
    return [
        {"coeff": scalar_to_structured(c), "monomial": {"q": a, "p": b}}
        for (a, b), c in f.items()
    ]


def render(obj, fmt: str = "plain", symbol: str | None = None):
    """Render an Expression, NormalForm, Polynomial or basis map.

    Returns a string for plain/latex and a JSON-ready list for structured.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if symbol is not None:
        if fmt == "structured":
            return basis_map_to_structured(symbol, obj)
        return format_basis_map(symbol, obj, latex=fmt == "latex")
    if isinstance(obj, Polynomial):
        if fmt == "structured":
            return polynomial_to_structured(obj)
        return format_polynomial(obj, latex=fmt == "latex")
    if fmt == "structured":
        return to_structured(obj)
    if isinstance(obj, NormalForm):
        return format_normal_form(obj, latex=fmt == "latex")
    return format_expression(obj, latex=fmt == "latex")
