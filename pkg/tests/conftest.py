from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weylcalc.algebra import P, Q, Expression, Polynomial, make_word
from weylcalc.quantization import OrderingRule
from weylcalc.scalars import ComplexRational, Scalar

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)

complex_rationals = st.builds(ComplexRational, small_fractions, small_fractions)

scalars = st.dictionaries(st.integers(0, 3), complex_rationals, max_size=3).map(Scalar)

nonzero_rationals = small_fractions.filter(bool)


@st.composite
def words(draw, min_exp: int = 0, max_exp: int = 3, max_len: int = 4, negative_letter: str | None = None):
    """A word; only ``negative_letter`` (if any) may carry negative exponents."""
    n = draw(st.integers(0, max_len))
    factors = []
    for _ in range(n):
        letter = draw(st.sampled_from((Q, P)))
        lo = min_exp if letter == negative_letter else 0
        factors.append((letter, draw(st.integers(lo, max_exp))))
    return make_word(factors)


@st.composite
def expressions(
    draw,
    max_terms: int = 3,
    allow_negative: bool = False,
    max_len: int = 4,
    negative_letter: str | None = None,
):
    """Random expressions that normal-order without hitting p^-a q^-b.

    Products of expressions stay safe only if they share ``negative_letter``.
    """
    neg = negative_letter
    if neg is None and allow_negative:
        neg = draw(st.sampled_from((Q, P)))
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        w = draw(words(min_exp=-2 if neg else 0, max_len=max_len, negative_letter=neg))
        c = Scalar.of(draw(nonzero_rationals)) * Scalar.monomial(1, draw(st.integers(0, 1)))
        terms[w] = terms.get(w, Scalar()) + c
    return Expression(terms)


positive_expressions = expressions()


@st.composite
def polynomials(draw, max_terms: int = 3, max_exp: int = 3):
    f = Polynomial()
    for _ in range(draw(st.integers(1, max_terms))):
        a = draw(st.integers(0, max_exp))
        b = draw(st.integers(0, max_exp))
        f = f + Polynomial.monomial(a, b, draw(nonzero_rationals))
    return f


@st.composite
def custom_rules(draw, size: int, orientation: str):
    raw = draw(st.lists(st.integers(0, 9), min_size=size + 1, max_size=size + 1).filter(any))
    total = sum(raw)
    return OrderingRule.custom([Fraction(r, total) for r in raw], orientation)


def expression_pairs(**kw):
    return st.sampled_from((Q, P)).flatmap(
        lambda neg: st.tuples(
            expressions(negative_letter=neg, **kw), expressions(negative_letter=neg, **kw)
        )
    )


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
