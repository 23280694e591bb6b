"""Self-check suite behind ``weylcalc verify-suite``.

Every check compares two independent computations exactly.  The small
number-theoretic oracles here deliberately use different algorithms from
:mod:`weylcalc.scalars`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from .algebra import P, Q, Expression, adjoint, equals, normal_order
from .calculus import (
    DerivativeKind,
    closed_form_multiple,
    diff_n,
    differentiate,
    dq2,
    mixed_partial,
)
from .commutators import SERIES_RULES, commutator_brute, commutator_series, expand_series
from .eom import appendix_demo, check_quantized_eom
from .parsing import parse_expression, parse_polynomial
from .quantization import BORN_JORDAN, BUILTIN_RULES, SYMMETRIC, WEYL, OrderingRule, basis_operator
from .scalars import (
    IHBAR,
    bernoulli_half,
    bernoulli_number,
    euler_number,
    gamma_ratio_negative,
)

__all__ = [
    "CheckResult",
    "seidel_euler",
    "akiyama_tanigawa",
    "bernoulli_poly_at",
    "gamma_ratio_product",
    "random_custom_rule",
    "run_suite",
    "SUITES",
]


@dataclass(frozen=True)
class CheckResult:
    suite: str
    total: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


# independent oracles -------------------------------------------------------


def seidel_euler(count: int) -> list[int]:
    """Euler numbers E_0..E_{count-1} from the Seidel boustrophedon triangle."""
    zigzag = [1]
    row = [1]
    for n in range(1, count):
        new = [0]
        for k in range(n):
            new.append(new[-1] + row[n - 1 - k])
        row = new
        zigzag.append(row[-1])
    out = []
    for u in range(count):
        out.append(0 if u % 2 else (-1) ** (u // 2) * zigzag[u])
    return out


def akiyama_tanigawa(count: int) -> list[Fraction]:
    """Bernoulli numbers B_0..B_{count-1} (B_1 = -1/2) by the Akiyama-Tanigawa algorithm."""
    out = []
    a = [Fraction(0)] * (count + 1)
    for m in range(count):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if count > 1:
        out[1] = -out[1]
    return out


def bernoulli_poly_at(u: int, x: Fraction, table: list[Fraction]) -> Fraction:
    """B_u(x) = sum_k C(u,k) B_k x^(u-k)."""
    return sum((comb(u, k) * table[k] * x ** (u - k) for k in range(u + 1)), Fraction(0))


def gamma_ratio_product(n: int, m: int) -> int:
    """Gamma(-n)/Gamma(-n-m) via Gamma(z+1) = z Gamma(z), one factor at a time."""
    out = 1
    for j in range(1, m + 1):
        out *= -n - j
    return out


def random_custom_rule(rng: random.Random, size: int, orientation: str) -> OrderingRule:
    raw = [rng.randint(0, 9) for _ in range(size + 1)]
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    return OrderingRule.custom([Fraction(r, total) for r in raw], orientation)


# suites ----------------------------------------------------------------------

_WORD = "p p q q q p"
_WORKED = {
    ("first", P): "p q^3 p + q^3 p^2 + p^2 q^3",
    ("first", Q): "q^2 p^3 + q p^3 q + p^3 q^2",
    ("second", P): "2 p q^3 p + p^2 q^3",
    ("second", Q): "3 p^2 q^2 p",
}


def _worked_examples(k: int) -> Iterator[tuple[str, bool]]:
    a = parse_expression(_WORD)
    for (kind, wrt), text in _WORKED.items():
        got = differentiate(a, wrt, DerivativeKind(kind))
        yield f"{kind} d/d{wrt} {_WORD}", got == parse_expression(text)


def _bj_consistency(k: int) -> Iterator[tuple[str, bool]]:
    for m in range(1, k + 1):
        for n in range(1, k + 1):
            for wrt, coeff, target in ((P, m, (m - 1, n)), (Q, n, (m, n - 1))):
                h = basis_operator(BORN_JORDAN, (m, n))
                want = basis_operator(BORN_JORDAN, target).scale(coeff)
                ok = equals(differentiate(h, wrt, DerivativeKind.FIRST), want) and equals(
                    dq2(h, wrt), want
                )
                yield f"B[{m},{n}] d/d{wrt}", ok


_COLLAPSE_TARGET = {
    DerivativeKind.FIRST: BORN_JORDAN,
    DerivativeKind.WEYL_MOD: WEYL,
    DerivativeKind.SYM_MOD: SYMMETRIC,
}


def _collapse(k: int) -> Iterator[tuple[str, bool]]:
    # d/dp acts on the q-sandwich and d/dq on the p-sandwich
    for kind, target in _COLLAPSE_TARGET.items():
        for rule in BUILTIN_RULES:
            for m in range(1, k + 1):
                for n in range(1, k + 1):
                    for wrt, orient, coeff, idx in ((P, Q, m, (m - 1, n)), (Q, P, n, (m, n - 1))):
                        h = basis_operator(rule, (m, n), orient)
                        want = basis_operator(target, idx).scale(coeff)
                        ok = equals(differentiate(h, wrt, kind), want)
                        yield f"{kind.value} {rule.symbol}[{m},{n}] d/d{wrt}", ok


def _inequality_witnesses(k: int) -> Iterator[tuple[str, bool]]:
    for rule in (WEYL, SYMMETRIC):
        h = basis_operator(rule, (3, 2))
        ok = not equals(differentiate(h, P, DerivativeKind.FIRST), dq2(h, P))
        yield f"first != second on {rule.symbol}[3,2]", ok


def _multiple_derivatives(k: int) -> Iterator[tuple[str, bool]]:
    rng = random.Random(1729)
    rules: list[OrderingRule] = list(BUILTIN_RULES)
    for j in range(4):
        size = rng.randint(0, k)
        rules.append(random_custom_rule(rng, size, Q if j % 2 == 0 else P))
    for rule in rules:
        for m in range(-k, k + 1):
            for n in range(-k, k + 1):
                if m < 0 and n < 0:
                    continue
                if not rule.is_builtin:
                    fixed = len(rule.weights) - 1
                    if (rule.orientation == Q and n != fixed) or (rule.orientation == P and m != fixed):
                        continue
                h = basis_operator(rule, (m, n))
                wrts = (P, Q) if rule.is_builtin else ((P,) if rule.orientation == Q else (Q,))
                for wrt in wrts:
                    for order in range(1, k + 1):
                        coeff, idx = closed_form_multiple((m, n), wrt, order)
                        if idx.m < 0 and idx.n < 0:
                            continue
                        got = diff_n(h, wrt, order)
                        want = basis_operator(rule, idx).scale(coeff) if coeff else Expression()
                        yield f"{rule} [{m},{n}] d^{order}/d{wrt}^{order}", equals(got, want)
                if rule.is_builtin and m >= 0 and n >= 0:
                    try:
                        mixed_partial(h, min(m, 2), min(n, 2))
                        ok = True
                    except AssertionError:
                        ok = False
                    yield f"{rule} [{m},{n}] mixed partials", ok


def _gamma(k: int) -> Iterator[tuple[str, bool]]:
    for n in range(21):
        for m in range(21):
            yield f"gamma ratio ({n},{m})", gamma_ratio_negative(n, m) == gamma_ratio_product(n, m)
    yield "Gamma(-2)/Gamma(-5) = -60", gamma_ratio_negative(2, 3) == -60


def _special_numbers(k: int) -> Iterator[tuple[str, bool]]:
    euler = seidel_euler(21)
    bern = akiyama_tanigawa(21)
    for u in range(21):
        yield f"E_{u}", euler_number(u) == euler[u]
        yield f"B_{u}", bernoulli_number(u) == bern[u]
        yield f"B_{u}(1/2)", bernoulli_half(u) == bernoulli_poly_at(u, Fraction(1, 2), bern)


def _series(k: int) -> Iterator[tuple[str, bool]]:
    pairs = [(m, n) for m in range(k + 1) for n in range(k + 1 - m)]
    for basis, rule in SERIES_RULES.items():
        for a in pairs:
            for b in pairs:
                terms = commutator_series(basis, a, b)
                brute = commutator_brute(basis_operator(rule, a), basis_operator(rule, b))
                yield f"{basis} [{a},{b}]", normal_order(expand_series(basis, terms)) == brute


def _oscillator(k: int) -> Iterator[tuple[str, bool]]:
    h = parse_polynomial("1/2 p^2 + 1/2 q^2")
    for rule in BUILTIN_RULES:
        yield f"oscillator {rule}", check_quantized_eom(h, rule, DerivativeKind.SECOND).passed
    sym = commutator_series("sym", (2, 0), (0, 1))
    yield "[S20,S01]", [(t.target, t.coefficient) for t in sym] == [((1, 0), IHBAR * -2)]
    bj = commutator_series("bj", (0, 2), (1, 0))
    yield "[B02,B10]", [(t.target, t.coefficient) for t in bj] == [((0, 1), IHBAR * 2)]


def _counterexample(k: int) -> Iterator[tuple[str, bool]]:
    for m in range(2, k + 3):
        report = appendix_demo(m)
        for kind, disc in report.discrepancies.items():
            want = report.expected() if kind.is_first_type else normal_order(Expression())
            yield f"q p^m counterexample m={m} {kind.value}", disc == want


def _structure(k: int) -> Iterator[tuple[str, bool]]:
    for rule in BUILTIN_RULES:
        for m in range(-k, k + 1):
            for n in range(-k, k + 1):
                if m < 0 and n < 0:
                    continue
                h = basis_operator(rule, (m, n))
                yield f"{rule.symbol}[{m},{n}] hermitian", equals(adjoint(h), h)
        for size in range(2 * k + 1):
            yield f"{rule} weights sum ({size})", sum(rule.sandwich_weights(size)) == 1


SUITES: dict[str, Callable[[int], Iterator[tuple[str, bool]]]] = {
    "worked-examples": _worked_examples,
    "bj-consistency": _bj_consistency,
    "cross-basis-collapse": _collapse,
    "inequality-witnesses": _inequality_witnesses,
    "multiple-derivatives": _multiple_derivatives,
    "gamma-ratio": _gamma,
    "special-numbers": _special_numbers,
    "commutator-series": _series,
    "oscillator": _oscillator,
    "ordering-counterexample": _counterexample,
    "structure": _structure,
}


def run_suite(max_index: int = 3, suites: list[str] | None = None) -> list[CheckResult]:
    """Run the named suites (all by default) with indices bounded by ``max_index``."""
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    results = []
    for name in suites or list(SUITES):
        total = 0
        failures = []
        for label, ok in SUITES[name](max_index):
            total += 1
            if not ok:
                failures.append(label)
        results.append(CheckResult(name, total, tuple(failures)))
    return results
