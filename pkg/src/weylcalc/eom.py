"""Checks of the quantum equations of motion [H, q] = -i hbar dH/dp, [H, p] = i hbar dH/dq."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import P, Q, Expression, NormalForm, Polynomial, equals, normal_order, p, q
from .calculus import DerivativeKind, differentiate
from .commutators import commutator
from .quantization import OrderingRule, quantize
from .scalars import IHBAR, Scalar

__all__ = [
    "EomReport",
    "CounterexampleReport",
    "check_eom",
    "check_quantized_eom",
    "appendix_demo",
]


@dataclass(frozen=True)
class EomReport:
    hamiltonian: Expression
    rule: str
    derivative_kind: DerivativeKind
    residual_q: NormalForm
    residual_p: NormalForm

    @property
    def passed(self) -> bool:
        return self.residual_q.is_zero() and self.residual_p.is_zero()


def check_eom(
    h: Expression,
    kind: DerivativeKind = DerivativeKind.SECOND,
    *,
    q_form: Expression | None = None,
    rule: str = "",
) -> EomReport:
    """Residuals of both equations of motion for ``h``.

    residual_q = [h, q] + i hbar D_p h and residual_p = [h, p] - i hbar D_q h,
    both normal-ordered.  First-type derivatives depend on how ``h`` is
    written; ``q_form`` supplies an equal rewrite of ``h`` to take D_q on
    (the p-sandwich form of a basis image, for instance).
    """
    kind = DerivativeKind(kind)
    if q_form is None:
        q_form = h
    elif kind.is_first_type and not equals(h, q_form):
        raise ValueError("q_form must equal h as an operator")
    d_p = differentiate(h, P, kind)
    d_q = differentiate(q_form, Q, kind)
    res_q = normal_order(commutator(h, q()) + d_p.scale(IHBAR))
    res_p = normal_order(commutator(h, p()) - d_q.scale(IHBAR))
    return EomReport(h, rule, kind, res_q, res_p)


def check_quantized_eom(
    f: Polynomial, rule: OrderingRule, kind: DerivativeKind = DerivativeKind.SECOND
) -> EomReport:
    """Quantize ``f`` and check its equations of motion.

    D_p acts on the q-sandwich images and D_q on the p-sandwich images, i.e.
    each derivative is taken on the form where the variable sits in the middle.
    """
    h = quantize(f, rule, Q)
    h_q = quantize(f, rule, P) if rule.is_builtin else h
    return check_eom(h, kind, q_form=h_q, rule=str(rule))


@dataclass(frozen=True)
class CounterexampleReport:
    m: int
    normal: Expression
    antinormal: Expression
    discrepancies: dict = field(default_factory=dict)

    def expected(self) -> NormalForm:
        """-i hbar m(m-1) p^(m-2), the extra term picked up by first-type rules."""
        return normal_order(p(self.m - 2).scale(IHBAR * Scalar.of(-self.m * (self.m - 1))))


def appendix_demo(m: int) -> CounterexampleReport:
    """Differentiate H = q p^m and its antinormal rewrite p^m q + m i hbar p^(m-1).

    The two are the same operator.  For each derivative kind the report holds
    normal_order(D_p H - D_p H_an): nonzero for the first-type family,
    zero for the second type.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    h = Expression.word((Q, 1), (P, m))
    h_an = Expression.word((P, m), (Q, 1)) + p(m - 1).scale(IHBAR * m)
    assert equals(h, h_an)
    disc = {
        kind: normal_order(differentiate(h, P, kind) - differentiate(h_an, P, kind))
        for kind in DerivativeKind
    }
    return CounterexampleReport(m, h, h_an, disc)
