"""Exact symbolic calculus on the one-dimensional Weyl algebra."""

from .algebra import Expression, NormalForm, Polynomial, equals, normal_order, p, q
from .calculus import DerivativeKind, differentiate
from .commutators import commutator_brute, commutator_series
from .eom import appendix_demo, check_eom, check_quantized_eom
from .errors import DomainError, ParseError
from .parsing import parse
from .quantization import BORN_JORDAN, SYMMETRIC, WEYL, OrderingRule, basis_operator, quantize
from .scalars import Scalar

__all__ = [
    "Expression",
    "NormalForm",
    "Polynomial",
    "Scalar",
    "equals",
    "normal_order",
    "p",
    "q",
    "DerivativeKind",
    "differentiate",
    "commutator_brute",
    "commutator_series",
    "appendix_demo",
    "check_eom",
    "check_quantized_eom",
    "DomainError",
    "ParseError",
    "parse",
    "OrderingRule",
    "WEYL",
    "SYMMETRIC",
    "BORN_JORDAN",
    "basis_operator",
    "quantize",
]
