"""Command-line front end (``weylcalc``).

Exit codes: 0 success, 1 identity violated, 2 parse or usage error,
3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from .algebra import P, Q, NormalForm, normal_order
from .calculus import DerivativeKind, diff_n
from .commutators import SERIES_RULES, commutator_brute, commutator_series
from .eom import appendix_demo, check_quantized_eom
from .errors import DomainError, ParseError
from .formatting import FORMATS, render
from .parsing import parse_expression, parse_polynomial
from .quantization import OrderingRule, basis_operator, express_in_basis, quantize
from .verify import run_suite

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def load_rule(text: str) -> OrderingRule:
    """``weyl``, ``sym``, ``bj`` or ``custom:FILE``.

    A custom file has ``orientation q`` (or ``p``) on its first line and the
    whitespace-separated rational weights on the second.
    """
    if text in SERIES_RULES:
        return SERIES_RULES[text]
    if not text.startswith("custom:"):
        raise UsageError(f"unknown rule {text!r}; use weyl, sym, bj or custom:FILE")
    path = Path(text[len("custom:") :])
    try:
        lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read custom rule file: {exc}") from exc
    if len(lines) != 2:
        raise UsageError("custom rule file needs exactly two lines")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "orientation" or head[1] not in (Q, P):
        raise UsageError("first line of a custom rule file must be 'orientation q' or 'orientation p'")
    try:
        weights = [Fraction(tok) for tok in lines[1].split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weight in custom rule file: {exc}") from exc
    return OrderingRule.custom(weights, head[1])


def _basis_rule(name: str) -> OrderingRule:
    return SERIES_RULES[name]


def _indices(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4:
        raise UsageError(f"--idx expects M,N,R,S, got {text!r}")
    return (vals[0], vals[1]), (vals[2], vals[3])


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="weylcalc", description="Exact calculus on the Weyl algebra [q, p] = i hbar.")
    top.add_argument("--format", choices=FORMATS, default="plain")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("quantize", help="map a classical polynomial to an operator")
    c.add_argument("--rule", required=True, help="weyl | sym | bj | custom:FILE")
    c.add_argument("--orientation", choices=(Q, P), help="sandwich form for built-in rules")
    c.add_argument("expr")

    c = sub.add_parser("normal-order", help="rewrite with every q left of every p")
    c.add_argument("expr")

    c = sub.add_parser("diff", help="differentiate an operator")
    c.add_argument("--def", dest="kind", required=True, choices=[k.value for k in DerivativeKind])
    c.add_argument("--wrt", required=True, choices=(Q, P))
    c.add_argument("--order", type=int, default=1)
    c.add_argument("expr")

    c = sub.add_parser("commutator", help="[A, B] by brute force or by basis series")
    c.add_argument("--method", choices=("brute", "series"), default="brute")
    c.add_argument("--basis", choices=list(SERIES_RULES))
    c.add_argument("--idx", help="M,N,R,S for [A_{M,N}, A_{R,S}]")
    c.add_argument("a", nargs="?")
    c.add_argument("b", nargs="?")

    c = sub.add_parser("express", help="coordinates of an operator in a basis")
    c.add_argument("--basis", required=True, choices=list(SERIES_RULES))
    c.add_argument("expr")

    c = sub.add_parser("check-eom", help="check the equations of motion of a quantized Hamiltonian")
    c.add_argument("--rule", required=True, help="weyl | sym | bj | custom:FILE")
    c.add_argument("--def", dest="kind", default="second", choices=[k.value for k in DerivativeKind])
    c.add_argument("expr", help="classical Hamiltonian")

    c = sub.add_parser("appendix-demo", help="first-type quotients disagree on q p^m")
    c.add_argument("--m", type=int, required=True)

    c = sub.add_parser("verify-suite", help="run the built-in identity suites")
    c.add_argument("--max-index", type=int, default=3)
    return top


class _Output:
    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out

    def value(self, obj, symbol: str | None = None):
        return render(obj, self.fmt, symbol)

    def emit(self, obj, symbol: str | None = None) -> None:
        self.write(self.value(obj, symbol))

    def write(self, payload) -> None:
        if self.fmt == "structured":
            print(json.dumps(payload, sort_keys=True), file=self.out)
        else:
            print(payload, file=self.out)

    def report(self, fields: list[tuple[str, object]]) -> None:
        if self.fmt == "structured":
            self.write(dict(fields))
        else:
            for key, val in fields:
                print(f"{key}: {val}", file=self.out)


def _cmd_quantize(args, out: _Output) -> int:
    rule = load_rule(args.rule)
    f = parse_polynomial(args.expr)
    out.emit(quantize(f, rule, args.orientation))
    return EXIT_OK


def _cmd_normal_order(args, out: _Output) -> int:
    out.emit(normal_order(parse_expression(args.expr)))
    return EXIT_OK


def _cmd_diff(args, out: _Output) -> int:
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    e = parse_expression(args.expr)
    out.emit(diff_n(e, args.wrt, args.order, DerivativeKind(args.kind)))
    return EXIT_OK


def _cmd_commutator(args, out: _Output) -> int:
    if args.idx is not None:
        if args.basis is None:
            raise UsageError("--idx needs --basis")
        if args.a is not None:
            raise UsageError("give either --idx or two operands, not both")
        a, b = _indices(args.idx)
        if args.method == "series":
            terms = commutator_series(args.basis, a, b)
            coeffs = {t.target: t.coefficient for t in terms}
        else:
            rule = _basis_rule(args.basis)
            nf = commutator_brute(basis_operator(rule, a), basis_operator(rule, b))
            coeffs = express_in_basis(nf, rule)
        out.emit(coeffs, _basis_rule(args.basis).symbol)
        return EXIT_OK
    if args.a is None or args.b is None:
        raise UsageError("commutator needs two operands or --basis with --idx")
    if args.method == "series":
        raise UsageError("--method series needs --basis and --idx")
    nf = commutator_brute(parse_expression(args.a), parse_expression(args.b))
    if args.basis:
        rule = _basis_rule(args.basis)
        out.emit(express_in_basis(nf, rule), rule.symbol)
    else:
        out.emit(nf)
    return EXIT_OK


def _cmd_express(args, out: _Output) -> int:
    rule = _basis_rule(args.basis)
    nf = normal_order(parse_expression(args.expr))
    out.emit(express_in_basis(nf, rule), rule.symbol)
    return EXIT_OK


def _cmd_check_eom(args, out: _Output) -> int:
    rule = load_rule(args.rule)
    f = parse_polynomial(args.expr)
    report = check_quantized_eom(f, rule, DerivativeKind(args.kind))
    out.report(
        [
            ("hamiltonian", out.value(report.hamiltonian)),
            ("rule", str(rule)),
            ("definition", report.derivative_kind.value),
            ("residual_q", out.value(report.residual_q)),
            ("residual_p", out.value(report.residual_p)),
            ("passed", report.passed),
        ]
    )
    return EXIT_OK if report.passed else EXIT_VIOLATED


def _cmd_counterexample(args, out: _Output) -> int:
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    report = appendix_demo(args.m)
    expected = report.expected()
    zero = NormalForm()
    fields: list[tuple[str, object]] = [
        ("H", out.value(report.normal)),
        ("H_antinormal", out.value(report.antinormal)),
        ("expected_first_type", out.value(expected)),
    ]
    ok = True
    for kind, disc in report.discrepancies.items():
        want = expected if kind.is_first_type else zero
        ok = ok and disc == want
        fields.append((f"discrepancy[{kind.value}]", out.value(disc)))
    fields.append(("passed", ok))
    out.report(fields)
    return EXIT_OK if ok else EXIT_VIOLATED


def _cmd_verify(args, out: _Output) -> int:
    if args.max_index < 1:
        raise UsageError("--max-index must be at least 1")
    results = run_suite(args.max_index)
    if out.fmt == "structured":
        out.write(
            [
                {"suite": r.suite, "checks": r.total, "failures": list(r.failures)}
                for r in results
            ]
        )
    else:
        for r in results:
            status = "ok" if r.passed else "FAIL"
            line = f"{status:4} {r.suite}: {r.total - len(r.failures)}/{r.total}"
            if r.failures:
                line += " (" + "; ".join(r.failures[:5]) + ")"
            print(line, file=out.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATED


_COMMANDS = {
    "quantize": _cmd_quantize,
    "normal-order": _cmd_normal_order,
    "diff": _cmd_diff,
    "commutator": _cmd_commutator,
    "express": _cmd_express,
    "check-eom": _cmd_check_eom,
    "appendix-demo": _cmd_counterexample,
    "verify-suite": _cmd_verify,
}


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one command line and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, _Output(args.format, out))
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error ({type(exc).__name__}): {exc}", file=err)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
