"""
Commands of ``python -m bdilab_zx_verifier``.

Every command returns its exit code: 0 success or holds, 1 the checked property fails,
2 usage and parse errors, 3 evaluation errors.
"""
import argparse
import logging
from typing import Callable, List

from bdilab_zx_verifier import json_encoder
from bdilab_zx_verifier.constants import EXIT_EVALUATION, EXIT_FAILS, EXIT_OK, EXIT_USAGE
from bdilab_zx_verifier.diagram import PhaseExpr
from bdilab_zx_verifier.dsl import format_document, format_zw, format_zx, parse_document
from bdilab_zx_verifier.errors import (
    ArityMismatch,
    ConstantsOutsidePi4,
    NonLinearPhase,
    ParseError,
    UnexpectedVariable,
    UnsupportedScale,
    ZxError,
)
from bdilab_zx_verifier.projector import Method, Verdict, decide_forall
from bdilab_zx_verifier.rules import (
    Constraint,
    check_soundness,
    falsify_constraint_A,
    incompleteness_witness,
    load_rule_file,
)
from bdilab_zx_verifier.semantics import Backend, Functor, interp
from bdilab_zx_verifier.server import VerifierServer
from bdilab_zx_verifier.verifier_model import ParamEqModel
from bdilab_zx_verifier.zw import compare_matrices, interp_zw, roundtrip_check, to_zw, to_zx

logger = logging.getLogger(__name__)

USAGE_ERRORS = (ParseError, ArityMismatch, NonLinearPhase, ConstantsOutsidePi4, UnsupportedScale,
                UnexpectedVariable)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _diagrams(path: str, language: str = "zx") -> List:
    document = parse_document(_read(path), language)
    if not document.diagrams:
        raise UsageError(f"{path} holds no diagram")
    return document.diagrams


def _pair(path: str):
    diagrams = _diagrams(path)
    if len(diagrams) != 2:
        raise UsageError(f"{path} must hold exactly two diagrams, found {len(diagrams)}")
    return diagrams


def _functor(args) -> Functor:
    return Functor.parse(args.functor)


def _format_witness(verdict: Verdict) -> str:
    return ", ".join(f"{name} = {PhaseExpr.pi(angle)}" for name, angle in sorted(verdict.witness.items()))


def cmd_parse(args) -> int:
    """Print the canonical form of a document."""
    document = parse_document(_read(args.file), args.lang)
    print(format_document(document), end="")
    return EXIT_OK


def cmd_interp(args) -> int:
    functor = _functor(args)
    for index, d in enumerate(_diagrams(args.file)):
        matrix = functor(d, Backend(args.backend), allow_fallback=True)
        if index:
            print()
        print(f"# {format_zx(d)} : {matrix.rows}x{matrix.cols} {matrix.backend}")
        print(matrix.format())
    return EXIT_OK


def cmd_eq(args) -> int:
    """Semantic equality of two ground diagrams."""
    d1, d2 = _pair(args.file)
    if d1.arity != d2.arity:
        raise ArityMismatch(d1.inputs + d1.outputs, d2.inputs + d2.outputs)
    functor = _functor(args)
    left = functor(d1, Backend(args.backend), allow_fallback=True)
    right = functor(d2, Backend(args.backend), allow_fallback=True)
    verdict = compare_matrices(left, right)
    if args.tol is not None:
        verdict.holds = verdict.discrepancy <= args.tol
    if args.json:
        print(json_encoder.dumps(verdict.to_json(), indent=2))
    else:
        print("equal" if verdict.holds else "different")
        print(f"max-abs deviation: {verdict.discrepancy:.3g}")
    return EXIT_OK if verdict.holds else EXIT_FAILS


def cmd_param_eq(args) -> int:
    d1, d2 = _pair(args.file)
    verdict = decide_forall(d1, d2, Method(args.method), _functor(args))
    if args.json:
        print(json_encoder.dumps(verdict.to_json(), indent=2))
    else:
        print("holds" if verdict.holds else "fails")
        if verdict.mu:
            print("multiplicity: " + ", ".join(f"{k}={v}" for k, v in sorted(verdict.mu.items())))
        if not verdict.holds:
            print(f"witness: {_format_witness(verdict)}")
            print(f"discrepancy: {verdict.discrepancy:.6g} at entry {verdict.entry}")
    return EXIT_OK if verdict.holds else EXIT_FAILS


def cmd_rules_check(args) -> int:
    try:
        rules = load_rule_file(args.rules)
    except OSError as e:
        raise UsageError(str(e))
    functor = _functor(args)
    report = check_soundness(rules, functor, args.budget, args.seed, args.closures)
    if args.violations:
        for rule in rules:
            if rule.constraint is Constraint.A:
                report.checks.extend(falsify_constraint_A(rule, args.violations, args.seed, functor).checks)
    if args.json:
        print(json_encoder.dumps(report.to_json(), indent=2))
    else:
        width = max(len(c.rule) for c in report.checks)
        for check in report.checks:
            line = f"{check.rule.ljust(width)}  {check.method:9}  {'sound' if check.holds else 'UNSOUND'}"
            if check.witness is not None:
                values = ", ".join(
                    f"{k} = {PhaseExpr.pi(v) if not isinstance(v, float) else PhaseExpr.radians(v)}"
                    for k, v in check.witness.items()
                )
                line += f"  counterexample: {values} (deviation {check.discrepancy:.3g})"
            print(line)
        print(f"{report.functor}: {'all sound' if report.sound else f'{len(report.failures)} unsound'}")
    return EXIT_OK if report.sound else EXIT_FAILS


def cmd_translate(args) -> int:
    """Translate every diagram of the file and check that the interpretation is preserved."""
    ok = True
    source = "zw" if args.to == "zx" else "zx"
    for d in _diagrams(args.file, source):
        if args.to == "zw":
            translated = to_zw(d)
            print(format_zw(translated))
            verdict = compare_matrices(interp_zw(translated), interp(d, Backend.exact, allow_fallback=True))
        else:
            translated = to_zx(d)
            print(format_zx(translated))
            verdict = compare_matrices(interp(translated, Backend.exact, allow_fallback=True), interp_zw(d))
        print(f"# max-abs deviation: {verdict.discrepancy:.3g}{'' if verdict.holds else '  MISMATCH'}")
        ok = ok and verdict.holds
    return EXIT_OK if ok else EXIT_FAILS


def cmd_roundtrip(args) -> int:
    ok = True
    for d in _diagrams(args.file):
        verdict = roundtrip_check(d)
        print(f"{format_zx(d)}  {'preserved' if verdict.holds else 'CHANGED'}  "
              f"(deviation {verdict.discrepancy:.3g}{', approximate' if verdict.approximate else ''})")
        ok = ok and verdict.holds
    return EXIT_OK if ok else EXIT_FAILS


def cmd_incompleteness(args) -> int:
    report = incompleteness_witness(args.scale)
    if args.json:
        print(json_encoder.dumps(report.to_json(), indent=2))
    else:
        print(f"lhs: {format_zx(report.lhs)}")
        print(f"rhs: {format_zx(report.rhs)}")
        print(f"{'functor':10}  {'lhs':>6}  {'rhs':>6}  equal")
        for row in report.rows:
            print(f"{row.functor:10}  {str(row.lhs):>6}  {str(row.rhs):>6}  {'yes' if row.equal else 'no'}")
    return EXIT_OK if report.separates else EXIT_FAILS


def cmd_serve(args) -> int:
    model = ParamEqModel(args.model_name, _functor(args))
    VerifierServer(
        args.protocol,
        args.event_type,
        args.event_source,
        http_port=args.http_port,
        reply_url=args.reply_url,
    ).start(model)
    return EXIT_OK


# errors raised from inside the evaluator rather than by the input
INTERNAL_ERRORS = (ValueError, ArithmeticError, RecursionError, MemoryError, IndexError, KeyError)


def run(command: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    """Run a command and map errors to exit codes."""
    try:
        return command(args)
    except UsageError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except USAGE_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE
    except ZxError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_EVALUATION
    except INTERNAL_ERRORS as e:
        logger.exception("Internal error in %s: %s", getattr(args, "command", "command"), type(e).__name__)
        return EXIT_EVALUATION


COMMANDS = {
    "parse": cmd_parse,
    "interp": cmd_interp,
    "eq": cmd_eq,
    "param-eq": cmd_param_eq,
    "rules-check": cmd_rules_check,
    "translate": cmd_translate,
    "roundtrip": cmd_roundtrip,
    "incompleteness": cmd_incompleteness,
    "serve": cmd_serve,
}
