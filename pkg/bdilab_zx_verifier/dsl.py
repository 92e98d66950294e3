"""
Textual syntax of ZX diagrams, ZW diagrams and rule files: a lark LALR parser and the
canonical printers.

Parsing a printed diagram gives back a diagram that prints identically.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from lark import Lark, Token, Transformer, Tree, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from bdilab_zx_verifier import zw
from bdilab_zx_verifier.diagram import (
    ZERO,
    Diagram,
    Generator,
    GeneratorKind,
    PhaseExpr,
    Seq,
    Tensor,
    cap,
    cup,
    empty,
    h,
    identity,
    swap,
    triangle,
    x,
    z,
)
from bdilab_zx_verifier.errors import ArityMismatch, ParseError, ZxError

logger = logging.getLogger(__name__)

FORMAT_VERSION = "zxv/1"

Span = Tuple[int, int]


@dataclass(frozen=True)
class RuleSource:
    name: str
    variables: Tuple[str, ...]
    constraint: Optional[str]
    lhs: Diagram
    rhs: Diagram
    span: Span


@dataclass
class ParsedDocument:
    """Diagrams or rules of one source text with the (line, column) where each starts."""
    diagrams: List[Union[Diagram, "zw.ZwDiagram"]] = field(default_factory=list)
    rules: List[RuleSource] = field(default_factory=list)
    spans: List[Span] = field(default_factory=list)
    version: str = FORMAT_VERSION


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark.open(
        "grammar/zx.lark",
        rel_to=__file__,
        parser="lalr",
        start=["zx_doc", "zw_doc", "phase_doc", "rules_doc", "zx_term", "zw_term"],
        propagate_positions=True,
    )


def _int(token: Token) -> int:
    return int(str(token))


def _fold_tensor(parts, node):
    result = parts[0]
    for d in parts[1:]:
        result = node(result, d)
    return result


class _Constraint(str):
    pass


class DiagramBuilder(Transformer):
    """Turns parse trees into Diagram, ZwDiagram and PhaseExpr values."""

    # phases

    def var_term(self, children):
        *coeff, name = children
        return PhaseExpr.variable(str(name), coeff[0] if coeff else 1)

    def pi_term(self, children):
        index = next(i for i, c in enumerate(children) if isinstance(c, Token) and c.type == "PI")
        multiple = Fraction(children[0]) if index == 1 else Fraction(1)
        if len(children) > index + 1:
            multiple /= self._denominator(children[index + 1])
        return PhaseExpr.pi(multiple)

    def frac_pi_term(self, children):
        p, q, _ = children
        return PhaseExpr.pi(Fraction(_int(p), self._denominator(q)))

    def frac_var_term(self, children):
        p, q, name = children
        return PhaseExpr.variable(str(name), Fraction(_int(p), self._denominator(q)))

    def radians_term(self, children):
        return PhaseExpr.radians(float(str(children[0])[:-1]))

    def int_term(self, children):
        token = children[0]
        if _int(token) != 0:
            raise ParseError(f"bare integer phase '{token}': write '{token} pi' or '{token}r'",
                             token.line, token.column)
        return PhaseExpr.zero()

    def coeff(self, children):
        token = children[0]
        if token.type == "INT":
            return _int(token)
        return Fraction(str(token))

    @staticmethod
    def _denominator(token: Token) -> int:
        q = _int(token)
        if q == 0:
            raise ParseError("zero denominator in phase", token.line, token.column)
        return q

    def first_term(self, children):
        return -children[1] if len(children) == 2 else children[0]

    def rest_term(self, children):
        sign, term = children
        return -term if sign.type == "MINUS" else term

    def phase(self, children):
        total = PhaseExpr.zero()
        for term in children:
            total = total + term
        return total

    def phase_doc(self, children):
        return children[0]

    def phase_arg(self, children):
        return children[0] if children else ZERO

    def dims(self, children):
        return _int(children[0]), _int(children[1])

    # ZX

    def z_spider(self, children):
        (n, m), *phase = children
        return z(n, m, phase[0] if phase else ZERO)

    def x_spider(self, children):
        (n, m), *phase = children
        return x(n, m, phase[0] if phase else ZERO)

    def hadamard(self, _):
        return h()

    def triangle(self, _):
        return triangle()

    @v_args(meta=True)
    def zx_tensor(self, meta, children):
        return _fold_tensor(children, Tensor)

    @v_args(meta=True)
    def zx_term(self, meta, children):
        return self._fold_seq(meta, children, Seq)

    @staticmethod
    def _fold_seq(meta, children, node):
        result = children[0]
        for d in children[1:]:
            try:
                result = node(result, d)
            except ArityMismatch as e:
                raise ArityMismatch(e.expected, e.actual, (meta.line, meta.column))
        return result

    # shared structural generators; the ZW variants are picked by the enclosing term

    def identity(self, _):
        return identity()

    def swap(self, _):
        return swap()

    def cup(self, _):
        return cup()

    def cap(self, _):
        return cap()

    def empty(self, _):
        return empty()

    # ZW

    def real(self, children):
        value = float(str(children[-1]))
        return -value if len(children) == 2 else value

    def complex_arg(self, children):
        return complex(children[0], children[1])

    def zw_spider(self, children):
        (n, m), *param = children
        return zw.zw_spider(n, m, param[0] if param else 1)

    def white_dot(self, children):
        return zw.white_dot(children[0] if children else 1)

    def w11(self, _):
        return zw.w11()

    def w12(self, _):
        return zw.w12()

    def fcross(self, _):
        return zw.fermionic_cross()

    @v_args(meta=True)
    def zw_tensor(self, meta, children):
        return _fold_tensor([_as_zw(c) for c in children], zw.ZwTensor)

    @v_args(meta=True)
    def zw_term(self, meta, children):
        return self._fold_seq(meta, [_as_zw(c) for c in children], zw.ZwSeq)

    # rule files

    def constraint(self, children):
        return _Constraint(str(children[0]))

    @v_args(meta=True)
    def rule_block(self, meta, children):
        tokens = [c for c in children if isinstance(c, Token)]
        constraint = next((c for c in children if isinstance(c, _Constraint)), None)
        lhs, rhs = [c for c in children if isinstance(c, Diagram)]
        return RuleSource(str(tokens[0]), tuple(str(t) for t in tokens[1:]),
                          None if constraint is None else str(constraint), lhs, rhs,
                          (meta.line, meta.column))

    def rules_doc(self, children):
        return list(children)


_ZX_TO_ZW_STRUCTURAL = {
    GeneratorKind.ID: zw.ZwKind.ID,
    GeneratorKind.SWAP: zw.ZwKind.SWAP,
    GeneratorKind.CUP: zw.ZwKind.CUP,
    GeneratorKind.CAP: zw.ZwKind.CAP,
    GeneratorKind.EMPTY: zw.ZwKind.EMPTY,
}


def _as_zw(d):
    """Structural generators are built as ZX generators; inside a ZW term they become ZW ones."""
    if isinstance(d, Generator):
        return zw.ZwGenerator(_ZX_TO_ZW_STRUCTURAL[d.kind])
    return d


def _raise_parse_error(e: UnexpectedInput):
    if isinstance(e, UnexpectedToken):
        expected = e.expected
        message = f"unexpected token '{e.token}'"
    elif isinstance(e, UnexpectedCharacters):
        expected = e.allowed or ()
        message = f"unexpected character '{e.char}'"
    elif isinstance(e, UnexpectedEOF):
        expected = e.expected
        message = "unexpected end of input"
    else:
        expected = ()
        message = "syntax error"
    line = getattr(e, "line", None)
    column = getattr(e, "column", None)
    raise ParseError(message, None if line == -1 else line, None if column == -1 else column,
                     expected) from None


def _parse_tree(text: str, start: str) -> Tree:
    try:
        return get_parser().parse(text, start=start)
    except UnexpectedInput as e:
        _raise_parse_error(e)


def _transform(tree: Tree):
    try:
        return DiagramBuilder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ZxError):
            raise e.orig_exc from None
        raise


def parse_zx(text: str) -> Diagram:
    """
    Parse a single ZX term.

    Raises ParseError with position and expected tokens, or ArityMismatch with the span of the
    offending composition.
    """
    return _transform(_parse_tree(text.strip(), "zx_term"))


def parse_zw(text: str) -> "zw.ZwDiagram":
    return _transform(_parse_tree(text.strip(), "zw_term"))


def parse_phase(text: str) -> PhaseExpr:
    return _transform(_parse_tree(text.strip(), "phase_doc"))


def _parse_terms(text: str, start: str) -> ParsedDocument:
    tree = _parse_tree(text, start)
    document = ParsedDocument()
    for child in tree.children:
        document.diagrams.append(_transform(child))
        document.spans.append((child.meta.line, child.meta.column))
    return document


def parse_document(text: str, language: str = "zx") -> ParsedDocument:
    """
    Parse a document of newline separated terms (``zx`` or ``zw``) or a rule file (``rules``).
    Lines starting with ``#`` are comments.
    """
    if language == "zx":
        return _parse_terms(text, "zx_doc")
    if language == "zw":
        return _parse_terms(text, "zw_doc")
    if language == "rules":
        rules = _transform(_parse_tree(text, "rules_doc"))
        return ParsedDocument(rules=rules, spans=[r.span for r in rules])
    raise ValueError(f"unknown language {language}")


# printing

def format_phase(phase: PhaseExpr) -> str:
    return str(phase)


def _flatten(d, node_type, left: str, right: str):
    if isinstance(d, node_type):
        return _flatten(getattr(d, left), node_type, left, right) + _flatten(getattr(d, right), node_type, left, right)
    return [d]


def _format_generator(g: Generator) -> str:
    if g.is_spider:
        text = f"{g.kind}[{g.n},{g.m}]"
        return text if g.phase.is_zero() else f"{text}({format_phase(g.phase)})"
    return str(g.kind)


def _format_zw_generator(g: "zw.ZwGenerator") -> str:
    if g.kind is zw.ZwKind.SPIDER:
        return f"Zw[{g.n},{g.m}]({g.param})"
    if g.kind is zw.ZwKind.WDOT:
        return f"wdot({g.param})"
    return str(g.kind)


def _format(d, in_tensor: bool, kinds) -> str:
    leaf, seq_type, tensor_type, fmt_leaf = kinds
    if isinstance(d, leaf):
        return fmt_leaf(d)
    if isinstance(d, seq_type):
        text = " ; ".join(_format(p, False, kinds) for p in _flatten(d, seq_type, "first", "second"))
        return f"({text})" if in_tensor else text
    return " * ".join(_format(p, True, kinds) for p in _flatten(d, tensor_type, "left", "right"))


def format_zx(d: Diagram) -> str:
    """Canonical text of a ZX diagram."""
    return _format(d, False, (Generator, Seq, Tensor, _format_generator))


def format_zw(d: "zw.ZwDiagram") -> str:
    return _format(d, False, (zw.ZwGenerator, zw.ZwSeq, zw.ZwTensor, _format_zw_generator))


def format_document(document: ParsedDocument) -> str:
    if document.rules:
        blocks = []
        for rule in document.rules:
            lines = [f"rule {rule.name}", "vars " + " ".join(rule.variables)]
            if rule.constraint:
                lines.append(f"constraint {rule.constraint}")
            lines.append(f"lhs: {format_zx(rule.lhs)}")
            lines.append(f"rhs: {format_zx(rule.rhs)}")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"
    return "".join(
        (format_zx(d) if isinstance(d, Diagram) else format_zw(d)) + "\n" for d in document.diagrams
    )
