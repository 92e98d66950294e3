"""
Linearity analysis of parametric diagrams and extraction of their variables onto boundary wires.

Extraction rewrites a pair of diagrams linear in a variable ``v`` into ground pi/4 diagrams
``d1'``, ``d2'`` with ``r = mu`` extra inputs such that, for every angle a,

    [[theta_r(a) ; d_i']] = e^{i c a} [[bend_inputs(d_i(a))]]

with the same correction exponent ``c`` on both sides.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from bdilab_zx_verifier import gadgets
from bdilab_zx_verifier.diagram import (
    Angle,
    Diagram,
    Generator,
    GeneratorKind,
    PhaseExpr,
    Seq,
    Tensor,
    cap,
    empty,
    h,
    permutation,
    phases,
    repeat,
    seq,
    tensor,
    variables,
    wires,
    x,
    z,
)
from bdilab_zx_verifier.errors import ArityMismatch, ConstantsOutsidePi4, NonLinearPhase, UnexpectedVariable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiplicityReport:
    var: str
    mu_plus: Tuple[int, int]
    mu_minus: Tuple[int, int]

    @property
    def mu(self) -> int:
        return max(self.mu_plus) + max(self.mu_minus)


def check_linear(d: Diagram):
    for phase in phases(d):
        if not phase.is_linear():
            raise NonLinearPhase(f"phase '{phase}' has a non-integer coefficient")


def _signed_counts(d: Diagram, var: str) -> Tuple[int, int]:
    plus = minus = 0
    for phase in phases(d):
        c = phase.coefficient(var)
        if c > 0:
            plus += c
        else:
            minus -= c
    return plus, minus


def multiplicity(d1: Diagram, d2: Diagram, var: str) -> MultiplicityReport:
    """
    Occurrence counts of ``var``: the largest positive count over both sides plus the largest
    negative count over both sides. Red and green spiders count alike.
    """
    check_linear(d1)
    check_linear(d2)
    p1, m1 = _signed_counts(d1, var)
    p2, m2 = _signed_counts(d2, var)
    return MultiplicityReport(var, (p1, p2), (m1, m2))


def theta(r: int, angle: Angle) -> Diagram:
    """theta_r(angle): r green states with the given phase; Empty when r = 0."""
    return repeat(z(0, 1, angle), r)


def theta_multi(rs: Sequence[int], angles: Sequence[Angle]) -> Diagram:
    return tensor(*(theta(r, a) for r, a in zip(rs, angles)))


def caps(k: int) -> Diagram:
    """The 0 -> 2k state sum_x |x>|x>, x ranging over k-bit strings."""
    if k == 0:
        return empty()
    # k caps give wires x1 x1' x2 x2' ...; reorder to x1..xk x1'..xk'
    order = [2 * i for i in range(k)] + [2 * i + 1 for i in range(k)]
    return seq(repeat(cap(), k), permutation(order))


def bend_inputs(d: Diagram) -> Diagram:
    """
    Turn the inputs of ``d`` into outputs.

    The fresh outputs come first, in input order, so ``[[bend(d)]]`` at index ``x·2^m + y`` is
    ``[[d]][y, x]``.
    """
    if d.inputs == 0:
        return d
    return seq(caps(d.inputs), tensor(wires(d.inputs), d))


def _move_block(sizes: Sequence[int], target: Sequence[int]) -> Diagram:
    """Permutation regrouping consecutive input blocks of the given sizes into ``target`` block order."""
    starts = []
    offset = 0
    for s in sizes:
        starts.append(offset)
        offset += s
    order = []
    for block in target:
        order.extend(range(starts[block], starts[block] + sizes[block]))
    return permutation(order)


@dataclass
class _Hoisted:
    diagram: Diagram
    wires: int
    flips: int


def _hoist_generator(g: Generator, var: str) -> _Hoisted:
    if not g.is_spider:
        return _Hoisted(g, 0, 0)
    c = g.phase.coefficient(var)
    if c == 0:
        return _Hoisted(g, 0, 0)
    k = abs(c)
    leaf = x(1, 1, 1) if c < 0 else wires(1)
    red = g.kind is GeneratorKind.X
    pre = tensor(repeat(h(), g.n) if red else wires(g.n), repeat(leaf, k))
    core = z(g.n + k, g.m, g.phase.without(var))
    parts = [_move_block((k, g.n), (1, 0)), pre, core]
    if red and g.m:
        parts.append(repeat(h(), g.m))
    return _Hoisted(seq(*parts), k, k if c < 0 else 0)


def _hoist(d: Diagram, var: str) -> _Hoisted:
    """
    Rewrite ``d: n -> m`` into ``d': k + n -> m`` whose first k inputs take the var-states.

    Every occurrence ``l·var`` of a spider phase becomes |l| legs fed by Z[0,1](var) states;
    negative occurrences pass through a NOT, which costs a factor e^{-i var} each.
    """
    if isinstance(d, Generator):
        return _hoist_generator(d, var)
    if isinstance(d, Seq):
        a, b = _hoist(d.first, var), _hoist(d.second, var)
        if a.wires == 0 and b.wires == 0:
            return _Hoisted(d, 0, 0)
        # inputs [ka, kb, n] -> [kb, ka, n] -> [kb, ma] -> out
        body = seq(
            _move_block((a.wires, b.wires, d.first.inputs), (1, 0, 2)),
            tensor(wires(b.wires), a.diagram),
            b.diagram,
        )
        return _Hoisted(body, a.wires + b.wires, a.flips + b.flips)
    assert isinstance(d, Tensor)
    a, b = _hoist(d.left, var), _hoist(d.right, var)
    if a.wires == 0 and b.wires == 0:
        return _Hoisted(d, 0, 0)
    # inputs [ka, kb, na, nb] -> [ka, na, kb, nb]
    body = seq(
        _move_block((a.wires, b.wires, d.left.inputs, d.right.inputs), (0, 2, 1, 3)),
        tensor(a.diagram, b.diagram),
    )
    return _Hoisted(body, a.wires + b.wires, a.flips + b.flips)


def phase_gadget_effect() -> Diagram:
    """1 -> 0 effect sending Z[0,1](a) to e^{i a}."""
    return tensor(gadgets.basis_effect(1), gadgets.inv_sqrt_two())


def neutral_effect() -> Diagram:
    """1 -> 0 effect sending Z[0,1](a) to 1."""
    return tensor(gadgets.basis_effect(0), gadgets.inv_sqrt_two())


@dataclass(frozen=True)
class ExtractionResult:
    """
    Ground pi/4 diagrams ``d1_prime``, ``d2_prime`` of arity ``sum(r) -> n + m``.

    ``r`` and ``corrections`` are per-variable, in the order of ``variables``; the inputs of the
    primes are grouped by variable in that order.
    """
    d1_prime: Diagram
    d2_prime: Diagram
    variables: Tuple[str, ...]
    r: Tuple[int, ...]
    corrections: Tuple[int, ...]

    @property
    def total_wires(self) -> int:
        return sum(self.r)


def _check_constants(d: Diagram, extracted: Sequence[str]):
    for phase in phases(d):
        rest = phase
        for name in extracted:
            rest = rest.without(name)
        if not rest.is_ground():
            raise UnexpectedVariable(f"phase '{phase}' depends on {sorted(rest.variables)}")
        if not rest.constant_in_pi4():
            raise ConstantsOutsidePi4(f"constant of phase '{phase}' is not a multiple of pi/4")


def extract_multi(d1: Diagram, d2: Diagram, names: Sequence[str] = None) -> ExtractionResult:
    """
    Extract every variable in ``names`` (default: all variables, sorted).

    Variables of multiplicity 0 are dropped from the result.
    """
    if d1.arity != d2.arity:
        raise ArityMismatch(d1.inputs + d1.outputs, d2.inputs + d2.outputs)
    check_linear(d1)
    check_linear(d2)
    if names is None:
        names = sorted(variables(d1) | variables(d2))
    _check_constants(d1, names)
    _check_constants(d2, names)

    sides = [bend_inputs(d1), bend_inputs(d2)]
    kept, rs, corrections = [], [], []
    for name in names:
        report = multiplicity(d1, d2, name)
        if report.mu == 0:
            continue
        total_minus, total_plus = max(report.mu_minus), max(report.mu_plus)
        previous = sum(rs)
        for i, side in enumerate(sides):
            hoisted = _hoist(side, name)
            minus_i = report.mu_minus[i]
            plus_i = report.mu_plus[i]
            assert hoisted.wires == plus_i + minus_i and hoisted.flips == minus_i
            pads = tensor(
                repeat(phase_gadget_effect(), total_minus - minus_i),
                repeat(neutral_effect(), total_plus - plus_i),
            )
            # hoisted inputs are [k, previous]; regroup to [previous, k, pads]
            sides[i] = seq(
                _move_block((previous, hoisted.wires, report.mu - hoisted.wires), (1, 0, 2)),
                tensor(hoisted.diagram, pads),
            )
        logger.debug("Extracted %s with multiplicity %d", name, report.mu)
        kept.append(name)
        rs.append(report.mu)
        corrections.append(total_minus)
    return ExtractionResult(sides[0], sides[1], tuple(kept), tuple(rs), tuple(corrections))


def extract(d1: Diagram, d2: Diagram, var: str) -> ExtractionResult:
    """
    Single-variable extraction; any other variable in ``d1`` or ``d2`` raises UnexpectedVariable.
    """
    result = extract_multi(d1, d2, [var])
    if not result.variables:
        return ExtractionResult(result.d1_prime, result.d2_prime, (var,), (0,), (0,))
    return result


def assignment_for(result: ExtractionResult, angles: Dict[str, Angle]) -> Diagram:
    """theta_{r}(angles) feeding the inputs of an extraction result."""
    return theta_multi(result.r, [angles[name] for name in result.variables])


def correction_exponent(result: ExtractionResult, angles: Dict[str, Angle]) -> PhaseExpr:
    total = PhaseExpr.zero()
    for name, c in zip(result.variables, result.corrections):
        total = total + PhaseExpr.of(angles[name]) * c
    return total

