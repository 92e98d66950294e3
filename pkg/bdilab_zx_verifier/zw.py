"""
ZW diagrams, their interpretation and the translations between ZX and ZW.

``to_zw`` sends a ground ZX diagram to a ZW diagram with the same interpretation and ``to_zx``
goes back. Spider parameters of ZW are arbitrary complex numbers; the ZX side realises a
parameter r through the polar form r = 2^n cos(beta) e^{i theta}.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from bdilab_zx_verifier import gadgets
from bdilab_zx_verifier.constants import CONSTRAINT_TOLERANCE, FLOAT_TOLERANCE
from bdilab_zx_verifier.diagram import (
    Diagram,
    Generator,
    GeneratorKind,
    PhaseExpr,
    Seq,
    h,
    identity,
    is_ground,
    seq,
    tensor,
    triangle,
    wires,
    x,
    z,
)
from bdilab_zx_verifier.diagram import cap as zx_cap
from bdilab_zx_verifier.diagram import cup as zx_cup
from bdilab_zx_verifier.diagram import empty as zx_empty
from bdilab_zx_verifier.diagram import swap as zx_swap
from bdilab_zx_verifier.errors import ArityMismatch, ExactUnavailable, NonGroundDiagram
from bdilab_zx_verifier.exactnum import Cyclotomic, ExactMatrix, cos_pi, exp_i_pi
from bdilab_zx_verifier.projector import Method, Verdict
from bdilab_zx_verifier.semantics import Backend, Matrix, evaluate, interp

logger = logging.getLogger(__name__)

QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class Decomposition:
    """z = 2^n cos(beta) e^{i theta} with theta in [0, 2 pi) and beta in [0, pi/2]."""
    n: int
    theta: float
    beta: float

    @property
    def value(self) -> complex:
        return (2 ** self.n) * math.cos(self.beta) * cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class ExactPolar:
    """An exactly known polar form; ``theta`` and ``beta`` are rational multiples of pi."""
    n: int
    theta: Fraction
    beta: Fraction

    @property
    def value(self) -> complex:
        return (2 ** self.n) * math.cos(math.pi * self.beta) * cmath.exp(1j * math.pi * self.theta)

    def exact(self) -> Cyclotomic:
        return cos_pi(self.beta) * exp_i_pi(self.theta) * (2 ** self.n)


def decompose(value: complex) -> Decomposition:
    """
    Polar form of a complex number with n = max(0, ceil(log2 |z|)); zero maps to (0, 0, pi/2).
    """
    value = complex(value)
    rho = abs(value)
    if rho == 0:
        return Decomposition(0, 0.0, math.pi / 2)
    n = max(0, math.ceil(math.log2(rho)))
    if rho / 2 ** n > 1:
        n += 1
    ratio = min(1.0, rho / 2 ** n)
    theta = cmath.phase(value) % (2 * math.pi)
    if theta >= 2 * math.pi:
        theta = 0.0
    return Decomposition(n, theta, math.acos(ratio))


@dataclass(frozen=True)
class ZwParam:
    """A ZW spider parameter: its complex value and, when known, an exact polar form."""
    value: complex
    polar: Optional[ExactPolar] = None

    @classmethod
    def of(cls, value: Union[complex, float, int, "ZwParam"]) -> "ZwParam":
        if isinstance(value, ZwParam):
            return value
        return cls(complex(value))

    @classmethod
    def from_polar(cls, n: int, theta: Fraction, beta: Fraction) -> "ZwParam":
        polar = ExactPolar(n, Fraction(theta) % 2, Fraction(beta))
        return cls(polar.value, polar)

    @classmethod
    def phase(cls, phase: PhaseExpr) -> "ZwParam":
        """e^{i phase}, exact when the phase is a rational multiple of pi."""
        if phase.const_irr == 0:
            return cls.from_polar(0, phase.const, Fraction(0))
        return cls(cmath.exp(1j * phase.to_radians()))

    def is_zero(self) -> bool:
        if self.polar is not None:
            return self.polar.beta % 1 == Fraction(1, 2)
        return self.value == 0

    def is_one(self) -> bool:
        if self.polar is not None:
            return self.polar.n == 0 and self.polar.beta == 0 and self.polar.theta == 0
        return self.value == 1

    def exact(self) -> Optional[Cyclotomic]:
        """The exact value, or None when it is only known as a float."""
        try:
            if self.polar is not None:
                return self.polar.exact()
            re, im = self.value.real, self.value.imag
            if float(re).is_integer() and float(im).is_integer():
                return Cyclotomic.from_rational(int(re)) + exp_i_pi(Fraction(1, 2)) * int(im)
        except ExactUnavailable:
            pass
        return None

    def __str__(self) -> str:
        return f"{self.value.real:.17g},{self.value.imag:.17g}"


class ZwKind(Enum):
    SPIDER = "Zw"
    W11 = "W11"
    W12 = "W12"
    SWAP = "swap"
    FCROSS = "fcross"
    CUP = "cup"
    CAP = "cap"
    ID = "id"
    EMPTY = "empty"
    WDOT = "wdot"

    def __str__(self):
        return self.value


ZW_ARITY = {
    ZwKind.W11: (1, 1),
    ZwKind.W12: (1, 2),
    ZwKind.SWAP: (2, 2),
    ZwKind.FCROSS: (2, 2),
    ZwKind.CUP: (2, 0),
    ZwKind.CAP: (0, 2),
    ZwKind.ID: (1, 1),
    ZwKind.EMPTY: (0, 0),
    ZwKind.WDOT: (0, 0),
}


class ZwDiagram(object):
    inputs: int
    outputs: int

    @property
    def arity(self) -> Tuple[int, int]:
        return self.inputs, self.outputs

    def then(self, other: "ZwDiagram") -> "ZwDiagram":
        return zw_seq(self, other)

    def __matmul__(self, other: "ZwDiagram") -> "ZwDiagram":
        return zw_tensor(self, other)


@dataclass(frozen=True)
class ZwGenerator(ZwDiagram):
    kind: ZwKind
    n: int = 0
    m: int = 0
    param: Optional[ZwParam] = None
    inputs: int = field(init=False, compare=False, repr=False)
    outputs: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind is ZwKind.SPIDER:
            if self.n < 0 or self.m < 0:
                raise ValueError("spider legs must be non-negative")
            arity = (self.n, self.m)
        else:
            arity = ZW_ARITY[self.kind]
            object.__setattr__(self, "n", arity[0])
            object.__setattr__(self, "m", arity[1])
        if self.kind in (ZwKind.SPIDER, ZwKind.WDOT):
            object.__setattr__(self, "param", ZwParam.of(1 if self.param is None else self.param))
        else:
            object.__setattr__(self, "param", None)
        object.__setattr__(self, "inputs", arity[0])
        object.__setattr__(self, "outputs", arity[1])


@dataclass(frozen=True)
class ZwSeq(ZwDiagram):
    first: ZwDiagram
    second: ZwDiagram
    inputs: int = field(init=False, compare=False, repr=False)
    outputs: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.first.outputs != self.second.inputs:
            raise ArityMismatch(self.first.outputs, self.second.inputs)
        object.__setattr__(self, "inputs", self.first.inputs)
        object.__setattr__(self, "outputs", self.second.outputs)


@dataclass(frozen=True)
class ZwTensor(ZwDiagram):
    left: ZwDiagram
    right: ZwDiagram
    inputs: int = field(init=False, compare=False, repr=False)
    outputs: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "inputs", self.left.inputs + self.right.inputs)
        object.__setattr__(self, "outputs", self.left.outputs + self.right.outputs)


def zw_spider(n: int, m: int, param: Union[complex, float, int, ZwParam] = 1) -> ZwGenerator:
    return ZwGenerator(ZwKind.SPIDER, n, m, ZwParam.of(param))


def white_dot(param: Union[complex, float, int, ZwParam] = 1) -> ZwGenerator:
    return ZwGenerator(ZwKind.WDOT, param=ZwParam.of(param))


def w11() -> ZwGenerator:
    return ZwGenerator(ZwKind.W11)


def w12() -> ZwGenerator:
    return ZwGenerator(ZwKind.W12)


def fermionic_cross() -> ZwGenerator:
    return ZwGenerator(ZwKind.FCROSS)


def zw_identity() -> ZwGenerator:
    return ZwGenerator(ZwKind.ID)


def zw_empty() -> ZwGenerator:
    return ZwGenerator(ZwKind.EMPTY)


def zw_swap() -> ZwGenerator:
    return ZwGenerator(ZwKind.SWAP)


def zw_cup() -> ZwGenerator:
    return ZwGenerator(ZwKind.CUP)


def zw_cap() -> ZwGenerator:
    return ZwGenerator(ZwKind.CAP)


def zw_seq(first: ZwDiagram, *rest: ZwDiagram) -> ZwDiagram:
    result = first
    for d in rest:
        result = ZwSeq(result, d)
    return result


def _is_empty(d: ZwDiagram) -> bool:
    return isinstance(d, ZwGenerator) and d.kind is ZwKind.EMPTY


def zw_tensor(*parts: ZwDiagram) -> ZwDiagram:
    parts = [p for p in parts if not _is_empty(p)]
    if not parts:
        return zw_empty()
    result = parts[0]
    for d in parts[1:]:
        result = ZwTensor(result, d)
    return result


def zw_repeat(d: ZwDiagram, k: int) -> ZwDiagram:
    return zw_tensor(*(d for _ in range(k)))


_FIXED = {
    ZwKind.W11: [[0, 1], [1, 0]],
    ZwKind.W12: [[0, 1], [1, 0], [1, 0], [0, 0]],
    ZwKind.SWAP: [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    ZwKind.FCROSS: [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]],
    ZwKind.CUP: [[1, 0, 0, 1]],
    ZwKind.CAP: [[1], [0], [0], [1]],
    ZwKind.ID: [[1, 0], [0, 1]],
    ZwKind.EMPTY: [[1]],
}


def _spider_rows(g: ZwGenerator, value, zero, one) -> List[List]:
    if g.kind is ZwKind.WDOT or g.n + g.m == 0:
        return [[value + one]]
    rows = [[zero] * (2 ** g.n) for _ in range(2 ** g.m)]
    rows[0][0] = one
    rows[-1][-1] = value
    return rows


def _exact_leaf(g: ZwGenerator) -> Matrix:
    if g.param is None:
        return Matrix(ExactMatrix.from_rows(_FIXED[g.kind]))
    value = g.param.exact()
    if value is None:
        raise ExactUnavailable(f"parameter {g.param.value} has no exact form")
    return Matrix(ExactMatrix.from_rows(_spider_rows(g, value, 0, 1), value.order))


def _float_leaf(g: ZwGenerator) -> Matrix:
    if g.param is None:
        return Matrix(np.array(_FIXED[g.kind], dtype=complex))
    return Matrix(np.array(_spider_rows(g, g.param.value, 0j, 1 + 0j), dtype=complex))


def interp_zw(d: ZwDiagram, backend: Backend = Backend.exact) -> Matrix:
    """
    The interpretation of a ZW diagram; with the exact backend, falls back to floats when a
    parameter has no exact form.
    """
    if backend is Backend.exact:
        try:
            return evaluate(d, _exact_leaf, Matrix(ExactMatrix.identity(2 ** d.inputs)), ZwSeq, ZwTensor)
        except ExactUnavailable as e:
            logger.debug("ZW interpretation in floats: %s", e)
    return evaluate(d, _float_leaf, Matrix(np.eye(2 ** d.inputs, dtype=complex)), ZwSeq, ZwTensor)


# ZX -> ZW

def zw_triangle() -> ZwDiagram:
    """[[1, 1], [0, 1]] from the W nodes."""
    return zw_seq(w11(), w12(), zw_tensor(zw_identity(), zw_spider(1, 0, ZwParam.from_polar(0, 0, 0))))


def zw_hadamard() -> ZwDiagram:
    """
    (1/sqrt 2)[[1, 1], [1, -1]]: the scalar 1/sqrt 2 next to NOT T NOT diag(1, -2) T.
    """
    scalar = zw_seq(
        zw_spider(0, 1, ZwParam.from_polar(0, 0, Fraction(1, 2))),
        w11(),
        zw_spider(1, 0, ZwParam.from_polar(0, 0, QUARTER)),
    )
    body = zw_seq(
        zw_triangle(),
        zw_spider(1, 1, ZwParam.from_polar(1, 1, 0)),
        w11(),
        zw_triangle(),
        w11(),
    )
    return zw_tensor(scalar, body)


_ZX_TO_ZW_FIXED = {
    GeneratorKind.ID: ZwKind.ID,
    GeneratorKind.SWAP: ZwKind.SWAP,
    GeneratorKind.CUP: ZwKind.CUP,
    GeneratorKind.CAP: ZwKind.CAP,
    GeneratorKind.EMPTY: ZwKind.EMPTY,
}


def _generator_to_zw(g: Generator) -> ZwDiagram:
    if g.kind is GeneratorKind.Z:
        return zw_spider(g.n, g.m, ZwParam.phase(g.phase))
    if g.kind is GeneratorKind.X:
        core = zw_spider(g.n, g.m, ZwParam.phase(g.phase))
        return zw_seq(zw_repeat(zw_hadamard(), g.n), core, zw_repeat(zw_hadamard(), g.m))
    if g.kind is GeneratorKind.H:
        return zw_hadamard()
    if g.kind is GeneratorKind.TRIANGLE:
        return zw_triangle()
    return ZwGenerator(_ZX_TO_ZW_FIXED[g.kind])


def to_zw(d: Diagram) -> ZwDiagram:
    """Translate a ground ZX diagram into ZW, preserving the interpretation."""
    if not is_ground(d):
        raise NonGroundDiagram("only ground diagrams can be translated")
    if isinstance(d, Generator):
        return _generator_to_zw(d)
    if isinstance(d, Seq):
        return ZwSeq(to_zw(d.first), to_zw(d.second))
    return ZwTensor(to_zw(d.left), to_zw(d.right))


# ZW -> ZX

def _double_effect() -> Diagram:
    """(1, 2)"""
    return seq(triangle(), z(1, 0))


def _half_effect() -> Diagram:
    """(1, 1/2)"""
    return tensor(seq(x(1, 1, 1), triangle(), z(1, 0)), gadgets.half())


def _cosine_effect(beta: PhaseExpr) -> Diagram:
    """(1, 2 cos beta)"""
    return seq(z(1, 1, -beta), triangle(), z(1, 0, beta * 2))


def _polar_angles(param: ZwParam) -> Tuple[int, PhaseExpr, PhaseExpr]:
    if param.polar is not None:
        return param.polar.n, PhaseExpr.pi(param.polar.theta), PhaseExpr.pi(param.polar.beta)
    d = decompose(param.value)
    return d.n, PhaseExpr.radians(d.theta), PhaseExpr.radians(d.beta)


def _unit_phase(param: ZwParam) -> Optional[PhaseExpr]:
    """The phase of a unit-modulus parameter, or None."""
    if param.polar is not None:
        if param.polar.n == 0 and param.polar.beta == 0:
            return PhaseExpr.pi(param.polar.theta)
        return None
    value = param.value
    if abs(abs(value) - 1) > CONSTRAINT_TOLERANCE:
        return None
    for k in range(4):
        if value == 1j ** k:
            return PhaseExpr.pi(Fraction(k, 2))
    return PhaseExpr.radians(cmath.phase(value))


def corner_effect(r: Union[complex, ZwParam]) -> Diagram:
    """
    A 1 -> 0 ZX effect with interpretation (1, r).

    A single Z copy feeds one effect per factor of r = e^{i theta} (2 cos beta) 2^{n-1}; the last
    factor is (1, 1/2) when n = 0.
    """
    param = ZwParam.of(r)
    if param.is_zero():
        return tensor(gadgets.inv_sqrt_two(), x(1, 0))
    phase = _unit_phase(param)
    if phase is not None:
        return z(1, 0, phase)
    n, theta, beta = _polar_angles(param)
    factors = []
    if not theta.is_zero():
        factors.append(z(1, 0, theta))
    factors.append(_cosine_effect(beta))
    if n == 0:
        factors.append(_half_effect())
    else:
        factors.extend(_double_effect() for _ in range(n - 1))
    return seq(z(1, len(factors)), tensor(*factors))


def zx_fermionic_cross() -> Diagram:
    """Swap followed by CZ."""
    cz = tensor(
        seq(
            tensor(z(1, 2), z(1, 2)),
            tensor(identity(), seq(tensor(identity(), h()), zx_cup()), identity()),
        ),
        gadgets.sqrt_two(),
    )
    return seq(zx_swap(), cz)


def zx_w12() -> Diagram:
    """NOT, the X copy |a> -> sum_{x xor y = a} |xy>, then the mask killing |11>."""
    mask = seq(
        tensor(z(1, 2), z(1, 2)),
        tensor(identity(), seq(tensor(identity(), seq(x(1, 1, 1), triangle())), zx_cup()), identity()),
    )
    return tensor(seq(x(1, 1, 1), x(1, 2), mask), gadgets.sqrt_two())


def _generator_to_zx(g: ZwGenerator) -> Diagram:
    if g.kind is ZwKind.SPIDER:
        phase = _unit_phase(g.param)
        if phase is not None:
            return z(g.n, g.m, phase)
        return seq(z(g.n, g.m + 1), tensor(wires(g.m), corner_effect(g.param)))
    if g.kind is ZwKind.WDOT:
        if g.param.is_one():
            return gadgets.two()
        return seq(z(0, 1), corner_effect(g.param))
    if g.kind is ZwKind.W11:
        return x(1, 1, 1)
    if g.kind is ZwKind.W12:
        return zx_w12()
    if g.kind is ZwKind.FCROSS:
        return zx_fermionic_cross()
    return {
        ZwKind.ID: identity,
        ZwKind.SWAP: zx_swap,
        ZwKind.CUP: zx_cup,
        ZwKind.CAP: zx_cap,
        ZwKind.EMPTY: zx_empty,
    }[g.kind]()


def to_zx(d: ZwDiagram) -> Diagram:
    """Translate a ZW diagram into ZX, preserving the interpretation."""
    if isinstance(d, ZwGenerator):
        return _generator_to_zx(d)
    if isinstance(d, ZwSeq):
        return Seq(to_zx(d.first), to_zx(d.second))
    return tensor(to_zx(d.left), to_zx(d.right))


def compare_matrices(a: Matrix, b: Matrix, method: Method = Method.semantic) -> Verdict:
    exact = a.exact and b.exact
    holds = a.equals(b) if exact else a.equals(b, FLOAT_TOLERANCE)
    verdict = Verdict(holds, method, discrepancy=a.max_abs_diff(b), approximate=not exact)
    if not holds:
        verdict.entry = a.argmax_diff(b)
    return verdict


def translation_check(d: Diagram) -> Verdict:
    """Compare [[to_zw(d)]] with [[d]]."""
    return compare_matrices(interp_zw(to_zw(d)), interp(d, Backend.exact, allow_fallback=True))


def roundtrip_check(d: Diagram) -> Verdict:
    """Compare [[to_zx(to_zw(d))]] with [[d]]."""
    back = to_zx(to_zw(d))
    logger.debug("Round trip of a %d->%d diagram", d.inputs, d.outputs)
    return compare_matrices(interp(back, Backend.exact, allow_fallback=True),
                            interp(d, Backend.exact, allow_fallback=True))


def parameter_identities(r1: complex, r2: complex) -> List[Tuple[str, ZwDiagram, ZwDiagram]]:
    """
    Parameter arithmetic of ZW spiders: composing multiplies the corners and a W node adds them.
    """
    product = (
        "multiply",
        zw_seq(zw_spider(1, 1, r1), zw_spider(1, 1, r2)),
        zw_spider(1, 1, complex(r1) * complex(r2)),
    )
    addition = (
        "add",
        zw_seq(w11(), w12(), zw_tensor(zw_spider(1, 0, r1), zw_spider(1, 0, r2))),
        zw_spider(1, 0, complex(r1) + complex(r2)),
    )
    return [product, addition]


def check_parameter_identities(pairs: Sequence[Tuple[complex, complex]]) -> List[Tuple[str, Verdict]]:
    """Check each identity both in ZW and after translating both sides to ZX."""
    results = []
    for r1, r2 in pairs:
        for name, lhs, rhs in parameter_identities(r1, r2):
            zw_verdict = compare_matrices(interp_zw(lhs), interp_zw(rhs))
            zx_verdict = compare_matrices(interp(to_zx(lhs), allow_fallback=True),
                                          interp(to_zx(rhs), allow_fallback=True))
            verdict = zx_verdict if zw_verdict.holds else zw_verdict
            results.append((name, verdict))
    return results
