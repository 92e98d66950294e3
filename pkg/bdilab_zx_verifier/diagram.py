"""
ZX diagram terms and phase expressions.

A diagram is a composition tree over the ZX generators. ``Seq(a, b)`` feeds the outputs of ``a``
into the inputs of ``b``; ``Tensor(a, b)`` places ``a`` to the left of ``b``.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterator, Mapping, Sequence, Tuple, Union

from bdilab_zx_verifier.errors import ArityMismatch, UnboundVariable

Coefficient = Union[int, Fraction]
Angle = Union[int, Fraction, float, "PhaseExpr"]


def _normalize_coefficient(value: Coefficient) -> Coefficient:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


@dataclass(frozen=True)
class PhaseExpr:
    """
    A phase ``sum(n_i * v_i) + const * pi + const_irr``.

    ``coeffs`` is a sorted tuple of (variable, coefficient) pairs with no zero coefficient.
    Coefficients are integers for linear phases; a parsed rational coefficient is kept as a
    ``Fraction`` so that linearity checks can reject it.
    """
    coeffs: Tuple[Tuple[str, Coefficient], ...] = ()
    const: Fraction = Fraction(0)
    const_irr: float = 0.0

    def __post_init__(self):
        merged: Dict[str, Fraction] = {}
        for name, value in self.coeffs:
            merged[name] = merged.get(name, Fraction(0)) + Fraction(value)
        coeffs = tuple(sorted((name, _normalize_coefficient(v)) for name, v in merged.items() if v != 0))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "const_irr", float(self.const_irr))

    @classmethod
    def zero(cls) -> "PhaseExpr":
        return cls()

    @classmethod
    def variable(cls, name: str, coefficient: Coefficient = 1) -> "PhaseExpr":
        return cls(coeffs=((name, coefficient),))

    @classmethod
    def pi(cls, multiple: Union[int, Fraction]) -> "PhaseExpr":
        return cls(const=Fraction(multiple))

    @classmethod
    def radians(cls, value: float) -> "PhaseExpr":
        return cls(const_irr=value)

    @classmethod
    def of(cls, angle: Angle) -> "PhaseExpr":
        """Coerce an angle: ints and Fractions are multiples of pi, floats are radians."""
        if isinstance(angle, PhaseExpr):
            return angle
        if isinstance(angle, (int, Fraction)):
            return cls.pi(angle)
        if isinstance(angle, float):
            return cls.radians(angle)
        raise TypeError(f"cannot interpret {angle!r} as an angle")

    @property
    def const_num(self) -> int:
        return self.const.numerator

    @property
    def const_den(self) -> int:
        return self.const.denominator

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.coeffs)

    def coefficient(self, name: str) -> Coefficient:
        return dict(self.coeffs).get(name, 0)

    def without(self, name: str) -> "PhaseExpr":
        return PhaseExpr(tuple(c for c in self.coeffs if c[0] != name), self.const, self.const_irr)

    def is_ground(self) -> bool:
        return not self.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0 and self.const_irr == 0

    def is_linear(self) -> bool:
        return all(isinstance(c, int) for _, c in self.coeffs)

    def in_pi4_fragment(self) -> bool:
        return not self.coeffs and self.const_irr == 0 and self.const_den in (1, 2, 4)

    def constant_in_pi4(self) -> bool:
        return self.const_irr == 0 and self.const_den in (1, 2, 4)

    def __add__(self, other: Angle) -> "PhaseExpr":
        other = PhaseExpr.of(other)
        return PhaseExpr(self.coeffs + other.coeffs, self.const + other.const, self.const_irr + other.const_irr)

    __radd__ = __add__

    def __neg__(self) -> "PhaseExpr":
        return self * -1

    def __sub__(self, other: Angle) -> "PhaseExpr":
        return self + (-PhaseExpr.of(other))

    def __mul__(self, k: int) -> "PhaseExpr":
        return PhaseExpr(tuple((n, c * k) for n, c in self.coeffs), self.const * k, self.const_irr * k)

    __rmul__ = __mul__

    def substitute(self, assignment: Mapping[str, Angle]) -> "PhaseExpr":
        result = PhaseExpr(const=self.const, const_irr=self.const_irr)
        for name, coefficient in self.coeffs:
            if name not in assignment:
                raise UnboundVariable(name)
            value = PhaseExpr.of(assignment[name])
            if not value.is_ground():
                raise UnboundVariable(name)
            result = result + value * coefficient
        return result

    def to_radians(self) -> float:
        if self.coeffs:
            raise ValueError(f"phase {self} is not ground")
        return float(self.const) * math.pi + self.const_irr

    def __str__(self) -> str:
        parts = []
        for name, c in self.coeffs:
            magnitude = abs(c)
            text = name if magnitude == 1 else f"{magnitude} {name}"
            parts.append((c < 0, text))
        if self.const:
            magnitude = abs(self.const)
            if magnitude == 1:
                text = "pi"
            elif magnitude.denominator == 1:
                text = f"{magnitude.numerator} pi"
            else:
                text = f"{magnitude.numerator}/{magnitude.denominator} pi"
            parts.append((self.const < 0, text))
        if self.const_irr:
            parts.append((self.const_irr < 0, f"{abs(self.const_irr):.12g}r"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, text in parts[1:]:
            out += (" - " if negative else " + ") + text
        return out


ZERO = PhaseExpr()


class GeneratorKind(Enum):
    Z = "Z"
    X = "X"
    H = "H"
    ID = "id"
    SWAP = "swap"
    CUP = "cup"
    CAP = "cap"
    EMPTY = "empty"
    TRIANGLE = "T"

    def __str__(self):
        return self.value


FIXED_ARITY = {
    GeneratorKind.H: (1, 1),
    GeneratorKind.ID: (1, 1),
    GeneratorKind.SWAP: (2, 2),
    GeneratorKind.CUP: (2, 0),
    GeneratorKind.CAP: (0, 2),
    GeneratorKind.EMPTY: (0, 0),
    GeneratorKind.TRIANGLE: (1, 1),
}
SPIDERS = (GeneratorKind.Z, GeneratorKind.X)


class Diagram(object):
    inputs: int
    outputs: int

    @property
    def arity(self) -> Tuple[int, int]:
        return self.inputs, self.outputs

    def then(self, other: "Diagram") -> "Diagram":
        return seq(self, other)

    def __matmul__(self, other: "Diagram") -> "Diagram":
        return tensor(self, other)


@dataclass(frozen=True)
class Generator(Diagram):
    kind: GeneratorKind
    n: int = 0
    m: int = 0
    phase: PhaseExpr = ZERO
    inputs: int = field(init=False, compare=False, repr=False)
    outputs: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind in SPIDERS:
            if self.n < 0 or self.m < 0:
                raise ValueError("spider legs must be non-negative")
            arity = (self.n, self.m)
        else:
            arity = FIXED_ARITY[self.kind]
            object.__setattr__(self, "n", arity[0])
            object.__setattr__(self, "m", arity[1])
            object.__setattr__(self, "phase", ZERO)
        object.__setattr__(self, "inputs", arity[0])
        object.__setattr__(self, "outputs", arity[1])

    @property
    def is_spider(self) -> bool:
        return self.kind in SPIDERS


@dataclass(frozen=True)
class Seq(Diagram):
    first: Diagram
    second: Diagram
    inputs: int = field(init=False, compare=False, repr=False)
    outputs: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.first.outputs != self.second.inputs:
            raise ArityMismatch(self.first.outputs, self.second.inputs)
        object.__setattr__(self, "inputs", self.first.inputs)
        object.__setattr__(self, "outputs", self.second.outputs)


@dataclass(frozen=True)
class Tensor(Diagram):
    left: Diagram
    right: Diagram
    inputs: int = field(init=False, compare=False, repr=False)
    outputs: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "inputs", self.left.inputs + self.right.inputs)
        object.__setattr__(self, "outputs", self.left.outputs + self.right.outputs)


def z(n: int, m: int, phase: Angle = 0) -> Generator:
    return Generator(GeneratorKind.Z, n, m, PhaseExpr.of(phase))


def x(n: int, m: int, phase: Angle = 0) -> Generator:
    return Generator(GeneratorKind.X, n, m, PhaseExpr.of(phase))


def spider(kind: GeneratorKind, n: int, m: int, phase: Angle = 0) -> Generator:
    return Generator(kind, n, m, PhaseExpr.of(phase))


def h() -> Generator:
    return Generator(GeneratorKind.H)


def identity() -> Generator:
    return Generator(GeneratorKind.ID)


def swap() -> Generator:
    return Generator(GeneratorKind.SWAP)


def cup() -> Generator:
    return Generator(GeneratorKind.CUP)


def cap() -> Generator:
    return Generator(GeneratorKind.CAP)


def empty() -> Generator:
    return Generator(GeneratorKind.EMPTY)


def triangle() -> Generator:
    return Generator(GeneratorKind.TRIANGLE)


def seq(first: Diagram, *rest: Diagram) -> Diagram:
    """Sequential composition, left to right. Raises ArityMismatch on a boundary mismatch."""
    result = first
    for d in rest:
        result = Seq(result, d)
    return result


def _is_empty(d: Diagram) -> bool:
    return isinstance(d, Generator) and d.kind is GeneratorKind.EMPTY


def tensor(*parts: Diagram) -> Diagram:
    """Parallel composition; Empty factors are dropped and no factors gives Empty."""
    parts = [p for p in parts if not _is_empty(p)]
    if not parts:
        return empty()
    result = parts[0]
    for d in parts[1:]:
        result = Tensor(result, d)
    return result


def wires(k: int) -> Diagram:
    return tensor(*(identity() for _ in range(k)))


def repeat(d: Diagram, k: int) -> Diagram:
    return tensor(*(d for _ in range(k)))


def permutation(order: Sequence[int]) -> Diagram:
    """
    The k -> k wire permutation whose output j carries input ``order[j]``, built from adjacent swaps.
    """
    k = len(order)
    if sorted(order) != list(range(k)):
        raise ValueError(f"{list(order)} is not a permutation")
    current = list(range(k))
    layers = []
    for i in range(k):
        p = current.index(order[i])
        while p > i:
            current[p - 1], current[p] = current[p], current[p - 1]
            layers.append(tensor(wires(p - 1), swap(), wires(k - p - 1)))
            p -= 1
    if not layers:
        return wires(k)
    return seq(*layers)


def generators(d: Diagram) -> Iterator[Generator]:
    stack = [d]
    while stack:
        node = stack.pop()
        if isinstance(node, Generator):
            yield node
        elif isinstance(node, Seq):
            stack.extend((node.second, node.first))
        else:
            stack.extend((node.right, node.left))


def phases(d: Diagram) -> Iterator[PhaseExpr]:
    return (g.phase for g in generators(d) if g.is_spider)


def variables(d: Diagram) -> FrozenSet[str]:
    names = set()
    for phase in phases(d):
        names.update(phase.variables)
    return frozenset(names)


def is_ground(d: Diagram) -> bool:
    return all(p.is_ground() for p in phases(d))


def in_pi4_fragment(d: Diagram) -> bool:
    return all(p.in_pi4_fragment() for p in phases(d))


def map_generators(d: Diagram, fn: Callable[[Generator], Diagram]) -> Diagram:
    if isinstance(d, Generator):
        return fn(d)
    if isinstance(d, Seq):
        return Seq(map_generators(d.first, fn), map_generators(d.second, fn))
    return Tensor(map_generators(d.left, fn), map_generators(d.right, fn))


def map_phases(d: Diagram, fn: Callable[[PhaseExpr], PhaseExpr]) -> Diagram:
    def rewrite(g: Generator) -> Diagram:
        return Generator(g.kind, g.n, g.m, fn(g.phase)) if g.is_spider else g

    return map_generators(d, rewrite)


def substitute(d: Diagram, assignment: Mapping[str, Angle]) -> Diagram:
    """
    Replace every variable by its assigned angle.

    Ints and Fractions are read as multiples of pi and kept exact; floats are radians and are
    accumulated in ``const_irr``. Raises UnboundVariable for a variable without a binding.
    """
    return map_phases(d, lambda p: p.substitute(assignment))


def flip(d: Diagram) -> Diagram:
    """The upside-down diagram; its interpretation is the transpose."""
    if isinstance(d, Seq):
        return Seq(flip(d.second), flip(d.first))
    if isinstance(d, Tensor):
        return Tensor(flip(d.left), flip(d.right))
    if d.is_spider:
        return Generator(d.kind, d.m, d.n, d.phase)
    if d.kind is GeneratorKind.CUP:
        return cap()
    if d.kind is GeneratorKind.CAP:
        return cup()
    if d.kind is GeneratorKind.TRIANGLE:
        # the transpose [[1,0],[1,1]] is the triangle conjugated by NOT
        return seq(x(1, 1, 1), triangle(), x(1, 1, 1))
    return d


def color_swap(d: Diagram) -> Diagram:
    """Exchange Z and X spiders; the triangle becomes its Hadamard conjugate."""
    def swap_colour(g: Generator) -> Diagram:
        if g.kind is GeneratorKind.Z:
            return Generator(GeneratorKind.X, g.n, g.m, g.phase)
        if g.kind is GeneratorKind.X:
            return Generator(GeneratorKind.Z, g.n, g.m, g.phase)
        if g.kind is GeneratorKind.TRIANGLE:
            return seq(h(), triangle(), h())
        return g

    return map_generators(d, swap_colour)


def size(d: Diagram) -> int:
    return sum(1 for _ in generators(d))
