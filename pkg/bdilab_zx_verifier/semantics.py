"""
The standard interpretation of ZX diagrams as matrices and the angle-scaling interpretations.

Matrix indices put the leftmost wire in the most significant bit. ``Seq(a, b)`` is interpreted
as ``[[b]] @ [[a]]`` and ``Tensor(a, b)`` as ``kron([[a]], [[b]])``.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, List, Optional, Tuple, Union

import numpy as np

from bdilab_zx_verifier.constants import BASE_ORDER, DEFAULT_SCALE, FLOAT_TOLERANCE
from bdilab_zx_verifier.diagram import (
    Diagram,
    GeneratorKind,
    PhaseExpr,
    Seq,
    Tensor,
    is_ground,
    map_phases,
    phases,
)
from bdilab_zx_verifier.errors import (
    ArityMismatch,
    ExactUnavailable,
    NonGroundDiagram,
    UnsupportedScale,
)
from bdilab_zx_verifier.exactnum import (
    Cyclotomic,
    ExactMatrix,
    common_order,
    exp_i_pi,
    rank,
    sqrt_two,
)

logger = logging.getLogger(__name__)


class Backend(Enum):
    exact = "exact"
    float = "float"

    def __str__(self):
        return self.value


class Matrix(object):
    """
    A dense matrix held either as an ExactMatrix or as a complex numpy array.
    """

    def __init__(self, data: Union[ExactMatrix, np.ndarray]):
        if isinstance(data, ExactMatrix):
            self.backend = Backend.exact
        else:
            data = np.asarray(data, dtype=complex)
            if data.ndim != 2:
                raise ValueError("matrices are two dimensional")
            self.backend = Backend.float
        self.data = data

    @property
    def exact(self) -> bool:
        return self.backend is Backend.exact

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self.data.shape)

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def to_numpy(self) -> np.ndarray:
        return self.data.to_numpy() if self.exact else self.data

    def to_float(self) -> "Matrix":
        return self if not self.exact else Matrix(self.data.to_numpy())

    def _coherent(self, other: "Matrix") -> Tuple["Matrix", "Matrix"]:
        if self.exact and other.exact:
            return self, other
        return self.to_float(), other.to_float()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        a, b = self._coherent(other)
        return Matrix(a.data @ b.data)

    def kron(self, other: "Matrix") -> "Matrix":
        a, b = self._coherent(other)
        if a.exact:
            return Matrix(a.data.kron(b.data))
        return Matrix(np.kron(a.data, b.data))

    def apply(self, gate: "Matrix", offset: int) -> "Matrix":
        """``(I (x) gate (x) I) @ self`` where ``gate`` acts on the wires starting at ``offset``."""
        a, g = self._coherent(gate)
        high = 2 ** offset
        low = a.rows // (high * g.cols)
        if high * g.cols * low != a.rows:
            raise ValueError(f"a {g.shape} gate does not fit {a.rows} rows at wire {offset}")
        if a.exact:
            return Matrix(a.data.apply_on_wires(g.data, offset))
        state = a.data.reshape(high, g.cols, low * a.cols)
        out = np.tensordot(g.data, state, axes=([1], [1]))
        return Matrix(out.transpose(1, 0, 2).reshape(high * g.rows * low, a.cols))

    def swap_wires(self, offset: int) -> "Matrix":
        if self.exact:
            return Matrix(self.data.swap_wires(offset))
        state = self.data.reshape(2 ** offset, 2, 2, -1)
        return Matrix(state.transpose(0, 2, 1, 3).reshape(self.shape))

    def transpose(self) -> "Matrix":
        return Matrix(self.data.transpose() if self.exact else self.data.T)

    def scale(self, factor: Union[Cyclotomic, complex]) -> "Matrix":
        if self.exact and isinstance(factor, Cyclotomic):
            return Matrix(self.data.scale(factor))
        return Matrix(self.to_numpy() * complex(factor))

    def entry(self, i: int, j: int) -> Union[Cyclotomic, complex]:
        return self.data[i, j] if self.exact else complex(self.data[i, j])

    def scalar(self) -> Union[Cyclotomic, complex]:
        if self.shape != (1, 1):
            raise ValueError(f"{self.shape} matrix is not a scalar")
        return self.entry(0, 0)

    def max_abs_diff(self, other: "Matrix") -> float:
        if self.shape != other.shape:
            raise ArityMismatch(self.shape, other.shape)
        return float(np.max(np.abs(self.to_numpy() - other.to_numpy()), initial=0.0))

    def argmax_diff(self, other: "Matrix") -> Tuple[int, int]:
        diff = np.abs(self.to_numpy() - other.to_numpy())
        return tuple(int(i) for i in np.unravel_index(np.argmax(diff), diff.shape))

    def equals(self, other: "Matrix", tol: Optional[float] = None) -> bool:
        """Exact equality when both sides are exact and no tolerance is given, else max-abs <= tol."""
        if self.shape != other.shape:
            return False
        if tol is None and self.exact and other.exact:
            return self.data == other.data
        return self.max_abs_diff(other) <= (FLOAT_TOLERANCE if tol is None else tol)

    def is_zero(self, tol: Optional[float] = None) -> bool:
        if tol is None and self.exact:
            return self.data.is_zero()
        return float(np.max(np.abs(self.to_numpy()), initial=0.0)) <= (FLOAT_TOLERANCE if tol is None else tol)

    def rank(self) -> int:
        if self.exact:
            return rank(self.data)
        return int(np.linalg.matrix_rank(self.data, tol=FLOAT_TOLERANCE))

    def format_rows(self) -> List[List[str]]:
        """Row-major entry strings: symbolic for exact matrices, ``a+bi`` for floats."""
        if self.exact:
            return [[str(self.data[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        return [[_format_complex(self.data[i, j]) for j in range(self.cols)] for i in range(self.rows)]

    def format(self) -> str:
        cells = self.format_rows()
        width = max((len(c) for row in cells for c in row), default=0)
        return "\n".join("[" + ", ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, backend={self.backend})"


def _format_complex(value: complex) -> str:
    re, im = float(np.real(value)), float(np.imag(value))
    re = 0.0 if abs(re) < 1e-15 else re
    im = 0.0 if abs(im) < 1e-15 else im
    if im == 0:
        return f"{re:.12g}"
    return f"{re:.12g}{'+' if im >= 0 else '-'}{abs(im):.12g}i"


def exact_order(d: Diagram) -> int:
    """
    The cyclotomic order needed to interpret ``d`` exactly.

    Raises ExactUnavailable for irrational phases or when the order exceeds the cap.
    """
    orders = [BASE_ORDER]
    for phase in phases(d):
        if phase.const_irr != 0:
            raise ExactUnavailable(f"phase {phase} has an irrational part")
        orders.append(2 * phase.const_den)
    return common_order(*orders)


@lru_cache(maxsize=4096)
def _exact_generator(kind: GeneratorKind, n: int, m: int, const: Fraction, order: int) -> ExactMatrix:
    if kind is GeneratorKind.Z:
        corner = exp_i_pi(const)
        if n + m == 0:
            return ExactMatrix(1, 1, [corner + 1], order)
        rows, cols = 2 ** m, 2 ** n
        entries = [Cyclotomic.zero(order)] * (rows * cols)
        entries[0] = Cyclotomic.one(order)
        entries[-1] = entries[-1] + corner
        return ExactMatrix(rows, cols, entries, order)
    if kind is GeneratorKind.X:
        core = _exact_generator(GeneratorKind.Z, n, m, const, order)
        return _exact_hadamards(m, order) @ core @ _exact_hadamards(n, order)
    if kind is GeneratorKind.H:
        s = sqrt_two() / 2
        return ExactMatrix.from_rows([[s, s], [s, -s]], order)
    if kind is GeneratorKind.TRIANGLE:
        return ExactMatrix.from_rows([[1, 1], [0, 1]], order)
    return ExactMatrix.from_rows(_structural(kind), order)


@lru_cache(maxsize=64)
def _exact_hadamards(k: int, order: int) -> ExactMatrix:
    result = ExactMatrix.identity(1, order)
    hadamard = _exact_generator(GeneratorKind.H, 1, 1, Fraction(0), order)
    for _ in range(k):
        result = result.kron(hadamard)
    return result


def _structural(kind: GeneratorKind) -> List[List[int]]:
    if kind is GeneratorKind.ID:
        return [[1, 0], [0, 1]]
    if kind is GeneratorKind.SWAP:
        return [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    if kind is GeneratorKind.CUP:
        return [[1, 0, 0, 1]]
    if kind is GeneratorKind.CAP:
        return [[1], [0], [0], [1]]
    if kind is GeneratorKind.EMPTY:
        return [[1]]
    raise ValueError(f"{kind} is not a structural generator")


HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


@lru_cache(maxsize=4096)
def _float_generator(kind: GeneratorKind, n: int, m: int, radians: float) -> np.ndarray:
    if kind is GeneratorKind.Z:
        corner = np.exp(1j * radians)
        if n + m == 0:
            return np.array([[1 + corner]])
        out = np.zeros((2 ** m, 2 ** n), dtype=complex)
        out[0, 0] = 1
        out[-1, -1] += corner
        return out
    if kind is GeneratorKind.X:
        core = _float_generator(GeneratorKind.Z, n, m, radians)
        return _float_hadamards(m) @ core @ _float_hadamards(n)
    if kind is GeneratorKind.H:
        return HADAMARD
    if kind is GeneratorKind.TRIANGLE:
        return np.array([[1, 1], [0, 1]], dtype=complex)
    return np.array(_structural(kind), dtype=complex)


def _float_hadamards(k: int) -> np.ndarray:
    result = np.eye(1, dtype=complex)
    for _ in range(k):
        result = np.kron(result, HADAMARD)
    return result


# generators whose action on the running state needs no arithmetic
_PASS_THROUGH = ("ID", "EMPTY")


def evaluate(d, leaf: Callable[[Any], Matrix], start: Matrix, seq_type: type = Seq,
             tensor_type: type = Tensor) -> Matrix:
    """
    ``[[d]] @ start``, applying one generator at a time to the wires it acts on.

    ``start`` has a row per basis state of the inputs of ``d``; ``leaf`` gives the matrix of a
    generator. ZW diagrams pass their own composite node types.
    """
    state = start
    pending = [(d, 0)]
    while pending:
        node, offset = pending.pop()
        if isinstance(node, seq_type):
            pending.append((node.second, offset))
            pending.append((node.first, offset))
        elif isinstance(node, tensor_type):
            # the left factor runs first, so the right one starts after its outputs
            pending.append((node.right, offset + node.left.outputs))
            pending.append((node.left, offset))
        elif node.kind.name in _PASS_THROUGH:
            continue
        elif node.kind.name == "SWAP":
            state = state.swap_wires(offset)
        else:
            state = state.apply(leaf(node), offset)
    return state


def interp(d: Diagram, backend: Backend = Backend.exact, allow_fallback: bool = False) -> Matrix:
    """
    The standard interpretation of a ground diagram.

    Parameters
    ----------
    d
         A ground diagram
    backend
         exact cyclotomic arithmetic or double precision
    allow_fallback
         when the exact backend cannot represent a phase, return a float matrix instead of
         raising ExactUnavailable

    Returns
    -------
         Matrix of shape 2^outputs x 2^inputs
    """
    return interp_applied(d, None, backend, allow_fallback)


def interp_applied(d: Diagram, states: Optional[Matrix] = None, backend: Backend = Backend.exact,
                   allow_fallback: bool = False) -> Matrix:
    """``[[d]] @ states`` without forming ``[[d]]``; ``states`` defaults to the identity."""
    if not is_ground(d):
        raise NonGroundDiagram("diagram has free variables and cannot be interpreted")
    if states is not None and states.rows != 2 ** d.inputs:
        raise ArityMismatch(d.inputs, states.rows.bit_length() - 1)
    if backend is Backend.exact:
        try:
            order = exact_order(d)
        except ExactUnavailable as e:
            if not allow_fallback:
                raise
            logger.warning("Falling back to float backend: %s", e)
        else:
            start = Matrix(ExactMatrix.identity(2 ** d.inputs, order)) if states is None else states
            return evaluate(d, lambda g: Matrix(_exact_generator(g.kind, g.n, g.m, g.phase.const, order)), start)
    start = Matrix(np.eye(2 ** d.inputs, dtype=complex)) if states is None else states.to_float()
    return evaluate(d, lambda g: Matrix(_float_generator(g.kind, g.n, g.m, g.phase.to_radians())), start)


def check_scale(k: int) -> int:
    if k % 8 != 1:
        raise UnsupportedScale(f"scale {k} does not fix multiples of pi/4 (k must be 1 mod 8)")
    return k


def scale_phases(d: Diagram, k: int) -> Diagram:
    return map_phases(d, lambda p: p * k)


def interp_scaled(d: Diagram, k: int = DEFAULT_SCALE, backend: Backend = Backend.exact,
                  allow_fallback: bool = False) -> Matrix:
    """Interpretation with every angle multiplied by k, k = 1 mod 8."""
    check_scale(k)
    return interp(scale_phases(d, k), backend, allow_fallback)


@dataclass(frozen=True)
class Functor:
    """An interpretation functor: k = 1 is the standard one, other k scale every angle."""
    k: int = 1

    def __post_init__(self):
        check_scale(self.k)

    @classmethod
    def standard(cls) -> "Functor":
        return cls(1)

    @classmethod
    def parse(cls, text: str) -> "Functor":
        """Parse ``std`` or ``scaled:K``."""
        text = text.strip()
        if text == "std":
            return cls(1)
        if text.startswith("scaled"):
            _, _, k = text.partition(":")
            try:
                return cls(int(k) if k else DEFAULT_SCALE)
            except ValueError:
                raise UnsupportedScale(f"invalid scale in functor '{text}'")
        raise UnsupportedScale(f"unknown functor '{text}'")

    @property
    def is_standard(self) -> bool:
        return self.k == 1

    def __call__(self, d: Diagram, backend: Backend = Backend.exact, allow_fallback: bool = False) -> Matrix:
        if self.is_standard:
            return interp(d, backend, allow_fallback)
        return interp_scaled(d, self.k, backend, allow_fallback)

    def __str__(self):
        return "std" if self.is_standard else f"scaled:{self.k}"


def semantic_eq(a: Diagram, b: Diagram, tol: Optional[float] = None) -> bool:
    """
    Compare two ground diagrams: exactly when ``tol`` is None and both are exactly
    representable, otherwise by max-abs difference (``tol`` defaults to 1e-9).
    """
    if a.arity != b.arity:
        raise ArityMismatch(a.inputs + a.outputs, b.inputs + b.outputs)
    backend = Backend.exact if tol is None else Backend.float
    left = interp(a, backend, allow_fallback=True)
    right = interp(b, backend, allow_fallback=True)
    return left.equals(right, tol)


def phase_value(phase: PhaseExpr) -> Union[Cyclotomic, complex]:
    """e^{i phase} exactly when possible."""
    if phase.const_irr == 0 and phase.is_ground():
        try:
            return exp_i_pi(phase.const)
        except ExactUnavailable:
            pass
    return complex(np.exp(1j * phase.to_radians()))
