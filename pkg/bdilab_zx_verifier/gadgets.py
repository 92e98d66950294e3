"""
Small ground ZX gadgets with known interpretations: scalars, basis states, phase gadgets and the
pi/4-fragment expansion of the triangle.
"""
from fractions import Fraction
from typing import Collection

from bdilab_zx_verifier.diagram import (
    Angle,
    Diagram,
    PhaseExpr,
    identity,
    permutation,
    repeat,
    seq,
    tensor,
    wires,
    x,
    z,
)

QUARTER = Fraction(1, 4)


def two() -> Diagram:
    """Scalar 2."""
    return z(0, 0)


def sqrt_two() -> Diagram:
    """Scalar sqrt(2): the effect sqrt(2)<0| applied to |0> + |1>."""
    return seq(z(0, 1), x(1, 0))


def half() -> Diagram:
    """
    Scalar 1/2, exactly, with pi/4 phases only.

    X[2,0](a) after Z[0,2](b) is (1 + e^{ia})(1 + e^{ib}) / 2, and the two factors below are
    1 + 1/sqrt(2) and 1 - 1/sqrt(2).
    """
    return tensor(
        seq(z(0, 2, -QUARTER), x(2, 0, QUARTER)),
        seq(z(0, 2, -3 * QUARTER), x(2, 0, 3 * QUARTER)),
    )


def inv_sqrt_two() -> Diagram:
    return tensor(half(), sqrt_two())


def unit() -> Diagram:
    """Scalar 1 built from a value-2 and a value-1/2 gadget."""
    return tensor(two(), half())


def sqrt_two_power(k: int) -> Diagram:
    """Scalar sqrt(2)^k for any integer k."""
    factor = sqrt_two() if k >= 0 else inv_sqrt_two()
    return repeat(factor, abs(k))


def phase_scalar(phase: Angle) -> Diagram:
    """Scalar sqrt(2)·e^{i phase}."""
    return seq(z(0, 1, phase), x(1, 0, 1))


def basis_state(j: int) -> Diagram:
    """sqrt(2)|j>."""
    return x(0, 1, j)


def basis_effect(j: int) -> Diagram:
    """sqrt(2)<j|."""
    return x(1, 0, j)


def not_gate() -> Diagram:
    return x(1, 1, 1)


def cnot() -> Diagram:
    """CNOT with the control on the left wire."""
    return tensor(seq(tensor(z(1, 2), identity()), tensor(identity(), x(2, 1))), sqrt_two())


def phase_gadget(width: int, support: Collection[int], phase: Angle) -> Diagram:
    """
    The diagonal map |b> -> e^{i phase (xor of b_i for i in support)} |b> on ``width`` wires.

    Each supported wire is copied by a Z spider, the copies are permuted past the remaining wires
    and merged by an X spider whose parity output carries the phase.
    """
    support = sorted(set(support))
    if not support:
        return wires(width)
    labels = []
    copy_layer = []
    for i in range(width):
        labels.append(("wire", i))
        if i in support:
            labels.append(("copy", i))
            copy_layer.append(z(1, 2))
        else:
            copy_layer.append(identity())
    target = [("wire", i) for i in range(width)] + [("copy", i) for i in support]
    order = [labels.index(label) for label in target]
    parity = seq(x(len(support), 1), z(1, 0, phase))
    return tensor(
        seq(
            tensor(*copy_layer),
            permutation(order),
            tensor(wires(width), parity),
        ),
        sqrt_two_power(len(support) - 1),
    )


def triangle_expansion() -> Diagram:
    """
    A 1 -> 1 pi/4-fragment diagram with interpretation [[1, 1], [0, 1]].

    With z the negated input, a fresh output y and an auxiliary c, the triangle is
    1/2 sum_{y,c} (-1)^{z y c} |y><x|. The cubic phase pi·zyc is the pi/4 phase polynomial
    z + y + c - z^y - z^c - y^c + z^y^c.
    """
    minus, plus = -QUARTER, QUARTER
    prepare = tensor(not_gate(), z(0, 1), z(0, 1))
    diagonal = seq(
        tensor(z(1, 1, plus), z(1, 1, plus), z(1, 1, plus)),
        phase_gadget(3, (0, 1), minus),
        phase_gadget(3, (0, 2), minus),
        phase_gadget(3, (1, 2), minus),
        phase_gadget(3, (0, 1, 2), plus),
    )
    close = tensor(z(1, 0), identity(), z(1, 0))
    return tensor(seq(prepare, diagonal, close), half())


def constant_phase(phase: PhaseExpr) -> Diagram:
    """Scalar e^{i phase}."""
    return tensor(phase_scalar(phase), inv_sqrt_two())
