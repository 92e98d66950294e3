from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
import pytest

from bdilab_zx_verifier.diagram import (
    Diagram,
    Generator,
    PhaseExpr,
    h,
    identity,
    map_generators,
    seq,
    swap,
    tensor,
    triangle,
    x,
    z,
)

SEED = 20230518


class DiagramFactory:
    """
    Random diagrams built from layers of width-preserving blocks, so every diagram of a given
    width composes with every other one.
    """

    def __init__(self, rng: np.random.Generator):
        self.rng = rng

    def pi4(self) -> Fraction:
        return Fraction(int(self.rng.integers(8)), 4)

    def rational(self) -> Fraction:
        return Fraction(int(self.rng.integers(12)), 6)

    def linear_phase(self, names: Sequence[str], max_coeff: int = 1) -> PhaseExpr:
        """A pi/4 constant plus, with probability 1/2, a nonzero multiple of one variable."""
        phase = PhaseExpr.pi(self.pi4())
        if names and self.rng.random() < 0.5:
            name = names[int(self.rng.integers(len(names)))]
            coeff = int(self.rng.integers(1, max_coeff + 1)) * int(self.rng.choice([-1, 1]))
            phase = phase + PhaseExpr.variable(name, coeff)
        return phase

    def _block(self, width: int, phase: Callable[[], PhaseExpr]) -> Diagram:
        if width >= 2 and self.rng.random() < 0.3:
            choice = int(self.rng.integers(3))
            if choice == 0:
                return swap()
            if choice == 1:
                return z(2, 2, phase())
            return seq(tensor(z(1, 2, phase()), identity()), tensor(identity(), x(2, 1, phase())))
        choice = int(self.rng.integers(5))
        if choice == 0:
            return z(1, 1, phase())
        if choice == 1:
            return x(1, 1, phase())
        if choice == 2:
            return h()
        if choice == 3:
            return triangle()
        return seq(z(1, 2, phase()), x(2, 1, phase()))

    def _layer(self, width: int, phase: Callable[[], PhaseExpr]) -> Diagram:
        blocks = []
        remaining = width
        while remaining:
            block = self._block(remaining, phase)
            blocks.append(block)
            remaining -= block.inputs
        return tensor(*blocks)

    def layered(self, width: int, depth: int, phase: Callable[[], PhaseExpr]) -> Diagram:
        return seq(*(self._layer(width, phase) for _ in range(depth)))

    def ground(self, width: int = 2, depth: int = 3, rational: bool = False) -> Diagram:
        angle = self.rational if rational else self.pi4
        return self.layered(width, depth, lambda: PhaseExpr.pi(angle()))

    def linear(self, names: Sequence[str], width: int = 1, depth: int = 2, max_coeff: int = 1) -> Diagram:
        return self.layered(width, depth, lambda: self.linear_phase(names, max_coeff))

    def linear_state(self, names: Sequence[str], width: int = 3, depth: int = 1) -> Diagram:
        """A 0 -> width diagram with linear phases in its preparation and in its layers."""
        prepare = tensor(*(z(0, 1, self.linear_phase(names)) for _ in range(width)))
        return seq(prepare, self.linear(names, width, depth))

    def state(self, width: int = 2, depth: int = 2) -> Diagram:
        """A 0 -> width diagram."""
        prepare = tensor(*(z(0, 1, self.pi4()) for _ in range(width)))
        return seq(prepare, self.ground(width, depth))

    def fused_copy(self, d: Diagram) -> Diagram:
        """A diagram equal to ``d``: every 1 -> 1 spider is split into two with the same total phase."""
        def split(g: Generator) -> Diagram:
            if g.is_spider and g.n == 1 and g.m == 1:
                first = PhaseExpr.pi(self.pi4())
                return seq(Generator(g.kind, 1, 1, first), Generator(g.kind, 1, 1, g.phase - first))
            return g

        return map_generators(d, split)

    def perturbed(self, d: Diagram, names: Sequence[str]) -> Diagram:
        """``d`` with its first spider phase shifted, by pi/4 or by a variable."""
        done = []

        def shift(g: Generator) -> Diagram:
            if g.is_spider and not done:
                done.append(g)
                delta = PhaseExpr.variable(names[0]) if names and self.rng.random() < 0.5 else PhaseExpr.pi(Fraction(1, 4))
                return Generator(g.kind, g.n, g.m, g.phase + delta)
            return g

        return map_generators(d, shift)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


@pytest.fixture
def factory(rng) -> DiagramFactory:
    return DiagramFactory(rng)
