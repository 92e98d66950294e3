"""
Projectors onto span{theta_r(a)} and the decision procedures for equations between diagrams
linear in their variables with pi/4 constants.
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from bdilab_zx_verifier.constants import FLOAT_TOLERANCE
from bdilab_zx_verifier.diagram import (
    Angle,
    Diagram,
    PhaseExpr,
    is_ground,
    seq,
    substitute,
    tensor,
    variables,
    wires,
)
from bdilab_zx_verifier.errors import (
    ArityMismatch,
    ExactUnavailable,
    InconsistentVerdict,
    NoSuchPort,
    NotSymmetric,
)
from bdilab_zx_verifier.exactnum import ExactMatrix
from bdilab_zx_verifier.gadgets import basis_effect, basis_state
from bdilab_zx_verifier.paramlin import (
    check_linear,
    extract_multi,
    multiplicity,
    theta,
)
from bdilab_zx_verifier.paramlin import _check_constants as check_constants
from bdilab_zx_verifier.semantics import Backend, Functor, Matrix, interp, interp_applied

logger = logging.getLogger(__name__)


class Method(Enum):
    grid = "grid"
    projector = "projector"
    both = "both"
    semantic = "semantic"

    def __str__(self):
        return self.value


class Side(Enum):
    input = "input"
    output = "output"

    def __str__(self):
        return self.value


@dataclass
class Verdict:
    """
    Outcome of a universally quantified comparison.

    ``witness`` maps each variable to its angle as a multiple of pi; ``discrepancy`` is the
    max-abs entry difference at the witness and ``entry`` its (row, col).
    """
    holds: bool
    method: Method
    witness: Optional[Dict[str, Fraction]] = None
    discrepancy: float = 0.0
    entry: Optional[Tuple[int, int]] = None
    approximate: bool = False
    mu: Dict[str, int] = field(default_factory=dict)
    premise: Optional["Verdict"] = None

    def __bool__(self):
        return self.holds

    def to_json(self) -> Dict:
        witness = None
        if self.witness is not None:
            witness = {name: float(angle) * np.pi for name, angle in self.witness.items()}
        return {
            "holds": self.holds,
            "method": str(self.method),
            "witness": witness,
            "witness_pi": None if self.witness is None else {k: str(v) for k, v in self.witness.items()},
            "discrepancy": self.discrepancy,
            "approximate": self.approximate,
            "mu": dict(self.mu),
        }


def _projector_exact(r: int) -> ExactMatrix:
    size = 2 ** r
    rows = [[0] * size for _ in range(size)]
    for y in range(size):
        weight = bin(y).count("1")
        # column 1^weight 0^(r - weight)
        column = ((1 << weight) - 1) << (r - weight)
        rows[y][column] = 1
    return ExactMatrix.from_rows(rows)


def r_matrix() -> Matrix:
    half = Fraction(1, 2)
    return Matrix(ExactMatrix.from_rows([
        [1, 0, 0, 0],
        [0, half, half, 0],
        [0, half, half, 0],
        [0, 0, 0, 1],
    ]))


@dataclass(frozen=True)
class ProjectorFamily:
    r: int
    matrix: Matrix

    def is_idempotent(self) -> bool:
        return (self.matrix @ self.matrix).equals(self.matrix)

    def rank(self) -> int:
        return self.matrix.rank()

    def kernel_columns(self) -> List[int]:
        data = self.matrix.data
        return [j for j in range(data.cols) if all(data[i, j].is_zero() for i in range(data.rows))]

    def fixes_theta(self, angle: Angle) -> bool:
        state = interp(theta(self.r, angle))
        return (self.matrix @ state).equals(state)


def projector(r: int) -> Matrix:
    """P_r for any r >= 0; P_0 = [1] and P_1 is the identity."""
    return Matrix(_projector_exact(r))


def p_matrix(r: int) -> ProjectorFamily:
    """The projector P_r, r >= 2, with M[y][x] = 1 iff x = 1^{|y|} 0^{r-|y|}."""
    if r < 2:
        raise ValueError("the projector family starts at r = 2")
    return ProjectorFamily(r, projector(r))


def vandermonde_basis(r: int) -> List[Matrix]:
    """The r + 1 states theta_r(j pi / r), j = 0..r."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return [interp(theta(r, Fraction(j, r))) for j in range(r + 1)]


def stack_columns(vectors: Sequence[Matrix]) -> Matrix:
    if all(v.exact for v in vectors):
        return Matrix(ExactMatrix.hstack([v.data for v in vectors]))
    return Matrix(np.hstack([v.to_numpy() for v in vectors]))


def symmetric_subspace_basis(r: int) -> List[Matrix]:
    """Indicator vectors of the Hamming-weight classes of r-bit strings; they span the symmetric states."""
    vectors = []
    for weight in range(r + 1):
        values = [1 if bin(i).count("1") == weight else 0 for i in range(2 ** r)]
        vectors.append(Matrix(ExactMatrix.column(values)))
    return vectors


def grid_angles(mu: int, k: int = 1) -> List[Fraction]:
    """mu + 1 equally spaced angles 2j/(mu+1), as multiples of pi, divided by the functor scale."""
    return [Fraction(2 * j, (mu + 1) * k) for j in range(mu + 1)]


def _check_pair(d1: Diagram, d2: Diagram):
    if d1.arity != d2.arity:
        raise ArityMismatch(d1.inputs + d1.outputs, d2.inputs + d2.outputs)
    check_linear(d1)
    check_linear(d2)
    names = sorted(variables(d1) | variables(d2))
    check_constants(d1, names)
    check_constants(d2, names)
    return names


def _evaluate_pair(d1: Diagram, d2: Diagram, functor: Functor) -> Tuple[Matrix, Matrix]:
    try:
        return functor(d1, Backend.exact), functor(d2, Backend.exact)
    except ExactUnavailable:
        return functor(d1, Backend.float), functor(d2, Backend.float)


def _grid(d1: Diagram, d2: Diagram, names: Sequence[str], functor: Functor) -> Verdict:
    mu = {name: multiplicity(d1, d2, name).mu for name in names}
    axes = [grid_angles(mu[name], functor.k) for name in names]
    approximate = False
    for point in itertools.product(*axes):
        assignment = dict(zip(names, point))
        left, right = _evaluate_pair(substitute(d1, assignment), substitute(d2, assignment), functor)
        exact = left.exact and right.exact
        approximate = approximate or not exact
        same = left.equals(right) if exact else left.equals(right, FLOAT_TOLERANCE)
        logger.debug("Grid point %s: %s", assignment, "equal" if same else "different")
        if not same:
            return Verdict(False, Method.grid, assignment, left.max_abs_diff(right),
                           left.argmax_diff(right), not exact, mu)
    return Verdict(True, Method.grid, approximate=approximate, mu=mu)


def symmetric_image(r: int) -> Matrix:
    """2^r x (r + 1) matrix whose columns span the image of P_r."""
    return stack_columns(symmetric_subspace_basis(r))


def _projector_check(d1: Diagram, d2: Diagram, names: Sequence[str]) -> bool:
    result = extract_multi(d1, d2, names)
    # [[d1']] P = [[d2']] P iff both sides agree on a spanning set of the image of P
    states = Matrix(ExactMatrix.identity(1))
    for r in result.r:
        states = states.kron(symmetric_image(r))
    left = interp_applied(result.d1_prime, states)
    right = interp_applied(result.d2_prime, states)
    return left.equals(right)


def decide_forall(d1: Diagram, d2: Diagram, method: Method = Method.grid,
                  functor: Functor = Functor()) -> Verdict:
    """
    Decide whether [[d1(a)]] = [[d2(a)]] for every assignment of the variables.

    Parameters
    ----------
    d1, d2
         diagrams of equal arity, linear in their variables, with constants in (pi/4)Z
    method
         grid evaluates both sides at mu_i + 1 equally spaced angles per variable; projector
         extracts the variables and compares [[d_i']] P_r exactly; both runs the two and
         raises InconsistentVerdict when they disagree
    functor
         interpretation used by the grid; the projector comparison is functor independent
         because the extracted diagrams only carry pi/4 constants

    Returns
    -------
         Verdict with a witness assignment when the equation fails
    """
    names = _check_pair(d1, d2)
    if method is Method.grid:
        verdict = _grid(d1, d2, names, functor)
    elif method in (Method.projector, Method.both):
        holds = _projector_check(d1, d2, names)
        grid = _grid(d1, d2, names, functor) if (method is Method.both or not holds) else None
        if grid is not None and method is Method.both and grid.holds != holds:
            raise InconsistentVerdict(
                f"grid says {grid.holds} but projector says {holds} for {len(names)} variables"
            )
        if holds:
            mu = grid.mu if grid is not None else {n: multiplicity(d1, d2, n).mu for n in names}
            verdict = Verdict(True, method, mu=mu, approximate=grid.approximate if grid else False)
        else:
            if grid.holds:
                raise InconsistentVerdict("projector comparison failed but no grid witness exists")
            verdict = Verdict(False, method, grid.witness, grid.discrepancy, grid.entry,
                              grid.approximate, grid.mu)
    else:
        raise ValueError(f"unsupported method {method}")
    logger.info("decide_forall(%s): %s", method, "holds" if verdict.holds else "fails")
    return verdict


def plug_basis(d: Diagram, port: int, j: int, side: Side = Side.input) -> Diagram:
    """Plug sqrt(2)|j> into an input port, or sqrt(2)<j| onto an output port."""
    if j not in (0, 1):
        raise ValueError("j must be 0 or 1")
    count = d.inputs if side is Side.input else d.outputs
    if not 0 <= port < count:
        raise NoSuchPort(f"{side} port {port} does not exist on a {d.inputs}->{d.outputs} diagram")
    if side is Side.input:
        return seq(tensor(wires(port), basis_state(j), wires(count - port - 1)), d)
    return seq(d, tensor(wires(port), basis_effect(j), wires(count - port - 1)))


def _plug_all(d: Diagram, bits: Sequence[int]) -> Diagram:
    n = d.inputs
    for j in bits[:n]:
        d = plug_basis(d, 0, j, Side.input)
    for j in bits[n:]:
        d = plug_basis(d, 0, j, Side.output)
    return d


def decide_by_basis(d1: Diagram, d2: Diagram, method: Method = Method.grid,
                    functor: Functor = Functor()) -> Verdict:
    """
    Plug every boundary port with both basis states and decide each scalar equation.
    """
    _check_pair(d1, d2)
    ports = d1.inputs + d1.outputs
    mu: Dict[str, int] = {}
    for bits in itertools.product((0, 1), repeat=ports):
        verdict = decide_forall(_plug_all(d1, bits), _plug_all(d2, bits), method, functor)
        for name, value in verdict.mu.items():
            mu[name] = max(mu.get(name, 0), value)
        if not verdict.holds:
            verdict.mu = mu
            return verdict
    return Verdict(True, method, mu=mu)


def permute_qubits(m: Matrix, tau: Sequence[int]) -> Matrix:
    """
    Q_tau on the row index: the output factor at position k is the input factor tau[k].
    """
    r = len(tau)
    if m.rows != 2 ** r:
        raise ArityMismatch(r, m.rows.bit_length() - 1)

    def source(index: int) -> int:
        bits = [(index >> (r - 1 - k)) & 1 for k in range(r)]
        original = [0] * r
        for k in range(r):
            original[tau[k]] = bits[k]
        return int("".join(map(str, original)), 2) if r else 0

    mapping = [source(i) for i in range(2 ** r)]
    if m.exact:
        return Matrix(m.data.take_rows(mapping))
    return Matrix(m.data[mapping, :])


def _state(d: Diagram) -> Matrix:
    if d.inputs != 0:
        raise ArityMismatch(0, d.inputs)
    return interp(d, Backend.exact, allow_fallback=True)


def is_symmetric(d: Diagram) -> bool:
    """True iff [[d]] is invariant under every adjacent transposition of its output wires."""
    state = _state(d)
    r = d.outputs
    for k in range(r - 1):
        tau = list(range(r))
        tau[k], tau[k + 1] = tau[k + 1], tau[k]
        if not permute_qubits(state, tau).equals(state, None if state.exact else FLOAT_TOLERANCE):
            return False
    return True


def _fresh_name(*diagrams: Diagram) -> str:
    taken = set()
    for d in diagrams:
        taken |= variables(d)
    name = "alpha0"
    while name in taken:
        name += "_"
    return name


def check_symmetric_substitution(d1: Diagram, d2: Diagram, d: Diagram,
                                 method: Method = Method.grid) -> Verdict:
    """
    Check an instance of substituting a symmetric state for theta_r.

    The premise compares theta_r(a) ; d_i for all a; the returned verdict compares d ; d_i and
    carries the premise verdict. A holding premise with a failing conclusion is logged as an error.
    """
    if d.outputs != d1.inputs:
        raise ArityMismatch(d1.inputs, d.outputs)
    if not is_symmetric(d):
        raise NotSymmetric("the substituted state is not invariant under wire permutations")
    r = d.outputs
    alpha = _fresh_name(d1, d2)
    premise = decide_forall(seq(theta(r, PhaseExpr.variable(alpha)), d1), seq(theta(r, PhaseExpr.variable(alpha)), d2), method)
    left, right = seq(d, d1), seq(d, d2)
    if is_ground(left) and is_ground(right):
        a = interp(left, Backend.exact, allow_fallback=True)
        b = interp(right, Backend.exact, allow_fallback=True)
        exact = a.exact and b.exact
        holds = a.equals(b) if exact else a.equals(b, FLOAT_TOLERANCE)
        conclusion = Verdict(holds, Method.semantic, discrepancy=a.max_abs_diff(b), approximate=not exact)
    else:
        conclusion = decide_forall(left, right, method)
    conclusion.premise = premise
    if premise.holds and not conclusion.holds:
        logger.error("Symmetric substitution broke an equation that holds on theta states")
    return conclusion
