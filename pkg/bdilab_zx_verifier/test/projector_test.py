import itertools
from fractions import Fraction

import numpy as np
import pytest

from bdilab_zx_verifier import gadgets
from bdilab_zx_verifier.diagram import (
    PhaseExpr,
    h,
    identity,
    permutation,
    repeat,
    seq,
    substitute,
    swap,
    tensor,
    x,
    z,
)
from bdilab_zx_verifier.errors import (
    ArityMismatch,
    ConstantsOutsidePi4,
    NonLinearPhase,
    NoSuchPort,
    NotSymmetric,
)
from bdilab_zx_verifier.exactnum import ExactMatrix
from bdilab_zx_verifier.paramlin import multiplicity, theta
from bdilab_zx_verifier.projector import (
    Method,
    Side,
    check_symmetric_substitution,
    decide_by_basis,
    decide_forall,
    grid_angles,
    is_symmetric,
    p_matrix,
    permute_qubits,
    plug_basis,
    projector,
    r_matrix,
    stack_columns,
    symmetric_subspace_basis,
    vandermonde_basis,
)
from bdilab_zx_verifier.semantics import Backend, Functor, Matrix, interp

a = PhaseExpr.variable("a")
b = PhaseExpr.variable("b")


def agreement_instance(factory, names, kind):
    """
    d1 and a fused copy or perturbation d2 of it, with at most five boundary wires, every
    multiplicity at most 4 and at most eight extracted wires in total.

    kind 0 is 1 -> 1, kind 1 is 2 -> 2 and kinds 2 to 4 are states on 3 to 5 wires.
    """
    while True:
        if kind == 0:
            d1 = factory.linear(names, width=1, depth=2, max_coeff=2)
        elif kind == 1:
            d1 = factory.linear(names, width=2, depth=1)
        else:
            d1 = factory.linear_state(names, width=kind + 1)
        d2 = factory.fused_copy(d1) if factory.rng.random() < 0.5 else factory.perturbed(d1, names)
        mu = [multiplicity(d1, d2, name).mu for name in names]
        if max(mu) <= 4 and sum(mu) <= 8:
            return d1, d2


def permuted_pair(factory, r):
    """A body and the same body behind a random wire permutation; equal on symmetric inputs."""
    body = factory.linear(["a"], width=r, depth=1)
    order = [int(k) for k in factory.rng.permutation(r)]
    return seq(permutation(order), body), body


def symmetric_state(factory, r):
    rng = factory.rng
    choice = int(rng.integers(5))
    if choice == 0:
        return repeat(seq(z(0, 1, factory.pi4()), factory.ground(width=1, depth=2)), r)
    if choice == 1:
        return theta(r, Fraction(int(rng.integers(12)), int(rng.choice([3, 4]))))
    if choice == 2:
        return z(0, r, factory.pi4())
    if choice == 3:
        return x(0, r, factory.pi4())
    return seq(z(0, r, factory.pi4()), repeat(factory.ground(width=1, depth=2), r))


class TestProjectorFamily:
    def test_r_matrix(self):
        half = Fraction(1, 2)
        expected = ExactMatrix.from_rows([[1, 0, 0, 0], [0, half, half, 0], [0, half, half, 0], [0, 0, 0, 1]])
        assert r_matrix().data == expected
        assert (r_matrix() @ r_matrix()).equals(r_matrix())

    def test_p2(self):
        expected = ExactMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        assert p_matrix(2).matrix.data == expected

    @pytest.mark.parametrize("r", range(2, 9))
    def test_family(self, r):
        family = p_matrix(r)
        assert family.is_idempotent()
        assert family.rank() == r + 1
        assert family.fixes_theta(Fraction(2, 7))
        contains_01 = [j for j in range(2 ** r) if "01" in format(j, f"0{r}b")]
        assert family.kernel_columns() == contains_01

    def test_family_starts_at_two(self):
        with pytest.raises(ValueError):
            p_matrix(1)
        assert projector(0).data == ExactMatrix.identity(1)
        assert projector(1).data == ExactMatrix.identity(2)

    @pytest.mark.parametrize("r", range(1, 9))
    def test_vandermonde_rank(self, r):
        assert stack_columns(vandermonde_basis(r)).rank() == r + 1

    @pytest.mark.parametrize("r", range(1, 6))
    def test_symmetric_span(self, r):
        basis = stack_columns(symmetric_subspace_basis(r))
        assert basis.rank() == r + 1
        # theta states lie in the symmetric span
        extended = stack_columns(symmetric_subspace_basis(r) + [interp(theta(r, Fraction(1, 3)))])
        assert extended.rank() == r + 1

    def test_grid_angles(self):
        assert grid_angles(2) == [Fraction(0), Fraction(2, 3), Fraction(4, 3)]
        assert grid_angles(1, 9) == [Fraction(0), Fraction(1, 9)]


class TestDecideForall:
    @pytest.mark.parametrize("method", [Method.grid, Method.projector, Method.both])
    def test_spider_fusion(self, method):
        d1 = seq(z(1, 1, a), z(1, 1, b))
        d2 = z(1, 1, a + b)
        verdict = decide_forall(d1, d2, method)
        assert verdict.holds
        assert verdict.witness is None

    @pytest.mark.parametrize("method", [Method.grid, Method.projector, Method.both])
    def test_sign_trap(self, method):
        # equal at a = 0 and a = pi, but the grid of mu = 2 has three points
        verdict = decide_forall(z(1, 1, a), z(1, 1, -a), method)
        assert not verdict.holds
        assert verdict.mu == {"a": 2}
        assert verdict.witness["a"] not in (0, 1)
        assert verdict.discrepancy > 1e-6

    def test_colour_change(self):
        d1 = seq(h(), z(1, 1, a * 2), h())
        d2 = seq(x(1, 1, a), x(1, 1, a))
        assert decide_forall(d1, d2, Method.both).holds

    def test_pi_copy(self):
        # X(pi) commutes past a green phase by negating it, up to the scalar e^{ia}
        d1 = seq(x(1, 1, 1), z(1, 1, a))
        d2 = seq(z(1, 1, -a), x(1, 1, 1))
        assert not decide_forall(d1, d2).holds
        assert decide_forall(d1, tensor(d2, gadgets.constant_phase(a)), Method.both).holds

    def test_rejects_non_linear(self):
        with pytest.raises(NonLinearPhase):
            decide_forall(z(1, 1, PhaseExpr.variable("a", Fraction(1, 2))), z(1, 1))

    def test_rejects_constants(self):
        with pytest.raises(ConstantsOutsidePi4):
            decide_forall(z(1, 1, a + Fraction(1, 3)), z(1, 1, a))

    def test_rejects_arity(self):
        with pytest.raises(ArityMismatch):
            decide_forall(z(1, 1, a), z(1, 2, a))

    def test_ground_equation(self):
        assert decide_forall(seq(h(), h()), identity()).holds
        assert decide_forall(seq(h(), h()), identity(), Method.projector).holds

    def test_scaled_functor_grid(self):
        verdict = decide_forall(seq(z(1, 1, a), z(1, 1, a)), z(1, 1, a * 2), functor=Functor(9))
        assert verdict.holds
        assert not decide_forall(z(1, 1, a), z(1, 1, -a), functor=Functor(9)).holds

    def test_json(self):
        verdict = decide_forall(z(1, 1, a), z(1, 1, -a))
        data = verdict.to_json()
        assert data["holds"] is False
        assert data["method"] == "grid"
        assert data["mu"] == {"a": 2}
        assert data["witness_pi"]["a"] == str(verdict.witness["a"])
        assert data["witness"]["a"] == pytest.approx(float(verdict.witness["a"]) * np.pi)

    def test_methods_agree_on_random_instances(self, factory):
        rng = factory.rng
        outcomes = set()
        for i in range(200):
            names = ["a", "b", "c"][: 1 + i % 3]
            kind = i % 5
            d1, d2 = agreement_instance(factory, names, kind)
            # Method.both raises InconsistentVerdict when grid and projector disagree
            verdict = decide_forall(d1, d2, Method.both)
            outcomes.add(verdict.holds)
            if kind < 4 and i % 4 == 0:
                assert decide_by_basis(d1, d2, Method.projector).holds == verdict.holds
            if verdict.holds:
                for _ in range(50):
                    assignment = {n: float(v) for n, v in zip(names, rng.uniform(0, 2 * np.pi, len(names)))}
                    left = interp(substitute(d1, assignment), Backend.float)
                    right = interp(substitute(d2, assignment), Backend.float)
                    assert left.equals(right, 1e-9)
            else:
                left = interp(substitute(d1, verdict.witness), Backend.exact, allow_fallback=True)
                right = interp(substitute(d2, verdict.witness), Backend.exact, allow_fallback=True)
                assert left.max_abs_diff(right) > 1e-6
        assert outcomes == {True, False}

    def test_fused_copies_hold(self, factory):
        for _ in range(10):
            d1 = factory.linear(["a"], width=2, depth=2)
            assert decide_forall(d1, factory.fused_copy(d1)).holds


class TestBasisPlugging:
    def test_plug_basis(self):
        d = plug_basis(h(), 0, 1)
        assert d.arity == (0, 1)
        m = interp(d).to_numpy()
        # sqrt(2) H|1> = |0> - |1>
        np.testing.assert_allclose(m[:, 0], [1, -1], atol=1e-12)
        assert plug_basis(h(), 0, 0, Side.output).arity == (1, 0)

    def test_no_such_port(self):
        with pytest.raises(NoSuchPort):
            plug_basis(h(), 1, 0)
        with pytest.raises(NoSuchPort):
            plug_basis(z(0, 1), 0, 0, Side.input)

    def test_agrees_with_forall(self):
        assert decide_by_basis(seq(z(1, 1, a), z(1, 1, b)), z(1, 1, a + b)).holds
        verdict = decide_by_basis(z(1, 1, a), z(1, 1, -a))
        assert not verdict.holds
        assert verdict.mu["a"] >= 1


class TestSymmetry:
    def test_permute_qubits(self):
        state = Matrix(ExactMatrix.column([0, 1, 0, 0]))  # |01>
        swapped = permute_qubits(state, [1, 0])
        assert swapped.data == ExactMatrix.column([0, 0, 1, 0])
        with pytest.raises(ArityMismatch):
            permute_qubits(state, [0, 1, 2])

    def test_is_symmetric(self):
        assert is_symmetric(theta(3, Fraction(1, 5)))
        assert is_symmetric(repeat(seq(z(0, 1), h()), 3))
        assert is_symmetric(z(0, 3, Fraction(1, 4)))
        assert not is_symmetric(tensor(z(0, 1), x(0, 1, 1)))
        with pytest.raises(ArityMismatch):
            is_symmetric(h())

    def test_rejects_random_asymmetric_states(self, factory):
        for _ in range(20):
            first = z(0, 1, factory.pi4())
            second = x(0, 1, factory.pi4())
            state = seq(tensor(first, second), swap()) if factory.rng.random() < 0.5 else tensor(first, second)
            parallel = stack_columns([interp(first), interp(second)]).rank() < 2
            assert is_symmetric(state) == parallel

    def test_substitution(self, factory):
        rng = factory.rng
        for _ in range(50):
            r = int(rng.integers(2, 4))
            d1, d2 = permuted_pair(factory, r)
            verdict = check_symmetric_substitution(d1, d2, symmetric_state(factory, r))
            assert verdict.premise.holds
            assert verdict.holds
            assert verdict.discrepancy <= 1e-9

    def test_substitution_rejects_product_of_distinct_states(self, factory):
        rng = factory.rng
        for _ in range(50):
            r = int(rng.integers(2, 4))
            d1, d2 = permuted_pair(factory, r)
            while True:
                singles = [seq(z(0, 1, factory.pi4()), factory.ground(width=1, depth=2)) for _ in range(r)]
                columns = np.hstack([interp(s).to_numpy() for s in singles])
                if np.linalg.norm(columns, axis=0).min() > 1e-6 and np.linalg.matrix_rank(columns, tol=1e-9) >= 2:
                    break
            with pytest.raises(NotSymmetric):
                check_symmetric_substitution(d1, d2, tensor(*singles))

    def test_substitution_with_theta(self):
        d1 = seq(x(2, 1), z(1, 1, Fraction(1, 4)))
        d2 = seq(swap(), x(2, 1), z(1, 1, Fraction(1, 4)))
        verdict = check_symmetric_substitution(d1, d2, theta(2, Fraction(1, 3)))
        assert verdict.premise.holds and verdict.holds

    def test_substitution_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            check_symmetric_substitution(swap(), tensor(identity(), identity()), tensor(z(0, 1), x(0, 1, 1)))


def test_grid_points_cover_every_assignment():
    points = list(itertools.product(grid_angles(1), grid_angles(2)))
    assert len(points) == 6
