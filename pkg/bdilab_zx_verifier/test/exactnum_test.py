import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from bdilab_zx_verifier.errors import ExactUnavailable
from bdilab_zx_verifier.exactnum import (
    Cyclotomic,
    ExactMatrix,
    common_order,
    cos_pi,
    cyclotomic_polynomial,
    euler_phi,
    exp_i_pi,
    rank,
    root_of_unity,
    sqrt_two,
)


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, (-1, 1)),
        (2, (1, 1)),
        (3, (1, 1, 1)),
        (4, (1, 0, 1)),
        (8, (1, 0, 0, 0, 1)),
        (12, (1, 0, -1, 0, 1)),
    ],
)
def test_cyclotomic_polynomial(n, expected):
    assert cyclotomic_polynomial(n) == expected


def test_euler_phi():
    assert [euler_phi(n) for n in (8, 24, 40, 240)] == [4, 8, 16, 64]


def test_order_cap():
    assert common_order(3, 5) == 120
    assert common_order(14) == 56
    with pytest.raises(ExactUnavailable):
        common_order(125)
    with pytest.raises(ExactUnavailable):
        root_of_unity(1, 121)


def test_seventh_roots_are_exact():
    zeta = root_of_unity(1, 7)
    assert zeta.order == 56
    assert zeta ** 7 == 1
    assert abs(zeta.to_complex() - cmath.exp(2j * math.pi / 7)) < 1e-12


class TestCyclotomic:
    def test_roots_sum_to_zero(self):
        assert (root_of_unity(1, 3) + root_of_unity(2, 3) + 1).is_zero()

    def test_sqrt_two(self):
        r = sqrt_two()
        assert r * r == 2
        assert not r.is_rational()
        assert abs(r.to_complex() - math.sqrt(2)) < 1e-12

    def test_mixed_orders(self):
        # i lives in order 8, e^{2 pi i / 3} in order 24
        i = exp_i_pi(Fraction(1, 2))
        w = root_of_unity(1, 3)
        product = i * w
        assert product.order == 24
        assert abs(product.to_complex() - 1j * cmath.exp(2j * math.pi / 3)) < 1e-12

    def test_inverse(self):
        x = root_of_unity(1, 8) + 2
        assert x * x.inverse() == 1
        assert (1 / x) * x == 1
        with pytest.raises(ZeroDivisionError):
            Cyclotomic.zero().inverse()

    def test_power_and_conjugate(self):
        z = root_of_unity(1, 5 * 8)
        assert z ** 40 == 1
        assert z * z.conjugate() == 1
        assert z ** -1 == z.conjugate()

    @pytest.mark.parametrize("angle", [Fraction(0), Fraction(1, 3), Fraction(1, 4), Fraction(2, 5), Fraction(7, 6)])
    def test_cos_pi(self, angle):
        assert abs(cos_pi(angle).to_complex() - math.cos(math.pi * angle)) < 1e-12

    def test_rational_value(self):
        half = Cyclotomic.from_rational(Fraction(1, 2))
        assert half.is_rational()
        assert half.rational_value() == Fraction(1, 2)
        assert half == Fraction(1, 2)
        with pytest.raises(ValueError):
            sqrt_two().rational_value()

    def test_str(self):
        assert str(root_of_unity(1, 8) / 2 + Fraction(1, 2)) == "1/2 + 1/2·ζ8"
        assert str(Cyclotomic.zero()) == "0"
        assert str(Cyclotomic.from_rational(4)) == "4"

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Cyclotomic.one().den = 2


class TestExactMatrix:
    def test_kron_matches_numpy(self):
        a = ExactMatrix.from_rows([[1, root_of_unity(1, 8)], [0, -1]])
        b = ExactMatrix.from_rows([[Fraction(1, 2), 2], [root_of_unity(1, 3), 1]])
        np.testing.assert_allclose(a.kron(b).to_numpy(), np.kron(a.to_numpy(), b.to_numpy()), atol=1e-12)

    def test_matmul_matches_numpy(self):
        a = ExactMatrix.from_rows([[1, root_of_unity(1, 8)], [0, -1], [2, 3]])
        b = ExactMatrix.from_rows([[Fraction(1, 2), 2, 0], [root_of_unity(1, 3), 1, 1]])
        np.testing.assert_allclose((a @ b).to_numpy(), a.to_numpy() @ b.to_numpy(), atol=1e-12)
        with pytest.raises(ValueError):
            a @ a

    def test_equality_across_orders(self):
        a = ExactMatrix.identity(2)
        b = ExactMatrix.identity(2, order=24)
        assert a == b
        assert a != ExactMatrix.zeros(2, 2)

    def test_rank(self):
        assert rank(ExactMatrix.identity(4)) == 4
        singular = ExactMatrix.from_rows([[1, 2], [2, 4]])
        assert singular.rank() == 1
        w = root_of_unity(1, 3)
        vandermonde = ExactMatrix.from_rows([[1, 1, 1], [1, w, w * w], [1, w * w, w]])
        assert vandermonde.rank() == 3

    def test_ragged_rows(self):
        with pytest.raises(ValueError):
            ExactMatrix.from_rows([[1, 2], [3]])

    def test_apply_on_wires_matches_kron(self):
        w = root_of_unity(1, 3)
        state = ExactMatrix.from_rows([[k, w * k] for k in range(8)])
        gate = ExactMatrix.from_rows([[sqrt_two() / 2, root_of_unity(3, 8)], [Fraction(1, 3), -1]])
        expected = ExactMatrix.identity(2).kron(gate).kron(ExactMatrix.identity(2)) @ state
        assert state.apply_on_wires(gate, 1) == expected
        widening = ExactMatrix.from_rows([[1, 0], [0, 0], [0, 0], [0, w]])
        assert state.apply_on_wires(widening, 2) == ExactMatrix.identity(4).kron(widening) @ state
        with pytest.raises(ValueError):
            state.apply_on_wires(gate, 3)

    def test_swap_wires(self):
        state = ExactMatrix.column(list(range(8)))
        swap = ExactMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        assert state.swap_wires(0) == swap.kron(ExactMatrix.identity(2)) @ state
        assert state.swap_wires(1) == ExactMatrix.identity(2).kron(swap) @ state

    def test_entries_and_rows(self):
        w = root_of_unity(1, 3)
        m = ExactMatrix.from_rows([[Fraction(1, 2), w], [0, -w * w]])
        assert m.order == 24
        assert m[0, 0] == Fraction(1, 2)
        assert m.row(1) == (Cyclotomic.zero(), -w * w)
        assert m.entries == (Fraction(1, 2), w, 0, -w * w)
        assert m.take_rows([1, 1, 0]) == ExactMatrix.from_rows([[0, -w * w], [0, -w * w], [Fraction(1, 2), w]])
        assert m.transpose() == ExactMatrix.from_rows([[Fraction(1, 2), 0], [w, -w * w]])
        assert ExactMatrix.hstack([m, ExactMatrix.column([1, 2])]).shape == (2, 3)

    def test_scale_and_lift(self):
        m = ExactMatrix.from_rows([[1, sqrt_two()], [Fraction(1, 4), 0]])
        scaled = m.scale(sqrt_two())
        assert scaled == ExactMatrix.from_rows([[sqrt_two(), 2], [sqrt_two() / 4, 0]])
        lifted = m.lift(40)
        assert lifted.order == 40 and lifted == m
        np.testing.assert_allclose(lifted.to_numpy(), m.to_numpy(), atol=1e-12)
        assert (m - m).is_zero() and not (m + m).is_zero()
