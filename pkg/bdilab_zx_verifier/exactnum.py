"""
Exact arithmetic in the cyclotomic fields Q(zeta_N) and exact dense matrices over them.

An element of Q(zeta_N) is stored as an integer coefficient vector of length phi(N) together
with a single positive common denominator. The vector represents a polynomial in zeta_N reduced
modulo the N-th cyclotomic polynomial, so equality of values is equality of the reduced vectors
once both sides are lifted to a common order.
"""
from __future__ import annotations

import cmath
import functools
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from bdilab_zx_verifier.constants import BASE_ORDER, MAX_CYCLOTOMIC_ORDER
from bdilab_zx_verifier.errors import ExactUnavailable

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """
    Integer coefficients of Phi_n, constant term first.

    >>> cyclotomic_polynomial(8)
    (1, 0, 0, 0, 1)
    """
    if n <= 0:
        raise ValueError("The argument to cyclotomic_polynomial must be positive.")
    # Start with x^n - 1 and divide by the cyclotomic polynomials of the proper divisors of n.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in (d for d in range(1, n) if n % d == 0):
        poly = _divide_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _divide_monic(num: Sequence[int], den: Sequence[int]) -> List[int]:
    num = list(num)
    deg = len(den) - 1
    quotient = [0] * (len(num) - deg)
    for i in range(len(num) - 1 - deg, -1, -1):
        c = num[i + deg]
        quotient[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ValueError("polynomial division left a remainder")
    return quotient


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(poly: Sequence[int], order: int) -> Tuple[int, ...]:
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    p = list(poly)
    for i in range(len(p) - 1, deg - 1, -1):
        c = p[i]
        if c:
            base = i - deg
            for j in range(deg + 1):
                p[base + j] -= c * phi[j]
    p = p[:deg]
    return tuple(p + [0] * (deg - len(p)))


def check_order(order: int) -> int:
    if order % BASE_ORDER:
        raise ValueError(f"cyclotomic order {order} is not a multiple of {BASE_ORDER}")
    if order > MAX_CYCLOTOMIC_ORDER:
        raise ExactUnavailable(
            f"exact backend unavailable: order {order} exceeds the cap {MAX_CYCLOTOMIC_ORDER}"
        )
    return order


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def common_order(*orders: int) -> int:
    result = BASE_ORDER
    for order in orders:
        result = _lcm(result, order)
    return check_order(result)


class Cyclotomic(object):
    """
    An exact element of Q(zeta_N).

    Instances are immutable; arithmetic between elements of different orders happens in the
    field of the least common multiple of both orders.
    """

    __slots__ = ("order", "nums", "den")

    def __init__(self, order: int, nums: Sequence[int], den: int = 1):
        if len(nums) != euler_phi(order):
            raise ValueError(f"expected {euler_phi(order)} coefficients for order {order}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums, den = [-n for n in nums], -den
        g = functools.reduce(math.gcd, nums, den)
        if not any(nums):
            g = den
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "nums", tuple(n // g for n in nums))
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, key, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def _from_poly(cls, order: int, poly: Sequence[int], den: int = 1) -> "Cyclotomic":
        return cls(order, _reduce(poly, order), den)

    @classmethod
    def from_rational(cls, value: Rational, order: int = BASE_ORDER) -> "Cyclotomic":
        value = Fraction(value)
        nums = [0] * euler_phi(check_order(order))
        nums[0] = value.numerator
        return cls(order, nums, value.denominator)

    @classmethod
    def zero(cls, order: int = BASE_ORDER) -> "Cyclotomic":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = BASE_ORDER) -> "Cyclotomic":
        return cls.from_rational(1, order)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def lift(self, order: int) -> "Cyclotomic":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        check_order(order)
        step = order // self.order
        poly = [0] * (step * (len(self.nums) - 1) + 1)
        for k, c in enumerate(self.nums):
            poly[k * step] = c
        return Cyclotomic._from_poly(order, poly, self.den)

    def _align(self, other: "Cyclotomic") -> Tuple["Cyclotomic", "Cyclotomic"]:
        if self.order == other.order:
            return self, other
        order = common_order(self.order, other.order)
        return self.lift(order), other.lift(order)

    @staticmethod
    def _coerce(other) -> Optional["Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other)
        return None

    def __add__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = self._align(other)
        nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
        return Cyclotomic(a.order, nums, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [-n for n in self.nums], self.den)

    def __sub__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Cyclotomic.zero(common_order(self.order, other.order))
        a, b = self._align(other)
        if a.is_rational():
            return Cyclotomic(b.order, [a.nums[0] * n for n in b.nums], a.den * b.den)
        if b.is_rational():
            return Cyclotomic(a.order, [b.nums[0] * n for n in a.nums], a.den * b.den)
        poly = [0] * (2 * len(a.nums) - 1)
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(b.nums):
                    if y:
                        poly[i + j] += x * y
        return Cyclotomic._from_poly(a.order, poly, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.rational_value(), self.order)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _trim([Fraction(n, self.den) for n in self.nums])
        # invariant: s0 * a0 = r0 (mod Phi), s1 * a0 = r1 (mod Phi)
        r0, r1 = a, _trim(phi)
        s0, s1 = [Fraction(1)], [Fraction(0)]
        while len(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r0 is a nonzero constant since Phi is irreducible
        lead = r0[0]
        s = [c / lead for c in s0]
        den = functools.reduce(_lcm, (c.denominator for c in s), 1)
        nums = [int(c * den) for c in s]
        return Cyclotomic._from_poly(self.order, nums, den)

    def __truediv__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "Cyclotomic":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        poly = [0] * (self.order + 1)
        for k, c in enumerate(self.nums):
            poly[(self.order - k) % self.order] += c
        return Cyclotomic._from_poly(self.order, poly, self.den)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.order == other.order:
            return self.nums == other.nums and self.den == other.den
        a, b = self._align(other)
        return a.nums == b.nums and a.den == b.den

    __hash__ = None

    def to_complex(self) -> complex:
        total = 0j
        for k, c in enumerate(self.nums):
            if c:
                total += c * cmath.exp(2j * math.pi * k / self.order)
        return total / self.den

    def __complex__(self) -> complex:
        return self.to_complex()

    def __str__(self) -> str:
        """
        >>> str(root_of_unity(1, 8) / 2 + Fraction(1, 2))
        '1/2 + 1/2·ζ8'
        """
        parts = []
        for k, c in enumerate(self.nums):
            if not c:
                continue
            value = Fraction(c, self.den)
            sign = " + " if (value > 0 and parts) else " - " if (value < 0 and parts) else "" if value > 0 else "-"
            magnitude = abs(value)
            power = "" if k == 0 else f"ζ{self.order}" if k == 1 else f"ζ{self.order}^{k}"
            if not power:
                term = str(magnitude)
            elif magnitude == 1:
                term = power
            else:
                term = f"{magnitude}·{power}"
            parts.append(sign + term)
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Cyclotomic('{self}')"


def _trim(poly: List[Fraction]) -> List[Fraction]:
    end = len(poly)
    while end and poly[end - 1] == 0:
        end -= 1
    return poly[:end]


def _poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for (i, x), (j, y) in itertools.product(enumerate(a), enumerate(b)):
        out[i + j] += x * y
    return out


def _poly_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    return [x - y for x, y in itertools.zip_longest(a, b, fillvalue=Fraction(0))]


def _poly_divmod(n: List[Fraction], d: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    r = list(n)
    q = [Fraction(0)] * max(len(n) - len(d) + 1, 1)
    while len(r) >= len(d) and r:
        t = r[-1] / d[-1]
        shift = len(r) - len(d)
        q[shift] = t
        for j, c in enumerate(d):
            r[shift + j] -= t * c
        r = _trim(r)
    return _trim(q), r


def root_of_unity(p: int, q: int) -> Cyclotomic:
    """
    The root of unity e^{2 pi i p / q}, in the field of order lcm(8, q).

    >>> root_of_unity(1, 3) + root_of_unity(2, 3) + 1
    Cyclotomic('0')
    """
    if q < 1:
        raise ValueError("q must be positive")
    order = common_order(q)
    k = (p * (order // q)) % order
    poly = [0] * (k + 1)
    poly[k] = 1
    return Cyclotomic._from_poly(order, poly)


def exp_i_pi(angle: Fraction) -> Cyclotomic:
    """e^{i pi angle} for a rational angle."""
    angle = Fraction(angle)
    return root_of_unity(angle.numerator, 2 * angle.denominator)


def cos_pi(angle: Fraction) -> Cyclotomic:
    """cos(pi angle) for a rational angle."""
    z = exp_i_pi(angle)
    return (z + z.conjugate()) / 2


def sqrt_two() -> Cyclotomic:
    """zeta_8 + zeta_8^{-1}."""
    zeta = root_of_unity(1, 8)
    return zeta + zeta.conjugate()


Entry = Union[Cyclotomic, Rational]


@lru_cache(maxsize=None)
def _powers(order: int) -> np.ndarray:
    """Row k holds zeta_order^k in the power basis, for 0 <= k < order."""
    poly = cyclotomic_polynomial(order)
    deg = len(poly) - 1
    current = [1] + [0] * (deg - 1)
    rows = []
    for _ in range(order):
        rows.append(current)
        top = current[-1]
        # x^deg = -(poly[0] + ... + poly[deg-1] x^(deg-1))
        current = [0] + current[:-1]
        if top:
            current = [c - top * p for c, p in zip(current, poly)]
    return np.array(rows, dtype=object)


@lru_cache(maxsize=None)
def _product_table(order: int) -> np.ndarray:
    """T[s, t] = zeta^(s+t) in the power basis, so a*b = sum_st a_s b_t T[s, t]."""
    phi = euler_phi(order)
    return _powers(order)[np.add.outer(np.arange(phi), np.arange(phi))]


@lru_cache(maxsize=None)
def _lift_table(source: int, target: int) -> np.ndarray:
    return _powers(target)[np.arange(euler_phi(source)) * (target // source)]


def _normalized(nums: np.ndarray, den: int) -> Tuple[np.ndarray, int]:
    g = den
    for n in nums.flat:
        if g == 1:
            break
        if n:
            g = math.gcd(g, n)
    if g == den:
        # also covers the zero matrix
        return nums // g if g != 1 else nums, 1
    if g == 1:
        return nums, den
    return nums // g, den // g


class ExactMatrix(object):
    """
    Dense matrix over one cyclotomic field.

    Entries share a positive denominator ``den``; ``nums[i, j]`` is the integer power-basis vector
    of entry (i, j) times ``den``. The gcd of ``den`` and every coefficient is 1, so equal matrices
    of the same order have equal ``nums`` and ``den``.
    """

    __slots__ = ("nums", "den", "order", "_terms")

    def __init__(self, rows: int, cols: int, entries: Iterable[Entry], order: Optional[int] = None):
        entries = [e if isinstance(e, Cyclotomic) else Cyclotomic.from_rational(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        order = common_order(order or BASE_ORDER, *(e.order for e in entries))
        entries = [e.lift(order) for e in entries]
        den = functools.reduce(_lcm, (e.den for e in entries), 1)
        nums = np.zeros((rows, cols, euler_phi(order)), dtype=object)
        for index, e in enumerate(entries):
            if not e.is_zero():
                nums[index // cols, index % cols, :] = [n * (den // e.den) for n in e.nums]
        self._assign(nums, den, order)

    def _assign(self, nums: np.ndarray, den: int, order: int):
        self.nums, self.den = _normalized(nums, den)
        self.order = order
        self._terms = None

    @classmethod
    def _wrap(cls, nums: np.ndarray, den: int, order: int) -> "ExactMatrix":
        matrix = cls.__new__(cls)
        matrix._assign(nums, den, order)
        return matrix

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]], order: Optional[int] = None) -> "ExactMatrix":
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, [e for row in rows for e in row], order)

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int = BASE_ORDER) -> "ExactMatrix":
        check_order(order)
        return cls._wrap(np.zeros((rows, cols, euler_phi(order)), dtype=object), 1, order)

    @classmethod
    def identity(cls, n: int, order: int = BASE_ORDER) -> "ExactMatrix":
        matrix = cls.zeros(n, n, order)
        for i in range(n):
            matrix.nums[i, i, 0] = 1
        return matrix

    @classmethod
    def column(cls, values: Sequence[Entry], order: Optional[int] = None) -> "ExactMatrix":
        return cls(len(values), 1, values, order)

    @classmethod
    def hstack(cls, columns: Sequence["ExactMatrix"]) -> "ExactMatrix":
        rows = columns[0].rows
        if any(c.rows != rows for c in columns):
            raise ValueError("columns of different heights")
        order = common_order(*(c.order for c in columns))
        lifted = [c.lift(order) for c in columns]
        den = functools.reduce(_lcm, (c.den for c in lifted), 1)
        nums = np.concatenate([c.nums * (den // c.den) for c in lifted], axis=1)
        return cls._wrap(nums, den, order)

    @property
    def rows(self) -> int:
        return self.nums.shape[0]

    @property
    def cols(self) -> int:
        return self.nums.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> Tuple[Cyclotomic, ...]:
        return tuple(self[i, j] for i in range(self.rows) for j in range(self.cols))

    def __getitem__(self, index: Tuple[int, int]) -> Cyclotomic:
        i, j = index
        return Cyclotomic(self.order, list(self.nums[i, j]), self.den)

    def row(self, i: int) -> Tuple[Cyclotomic, ...]:
        return tuple(self[i, j] for j in range(self.cols))

    def take_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._wrap(self.nums[list(indices)], self.den, self.order)

    def lift(self, order: int) -> "ExactMatrix":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        check_order(order)
        nums = np.tensordot(self.nums, _lift_table(self.order, order), axes=([2], [0]))
        return ExactMatrix._wrap(nums, self.den, order)

    def _align(self, other: "ExactMatrix") -> Tuple["ExactMatrix", "ExactMatrix"]:
        if self.order == other.order:
            return self, other
        order = common_order(self.order, other.order)
        return self.lift(order), other.lift(order)

    def _kernel(self) -> np.ndarray:
        # K[i, j, t, u]: coefficient u of entry (i, j) times zeta^t
        return np.tensordot(self.nums, _product_table(self.order), axes=([2], [0]))

    def _nonzero_terms(self) -> List[Tuple[int, int, Optional[int], Optional[np.ndarray]]]:
        """
        (i, j, numerator, multiplier) per nonzero entry: the numerator when the entry is rational,
        otherwise the phi x phi matrix of multiplication by the entry.
        """
        if self._terms is None:
            table = _product_table(self.order)
            terms = []
            for i in range(self.rows):
                for j in range(self.cols):
                    coeffs = self.nums[i, j]
                    if not any(coeffs):
                        continue
                    if any(coeffs[1:]):
                        terms.append((i, j, None, np.tensordot(table, coeffs, axes=([1], [0]))))
                    else:
                        terms.append((i, j, coeffs[0], None))
            self._terms = terms
        return self._terms

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self._align(other)
        nums = np.tensordot(a._kernel(), b.nums, axes=([1, 2], [0, 2]))
        return ExactMatrix._wrap(nums.transpose(0, 2, 1), a.den * b.den, a.order)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        a, b = self._align(other)
        nums = np.tensordot(a._kernel(), b.nums, axes=([2], [2]))
        nums = nums.transpose(0, 3, 1, 4, 2).reshape(a.rows * b.rows, a.cols * b.cols, -1)
        return ExactMatrix._wrap(nums, a.den * b.den, a.order)

    def apply_on_wires(self, gate: "ExactMatrix", offset: int) -> "ExactMatrix":
        """
        ``(I_{2^offset} (x) gate (x) I) @ self``, computed without forming the Kronecker product.

        ``self`` has 2^w rows; ``gate`` acts on the wires offset .. offset + log2(gate.cols) - 1.
        """
        a, g = self._align(gate)
        high = 2 ** offset
        low = a.rows // (high * g.cols)
        if high * g.cols * low != a.rows:
            raise ValueError(f"a {g.shape} gate does not fit {a.rows} rows at wire {offset}")
        state = a.nums.reshape(high, g.cols, low * a.cols, -1)
        out = np.zeros((high, g.rows, low * a.cols, state.shape[3]), dtype=object)
        for i, j, numerator, multiplier in g._nonzero_terms():
            if multiplier is None:
                out[:, i] += state[:, j] * numerator
            else:
                out[:, i] += np.tensordot(state[:, j], multiplier, axes=([2], [0]))
        out = out.reshape(high * g.rows * low, a.cols, -1)
        return ExactMatrix._wrap(out, a.den * g.den, a.order)

    def swap_wires(self, offset: int) -> "ExactMatrix":
        """Exchange wires ``offset`` and ``offset + 1`` of the row index."""
        high = 2 ** offset
        state = self.nums.reshape(high, 2, 2, -1, self.nums.shape[2])
        nums = state.transpose(0, 2, 1, 3, 4).reshape(self.nums.shape)
        return ExactMatrix._wrap(nums, self.den, self.order)

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        a, b = self._align(other)
        den = _lcm(a.den, b.den)
        return ExactMatrix._wrap(a.nums * (den // a.den) + b.nums * (sign * (den // b.den)), den, a.order)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._combine(other, -1)

    def scale(self, factor: Entry) -> "ExactMatrix":
        factor = factor if isinstance(factor, Cyclotomic) else Cyclotomic.from_rational(factor)
        order = common_order(self.order, factor.order)
        a, f = self.lift(order), factor.lift(order)
        multiplier = np.tensordot(_product_table(order), np.array(f.nums, dtype=object), axes=([1], [0]))
        return ExactMatrix._wrap(np.tensordot(a.nums, multiplier, axes=([2], [0])), a.den * f.den, order)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.nums.transpose(1, 0, 2).copy(), self.den, self.order)

    def is_zero(self) -> bool:
        return not any(n for n in self.nums.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._align(other)
        return a.den == b.den and bool(np.all(a.nums == b.nums))

    __hash__ = None

    def to_numpy(self) -> np.ndarray:
        roots = np.exp(2j * np.pi * np.arange(self.nums.shape[2]) / self.order)
        values = (self.nums / self.den).astype(complex)
        return np.tensordot(values, roots, axes=([2], [0])).reshape(self.rows, self.cols)

    def rank(self) -> int:
        return rank(self)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, order={self.order})"


def rank(m: ExactMatrix) -> int:
    """
    Exact rank by fraction-free Gaussian elimination.

    >>> rank(ExactMatrix.identity(4))
    4
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    r = 0
    for col in range(m.cols):
        pivot = next((i for i in range(r, m.rows) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, m.rows):
            f = rows[i][col]
            if f.is_zero():
                continue
            rows[i] = [p * x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m.rows:
            break
    return r
