"""Truncated formal power series with exact rational coefficients.

A :class:`Series` is stored as a tuple of integer numerators over one common
positive denominator, kept in lowest terms.  Multiplication packs the
numerators into a single big integer (Kronecker substitution) so a product at
order 200 costs one long multiplication instead of 40k small ones.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence, Union

__all__ = [
    "Series",
    "SeriesError",
    "ZeroConstantTerm",
    "NonzeroInnerConstant",
    "NonSquareConstant",
    "NoConvergence",
    "OutOfRange",
    "from_coeffs",
    "zero",
    "one",
    "z",
    "monomial",
    "add",
    "sub",
    "mul",
    "scale",
    "div",
    "inverse",
    "derive",
    "shift",
    "compose",
    "sqrt",
    "solve_fixed_point",
    "coeff_at",
]

Scalar = Union[int, Fraction]


class SeriesError(ArithmeticError):
    pass


class ZeroConstantTerm(SeriesError, ZeroDivisionError):
    pass


class NonzeroInnerConstant(SeriesError, ValueError):
    pass


class NonSquareConstant(SeriesError, ValueError):
    pass


class NoConvergence(SeriesError):
    pass


class OutOfRange(SeriesError, IndexError):
    pass


# Below this operand length the schoolbook product beats packing.
_NAIVE_CUTOFF = 12


def _conv_naive(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _conv_nonneg(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Truncated product of two non-negative integer vectors via one big multiply."""
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0:
        return [0] * n
    if min(la, lb) <= _NAIVE_CUTOFF:
        return _conv_naive(a[:la], b[:lb], n)
    ma, mb = max(a[:la]), max(b[:lb])
    if ma == 0 or mb == 0:
        return [0] * n
    # each slot must hold an input value and the largest output coefficient
    bound = max(ma * mb * min(la, lb), ma, mb)
    width = (bound.bit_length() + 8) // 8  # bytes per slot
    pa = int.from_bytes(b"".join(x.to_bytes(width, "little") for x in a[:la]), "little")
    pb = int.from_bytes(b"".join(x.to_bytes(width, "little") for x in b[:lb]), "little")
    prod = pa * pb
    raw = prod.to_bytes(max((prod.bit_length() + 7) // 8, 1), "little")
    out = []
    for k in range(n):
        chunk = raw[k * width : (k + 1) * width]
        out.append(int.from_bytes(chunk, "little") if chunk else 0)
    return out


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two signed integer vectors."""
    a_pos = [x if x > 0 else 0 for x in a]
    a_neg = [-x if x < 0 else 0 for x in a]
    b_pos = [x if x > 0 else 0 for x in b]
    b_neg = [-x if x < 0 else 0 for x in b]
    has_an, has_bn = any(a_neg), any(b_neg)
    out = _conv_nonneg(a_pos, b_pos, n)
    parts = []
    if has_an and has_bn:
        parts.append((1, _conv_nonneg(a_neg, b_neg, n)))
    if has_bn:
        parts.append((-1, _conv_nonneg(a_pos, b_neg, n)))
    if has_an:
        parts.append((-1, _conv_nonneg(a_neg, b_pos, n)))
    for sign, vec in parts:
        if sign > 0:
            out = [x + y for x, y in zip(out, vec)]
        else:
            out = [x - y for x, y in zip(out, vec)]
    return out


def _as_fraction(r) -> Fraction:
    if isinstance(r, Fraction):
        return r
    if isinstance(r, (int, Rational)):
        return Fraction(r)
    if isinstance(r, str):
        return Fraction(r)
    raise TypeError(f"exact rational required, got {type(r).__name__}")


class Series:
    """Power series known modulo ``z**(order+1)``. Immutable."""

    __slots__ = ("_num", "_den", "_order")

    def __init__(self, num: Iterable[int], den: int = 1, order: int | None = None):
        num = list(num)
        if order is None:
            order = len(num) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = num[: order + 1] + [0] * (order + 1 - len(num))
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self._num = tuple(num)
        self._den = den
        self._order = order

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _from_fractions(cls, cs: Sequence[Fraction], order: int) -> "Series":
        den = math.lcm(*(c.denominator for c in cs)) if cs else 1
        return cls([c.numerator * (den // c.denominator) for c in cs], den, order)

    # -- basic accessors ------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    def is_integral(self) -> bool:
        return self._den == 1

    def integer_coeffs(self) -> list[int]:
        if self._den != 1:
            raise ValueError("series has non-integer coefficients")
        return list(self._num)

    def __getitem__(self, n: int) -> Fraction:
        return coeff_at(self, n)

    def __len__(self) -> int:
        return self._order + 1

    def constant(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    def truncate(self, order: int) -> "Series":
        if order > self._order:
            raise ValueError(f"cannot raise order {self._order} to {order} by truncation")
        if order == self._order:
            return self
        return Series(self._num[: order + 1], self._den, order)

    def pad(self, order: int) -> "Series":
        """Reinterpret at a higher order with unknown coefficients set to zero."""
        if order <= self._order:
            return self.truncate(order)
        return Series(self._num, self._den, order)

    # -- dunder arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series._from_fractions([_as_fraction(other)], self._order)

    def __add__(self, other):
        return add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, self._coerce(other))

    def __rsub__(self, other):
        return sub(self._coerce(other), self)

    def __neg__(self):
        return Series([-x for x in self._num], self._den, self._order)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return div(self, other)
        return scale(self, 1 / _as_fraction(other))

    def __rtruediv__(self, other):
        return div(self._coerce(other), self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = one(self._order)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def __call__(self, inner: "Series") -> "Series":
        return compose(self, inner)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self._order, self._num, self._den) == (other._order, other._num, other._den)

    def __hash__(self):
        return hash((self._order, self._num, self._den))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"Series({body} + O(z^{self._order + 1}))"


def _common(a: Series, b: Series) -> tuple[Series, Series, int]:
    n = min(a.order, b.order)
    return a.truncate(n), b.truncate(n), n


def from_coeffs(cs: Sequence, order: int) -> Series:
    """Series with the given leading coefficients, zero elsewhere, truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return Series._from_fractions([_as_fraction(c) for c in list(cs)[: order + 1]], order)


def zero(order: int) -> Series:
    return Series([0], 1, order)


def one(order: int) -> Series:
    return Series([1], 1, order)


def z(order: int) -> Series:
    return monomial(1, 1, order)


def monomial(c: Scalar, k: int, order: int) -> Series:
    c = _as_fraction(c)
    if k > order:
        return zero(order)
    return Series([0] * k + [c.numerator], c.denominator, order)


def add(a: Series, b: Series) -> Series:
    a, b, n = _common(a, b)
    den = math.lcm(a._den, b._den)
    fa, fb = den // a._den, den // b._den
    return Series([x * fa + y * fb for x, y in zip(a._num, b._num)], den, n)


def sub(a: Series, b: Series) -> Series:
    return add(a, -b)


def mul(a: Series, b: Series) -> Series:
    a, b, n = _common(a, b)
    return Series(_convolve(a._num, b._num, n + 1), a._den * b._den, n)


def scale(a: Series, r: Scalar) -> Series:
    r = _as_fraction(r)
    return Series([x * r.numerator for x in a._num], a._den * r.denominator, a.order)


def inverse(b: Series) -> Series:
    """Multiplicative inverse by Newton iteration ``g <- g (2 - b g)``."""
    b0 = b.constant()
    if b0 == 0:
        raise ZeroConstantTerm("cannot invert a series with zero constant term")
    g = Series._from_fractions([1 / b0], 0)
    m = 0
    while m < b.order:
        m = min(2 * m + 1, b.order)
        bm = b.truncate(m)
        g = g.pad(m)
        g = mul(g, 2 - mul(bm, g))
    return g


def div(a: Series, b: Series) -> Series:
    """Quotient ``q`` with ``q * b == a`` up to truncation."""
    a, b, _ = _common(a, b)
    if b._num[0] == 0:
        raise ZeroConstantTerm("divisor has zero constant term")
    return mul(a, inverse(b))


def derive(a: Series) -> Series:
    """Term-wise derivative; the result is known to order ``a.order - 1``."""
    if a.order == 0:
        # derivative of a constant known only to order 0 carries no information
        raise ValueError("cannot differentiate an order-0 series")
    return Series([k * x for k, x in enumerate(a._num)][1:], a._den, a.order - 1)


def shift(a: Series, k: int = 1) -> Series:
    """Multiply by ``z**k``; the product is known to order ``a.order + k``."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    return Series([0] * k + list(a._num), a._den, a.order + k)


def _monomial_inner(b: Series) -> tuple[Fraction, int] | None:
    nz = [k for k, x in enumerate(b._num) if x]
    if len(nz) == 1:
        k = nz[0]
        return Fraction(b._num[k], b._den), k
    return None


def compose(a: Series, b: Series) -> Series:
    """``a(b(z))``; ``b`` must have zero constant term."""
    a, b, n = _common(a, b)
    if b._num[0] != 0:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    mono = _monomial_inner(b)
    if mono is not None:
        c, k = mono
        out = [Fraction(0)] * (n + 1)
        for i, coef in enumerate(a.coeffs):
            if i * k > n:
                break
            out[i * k] = coef * c**i
        return Series._from_fractions(out, n)
    if not any(b._num):
        return Series._from_fractions([a.constant()], n)
    # Horner from the top; the partial sum for index i only matters to order n - i.
    coeffs = a.coeffs
    acc = Series._from_fractions([coeffs[n]], 0)
    for i in range(n - 1, -1, -1):
        m = n - i
        acc = mul(b.truncate(m), acc.pad(m)) + coeffs[i]
    return acc


def sqrt(a: Series) -> Series:
    """Principal square root; ``a(0)`` must be the square of a rational."""
    a0 = a.constant()
    if a0 <= 0:
        raise NonSquareConstant(f"constant term {a0} has no positive rational square root")
    rn, rd = math.isqrt(a0.numerator), math.isqrt(a0.denominator)
    if rn * rn != a0.numerator or rd * rd != a0.denominator:
        raise NonSquareConstant(f"constant term {a0} has no positive rational square root")
    s = Series._from_fractions([Fraction(rn, rd)], 0)
    m = 0
    while m < a.order:
        m = min(2 * m + 1, a.order)
        am = a.truncate(m)
        s = s.pad(m)
        s = scale(s + div(am, s), Fraction(1, 2))
    return s


def solve_fixed_point(F: Callable[[Series], Series], order: int) -> Series:
    """Unique ``X`` with ``X == F(X)`` up to ``z**order``.

    ``F`` must be contractive: coefficient ``k`` of ``F(X)`` may only depend on
    coefficients of ``X`` below ``k``.  Iteration ``k`` works at order ``k``, so
    each pass fixes one more coefficient without paying for the full length.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    x = zero(0)
    for k in range(order + 1):
        fx = F(x.pad(k))
        if fx.order < k:
            raise ValueError(f"F lowered the order from {k} to {fx.order}")
        x = fx.truncate(k)
    check = F(x)
    if check.order < order or check.truncate(order) != x:
        raise NoConvergence("fixed-point iteration did not stabilize; F is not contractive")
    return x


def coeff_at(a: Series, n: int) -> Fraction:
    if n < 0 or n > a.order:
        raise OutOfRange(f"coefficient {n} outside 0..{a.order}")
    return Fraction(a._num[n], a._den)
