"""The Catalan series algebra for ordered trees.

``C`` counts ordered trees by edges, ``B`` counts trees with a distinguished
vertex and ``L = B/C`` counts trees with a distinguished leaf.  Multiplying a
root-anchored series by ``L`` moves the anchor to an arbitrary vertex
(:func:`uplift`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import powerseries as ps
from .powerseries import Series

__all__ = [
    "CatalanContext",
    "IdentityFailure",
    "build_context",
    "binom",
    "catalan",
    "central_binomial",
    "coeff_C_power",
    "coeff_BC_power",
    "uplift",
    "check_identities",
]


class IdentityFailure(AssertionError):
    """A series identity that must hold by construction did not."""


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.comb(2 * n, n) // (n + 1)


def central_binomial(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.comb(2 * n, n)


def coeff_C_power(n: int, s: int) -> int:
    """``[z^n] C^s = s/(2n+s) * binom(2n+s, n)``."""
    if n < 0 or s < 1:
        raise ValueError("need n >= 0 and s >= 1")
    q, r = divmod(s * binom(2 * n + s, n), 2 * n + s)
    assert r == 0
    return q


def coeff_BC_power(n: int, s: int) -> int:
    """``[z^n] B C^s = binom(2n+s, n)``."""
    if n < 0 or s < 1:
        raise ValueError("need n >= 0 and s >= 1")
    return binom(2 * n + s, n)


@dataclass(frozen=True)
class CatalanContext:
    order: int
    C: Series
    B: Series
    L: Series

    @property
    def z(self) -> Series:
        return ps.z(self.order)

    @property
    def one(self) -> Series:
        return ps.one(self.order)


def _require(name: str, lhs: Series, rhs: Series) -> None:
    n = min(lhs.order, rhs.order)
    if lhs.truncate(n) != rhs.truncate(n):
        raise IdentityFailure(f"{name} fails up to z^{n}")


def check_identities(ctx: CatalanContext) -> list[str]:
    """Assert the rewriting rules used throughout; returns the names checked."""
    C, B, L, N = ctx.C, ctx.B, ctx.L, ctx.order
    one = ps.one(N)
    zC = ps.shift(C).truncate(N)
    checked = []

    def req(name, lhs, rhs):
        _require(name, lhs, rhs)
        checked.append(name)

    req("C = 1 + zC^2", C, one + zC * C)
    req("C = 1/(1 - zC)", C, one / (one - zC))
    req("B = 1/(1 - 2zC)", B, one / (one - 2 * zC))
    req("B = 1 + 2zBC", B, one + 2 * zC * B)
    req("B = C/(1 - zC^2)", B, C / (one - zC * C))
    req("(B - 1)/2 = zBC", (B - 1) / 2, zC * B)
    req("L = B/C", L * C, B)
    if N >= 1:
        req("C' = BC^2", ps.derive(C), B * C * C)
        req("B' = 2B^3", ps.derive(B), 2 * B * B * B)
    return checked


def build_context(order: int) -> CatalanContext:
    """``C``, ``B`` and ``L`` to ``order``, with the core identities verified."""
    if order < 0:
        raise ValueError("order must be non-negative")
    zz = ps.z(order)
    C = ps.solve_fixed_point(lambda X: 1 + zz.truncate(X.order) * X * X, order)
    one = ps.one(order)
    B = one / (one - 2 * ps.shift(C).truncate(order))
    L = B / C
    ctx = CatalanContext(order, C, B, L)
    check_identities(ctx)
    return ctx


def uplift(root_series: Series, ctx: CatalanContext) -> Series:
    """Move a root-anchored count to an arbitrary vertex: multiply by ``L``."""
    return ctx.L * root_series
