"""Mutation models on ordered trees and complete binary trees.

Each model is exposed two ways that never share code: as three series built
from the Catalan algebra (:func:`series_tables`) and as closed-form
coefficients (:func:`coeff_trees`, :func:`coeff_vertices`,
:func:`coeff_new_type`).  Tests reconcile the two.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import powerseries as ps
from .powerseries import Series
from .treealg import CatalanContext, binom, catalan, uplift

__all__ = [
    "MutationModel",
    "ModelTables",
    "DivisionByZeroCount",
    "ORDERED_MODELS",
    "series_tables",
    "coeff_trees",
    "coeff_vertices",
    "coeff_new_type",
    "proportion",
    "asymptotic_form",
    "derived_asymptotic_form",
    "ent_solve_T0",
    "ent_solve_VN_tilde",
    "ent_routes",
    "ent_radical_new_type",
    "binary_printed_new_type",
]


class MutationModel(str, enum.Enum):
    SHORT_LIVED = "short_lived"
    TOGGLE = "toggle"
    TOGGLE_H1 = "toggle_h1"
    ENT = "ent"
    RIGHT_BRANCH = "right_branch"
    RIGHT_PATH = "right_path"
    RIGHT_PATH_STAR = "right_path_star"
    BINARY_COMPLETE = "binary_complete"

    def __str__(self) -> str:
        return self.value


M = MutationModel
ORDERED_MODELS = tuple(m for m in M if m is not M.BINARY_COMPLETE)


class DivisionByZeroCount(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class ModelTables:
    model: MutationModel
    order: int
    trees: Series
    vertices: Series
    new_type: Series

    def row(self, n: int) -> tuple[int, int, int]:
        """Integer coefficients at size ``n`` (internal vertices for binary trees)."""
        k = 2 * n if self.model is M.BINARY_COMPLETE else n
        return tuple(int(s[k]) for s in (self.trees, self.vertices, self.new_type))


# -- ENT functional equations -------------------------------------------------


def ent_solve_T0(ctx: CatalanContext) -> Series:
    """Root-anchored ENT trees: ``T0 = 1 / (1 - z(C + T0))``."""
    C, z = ctx.C, ctx.z

    def F(X: Series) -> Series:
        k = X.order
        return ps.inverse(1 - z.truncate(k) * (C.truncate(k) + X))

    return ps.solve_fixed_point(F, ctx.order)


def ent_solve_VN_tilde(ctx: CatalanContext, T0: Series | None = None) -> Series:
    """Root-anchored ENT trees with one marked new-type vertex.

    Solves ``V = T0 + z V / (1 - z(C + T0))^2`` as a linear equation.
    """
    if T0 is None:
        T0 = ent_solve_T0(ctx)
    denom = 1 - ctx.z * (ctx.C + T0)
    return T0 / (1 - ctx.z / (denom * denom))


def _ent_radical_trees(ctx: CatalanContext) -> Series:
    # T0 = (1 - sqrt(5 - 4C)) / (2zC); the numerator has no constant term,
    # so dividing by z drops the order by one.  Work one order higher.
    N = ctx.order
    C = _catalan_series(N + 1)
    num = 1 - ps.sqrt(5 - 4 * C)
    T0 = _unshift(num) / (2 * C.truncate(N))
    return uplift(T0, ctx)


def _unshift(a: Series) -> Series:
    if a[0] != 0:
        raise ValueError("series is not divisible by z")
    return ps.from_coeffs(a.coeffs[1:], a.order - 1)


@lru_cache(maxsize=None)
def _catalan_series(order: int) -> Series:
    return ps.solve_fixed_point(lambda X: 1 + ps.shift(X * X).truncate(X.order), order)


@lru_cache(maxsize=8)
def ent_radical_new_type(order: int) -> Series:
    """``sqrt((2 - 5z + 2 sqrt(1 - 4z)) / ((4 - 25z)(1 - 4z)))``, built from scratch."""
    z = ps.z(order)
    inner = ps.sqrt(1 - 4 * z)
    return ps.sqrt((2 - 5 * z + 2 * inner) / ((4 - 25 * z) * (1 - 4 * z)))


def ent_routes(ctx: CatalanContext) -> dict[str, Series]:
    """Every route to the ENT tree and new-type series, keyed by name."""
    C, B, z, N = ctx.C, ctx.B, ctx.z, ctx.order
    T0 = ent_solve_T0(ctx)
    VN_tilde = ent_solve_VN_tilde(ctx, T0)
    denom = 1 - z * (C + T0)
    zC2 = ps.shift(C * C).truncate(N)
    return {
        "T0_functional": T0,
        "T0_product": C * ps.compose(C, zC2),
        "trees_functional": uplift(T0, ctx),
        "trees_product": B * ps.compose(C, zC2),
        "trees_radical": _ent_radical_trees(ctx),
        "new_type_functional": uplift(VN_tilde, ctx),
        "new_type_product": ctx.L * T0 * ps.inverse(1 - z / (denom * denom)),
        "new_type_radical": ent_radical_new_type(N),
    }


# -- series path ----------------------------------------------------------------


def _vertices_of(trees: Series) -> Series:
    return ps.derive(ps.shift(trees))


def series_tables(model: MutationModel, ctx: CatalanContext) -> ModelTables:
    """Trees, vertices and new-type series for ``model`` built from ``ctx``.

    For BINARY_COMPLETE the series are in ``z`` with even support and
    ``ctx.order`` is the largest power of ``z`` kept.
    """
    model = MutationModel(model)
    C, B, L, z, N = ctx.C, ctx.B, ctx.L, ctx.z, ctx.order
    one = ctx.one
    zC = z * C

    if model is M.SHORT_LIVED:
        trees = uplift(C * z, ctx)
        vertices = _vertices_of(trees)
        new_type = 2 * trees
    elif model is M.TOGGLE:
        trees = uplift(C * C, ctx)
        vertices = B * B * B
        new_type = uplift(C * ps.derive(ps.shift(C)), ctx)
    elif model is M.TOGGLE_H1:
        C4 = C * C * C * C
        trees = z * C4
        vertices = 2 * z * C4 * B
        new_type = z * C * C * C * B
    elif model is M.ENT:
        T0 = ent_solve_T0(ctx)
        trees = uplift(T0, ctx)
        vertices = _vertices_of(trees)
        new_type = uplift(ent_solve_VN_tilde(ctx, T0), ctx)
    elif model is M.RIGHT_BRANCH:
        trees = uplift(C * zC, ctx)
        vertices = (B - 1) / 2 + z * B * B * B
        new_type = uplift(C * ps.derive(ps.shift(C, 2)), ctx)
    elif model is M.RIGHT_PATH:
        trees = uplift(one / (one - zC), ctx)
        vertices = B + 2 * z * B * B * B
        new_type = uplift(ps.inverse((one - zC) * (one - zC)), ctx)
    elif model is M.RIGHT_PATH_STAR:
        trees = uplift(zC / (one - zC), ctx)
        vertices = (B - 1) / 2 + z * B * B * B
        new_type = uplift(ps.inverse((one - zC) * (one - zC)) - 1, ctx)
    elif model is M.BINARY_COMPLETE:
        z2 = ps.monomial(1, 2, N)
        Ct = ps.compose(C, z2)
        Bt = ps.compose(B, z2)
        trees = Ct * Bt
        # (z T)' = BC (B + 4z^2 / (1 - 4z^2))
        vertices = Bt * Ct * (Bt + 4 * z2 / (1 - 4 * z2))
        new_type = Bt * Bt * Ct  # uplift by the binary leaf series B~
    else:  # pragma: no cover
        raise ValueError(f"unknown model {model}")

    trees, vertices, new_type = (s.truncate(N) for s in (trees, vertices, new_type))
    return ModelTables(model, N, trees, vertices, new_type)


# -- closed forms ---------------------------------------------------------------


def _ent_trees(n: int) -> int:
    return sum(catalan(k) * binom(2 * n, n - k) for k in range(n + 1))


def coeff_trees(model: MutationModel, n: int) -> int:
    """Number of mutation configurations of size ``n``."""
    model = MutationModel(model)
    if n < 0:
        raise ValueError("n must be non-negative")
    if model is M.SHORT_LIVED:
        return binom(2 * n - 2, n - 1) if n >= 1 else 0
    if model is M.TOGGLE:
        return binom(2 * n + 1, n)
    if model is M.TOGGLE_H1:
        if n == 0:
            return 0
        return 4 * binom(2 * n + 1, n - 1) // (n + 3)
    if model is M.ENT:
        return _ent_trees(n)
    if model in (M.RIGHT_BRANCH, M.RIGHT_PATH_STAR):
        return binom(2 * n - 1, n) if n >= 1 else 0
    if model is M.RIGHT_PATH:
        return binom(2 * n, n)
    if model is M.BINARY_COMPLETE:
        return (2 * n + 1) * catalan(n)
    raise ValueError(f"unknown model {model}")  # pragma: no cover


def coeff_vertices(model: MutationModel, n: int) -> int:
    """Vertices summed over all configurations of size ``n``."""
    model = MutationModel(model)
    if n < 0:
        raise ValueError("n must be non-negative")
    if model is M.SHORT_LIVED:
        return (n + 1) * binom(2 * n - 2, n - 1) if n >= 1 else 0
    if model is M.TOGGLE:
        return (2 * n + 1) * binom(2 * n, n)
    if model is M.TOGGLE_H1:
        return 2 * binom(2 * n + 2, n - 1) if n >= 1 else 0
    if model is M.ENT:
        return (n + 1) * _ent_trees(n)
    if model in (M.RIGHT_BRANCH, M.RIGHT_PATH_STAR):
        return (n + 1) * binom(2 * n - 1, n) if n >= 1 else 0
    if model is M.RIGHT_PATH:
        return (n + 1) * binom(2 * n, n)
    if model is M.BINARY_COMPLETE:
        return (2 * n + 1) ** 2 * catalan(n)
    raise ValueError(f"unknown model {model}")  # pragma: no cover


def coeff_new_type(model: MutationModel, n: int) -> int:
    """New-type vertices summed over all configurations of size ``n``."""
    model = MutationModel(model)
    if n < 0:
        raise ValueError("n must be non-negative")
    if model is M.SHORT_LIVED:
        return 2 * binom(2 * n - 2, n - 1) if n >= 1 else 0
    if model is M.TOGGLE:
        return 4**n
    if model is M.TOGGLE_H1:
        return binom(2 * n + 1, n - 1) if n >= 1 else 0
    if model is M.ENT:
        order = max(64, 1 << n.bit_length())
        return int(ent_radical_new_type(order)[n])
    if model is M.RIGHT_BRANCH:
        return 4 ** (n - 1) + binom(2 * n, n) // 2 if n >= 1 else 0
    if model is M.RIGHT_PATH:
        return binom(2 * n + 1, n)
    if model is M.RIGHT_PATH_STAR:
        if n == 0:
            return 0
        q, r = divmod((3 * n + 1) * binom(2 * n, n), 2 * n + 2)
        assert r == 0
        return q
    if model is M.BINARY_COMPLETE:
        # sum_k C_k 4^(n-k) = 2^(2n+1) - binom(2n+1, n)
        return 2 ** (2 * n + 1) - binom(2 * n + 1, n)
    raise ValueError(f"unknown model {model}")  # pragma: no cover


def binary_printed_new_type(n: int) -> Fraction:
    """The closed form as printed for binary trees, ``2^(2n-1) - binom(2n, n)/2``.

    Kept only to demonstrate that it disagrees with the enumeration.
    """
    return Fraction(2) ** (2 * n - 1) - Fraction(binom(2 * n, n), 2)


def proportion(model: MutationModel, n: int) -> Fraction:
    """Exact share of new-type vertices among all vertices at size ``n``."""
    v = coeff_vertices(model, n)
    if v == 0:
        raise DivisionByZeroCount(f"{MutationModel(model).value} has no vertices at n={n}")
    return Fraction(coeff_new_type(model, n), v)


# -- asymptotics ------------------------------------------------------------------

_SQRT_PI = math.sqrt(math.pi)


def asymptotic_form(model: MutationModel, n: int) -> float:
    """Leading-order share of new-type vertices as printed in the source tables.

    The short-lived entry is not the proportion at all and two others are off
    by a factor of four; see :func:`derived_asymptotic_form`.
    """
    model = MutationModel(model)
    if n < 1:
        raise ValueError("n must be positive")
    if model is M.SHORT_LIVED:
        return float(Fraction(2, (n + 1) * binom(2 * n - 2, n - 1)))
    if model is M.TOGGLE:
        return 0.5 * _SQRT_PI / math.sqrt(n)
    if model is M.TOGGLE_H1:
        return 0.25
    if model is M.ENT:
        return 0.6
    if model is M.RIGHT_BRANCH:
        return 2 * _SQRT_PI / math.sqrt(n)
    if model is M.RIGHT_PATH:
        return 1 / (2 * n)
    if model is M.RIGHT_PATH_STAR:
        return 3 / n
    if model is M.BINARY_COMPLETE:
        return _SQRT_PI / (8 * math.sqrt(n))
    raise ValueError(f"unknown model {model}")  # pragma: no cover


def derived_asymptotic_form(model: MutationModel, n: int) -> float:
    """Leading-order share recomputed from the exact counts.

    SHORT_LIVED: two new-type vertices among ``n+1`` gives ``2/(n+1)``.
    RIGHT_BRANCH: ``(4^(n-1) + B_n/2) / ((n+1)/2 B_n)`` with ``4^n ~ B_n sqrt(pi n)``
    gives ``sqrt(pi/n)/2``.  BINARY_COMPLETE: ``2^(2n+1) / ((2n+1)^2 C_n)`` gives
    ``sqrt(pi/n)/2``.  RIGHT_PATH: ``binom(2n+1,n) = (2n+1)/(n+1) B_n`` over
    ``(n+1) B_n`` gives ``2/n``.  All other models agree with :func:`asymptotic_form`.
    """
    model = MutationModel(model)
    if n < 1:
        raise ValueError("n must be positive")
    if model is M.SHORT_LIVED:
        return 2 / (n + 1)
    if model in (M.RIGHT_BRANCH, M.BINARY_COMPLETE):
        return 0.5 * _SQRT_PI / math.sqrt(n)
    if model is M.RIGHT_PATH:
        return 2 / n
    return asymptotic_form(model, n)
