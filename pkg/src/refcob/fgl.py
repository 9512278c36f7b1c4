"""The universal formal group law over the rational Lazard model.

The logarithm is l(u) = u + sum_i m_i u^(i+1) and F(u, v) = l^-1(l(u) + l(v)).
Everything downstream (n-fold sums, formal multiples, the J-decomposition, and
the F11/G11 split) is derived from F by substitution, never from l directly,
except where a test deliberately cross-checks against the logarithm.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .series import ONE, LazardPoly, Series, ShapeError

DEFAULT_TRUNC = 6


@dataclass(eq=False)
class FglContext:
    trunc: int
    log: Series
    exp: Series
    F: Series
    _sums: dict = field(default_factory=dict, repr=False)
    _mults: dict = field(default_factory=dict, repr=False)
    _inverse: Series | None = field(default=None, repr=False)


def logarithm(trunc: int) -> Series:
    terms = {(1,): ONE}
    for i in range(1, trunc):
        terms[(i + 1,)] = LazardPoly.gen(i)
    return Series(1, trunc, terms)


def make_context(trunc: int = DEFAULT_TRUNC) -> FglContext:
    if trunc < 1:
        raise ValueError("trunc must be at least 1")
    log = logarithm(trunc)
    exp = log.reversion()
    lu = log.embed([0], 2)
    lv = log.embed([1], 2)
    F = exp.substitute([lu + lv])
    return FglContext(trunc, log, exp, F)


def formal_inverse(ctx: FglContext) -> Series:
    """i(u) with F(u, i(u)) = 0, solved one degree at a time."""
    if ctx._inverse is None:
        u = Series.var(0, 1, ctx.trunc)
        inv = -u
        for k in range(2, ctx.trunc + 1):
            c = ctx.F.substitute([u, inv]).coefficient((k,))
            if c:
                inv = inv - Series(1, ctx.trunc, {(k,): c})
        ctx._inverse = inv
    return ctx._inverse


def n_mult(ctx: FglContext, n: int) -> Series:
    """The formal multiple n ._F u as a one-variable series."""
    if n in ctx._mults:
        return ctx._mults[n]
    u = Series.var(0, 1, ctx.trunc)
    if n == 0:
        out = u.zero_like()
    elif n == 1:
        out = u
    elif n > 1:
        out = ctx.F.substitute([u, n_mult(ctx, n - 1)])
    else:
        out = formal_inverse(ctx).substitute([n_mult(ctx, -n)])
    ctx._mults[n] = out
    return out


def formal_sum(ctx: FglContext, mults: Sequence[int]) -> Series:
    """n1 ._F u1 +_F ... +_F nm ._F um, nested as F(n1 u1, F(n2 u2, ...))."""
    key = tuple(mults)
    if key in ctx._sums:
        return ctx._sums[key]
    m = len(key)
    if m == 0:
        out = Series.zero(0, ctx.trunc)
    else:
        acc = n_mult(ctx, key[-1]).embed([m - 1], m)
        for i in range(m - 2, -1, -1):
            acc = ctx.F.substitute([n_mult(ctx, key[i]).embed([i], m), acc])
        out = acc
    ctx._sums[key] = out
    return out


def nfold_sum(ctx: FglContext, n: int) -> Series:
    if n < 1:
        raise ValueError("n-fold sum needs n >= 1")
    return formal_sum(ctx, (1,) * n)


@dataclass(frozen=True)
class JDecomposition:
    """The unique splitting s = sum_J u^J F_J with F_J involving only u_i, i in J."""

    m: int
    parts: dict

    def __getitem__(self, J: tuple[int, ...]) -> Series:
        return self.parts.get(tuple(J), self._zero())

    def _zero(self) -> Series:
        some = next(iter(self.parts.values()), None)
        if some is None:
            raise KeyError("empty decomposition has no context")
        return some.zero_like()

    def nonzero(self) -> list[tuple[tuple[int, ...], Series]]:
        return sorted(((J, s) for J, s in self.parts.items() if s), key=lambda js: (sum(js[0]), tuple(-j for j in js[0])))

    def reconstruct(self, like: Series) -> Series:
        out = like.zero_like()
        for J, s in self.parts.items():
            shifted = {tuple(a + j for a, j in zip(k, J)): c for k, c in s.terms.items()}
            out = out + like.like(shifted)
        return out


def j_decompose(s: Series, m: int | None = None) -> JDecomposition:
    if m is None:
        m = s.arity
    if s.arity != m or s.symbols:
        raise ShapeError("j_decompose needs a series in exactly m u-variables and no symbols")
    buckets: dict[tuple[int, ...], dict] = {}
    for key, c in s.terms.items():
        J = tuple(1 if e else 0 for e in key)
        reduced = tuple(e - j for e, j in zip(key, J))
        buckets.setdefault(J, {})[reduced] = c
    parts = {J: s.like(terms) for J, terms in buckets.items()}
    return JDecomposition(m, parts)


def all_indices(m: int) -> list[tuple[int, ...]]:
    return list(product((0, 1), repeat=m))


def f11_g11(ctx: FglContext) -> tuple[Series, Series]:
    """F = u + v + uv F11(u, v) and G11 = v F11.

    The residual F - u - v is only known through degree trunc, so F11 is returned
    at trunc - 2 and G11 at trunc - 1.
    """
    u = Series.var(0, 2, ctx.trunc)
    v = Series.var(1, 2, ctx.trunc)
    residual = ctx.F - u - v
    quotient = {}
    for (a, b), c in residual.terms.items():
        if a < 1 or b < 1:
            raise ArithmeticError(f"residual monomial u^{a} v^{b} is not divisible by uv")
        quotient[(a - 1, b - 1)] = c
    f11 = Series(2, ctx.trunc - 2, quotient)
    g11 = Series(2, ctx.trunc - 1, {(a, b + 1): c for (a, b), c in quotient.items()})
    return f11, g11


def is_graded(s: Series, offset: int = -1) -> bool:
    """Each coefficient of u^alpha is homogeneous of Lazard degree |alpha| + offset."""
    return all(c.is_homogeneous(sum(k) + offset) for k, c in s.terms.items())


def j_parts_graded(dec: JDecomposition) -> bool:
    return all(is_graded(s, offset=sum(J) - 1) for J, s in dec.parts.items())
