"""Monolithic brute-force expander used to cross-check the structured model.

Every class is handled as a single raw polynomial P in the ambient Chern
operators, meaning P(c1(O(E_1)), ..., c1(O(E_m)), symbols)(1_Y).  Formal sums
come straight from the logarithm, exp(sum n_i log u_i), and the raw
polynomial is turned into face form in one pass: a monomial u^a lands on the
face S = supp(a) with residual u^(a - 1_S), or vanishes when S is not a face
or the residual is too long for the face dimension.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .fgl import FglContext
from .omega import FaceClass
from .series import Series
from .snc import BundleExpr, SncConfig, Transport


@lru_cache(maxsize=None)
def log_sum(ctx: FglContext, mults: tuple[int, ...], nvars: int | None = None) -> Series:
    """exp(sum_i n_i log(u_i)) in len(mults) (or nvars) variables."""
    n = len(mults) if nvars is None else nvars
    total = Series.zero(n, ctx.trunc)
    for i, k in enumerate(mults):
        if k:
            total = total + ctx.log.embed([i], n).scale(k)
    if not total:
        return total
    return ctx.exp.substitute([total])


def raw_series(cfg: SncConfig, ctx: FglContext, b: BundleExpr) -> Series:
    return log_sum(ctx, b.exponents(cfg.symbols)).relabel(cfg.m, cfg.symbols)


def raw_one(cfg: SncConfig, ctx: FglContext) -> Series:
    return Series.const(1, cfg.m, ctx.trunc, cfg.symbols)


def raw_face(cfg: SncConfig, ctx: FglContext, J: Sequence[int]) -> Series:
    key = [0] * (cfg.m + len(cfg.symbols))
    for k in J:
        key[k] = 1
    return Series(cfg.m, ctx.trunc, {tuple(key): 1}, cfg.symbols)


def times(a: Series, b: Series, cfg: SncConfig) -> Series:
    return a.mul(b, bound=cfg.dim)


def collapse(cfg: SncConfig, ctx: FglContext, raw: Series) -> FaceClass:
    d, m = cfg.dim, cfg.m
    buckets: dict = {}
    for key, c in raw.terms.items():
        S = tuple(k for k in range(m) if key[k])
        if S not in cfg.faces:
            continue
        residual = tuple(e - 1 if i in S else e for i, e in enumerate(key))
        if sum(residual) > d - len(S):
            continue
        buckets.setdefault(S, {})[residual] = c
    parts = {S: Series(m, ctx.trunc, t, cfg.symbols) for S, t in buckets.items()}
    return FaceClass(cfg, ctx, parts)


def divisor_raw(cfg: SncConfig, ctx: FglContext, mults: Sequence[int]) -> Series:
    return raw_series(cfg, ctx, BundleExpr(tuple(mults)))


def g11_raw(cfg: SncConfig, ctx: FglContext, a: Series, b: Series) -> Series:
    """G11(a, b) * a  =  F(a, b) - a - b, with F taken from the logarithm."""
    F = log_sum(ctx, (1, 1))
    return F.substitute([a, b]) - a - b


def transported_raw(tr: Transport, ctx: FglContext, coarse_raw: Series) -> Series:
    """Substitute u_i -> c1(O(E_i)) = F(u_i1, ..., u_ip) into a raw coarse polynomial."""
    fine = tr.fine
    images = []
    for i in range(tr.coarse.m):
        parts = tr.component_map[i]
        mults = tuple(1 if j in parts else 0 for j in range(fine.m)) + (0,) * len(fine.symbols)
        images.append(log_sum(ctx, mults).relabel(fine.m, fine.symbols))
    for s in range(len(fine.symbols)):
        images.append(Series.var(fine.m + s, fine.m, ctx.trunc, fine.symbols))
    return coarse_raw.substitute(images)
