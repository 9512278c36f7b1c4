"""Face-module model of refined cobordism on an SNC frame.

A class is a finite sum  sum_J s_J [J]  where [J] stands for the face E^J pushed
into the ambient and s_J is a series in the Chern operators of O(E_k)|E^J for
k in J (the "residual" variables) and the declared free symbols.  All Chern
operators act by multiplication followed by rewriting

    u_k [J]  ->  [J + k]   if J + k is a face,   0 otherwise      (k not in J)

and monomials of degree > dim - |J| vanish on the face E^J.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Mapping, Sequence

from .fgl import FglContext, formal_sum, j_decompose
from .series import LazardPoly, Series, render_monomial
from .snc import (
    BundleExpr,
    CartierDiv,
    Face,
    PseudoDiv,
    SncConfig,
    SupportSet,
    admissibility_failure,
    divisor_admissibility_failure,
    face_in_support,
    face_key,
    supported_in,
)


class AdmissibilityError(ValueError):
    def __init__(self, cfg: SncConfig, face: Face, prefix: int, what: str = ""):
        self.face = face
        self.prefix = prefix
        msg = f"face {cfg.face_name(face)} is not admissible: prefix {prefix} of the sequence is not Cartier"
        super().__init__(f"{what}: {msg}" if what else msg)


class SupportError(ValueError):
    pass


class FaceClass:
    """A normal-form element of the face module; immutable."""

    __slots__ = ("cfg", "ctx", "parts")

    def __init__(self, cfg: SncConfig, ctx: FglContext, parts: Mapping[Face, Series]):
        if ctx.trunc < cfg.dim:
            raise ValueError(f"context trunc {ctx.trunc} is below the frame dimension {cfg.dim}")
        self.cfg = cfg
        self.ctx = ctx
        self.parts = {J: s for J, s in parts.items() if s}

    def _same(self, other: FaceClass) -> None:
        if self.cfg != other.cfg or self.ctx is not other.ctx:
            raise ValueError("classes live on different frames or contexts")

    def __add__(self, other: FaceClass) -> FaceClass:
        self._same(other)
        parts = dict(self.parts)
        for J, s in other.parts.items():
            parts[J] = parts[J] + s if J in parts else s
        return FaceClass(self.cfg, self.ctx, parts)

    def __neg__(self) -> FaceClass:
        return FaceClass(self.cfg, self.ctx, {J: -s for J, s in self.parts.items()})

    def __sub__(self, other: FaceClass) -> FaceClass:
        return self + (-other)

    def scale(self, c) -> FaceClass:
        return FaceClass(self.cfg, self.ctx, {J: s.scale(c) for J, s in self.parts.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceClass):
            return NotImplemented
        return self.cfg == other.cfg and self.parts == other.parts

    def __hash__(self) -> int:
        return hash((self.cfg, frozenset(self.parts.items())))

    def __bool__(self) -> bool:
        return bool(self.parts)

    def faces(self) -> list[Face]:
        return sorted(self.parts, key=face_key)

    def terms(self):
        """(face, monomial, coefficient) in canonical order."""
        for J in self.faces():
            for key, c in self.parts[J].sorted_terms():
                yield J, key, c

    def first_difference(self, other: FaceClass):
        """The first (face, monomial, coefficient difference) where the classes differ."""
        diff = self - other
        for triple in diff.terms():
            return triple
        return None

    def is_normal(self) -> bool:
        d = self.cfg.dim
        for J, s in self.parts.items():
            if J not in self.cfg.faces:
                return False
            for key in s.terms:
                if sum(key) > d - len(J):
                    return False
                if any(key[k] for k in range(self.cfg.m) if k not in J):
                    return False
        return True

    def render_rows(self) -> list[tuple[str, str, str]]:
        names = list(self.cfg.components) + list(self.cfg.symbols)
        return [(self.cfg.face_name(J), render_monomial(key, names), str(c)) for J, key, c in self.terms()]

    def __repr__(self) -> str:
        rows = self.render_rows()
        if not rows:
            return "FaceClass(0)"
        return "FaceClass(" + " + ".join(f"({c})*{mono}*[{face}]" for face, mono, c in rows) + ")"


def blank(cfg: SncConfig, ctx: FglContext) -> Series:
    return Series.zero(cfg.m, ctx.trunc, cfg.symbols)


def zero(cfg: SncConfig, ctx: FglContext) -> FaceClass:
    return FaceClass(cfg, ctx, {})


def unit(cfg: SncConfig, ctx: FglContext) -> FaceClass:
    return FaceClass(cfg, ctx, {(): Series.const(1, cfg.m, ctx.trunc, cfg.symbols)})


def face_generator(cfg: SncConfig, ctx: FglContext, J: Sequence[int]) -> FaceClass:
    J = cfg.check_face(J)
    return FaceClass(cfg, ctx, {J: Series.const(1, cfg.m, ctx.trunc, cfg.symbols)})


def normalize(cfg: SncConfig, ctx: FglContext, raw: Mapping[Face, Series], rng: random.Random | None = None) -> FaceClass:
    """Rewrite u_k [J] for k outside J one step at a time, then truncate by face dimension.

    With ``rng`` the variable to rewrite next is chosen at random; the result does
    not depend on that choice.
    """
    d, m, faces = cfg.dim, cfg.m, cfg.faces
    out: dict[Face, dict] = {}
    stack = []
    for J, s in raw.items():
        J = tuple(sorted(J))
        if J not in faces:
            continue
        stack.extend((J, key, c) for key, c in s.terms.items())
    if rng is not None:
        rng.shuffle(stack)
    while stack:
        J, key, c = stack.pop()
        if sum(key) + len(J) > d:
            continue
        movable = [k for k in range(m) if key[k] and k not in J]
        if not movable:
            bucket = out.setdefault(J, {})
            if key in bucket:
                s = bucket[key] + c
                if s:
                    bucket[key] = s
                else:
                    del bucket[key]
            else:
                bucket[key] = c
            continue
        k = rng.choice(movable) if rng is not None else movable[0]
        J2 = tuple(sorted(J + (k,)))
        if J2 in faces:
            key2 = key[:k] + (key[k] - 1,) + key[k + 1:]
            stack.append((J2, key2, c))
    parts = {J: Series(m, ctx.trunc, terms, cfg.symbols) for J, terms in out.items()}
    return FaceClass(cfg, ctx, parts)


def bundle_operator(cfg: SncConfig, ctx: FglContext, b: BundleExpr) -> Series:
    """The series F^{a_1..a_m, b_1..}(u_1..u_m, s_1..) giving the operator c1(b)."""
    if len(b.component_part) != cfg.m:
        raise ValueError("bundle expression has the wrong number of component exponents")
    exps = b.exponents(cfg.symbols)
    return formal_sum(ctx, exps).relabel(cfg.m, cfg.symbols)


def apply_series(op: Series, x: FaceClass, rng: random.Random | None = None) -> FaceClass:
    """Apply a power series in the Chern operators to x."""
    cfg, ctx = x.cfg, x.ctx
    if op.arity != cfg.m or op.symbols != cfg.symbols:
        raise ValueError("operator series does not match the frame")
    if op.trunc != ctx.trunc:
        op = op.with_trunc(ctx.trunc)
    raw = {J: op.mul(s, bound=cfg.dim - len(J)) for J, s in x.parts.items()}
    return normalize(cfg, ctx, raw, rng)


def chern(b: BundleExpr, x: FaceClass, rng: random.Random | None = None) -> FaceClass:
    return apply_series(bundle_operator(x.cfg, x.ctx, b), x, rng)


@lru_cache(maxsize=None)
def _divisor_parts(cfg: SncConfig, ctx: FglContext, mults: tuple[int, ...]) -> tuple:
    dec = j_decompose(formal_sum(ctx, mults), len(mults))
    nsym = len(cfg.symbols)
    positions = list(range(cfg.m))
    out = []
    for J01, s in dec.parts.items():
        J = tuple(k for k, j in enumerate(J01) if j)
        if not J or J not in cfg.faces:
            continue
        part = s.embed(positions, cfg.m, cfg.symbols) if nsym else s
        part = part.truncate(cfg.dim - len(J))
        if part:
            out.append((J, part))
    return tuple(out)


def divisor_class(cfg: SncConfig, ctx: FglContext, E: CartierDiv, seq: Sequence[PseudoDiv] = ()) -> tuple[FaceClass, SupportSet]:
    """The refined divisor class of E, face by face from the J-decomposition."""
    if len(E.mults) != cfg.m:
        raise ValueError("divisor has the wrong number of multiplicities")
    if E.is_zero():
        raise ValueError("the zero divisor has no divisor class")
    bad = divisor_admissibility_failure(cfg, E, seq)
    if bad is not None:
        raise AdmissibilityError(cfg, bad[0], bad[1], "divisor class")
    cls = FaceClass(cfg, ctx, dict(_divisor_parts(cfg, ctx, E.mults)))
    return cls, SupportSet.of_components(cfg, E.support())


def intersect(
    C: PseudoDiv,
    D: PseudoDiv,
    seq: Sequence[PseudoDiv],
    x: FaceClass,
    rng: random.Random | None = None,
) -> tuple[FaceClass, SupportSet]:
    """Intersection of x with C, where C is supported in D; lands on |D|."""
    cfg, ctx = x.cfg, x.ctx
    if not supported_in(C, D):
        raise SupportError("C is not supported in D")
    support = SupportSet.of(cfg, D)
    if C.is_zero():
        return zero(cfg, ctx), support
    inside: dict[Face, Series] = {}
    raw: dict[Face, Series] = {}
    full_seq = (D,) + tuple(seq)
    for J, s in x.parts.items():
        if face_in_support(cfg, J, D):
            inside[J] = s
            continue
        bad = admissibility_failure(cfg, J, full_seq)
        if bad is not None:
            raise AdmissibilityError(cfg, J, bad, "intersection")
        # D leads on E^J, so C cuts out an SNC divisor on the face
        nb = set(cfg.neighbours(J))
        local = tuple(n if k in nb else 0 for k, n in enumerate(C.div.mults))
        if not any(local):
            continue
        for K, FK in _divisor_parts(cfg, ctx, local):
            JK = tuple(sorted(set(J) | set(K)))
            if JK not in cfg.faces:
                continue
            bad = admissibility_failure(cfg, JK, seq)
            if bad is not None:
                raise AdmissibilityError(cfg, JK, bad, "restricted divisor class")
            term = s.mul(FK, bound=cfg.dim - len(JK))
            raw[JK] = raw[JK] + term if JK in raw else term
    result = normalize(cfg, ctx, raw, rng)
    if inside:
        result = result + chern(C.bundle, FaceClass(cfg, ctx, inside), rng)
    stray = set(result.parts) - support.faces
    if stray:
        raise AssertionError(f"intersection left the support of D on faces {sorted(stray)}")
    return result, support


def pushforward(x: FaceClass, frm: SupportSet) -> FaceClass:
    stray = set(x.parts) - frm.faces
    if stray:
        raise SupportError(f"class has faces {sorted(stray)} outside the declared support")
    return x


def forget(seq: Sequence[PseudoDiv], keep: int) -> tuple:
    if not 0 <= keep <= len(seq):
        raise ValueError(f"cannot keep {keep} of {len(seq)} pseudo-divisors")
    return tuple(seq[:keep])


def operator_power(op: Series, x: FaceClass, times: int) -> FaceClass:
    for _ in range(times):
        x = apply_series(op, x)
    return x


def random_class(cfg: SncConfig, ctx: FglContext, rng: random.Random, density: float = 0.5, coeff_range: int = 3) -> FaceClass:
    """A random normal-form class with small integer and m1/m2 coefficients."""
    parts = {}
    nsym = len(cfg.symbols)
    for J in cfg.sorted_faces():
        room = cfg.dim - len(J)
        vars_ = list(J) + [cfg.m + i for i in range(nsym)]
        terms = {}
        for _ in range(3):
            if rng.random() > density:
                continue
            key = [0] * (cfg.m + nsym)
            deg = rng.randint(0, room)
            for _ in range(deg):
                if vars_:
                    key[rng.choice(vars_)] += 1
            c = LazardPoly.const(rng.randint(-coeff_range, coeff_range))
            if rng.random() < 0.3:
                c = c + LazardPoly.gen(rng.randint(1, 2)) * rng.randint(-2, 2)
            terms[tuple(key)] = c
        if terms:
            parts[J] = Series(cfg.m, ctx.trunc, terms, cfg.symbols)
    cls = FaceClass(cfg, ctx, parts)
    assert cls.is_normal()
    return cls
