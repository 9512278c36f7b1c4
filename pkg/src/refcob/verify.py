"""Machine checks of the identities satisfied by refined divisor classes and intersections.

Each ``verify_*`` computes both sides with the structured model and recomputes
each side with the brute-force expander in :mod:`refcob.oracle`; a report
passes only when all four agree exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from . import oracle
from .fgl import FglContext, f11_g11, formal_inverse, formal_sum, is_graded, make_context, n_mult, nfold_sum
from .omega import (
    FaceClass,
    apply_series,
    chern,
    divisor_class,
    face_generator,
    intersect,
    normalize,
    pushforward,
    unit,
    zero,
)
from .series import Series, render_monomial
from .snc import (
    FULL,
    BundleExpr,
    CartierDiv,
    ContractViolation,
    PreconditionError,
    PseudoDiv,
    SncConfig,
    SupportSet,
    Transport,
    divisor_admissibility_failure,
    divisor_admissible,
    divisorial,
    enumerate_configs,
    face_map_admissible,
    global_pd,
    good_position,
    is_smooth,
    leading,
    prefix_intersection,
    restrict,
    split_component,
    supported_in,
)


@dataclass(frozen=True)
class Report:
    identity: str
    config: str
    status: str
    cases: int = 1
    face: str = ""
    monomial: str = ""
    coefficient: str = ""
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def render(self) -> str:
        line = f"identity={self.identity} config={self.config} status={self.status} cases={self.cases}"
        if not self.ok:
            line += f" face={self.face} monomial={self.monomial} coefficient={self.coefficient}"
            if self.detail:
                line += f" detail={self.detail}"
        return line


def _compare(identity: str, cfg: SncConfig, checks: Sequence[tuple[str, FaceClass, FaceClass]]) -> Report:
    names = list(cfg.components) + list(cfg.symbols)
    for label, a, b in checks:
        diff = a.first_difference(b)
        if diff is not None:
            J, key, c = diff
            return Report(identity, cfg.digest(), "fail", 1, cfg.face_name(J), render_monomial(key, names), str(c), label)
    return Report(identity, cfg.digest(), "pass")


def _four_way(identity: str, cfg: SncConfig, lhs, rhs, o_lhs, o_rhs) -> Report:
    return _compare(identity, cfg, [("lhs=rhs", lhs, rhs), ("lhs=oracle", lhs, o_lhs), ("rhs=oracle", rhs, o_rhs)])


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise PreconditionError(what)


def _class_or_zero(cfg: SncConfig, ctx: FglContext, E: CartierDiv, seq) -> FaceClass:
    if E.is_zero():
        return zero(cfg, ctx)
    return divisor_class(cfg, ctx, E, seq)[0]


def _admissible_ambient(cfg: SncConfig, seq) -> bool:
    return face_map_admissible(cfg, (), seq)


# ---------------------------------------------------------------------------
# preconditions, usable as filters by the sweep


def pre_divisor_class_pushforward(cfg: SncConfig, E: CartierDiv, seq) -> bool:
    if E.is_zero() or not _admissible_ambient(cfg, seq):
        return False
    return good_position(cfg, E, seq)


def pre_smooth_divisor_intersection(cfg: SncConfig, Z: CartierDiv, C: PseudoDiv, D: PseudoDiv, seq) -> bool:
    if D.is_global or Z.is_zero() or not is_smooth(cfg, Z) or not supported_in(C, D):
        return False
    full = (D,) + tuple(seq)
    return _admissible_ambient(cfg, full) and good_position(cfg, Z, full)


def pre_quadratic_additivity(cfg: SncConfig, D: CartierDiv, C0: CartierDiv, C1: CartierDiv, seq) -> bool:
    if C0.is_zero() or C1.is_zero() or not is_smooth(cfg, C1):
        return False
    if not (C0 + C1).support() <= D.support():
        return False
    return _admissible_ambient(cfg, (PseudoDiv(div=D),) + tuple(seq))


def pre_intersection_commutativity(cfg: SncConfig, D: PseudoDiv, Dp: PseudoDiv, C: PseudoDiv, Cp: PseudoDiv, seq) -> bool:
    if D.is_global or Dp.is_global or C.is_global or Cp.is_global:
        return False
    if not (supported_in(C, D) and supported_in(Cp, Dp)):
        return False
    return _admissible_ambient(cfg, (D,) + tuple(seq)) and _admissible_ambient(cfg, (Dp,) + tuple(seq))


def pre_linear_equivalence(cfg: SncConfig, D: PseudoDiv, Dp: PseudoDiv, seq) -> bool:
    if D.bundle != Dp.bundle:
        return False
    return _admissible_ambient(cfg, (D,) + tuple(seq)) and _admissible_ambient(cfg, (Dp,) + tuple(seq))


# ---------------------------------------------------------------------------
# identities


def transport_class(tr: Transport, x: FaceClass, ctx: FglContext) -> FaceClass:
    """Carry a coarse class to the split frame, with c1(O(E_k)) = F(u_k1, ..., u_kp)."""
    fine = tr.fine
    images = []
    for i in range(tr.coarse.m):
        parts = tr.component_map[i]
        if len(parts) == 1:
            images.append(Series.var(parts[0], fine.m, ctx.trunc, fine.symbols))
        else:
            mults = tuple(1 if j in parts else 0 for j in range(fine.m))
            images.append(formal_sum(ctx, mults).embed(list(range(fine.m)), fine.m, fine.symbols))
    for s in range(len(fine.symbols)):
        images.append(Series.var(fine.m + s, fine.m, ctx.trunc, fine.symbols))
    raw: dict = {}
    for J, s in x.parts.items():
        img = s.substitute(images)
        for Jq in tr.face_map[J]:
            raw[Jq] = raw[Jq] + img if Jq in raw else img
    return normalize(fine, ctx, raw)


def verify_split_invariance(cfg: SncConfig, ctx: FglContext, E: CartierDiv, seq, k: int, p: int) -> Report:
    fine, tr = split_component(cfg, k, p)
    fine_E, fine_seq = tr.divisor(E), tr.seq(seq)
    _require(not E.is_zero(), "E must be nonzero")
    _require(divisor_admissibility_failure(cfg, E, seq) is None, "E not admissible on the coarse frame")
    _require(divisor_admissibility_failure(fine, fine_E, fine_seq) is None, "E not admissible on the split frame")
    direct = divisor_class(fine, ctx, fine_E, fine_seq)[0]
    carried = transport_class(tr, divisor_class(cfg, ctx, E, seq)[0], ctx)
    o_direct = oracle.collapse(fine, ctx, oracle.divisor_raw(fine, ctx, fine_E.mults))
    o_carried = oracle.collapse(fine, ctx, oracle.transported_raw(tr, ctx, oracle.divisor_raw(cfg, ctx, E.mults)))
    rep = _four_way("split_invariance", fine, direct, carried, o_direct, o_carried)
    return Report(rep.identity, cfg.digest(), rep.status, 1, rep.face, rep.monomial, rep.coefficient, rep.detail)


def verify_divisor_class_pushforward(cfg: SncConfig, ctx: FglContext, E: CartierDiv, seq=()) -> Report:
    _require(not E.is_zero(), "E must be nonzero")
    _require(good_position(cfg, E, seq), "E is not in good position")
    lhs = pushforward(*divisor_class(cfg, ctx, E, seq))
    rhs = chern(BundleExpr(E.mults), unit(cfg, ctx))
    raw = oracle.divisor_raw(cfg, ctx, E.mults)
    o_lhs = oracle.collapse(cfg, ctx, raw)
    o_rhs = oracle.collapse(cfg, ctx, oracle.times(raw, oracle.raw_one(cfg, ctx), cfg))
    return _four_way("divisor_class_pushforward", cfg, lhs, rhs, o_lhs, o_rhs)


def verify_smooth_divisor_intersection(cfg: SncConfig, ctx: FglContext, Z: CartierDiv, C: PseudoDiv, D: PseudoDiv, seq=()) -> Report:
    _require(pre_smooth_divisor_intersection(cfg, Z, C, D, seq), "smooth divisor intersection preconditions fail")
    full = (D,) + tuple(seq)
    z_class = pushforward(*divisor_class(cfg, ctx, Z, full))
    lhs, _ = intersect(C, D, seq, z_class)
    rhs = chern(BundleExpr(Z.mults), _class_or_zero(cfg, ctx, C.div, seq))
    z_raw = oracle.divisor_raw(cfg, ctx, Z.mults)
    c_raw = oracle.divisor_raw(cfg, ctx, C.div.mults)
    o_lhs = oracle.collapse(cfg, ctx, oracle.times(c_raw, z_raw, cfg))
    o_rhs = oracle.collapse(cfg, ctx, oracle.times(z_raw, c_raw, cfg))
    return _four_way("smooth_divisor_intersection", cfg, lhs, rhs, o_lhs, o_rhs)


def g11_operator(cfg: SncConfig, ctx: FglContext, first: CartierDiv, second: CartierDiv) -> Series:
    """G11(c1(O(first)), c1(O(second))) as a series in the frame's Chern operators."""
    _, g11 = f11_g11(ctx)
    a = formal_sum(ctx, first.mults).embed(list(range(cfg.m)), cfg.m, cfg.symbols).with_trunc(g11.trunc)
    b = formal_sum(ctx, second.mults).embed(list(range(cfg.m)), cfg.m, cfg.symbols).with_trunc(g11.trunc)
    return g11.substitute([a, b])


def verify_quadratic_additivity(cfg: SncConfig, ctx: FglContext, D: CartierDiv, C0: CartierDiv, C1: CartierDiv, seq=()) -> Report:
    _require(pre_quadratic_additivity(cfg, D, C0, C1, seq), "quadratic additivity preconditions fail")
    C = C0 + C1
    lhs = divisor_class(cfg, ctx, C, seq)[0]
    x0 = divisor_class(cfg, ctx, C0, seq)[0]
    x1 = divisor_class(cfg, ctx, C1, seq)[0]
    rhs = x0 + x1 + apply_series(g11_operator(cfg, ctx, C1, C0), x1)
    r0 = oracle.divisor_raw(cfg, ctx, C0.mults)
    r1 = oracle.divisor_raw(cfg, ctx, C1.mults)
    o_lhs = oracle.collapse(cfg, ctx, oracle.divisor_raw(cfg, ctx, C.mults))
    o_rhs = oracle.collapse(cfg, ctx, (r0 + r1 + oracle.g11_raw(cfg, ctx, r1, r0)).truncate(cfg.dim))
    return _four_way("quadratic_additivity", cfg, lhs, rhs, o_lhs, o_rhs)


def verify_intersection_commutativity(cfg: SncConfig, ctx: FglContext, D: PseudoDiv, Dp: PseudoDiv, C: PseudoDiv, Cp: PseudoDiv, seq=()) -> Report:
    _require(pre_intersection_commutativity(cfg, D, Dp, C, Cp, seq), "commutativity preconditions fail")
    xp = _class_or_zero(cfg, ctx, Cp.div, (D,) + tuple(seq))
    x = _class_or_zero(cfg, ctx, C.div, (Dp,) + tuple(seq))
    lhs, _ = intersect(C, D, seq, xp)
    rhs, _ = intersect(Cp, Dp, seq, x)
    both = SupportSet.of(cfg, D) & SupportSet.of(cfg, Dp)
    lhs, rhs = pushforward(lhs, both), pushforward(rhs, both)
    raw = oracle.times(oracle.divisor_raw(cfg, ctx, C.div.mults), oracle.divisor_raw(cfg, ctx, Cp.div.mults), cfg)
    o = oracle.collapse(cfg, ctx, raw)
    return _four_way("intersection_commutativity", cfg, lhs, rhs, o, o)


def verify_linear_equivalence(cfg: SncConfig, ctx: FglContext, D: PseudoDiv, Dp: PseudoDiv, seq=()) -> Report:
    _require(pre_linear_equivalence(cfg, D, Dp, seq), "linear equivalence preconditions fail")
    gens = [("unit", unit(cfg, ctx), ())] + [(cfg.face_name(J), face_generator(cfg, ctx, J), J) for J in cfg.sorted_faces() if J]
    b = oracle.raw_series(cfg, ctx, D.bundle)
    checks = []
    for name, x, J in gens:
        lhs = pushforward(*intersect(D, D, seq, x))
        rhs = pushforward(*intersect(Dp, Dp, seq, x))
        o = oracle.collapse(cfg, ctx, oracle.times(b, oracle.raw_face(cfg, ctx, J), cfg))
        checks += [(f"{name}:lhs=rhs", lhs, rhs), (f"{name}:lhs=oracle", lhs, o), (f"{name}:rhs=oracle", rhs, o)]
    return _compare("linear_equivalence", cfg, checks)


# ---------------------------------------------------------------------------
# exhaustive sweep


def _vectors(m: int, top: int) -> list[tuple[int, ...]]:
    return list(product(range(top + 1), repeat=m))


def sweep_sequences(cfg: SncConfig) -> list[tuple]:
    """Decorations used by the sweep: none, one reduced frame divisor, or a trivial global entry."""
    m = cfg.m
    seqs: list[tuple] = [()]
    seqs += [(divisorial(v),) for v in _vectors(m, 1)]
    seqs.append((global_pd(BundleExpr((0,) * m)),))
    return seqs


class _Tally:
    """Counts admitted inputs; evaluates each distinct value-determining key once."""

    def __init__(self, identity: str, cfg: SncConfig):
        self.identity = identity
        self.cfg = cfg
        self.cases = 0
        self.witness: dict = {}

    def admit(self, key, args, count: int = 1) -> None:
        self.cases += count
        self.witness.setdefault(key, args)

    def report(self, fn, ctx: FglContext) -> Report:
        cfg = self.cfg
        for key in sorted(self.witness, key=repr):
            try:
                rep = fn(cfg, ctx, *self.witness[key])
            except Exception as exc:  # anything raised on an admitted input is a failure
                detail = f"{type(exc).__name__}:{exc}".replace(" ", "_")
                return Report(self.identity, cfg.digest(), "fail", self.cases, detail=detail)
            if not rep.ok:
                return Report(self.identity, cfg.digest(), "fail", self.cases, rep.face, rep.monomial, rep.coefficient, rep.detail)
        return Report(self.identity, cfg.digest(), "pass", self.cases)


@lru_cache(maxsize=None)
def _ambient_ok(cfg: SncConfig, seq: tuple) -> bool:
    return face_map_admissible(cfg, (), seq)


def _reduced(E: CartierDiv) -> PseudoDiv:
    return divisorial(tuple(1 if n else 0 for n in E.mults))


def sweep_config(cfg: SncConfig, ctx: FglContext) -> list[Report]:
    """All five identities over one frame.

    Inputs range over multiplicity vectors <= 2 and the decorations from
    :func:`sweep_sequences`.  Values depend on the decoration only through the
    preconditions and on a supporting divisor only through its support, so each
    admitted input is filtered individually and the identity is evaluated once per
    value-determining key.
    """
    m = cfg.m
    divs = [CartierDiv(v) for v in _vectors(m, 2)]
    nonzero = [E for E in divs if not E.is_zero()]
    smooth = [E for E in nonzero if is_smooth(cfg, E)]
    seqs = sweep_sequences(cfg)
    ok = lambda seq: _ambient_ok(cfg, tuple(seq))
    reports = []

    t = _Tally("divisor_class_pushforward", cfg)
    for seq in seqs:
        if not ok(seq):
            continue
        for E in nonzero:
            if good_position(cfg, E, seq):
                t.admit(E, (E, seq))
    reports.append(t.report(verify_divisor_class_pushforward, ctx))

    t = _Tally("smooth_divisor_intersection", cfg)
    for seq in seqs:
        for D in divs:
            PD = PseudoDiv(div=D)
            full = (PD,) + seq
            if not ok(full):
                continue
            for Z in smooth:
                if not good_position(cfg, Z, full):
                    continue
                for C in divs:
                    if C.support() <= D.support():
                        t.admit((Z, C, D.support()), (Z, PseudoDiv(div=C), PD, seq))
    reports.append(t.report(verify_smooth_divisor_intersection, ctx))

    t = _Tally("quadratic_additivity", cfg)
    for seq in seqs:
        for D in nonzero:
            if not ok((PseudoDiv(div=D),) + seq):
                continue
            supp = D.support()
            for C1 in smooth:
                if C1.support() <= supp:
                    for C0 in nonzero:
                        if C0.support() <= supp and (C0 + C1).support() <= supp:
                            t.admit((C0, C1), (D, C0, C1, seq))
    reports.append(t.report(verify_quadratic_additivity, ctx))

    t = _Tally("intersection_commutativity", cfg)
    for seq in seqs:
        admitted = []
        for D in divs:
            PD = PseudoDiv(div=D)
            if ok((PD,) + seq):
                admitted += [(PD, PseudoDiv(div=C)) for C in divs if C.support() <= D.support()]
        t.cases += len(admitted) ** 2
        by_key = {}
        for PD, PC in admitted:
            by_key.setdefault((PD.div.support(), PC.div), (PD, PC))
        for k1, (D, C) in by_key.items():
            for k2, (Dp, Cp) in by_key.items():
                t.witness.setdefault((k1, k2), (D, Dp, C, Cp, seq))
    reports.append(t.report(verify_intersection_commutativity, ctx))

    t = _Tally("linear_equivalence", cfg)
    candidates = [PseudoDiv(div=E) for E in divs] + [global_pd(BundleExpr(E.mults)) for E in divs]
    for seq in seqs:
        live = [D for D in candidates if ok((D,) + seq)]
        for D in live:
            for Dp in live:
                if D.bundle == Dp.bundle:
                    t.admit((D, Dp), (D, Dp, seq))
    reports.append(t.report(verify_linear_equivalence, ctx))
    return reports


def contract_sequences(cfg: SncConfig, length: int = 2) -> list[tuple]:
    entries = [divisorial(v) for v in _vectors(cfg.m, 2)] + [global_pd(BundleExpr((0,) * cfg.m))]
    out: list[tuple] = [()]
    layer: list[tuple] = [()]
    for _ in range(length):
        layer = [s + (e,) for s in layer for e in entries]
        out += layer
    return out


def contract_sweep(cfg: SncConfig, length: int = 2) -> Report:
    """good position => admissible, good position passes to C with |C| in |E|,
    and prefix intersections under a divisorial leading entry are subdivisors of it."""
    divs = [CartierDiv(v) for v in _vectors(cfg.m, 2) if any(v)]
    cases = 0

    def fail(detail: str) -> Report:
        return Report("contracts", cfg.digest(), "fail", cases, detail=detail.replace(" ", "_"))

    for seq in contract_sequences(cfg, length):
        if not face_map_admissible(cfg, (), seq):
            continue
        for J in cfg.sorted_faces():
            lead = leading(cfg, J, seq)
            if lead is None or seq[lead].is_global:
                continue
            bound = restrict(cfg, J, seq[lead])
            for s in range(lead + 1, len(seq) + 1):
                cases += 1
                v = prefix_intersection(cfg, J, seq, s)
                if v is None:
                    continue
                if v == FULL or any(a > b for a, b in zip(v, bound)):
                    return fail(f"prefix {s} on {cfg.face_name(J)} exceeds the leading entry")
        gps = {}
        for E in divs:
            cases += 1
            try:
                gps[E] = good_position(cfg, E, seq)
            except ContractViolation as exc:
                return fail(str(exc))
            if gps[E] and not divisor_admissible(cfg, E, seq):
                return fail(f"E={E.mults} in good position but not admissible")
        for E in divs:
            if not gps[E]:
                continue
            for C in divs:
                if C.support() <= E.support() and not gps[C]:
                    cases += 1
                    return fail(f"C={C.mults} below E={E.mults} lost good position")
    return Report("contracts", cfg.digest(), "pass", cases)


def _sweep_frame(args) -> list[Report]:
    cfg, trunc, contracts = args
    ctx = _worker_context(trunc)
    out = sweep_config(cfg, ctx)
    if contracts:
        out.append(contract_sweep(cfg))
    return out


@lru_cache(maxsize=None)
def _worker_context(trunc: int) -> FglContext:
    return make_context(trunc)


def sweep(max_m: int = 3, max_d: int = 3, trunc: int | None = None, contracts: bool = True, jobs: int = 1) -> list[Report]:
    """Every identity and contract over every frame from :func:`enumerate_configs`.

    With ``jobs > 1`` frames are spread over worker processes; the report list
    comes back in enumeration order either way.
    """
    t = trunc if trunc is not None else max(max_d, 1)
    work = [(cfg, t, contracts) for cfg in enumerate_configs(max_m, max_d)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_sweep_frame, work))
    else:
        chunks = [_sweep_frame(w) for w in work]
    return [r for chunk in chunks for r in chunk]


def verify_frame_file(ff, ctx: FglContext) -> list[Report]:
    """Every identity whose preconditions hold on the divisors and sequence declared in a frame file."""
    cfg, seq = ff.cfg, tuple(ff.pseudo_seq)
    divs = sorted(ff.divisors.items())
    named = [(n, E) for n, E in divs if not E.is_zero()]
    pds = [PseudoDiv(div=E) for _, E in divs] + [global_pd(b) for _, b in sorted(ff.bundles.items())]
    fns = {
        "divisor_class_pushforward": verify_divisor_class_pushforward,
        "smooth_divisor_intersection": verify_smooth_divisor_intersection,
        "quadratic_additivity": verify_quadratic_additivity,
        "intersection_commutativity": verify_intersection_commutativity,
        "linear_equivalence": verify_linear_equivalence,
    }
    tallies = {name: _Tally(name, cfg) for name in fns}
    ambient = _ambient_ok(cfg, seq)
    for _, E in named:
        if ambient and good_position(cfg, E, seq):
            tallies["divisor_class_pushforward"].admit(E, (E, seq))
    for _, Z in named:
        for D in pds:
            for C in pds:
                if pre_smooth_divisor_intersection(cfg, Z, C, D, seq):
                    tallies["smooth_divisor_intersection"].admit((Z, C, D), (Z, C, D, seq))
    for _, D in named:
        for _, C0 in named:
            for _, C1 in named:
                if pre_quadratic_additivity(cfg, D, C0, C1, seq):
                    tallies["quadratic_additivity"].admit((D, C0, C1), (D, C0, C1, seq))
    for D in pds:
        for Dp in pds:
            for C in pds:
                for Cp in pds:
                    if pre_intersection_commutativity(cfg, D, Dp, C, Cp, seq):
                        tallies["intersection_commutativity"].admit((D, Dp, C, Cp), (D, Dp, C, Cp, seq))
            if pre_linear_equivalence(cfg, D, Dp, seq):
                tallies["linear_equivalence"].admit((D, Dp), (D, Dp, seq))
    return [t.report(fns[name], ctx) for name, t in tallies.items()]


# ---------------------------------------------------------------------------
# formal group law checks


def _series_report(identity: str, tag: str, a: Series, b: Series) -> Report:
    diff = a - b
    for key, c in diff.sorted_terms():
        return Report(identity, tag, "fail", 1, "-", render_monomial(key, diff.names()), str(c))
    return Report(identity, tag, "pass")


def fgl_axioms(trunc: int = 6) -> list[Report]:
    """Unit, commutativity, associativity, the n-fold recursion, additivity of
    formal multiples, the formal inverse, and grading of everything produced."""
    ctx = make_context(trunc)
    tag = f"trunc{trunc}"
    F = ctx.F
    u, v = Series.var(0, 2, trunc), Series.var(1, 2, trunc)
    zero2 = u.zero_like()
    reports = [
        _series_report("fgl_unit_left", tag, F.substitute([zero2, v]), v),
        _series_report("fgl_unit_right", tag, F.substitute([u, zero2]), u),
        _series_report("fgl_commutative", tag, F.substitute([v, u]), F),
    ]
    x, y, z = (Series.var(i, 3, trunc) for i in range(3))
    left = F.substitute([F.substitute([x, y]), z])
    right = F.substitute([x, F.substitute([y, z])])
    reports.append(_series_report("fgl_associative", tag, left, right))
    for n in range(2, 5):
        us = [Series.var(i, n, trunc) for i in range(n)]
        tail = nfold_sum(ctx, n - 1).substitute(us[1:])
        reports.append(_series_report(f"fgl_nfold_recursion_{n}", tag, F.substitute([us[0], tail]), nfold_sum(ctx, n)))
    w = Series.var(0, 1, trunc)
    worst = None
    for a in range(-3, 4):
        for b in range(-3, 4):
            r = _series_report("fgl_multiple_additivity", tag, F.substitute([n_mult(ctx, a), n_mult(ctx, b)]), n_mult(ctx, a + b))
            if not r.ok and worst is None:
                worst = r
    reports.append(worst or Report("fgl_multiple_additivity", tag, "pass", 49))
    reports.append(_series_report("fgl_inverse", tag, F.substitute([w, formal_inverse(ctx)]), w.zero_like()))
    produced = [F, left, right, formal_inverse(ctx)] + [n_mult(ctx, k) for k in range(-3, 4)] + [nfold_sum(ctx, n) for n in range(1, 5)]
    graded = all(is_graded(s) for s in produced)
    reports.append(Report("fgl_grading", tag, "pass" if graded else "fail", len(produced)))
    return reports
