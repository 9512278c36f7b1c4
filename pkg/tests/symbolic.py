"""Independent sympy reference for logarithm-based formal group law coefficients.

Nothing here touches refcob's series code: the logarithm is written down
directly, the exponential is solved degree by degree with sympy, and the
group law is expanded and truncated with a grading parameter.
"""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from refcob.series import LazardPoly, Series


def lazard_symbols(n: int):
    return sp.symbols(" ".join(f"m{i}" for i in range(1, n + 1)), seq=True)


def truncate(expr, variables, n: int):
    """Keep monomials of total degree <= n in ``variables``."""
    t = sp.Symbol("t")
    scaled = sp.expand(expr.subs({v: t * v for v in variables}, simultaneous=True))
    poly = sp.Poly(scaled, t)
    return sp.expand(sum(c * t**k for (k,), c in poly.terms() if k <= n).subs(t, 1))


def log_series(x, n: int):
    ms = lazard_symbols(max(n - 1, 1))
    return x + sum(ms[i - 1] * x ** (i + 1) for i in range(1, n))


def exp_series(x, n: int):
    """Solve l(e(t)) = t one degree at a time."""
    t = sp.Symbol("tt")
    e = t
    for k in range(2, n + 1):
        a = sp.Symbol("a")
        trial = e + a * t**k
        lhs = truncate(log_series(trial, n), [t], k)
        coeff = sp.Poly(sp.expand(lhs), t).coeff_monomial(t**k)
        e = e + sp.solve(coeff, a)[0] * t**k
    return sp.expand(e.subs(t, x))


def fgl(u, v, n: int):
    return truncate(exp_series(log_series(u, n) + log_series(v, n), n), [u, v], n)


def formal_multiple(u, k: int, n: int):
    return truncate(exp_series(k * log_series(u, n), n), [u], n)


def to_expr(s: Series, variables) -> sp.Expr:
    ms = lazard_symbols(max(s.trunc, 1))
    out = sp.Integer(0)
    for key, c in s.terms.items():
        mono = sp.Mul(*[v**e for v, e in zip(variables, key)])
        out += mono * lazard_expr(c, ms)
    return sp.expand(out)


def lazard_expr(c: LazardPoly, ms) -> sp.Expr:
    out = sp.Integer(0)
    for key, q in c.terms.items():
        q = Fraction(q)
        out += sp.Rational(q.numerator, q.denominator) * sp.Mul(*[ms[i] ** e for i, e in enumerate(key)])
    return out
