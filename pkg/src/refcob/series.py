"""Exact sparse arithmetic over the rational Lazard model.

``LazardPoly`` is a polynomial in generators m1, m2, ... with ``Fraction``
coefficients, graded by deg(m_i) = i.  ``Series`` is a power series in
u-variables (plus named free symbols) with ``LazardPoly`` coefficients,
truncated above a fixed total degree.

Both types are immutable; every operation returns a new value.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class ShapeError(ValueError):
    """Raised when two series live in incompatible contexts."""


class CompositionError(ValueError):
    """Raised when a substitution or reversion is undefined under truncation."""


def _trim(key: Sequence[int]) -> Exponent:
    n = len(key)
    while n and key[n - 1] == 0:
        n -= 1
    return tuple(key[:n])


def _add_keys(a: Exponent, b: Exponent) -> Exponent:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def graded_key(exps: Sequence[int]) -> tuple:
    """Sort key: total degree first, then lexicographic with earlier variables first."""
    return (sum(exps), tuple(-e for e in exps))


class LazardPoly:
    """Element of Q[m1, m2, ...].

    Keys are exponent tuples with trailing zeros trimmed, so ``(0, 2)`` is m2^2
    and ``()`` is the constant monomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], Fraction | int] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    k = _trim(key)
                    c = clean.get(k, 0) + c
                    if c:
                        clean[k] = c
                    else:
                        clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> LazardPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Fraction | int) -> LazardPoly:
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def gen(cls, i: int, power: int = 1) -> LazardPoly:
        if i < 1:
            raise ValueError("Lazard generators are indexed from 1")
        key = (0,) * (i - 1) + (power,)
        return cls._raw({_trim(key): Fraction(1)})

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LazardPoly.const(other)
        if not isinstance(other, LazardPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> LazardPoly:
        if isinstance(other, LazardPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LazardPoly.const(other)
        raise TypeError(f"cannot combine LazardPoly with {type(other).__name__}")

    def __add__(self, other) -> LazardPoly:
        other = self._coerce(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LazardPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LazardPoly:
        return LazardPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> LazardPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LazardPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LazardPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return LazardPoly._raw({k: c * other for k, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = _add_keys(k1, k2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LazardPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LazardPoly:
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    @staticmethod
    def monomial_degree(key: Exponent) -> int:
        return sum((i + 1) * e for i, e in enumerate(key))

    def degrees(self) -> set[int]:
        return {self.monomial_degree(k) for k in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        """True for zero, or when every monomial has the same weighted degree."""
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda kc: (self.monomial_degree(kc[0]), tuple(-e for e in kc[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for key, c in self.sorted_terms():
            mono = render_monomial(key, [f"m{i + 1}" for i in range(len(key))])
            if mono == "1":
                piece = format_rational(abs(c))
            elif abs(c) == 1:
                piece = mono
            else:
                piece = f"{format_rational(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, piece))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, piece in out[1:]:
            text += f" {sign} {piece}"
        return text

    def __repr__(self) -> str:
        return f"LazardPoly({self})"


ZERO = LazardPoly()
ONE = LazardPoly.const(1)


def _as_lazard(c) -> LazardPoly:
    if isinstance(c, LazardPoly):
        return c
    return LazardPoly.const(c)


class Series:
    """Truncated power series with ``LazardPoly`` coefficients.

    Exponent keys have length ``arity + len(symbols)``: u-variables first, then the
    free symbols in declared order.  Every stored monomial has total degree at most
    ``trunc``.
    """

    __slots__ = ("arity", "symbols", "trunc", "_terms", "_hash")

    def __init__(
        self,
        arity: int,
        trunc: int,
        terms: Mapping[Sequence[int], LazardPoly | Fraction | int] | None = None,
        symbols: Sequence[str] = (),
    ):
        self.arity = arity
        self.symbols = tuple(symbols)
        self.trunc = trunc
        nv = arity + len(self.symbols)
        clean: dict[Exponent, LazardPoly] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != nv:
                raise ShapeError(f"monomial {key} has {len(key)} exponents, expected {nv}")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            if sum(key) > trunc:
                continue
            c = _as_lazard(c)
            if key in clean:
                c = clean[key] + c
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash = None

    # construction helpers

    def _new(self, terms: dict[Exponent, LazardPoly]) -> Series:
        obj = Series.__new__(Series)
        obj.arity = self.arity
        obj.symbols = self.symbols
        obj.trunc = self.trunc
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def nvars(self) -> int:
        return self.arity + len(self.symbols)

    @classmethod
    def zero(cls, arity: int, trunc: int, symbols: Sequence[str] = ()) -> Series:
        return cls(arity, trunc, {}, symbols)

    @classmethod
    def const(cls, c, arity: int, trunc: int, symbols: Sequence[str] = ()) -> Series:
        nv = arity + len(symbols)
        return cls(arity, trunc, {(0,) * nv: c}, symbols)

    @classmethod
    def var(cls, i: int, arity: int, trunc: int, symbols: Sequence[str] = ()) -> Series:
        """The i-th variable (0-based over u-variables then symbols)."""
        nv = arity + len(symbols)
        key = [0] * nv
        key[i] = 1
        return cls(arity, trunc, {tuple(key): 1}, symbols)

    def like(self, terms: Mapping[Sequence[int], LazardPoly | Fraction | int]) -> Series:
        return Series(self.arity, self.trunc, terms, self.symbols)

    def zero_like(self) -> Series:
        return self._new({})

    def one_like(self) -> Series:
        return self._new({(0,) * self.nvars: ONE}) if self.trunc >= 0 else self._new({})

    def var_like(self, i: int) -> Series:
        return Series.var(i, self.arity, self.trunc, self.symbols)

    # inspection

    @property
    def terms(self) -> Mapping[Exponent, LazardPoly]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, monomial: Sequence[int]) -> LazardPoly:
        monomial = tuple(monomial)
        if len(monomial) != self.nvars:
            raise ShapeError(f"monomial {monomial} does not fit {self.nvars} variables")
        return self._terms.get(monomial, ZERO)

    def constant_term(self) -> LazardPoly:
        return self._terms.get((0,) * self.nvars, ZERO)

    def shape(self) -> tuple:
        return (self.arity, self.symbols, self.trunc)

    def max_degree(self) -> int:
        return max((sum(k) for k in self._terms), default=-1)

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for k in self._terms:
            used.update(i for i, e in enumerate(k) if e)
        return used

    def sorted_terms(self) -> list[tuple[Exponent, LazardPoly]]:
        return sorted(self._terms.items(), key=lambda kc: graded_key(kc[0]))

    def _check(self, other: Series) -> None:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if self.shape() != other.shape():
            raise ShapeError(f"incompatible series contexts {self.shape()} vs {other.shape()}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.shape() == other.shape() and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape(), frozenset(self._terms.items())))
        return self._hash

    # ring operations

    def __add__(self, other: Series) -> Series:
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return self._new(out)

    def __neg__(self) -> Series:
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def scale(self, c) -> Series:
        c = _as_lazard(c)
        if not c:
            return self._new({})
        out = {}
        for k, v in self._terms.items():
            p = v * c
            if p:
                out[k] = p
        return self._new(out)

    def mul(self, other: Series, bound: int | None = None) -> Series:
        """Product truncated at ``min(trunc, bound)``."""
        self._check(other)
        limit = self.trunc if bound is None else min(self.trunc, bound)
        out: dict[Exponent, LazardPoly] = {}
        items_b = [(k, sum(k), c) for k, c in other._terms.items()]
        for ka, ca in self._terms.items():
            da = sum(ka)
            if da > limit:
                continue
            for kb, db, cb in items_b:
                if da + db > limit:
                    continue
                k = tuple(x + y for x, y in zip(ka, kb))
                p = ca * cb
                if k in out:
                    p = out[k] + p
                    if p:
                        out[k] = p
                    else:
                        del out[k]
                elif p:
                    out[k] = p
        return self._new(out)

    def __mul__(self, other) -> Series:
        if isinstance(other, Series):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> Series:
        return self.scale(other)

    def __pow__(self, n: int) -> Series:
        if n < 0:
            raise ValueError("negative power of a series")
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, n: int) -> Series:
        """Drop monomials above total degree n, keeping the context's trunc."""
        return self._new({k: c for k, c in self._terms.items() if sum(k) <= n})

    def with_trunc(self, trunc: int) -> Series:
        return Series(self.arity, trunc, self._terms, self.symbols)

    def relabel(self, arity: int, symbols: Sequence[str] = ()) -> Series:
        """Reinterpret the same key space with a different u/symbol split."""
        if arity + len(symbols) != self.nvars:
            raise ShapeError("relabeling must keep the number of variables")
        return Series(arity, self.trunc, self._terms, symbols)

    def embed(self, positions: Sequence[int], arity: int, symbols: Sequence[str] = ()) -> Series:
        """Send variable i of self to variable ``positions[i]`` of a larger key space."""
        if len(positions) != self.nvars:
            raise ShapeError("one target position per variable required")
        nv = arity + len(symbols)
        out = {}
        for k, c in self._terms.items():
            key = [0] * nv
            for e, p in zip(k, positions):
                key[p] += e
            out[tuple(key)] = c
        return Series(arity, self.trunc, out, symbols)

    # composition

    def substitute(self, images: Sequence[Series]) -> Series:
        """Simultaneous substitution of ``images[i]`` for variable i."""
        images = list(images)
        if len(images) != self.nvars:
            raise ShapeError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0]
        for g in images[1:]:
            target._check(g)
        for i, g in enumerate(images):
            if g.constant_term():
                raise CompositionError(f"image {i} has nonzero constant term")
        result = target.zero_like()
        powers: list[list[Series]] = [[g.one_like()] for g in images]
        # group by key so each product of powers is built once
        for key, c in self._terms.items():
            if sum(key) > target.trunc:
                continue
            term = target.one_like()
            for i, e in enumerate(key):
                if e:
                    pw = powers[i]
                    while len(pw) <= e:
                        pw.append(pw[-1] * images[i])
                    term = term * pw[e]
                    if not term:
                        break
            if term:
                result = result + term.scale(c)
        return result

    def __call__(self, *images: Series) -> Series:
        return self.substitute(images)

    def reversion(self) -> Series:
        """Compositional inverse of a one-variable series u + O(u^2)."""
        if self.nvars != 1:
            raise ShapeError("reversion needs a single-variable series")
        if self.constant_term():
            raise CompositionError("reversion needs zero constant term")
        if self.coefficient((1,)) != ONE:
            raise CompositionError("reversion needs linear coefficient 1")
        u = self.var_like(0)
        t = u
        for k in range(2, self.trunc + 1):
            c = self.substitute([t]).coefficient((k,))
            if c:
                t = t - Series(self.arity, self.trunc, {(k,): c}, self.symbols)
        return t

    # rendering

    def names(self, unames: Sequence[str] | None = None) -> list[str]:
        if unames is None:
            unames = ["u"] if self.arity == 1 else [f"u{i + 1}" for i in range(self.arity)]
        return list(unames) + list(self.symbols)

    def rows(self, unames: Sequence[str] | None = None) -> list[tuple[str, str]]:
        names = self.names(unames)
        return [(render_monomial(k, names), str(c)) for k, c in self.sorted_terms()]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self.rows())

    def __repr__(self) -> str:
        return f"Series(arity={self.arity}, trunc={self.trunc}, {self})"


def monomials(nvars: int, max_degree: int) -> Iterable[Exponent]:
    """All exponent vectors in nvars variables of total degree <= max_degree."""
    for key in _iproduct(range(max_degree + 1), repeat=nvars):
        if sum(key) <= max_degree:
            yield key
