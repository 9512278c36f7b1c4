"""Combinatorial SNC frames, divisors and pseudo-divisors on them.

A frame is an ambient of dimension ``dim`` with components E_1..E_m and a
downward-closed collection of nonempty faces E^J (J a set of component indices).
Components are 0-based in code; configuration files use 1-based indices.

Scheme-theoretic intersections of frame divisors are modelled by monomial ideals
in local coordinates: at a point of the face E^J' the components in J' are the
coordinate hyperplanes, and an intersection is Cartier there iff its monomial
generators have a least element under componentwise order.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

Face = tuple[int, ...]


class FaceError(ValueError):
    """A face index set that is not part of the frame."""


class PreconditionError(ValueError):
    pass


class ContractViolation(AssertionError):
    pass


def face_key(J: Face) -> tuple:
    return (len(J), J)


@dataclass(frozen=True)
class SncConfig:
    dim: int
    components: tuple[str, ...]
    faces: frozenset
    symbols: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        faces = frozenset(tuple(sorted(J)) for J in self.faces) | {()}
        object.__setattr__(self, "faces", faces)
        m = len(self.components)
        if len(set(self.components)) != m:
            raise ValueError("component names must be distinct")
        if set(self.components) & set(self.symbols):
            raise ValueError("free symbols must not reuse component names")
        for J in faces:
            if any(k < 0 or k >= m for k in J):
                raise FaceError(f"face {J} refers to a missing component")
            if len(set(J)) != len(J):
                raise FaceError(f"face {J} repeats a component")
            if len(J) > self.dim:
                raise FaceError(f"face {J} has negative dimension in a {self.dim}-dimensional frame")
            for k in J:
                sub = tuple(i for i in J if i != k)
                if sub not in faces:
                    raise FaceError(f"faces are not downward closed: {J} present but {sub} missing")

    @property
    def m(self) -> int:
        return len(self.components)

    def has(self, J: Sequence[int]) -> bool:
        return tuple(sorted(J)) in self.faces

    def check_face(self, J: Sequence[int]) -> Face:
        J = tuple(sorted(J))
        if J not in self.faces:
            raise FaceError(f"{self.face_name(J)} is not a face of the frame")
        return J

    def sorted_faces(self) -> list[Face]:
        return sorted(self.faces, key=face_key)

    def neighbours(self, J: Face) -> tuple[int, ...]:
        """Components k outside J that meet the face E^J."""
        return tuple(k for k in range(self.m) if k not in J and tuple(sorted(J + (k,))) in self.faces)

    def faces_over(self, J: Face) -> list[Face]:
        Js = set(J)
        return [K for K in self.sorted_faces() if Js <= set(K)]

    def face_name(self, J: Sequence[int]) -> str:
        return "{" + ",".join(self.components[k] for k in J) + "}"

    def canonical(self) -> dict:
        return {
            "dimension": self.dim,
            "components": list(self.components),
            "faces": [list(J) for J in self.sorted_faces() if J],
            "symbols": list(self.symbols),
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def frame(dim: int, m: int, faces: Sequence[Sequence[int]] | None = None, symbols: Sequence[str] = ()) -> SncConfig:
    """Convenience constructor; ``faces=None`` means every subset of size <= dim."""
    if faces is None:
        faces = [J for r in range(1, min(m, dim) + 1) for J in combinations(range(m), r)]
    return SncConfig(dim, tuple(f"E{i + 1}" for i in range(m)), frozenset(tuple(J) for J in faces), tuple(symbols))


@dataclass(frozen=True)
class CartierDiv:
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(n) for n in self.mults))
        if any(n < 0 for n in self.mults):
            raise ValueError("Cartier divisors here are effective")
        object.__setattr__(self, "_support", frozenset(k for k, n in enumerate(self.mults) if n > 0))

    def support(self) -> frozenset:
        return self._support

    def is_zero(self) -> bool:
        return not any(self.mults)

    def __add__(self, other: CartierDiv) -> CartierDiv:
        return CartierDiv(tuple(a + b for a, b in zip(self.mults, other.mults)))


@dataclass(frozen=True)
class BundleExpr:
    """Formal tensor product of O(E_k)^a_k and named free line bundles."""

    component_part: tuple[int, ...]
    free_part: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "component_part", tuple(int(a) for a in self.component_part))
        if isinstance(self.free_part, dict):
            items = self.free_part.items()
        else:
            items = self.free_part
        merged: dict[str, int] = {}
        for name, a in items:
            merged[name] = merged.get(name, 0) + int(a)
        object.__setattr__(self, "free_part", tuple(sorted((n, a) for n, a in merged.items() if a)))

    def __mul__(self, other: BundleExpr) -> BundleExpr:
        comp = tuple(a + b for a, b in zip(self.component_part, other.component_part))
        return BundleExpr(comp, self.free_part + other.free_part)

    def exponents(self, symbols: Sequence[str]) -> tuple[int, ...]:
        free = dict(self.free_part)
        unknown = set(free) - set(symbols)
        if unknown:
            raise ValueError(f"bundle uses undeclared symbols {sorted(unknown)}")
        return self.component_part + tuple(free.get(s, 0) for s in symbols)

    def is_trivial(self) -> bool:
        return not any(self.component_part) and not self.free_part


@dataclass(frozen=True)
class PseudoDiv:
    """Either a frame divisor (|D|, O(D), s_D) or a global (Y, L, 0)."""

    div: CartierDiv | None = None
    global_bundle: BundleExpr | None = None

    def __post_init__(self):
        if (self.div is None) == (self.global_bundle is None):
            raise ValueError("a pseudo-divisor is either divisorial or global")

    @property
    def is_global(self) -> bool:
        return self.global_bundle is not None

    @property
    def bundle(self) -> BundleExpr:
        if self.global_bundle is not None:
            return self.global_bundle
        return BundleExpr(self.div.mults)

    def support(self) -> frozenset | None:
        """Components carrying the support; ``None`` means all of Y."""
        return None if self.is_global else self.div.support()

    def is_zero(self) -> bool:
        return not self.is_global and self.div.is_zero()


def divisorial(*mults: int) -> PseudoDiv:
    if len(mults) == 1 and isinstance(mults[0], (tuple, list)):
        mults = tuple(mults[0])
    return PseudoDiv(div=CartierDiv(tuple(mults)))


def global_pd(bundle: BundleExpr) -> PseudoDiv:
    return PseudoDiv(global_bundle=bundle)


def zero_pd(m: int) -> PseudoDiv:
    return divisorial(*(0,) * m)


PseudoSeq = tuple  # ordered tuple of PseudoDiv


def pd_sum(a: PseudoDiv, b: PseudoDiv) -> PseudoDiv:
    if not a.is_global and not b.is_global:
        return PseudoDiv(div=a.div + b.div)
    return global_pd(a.bundle * b.bundle)


def supported_in(c: PseudoDiv, d: PseudoDiv) -> bool:
    if d.is_global:
        return True
    if c.is_global:
        return False
    return c.div.support() <= d.div.support()


def face_in_support(cfg: SncConfig, J: Sequence[int], D: PseudoDiv) -> bool:
    J = cfg.check_face(J)
    if D.is_global:
        return True
    return any(D.div.mults[k] > 0 for k in J)


def leading(cfg: SncConfig, J: Sequence[int], seq: Sequence[PseudoDiv]) -> int | None:
    """0-based index of the leading pseudo-divisor for E^J, or None."""
    J = cfg.check_face(J)
    for i, D in enumerate(seq):
        if not face_in_support(cfg, J, D):
            return i
    return None


FULL = "full"


def restrict(cfg: SncConfig, J: Face, D: PseudoDiv):
    """div(D) restricted to E^J: ``FULL`` or a multiplicity vector (zero off the face's neighbours)."""
    if face_in_support(cfg, J, D):
        return FULL
    nb = set(cfg.neighbours(J))
    return tuple(n if k in nb else 0 for k, n in enumerate(D.div.mults))


def least_element(vectors: Sequence[tuple[int, ...]]) -> tuple[int, ...] | None:
    for v in vectors:
        if all(all(a <= b for a, b in zip(v, w)) for w in vectors):
            return v
    return None


def intersection_is_cartier(cfg: SncConfig, J: Sequence[int], divs: Sequence) -> bool:
    J = cfg.check_face(J)
    vecs = [v for v in divs if v != FULL]
    if not vecs:
        return True
    if any(not any(v) for v in vecs):
        return True
    for K in cfg.faces_over(J):
        coords = [k for k in K if k not in J]
        local = [tuple(v[k] for k in coords) for v in vecs]
        if least_element(local) is None:
            return False
    return True


def admissibility_failure(cfg: SncConfig, J: Sequence[int], seq: Sequence[PseudoDiv]) -> int | None:
    """Length of the first prefix whose intersection on E^J is not Cartier, or None."""
    return _admissibility_failure(cfg, cfg.check_face(J), tuple(seq))


@lru_cache(maxsize=1 << 18)
def _admissibility_failure(cfg: SncConfig, J: Face, seq: tuple) -> int | None:
    restricted = []
    for s, D in enumerate(seq, start=1):
        restricted.append(restrict(cfg, J, D))
        if not intersection_is_cartier(cfg, J, restricted):
            return s
    return None


def face_map_admissible(cfg: SncConfig, J: Sequence[int], seq: Sequence[PseudoDiv]) -> bool:
    return admissibility_failure(cfg, J, seq) is None


def prefix_intersection(cfg: SncConfig, J: Sequence[int], seq: Sequence[PseudoDiv], s: int):
    """The Cartier divisor cut out by the first s entries on E^J.

    Returns ``FULL``, a multiplicity vector (all zeros for the empty divisor),
    or None when the intersection is not Cartier.
    """
    J = cfg.check_face(J)
    restricted = [restrict(cfg, J, D) for D in seq[:s]]
    if not intersection_is_cartier(cfg, J, restricted):
        return None
    vecs = [v for v in restricted if v != FULL]
    if not vecs:
        return FULL
    m = cfg.m
    if any(not any(v) for v in vecs):
        return (0,) * m
    return tuple(min(v[k] for v in vecs) for k in range(m))


def divisor_faces(cfg: SncConfig, E: CartierDiv) -> list[Face]:
    supp = E.support()
    return [J for J in cfg.sorted_faces() if J and set(J) <= supp]


def divisor_admissibility_failure(cfg: SncConfig, E: CartierDiv, seq: Sequence[PseudoDiv]) -> tuple[Face, int] | None:
    for J in divisor_faces(cfg, E):
        s = admissibility_failure(cfg, J, seq)
        if s is not None:
            return J, s
    return None


def divisor_admissible(cfg: SncConfig, E: CartierDiv, seq: Sequence[PseudoDiv]) -> bool:
    return divisor_admissibility_failure(cfg, E, seq) is None


def good_position(cfg: SncConfig, E: CartierDiv, seq: Sequence[PseudoDiv]) -> bool:
    bad = admissibility_failure(cfg, (), seq)
    if bad is not None:
        raise PreconditionError(f"the ambient is not admissible: prefix {bad} is not Cartier")
    lead = leading(cfg, (), seq)
    if lead is None:
        result = True
    else:
        # a global entry always contains the ambient, so the leading entry is divisorial
        result = not seq[lead].is_global
    if result and not divisor_admissible(cfg, E, seq):
        J, s = divisor_admissibility_failure(cfg, E, seq)
        raise ContractViolation(f"good position holds but face {cfg.face_name(J)} fails at prefix {s}")
    return result


def is_smooth(cfg: SncConfig, E: CartierDiv) -> bool:
    """Reduced with pairwise-disjoint components."""
    if any(n > 1 for n in E.mults):
        return False
    return all(len(J) < 2 or len(set(J) & E.support()) < 2 for J in cfg.faces)


@dataclass(frozen=True)
class SupportSet:
    """Faces lying inside a closed union of components; closed under going deeper."""

    faces: frozenset

    @classmethod
    def of_components(cls, cfg: SncConfig, comps) -> SupportSet:
        comps = set(comps)
        return cls(frozenset(J for J in cfg.faces if comps & set(J)))

    @classmethod
    def everything(cls, cfg: SncConfig) -> SupportSet:
        return cls(cfg.faces)

    @classmethod
    def of(cls, cfg: SncConfig, D: PseudoDiv) -> SupportSet:
        if D.is_global:
            return cls.everything(cfg)
        return cls.of_components(cfg, D.div.support())

    def __and__(self, other: SupportSet) -> SupportSet:
        return SupportSet(self.faces & other.faces)

    def __contains__(self, J) -> bool:
        return tuple(J) in self.faces

    def is_closed(self, cfg: SncConfig) -> bool:
        return all(K in self.faces for J in self.faces for K in cfg.faces_over(J))


@dataclass(frozen=True)
class Transport:
    """Bookkeeping for splitting one component into disjoint parts."""

    coarse: SncConfig
    fine: SncConfig
    component_map: tuple[tuple[int, ...], ...]
    face_map: dict = field(hash=False, compare=False)

    def divisor(self, E: CartierDiv) -> CartierDiv:
        out = [0] * self.fine.m
        for i, n in enumerate(E.mults):
            for j in self.component_map[i]:
                out[j] = n
        return CartierDiv(tuple(out))

    def bundle(self, b: BundleExpr) -> BundleExpr:
        out = [0] * self.fine.m
        for i, a in enumerate(b.component_part):
            for j in self.component_map[i]:
                out[j] = a
        return BundleExpr(tuple(out), b.free_part)

    def pseudo(self, D: PseudoDiv) -> PseudoDiv:
        if D.is_global:
            return global_pd(self.bundle(D.global_bundle))
        return PseudoDiv(div=self.divisor(D.div))

    def seq(self, seq: Sequence[PseudoDiv]) -> tuple:
        return tuple(self.pseudo(D) for D in seq)


def split_component(cfg: SncConfig, k: int, parts: int) -> tuple[SncConfig, Transport]:
    if not 0 <= k < cfg.m:
        raise IndexError(f"no component {k}")
    if parts < 2:
        raise ValueError("a split needs at least two parts")
    cmap = []
    for i in range(cfg.m):
        if i < k:
            cmap.append((i,))
        elif i == k:
            cmap.append(tuple(range(k, k + parts)))
        else:
            cmap.append((i + parts - 1,))
    names = list(cfg.components[:k]) + [f"{cfg.components[k]}_{q + 1}" for q in range(parts)] + list(cfg.components[k + 1:])
    face_map = {}
    new_faces = set()
    for J in cfg.faces:
        if k in J:
            images = []
            for q in range(parts):
                img = tuple(sorted(k + q if i == k else cmap[i][0] for i in J))
                images.append(img)
            face_map[J] = tuple(images)
        else:
            face_map[J] = (tuple(sorted(cmap[i][0] for i in J)),)
        new_faces.update(face_map[J])
    fine = SncConfig(cfg.dim, tuple(names), frozenset(new_faces), cfg.symbols)
    return fine, Transport(cfg, fine, tuple(cmap), face_map)


def enumerate_configs(max_m: int = 3, max_d: int = 3) -> Iterator[SncConfig]:
    """Every frame with m <= max_m components, dim <= max_d and any downward-closed faces."""
    for m in range(max_m + 1):
        subsets = [J for r in range(1, m + 1) for J in combinations(range(m), r)]
        for d in range(max_d + 1):
            allowed = [J for J in subsets if len(J) <= d]
            for mask in range(1 << len(allowed)):
                chosen = {allowed[i] for i in range(len(allowed)) if mask >> i & 1}
                if all(tuple(x for x in J if x != k) in chosen or len(J) == 1 for J in chosen for k in J):
                    yield frame(d, m, sorted(chosen, key=face_key))
