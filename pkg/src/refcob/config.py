"""YAML frame descriptions.

A document looks like::

    dimension: 2
    components: [E1, E2]
    faces: [[1], [2], [1, 2]]      # 1-based; the empty face is implicit
    symbols: [L]                   # optional free line bundles
    trunc: 4                       # optional
    divisors:
      D: [1, 1]
    bundles:
      B: {components: [1, 0], symbols: {L: 1}}
    pseudo_seq:
      - {div: D}
      - {global: B}

Omitting ``faces`` means every set of at most ``dimension`` components.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import yaml

from .snc import BundleExpr, CartierDiv, FaceError, PseudoDiv, SncConfig, global_pd

KNOWN_KEYS = {"dimension", "components", "faces", "symbols", "trunc", "divisors", "bundles", "pseudo_seq"}


class ConfigError(ValueError):
    def __init__(self, message: str, where: str = "", line: int | None = None):
        self.where = where
        self.line = line
        prefix = []
        if line is not None:
            prefix.append(f"line {line}")
        if where:
            prefix.append(where)
        super().__init__(f"{': '.join(prefix)}: {message}" if prefix else message)


@dataclass(frozen=True)
class FrameFile:
    cfg: SncConfig
    trunc: int | None = None
    divisors: dict = field(default_factory=dict)
    bundles: dict = field(default_factory=dict)
    pseudo_seq: tuple = ()

    def pseudo(self, name: str) -> PseudoDiv:
        """A divisor name gives a divisorial entry, a bundle name a global one."""
        if name in self.divisors:
            return PseudoDiv(div=self.divisors[name])
        if name in self.bundles:
            return global_pd(self.bundles[name])
        raise ConfigError(f"no divisor or bundle named {name!r}")

    def divisor(self, name: str) -> CartierDiv:
        if name not in self.divisors:
            raise ConfigError(f"no divisor named {name!r}")
        return self.divisors[name]


class _Lines:
    """Line lookup for a dotted path into the composed YAML node tree."""

    def __init__(self, node):
        self.root = node

    def of(self, *path) -> int | None:
        node = self.root
        line = node.start_mark.line + 1 if node is not None else None
        for step in path:
            if isinstance(node, yaml.MappingNode):
                nxt = None
                for k, v in node.value:
                    if k.value == step:
                        nxt = v
                        break
            elif isinstance(node, yaml.SequenceNode) and isinstance(step, int) and step < len(node.value):
                nxt = node.value[step]
            else:
                nxt = None
            if nxt is None:
                return line
            node = nxt
            line = node.start_mark.line + 1
        return line


def _where(*path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _int(value, lines: _Lines, *path, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", _where(*path), lines.of(*path))
    if minimum is not None and value < minimum:
        raise ConfigError(f"must be at least {minimum}", _where(*path), lines.of(*path))
    return value


def _names(value, lines: _Lines, key: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise ConfigError("expected a list of names", key, lines.of(key))
    if len(set(value)) != len(value):
        raise ConfigError("names must be distinct", key, lines.of(key))
    return tuple(value)


def _bundle(value, doc_symbols, m: int, lines: _Lines, *path) -> BundleExpr:
    if not isinstance(value, dict):
        raise ConfigError("a bundle is a mapping with 'components' and optional 'symbols'", _where(*path), lines.of(*path))
    extra = set(value) - {"components", "symbols"}
    if extra:
        raise ConfigError(f"unknown keys {sorted(extra)}", _where(*path), lines.of(*path))
    comps = value.get("components", [0] * m)
    if not isinstance(comps, list) or len(comps) != m:
        raise ConfigError(f"expected {m} component exponents", _where(*path, "components"), lines.of(*path, "components"))
    comps = [_int(a, lines, *path, "components", i) for i, a in enumerate(comps)]
    syms = value.get("symbols", {}) or {}
    if not isinstance(syms, dict):
        raise ConfigError("expected a mapping of symbol exponents", _where(*path, "symbols"), lines.of(*path, "symbols"))
    for name, a in syms.items():
        if name not in doc_symbols:
            raise ConfigError(f"undeclared symbol {name!r}", _where(*path, "symbols"), lines.of(*path, "symbols"))
        _int(a, lines, *path, "symbols", name)
    return BundleExpr(tuple(comps), dict(syms))


def parse(text: str) -> FrameFile:
    """Parse and validate a frame document."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(str(getattr(exc, "problem", None) or exc), "", mark.line + 1 if mark else None) from None
    lines = _Lines(root)
    if not isinstance(doc, dict):
        raise ConfigError("the document must be a mapping", "", lines.of())
    unknown = set(doc) - KNOWN_KEYS
    if unknown:
        key = sorted(unknown, key=str)[0]
        raise ConfigError(f"unknown key {key!r}", str(key), lines.of(key))
    for key in ("dimension", "components"):
        if key not in doc:
            raise ConfigError("missing required field", key, lines.of())

    dim = _int(doc["dimension"], lines, "dimension", minimum=0)
    comps = _names(doc["components"], lines, "components")
    m = len(comps)
    symbols = _names(doc.get("symbols", []) or [], lines, "symbols")

    if "faces" in doc:
        raw_faces = doc["faces"] or []
        if not isinstance(raw_faces, list):
            raise ConfigError("expected a list of index lists", "faces", lines.of("faces"))
        faces = []
        for i, J in enumerate(raw_faces):
            if not isinstance(J, list) or not J:
                raise ConfigError("a face is a nonempty list of component indices", _where("faces", i), lines.of("faces", i))
            idx = [_int(k, lines, "faces", i, j, minimum=1) for j, k in enumerate(J)]
            if max(idx) > m:
                raise ConfigError(f"index {max(idx)} exceeds the {m} components", _where("faces", i), lines.of("faces", i))
            faces.append(tuple(sorted(k - 1 for k in idx)))
    else:
        faces = [J for r in range(1, min(m, dim) + 1) for J in combinations(range(m), r)]
    try:
        cfg = SncConfig(dim, comps, frozenset(faces), symbols)
    except (FaceError, ValueError) as exc:
        key = "faces" if isinstance(exc, FaceError) else "components"
        raise ConfigError(str(exc), key, lines.of(key)) from None

    trunc = None
    if doc.get("trunc") is not None:
        trunc = _int(doc["trunc"], lines, "trunc", minimum=1)

    divisors = {}
    for name, v in (doc.get("divisors") or {}).items():
        path = ("divisors", name)
        if not isinstance(v, list) or len(v) != m:
            raise ConfigError(f"expected {m} multiplicities", _where(*path), lines.of(*path))
        divisors[str(name)] = CartierDiv(tuple(_int(n, lines, *path, i, minimum=0) for i, n in enumerate(v)))

    bundles = {}
    for name, v in (doc.get("bundles") or {}).items():
        if str(name) in divisors:
            raise ConfigError("name already used by a divisor", _where("bundles", name), lines.of("bundles", name))
        bundles[str(name)] = _bundle(v, symbols, m, lines, "bundles", name)

    seq = []
    for i, entry in enumerate(doc.get("pseudo_seq") or []):
        path = ("pseudo_seq", i)
        if not isinstance(entry, dict) or len(entry) != 1 or next(iter(entry)) not in ("div", "global"):
            raise ConfigError("each entry is {div: name} or {global: bundle}", _where(*path), lines.of(*path))
        kind, ref = next(iter(entry.items()))
        if kind == "div":
            if ref not in divisors:
                raise ConfigError(f"unknown divisor {ref!r}", _where(*path, "div"), lines.of(*path, "div"))
            seq.append(PseudoDiv(div=divisors[ref]))
        elif isinstance(ref, str):
            if ref not in bundles:
                raise ConfigError(f"unknown bundle {ref!r}", _where(*path, "global"), lines.of(*path, "global"))
            seq.append(global_pd(bundles[ref]))
        else:
            seq.append(global_pd(_bundle(ref, symbols, m, lines, *path, "global")))

    return FrameFile(cfg, trunc, divisors, bundles, tuple(seq))


def load(path) -> FrameFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)
