from pathlib import Path

import pytest

from refcob.config import ConfigError, load, parse
from refcob.snc import BundleExpr, CartierDiv

CONFIGS = sorted((Path(__file__).parent.parent / "configs").glob("*.yaml"))

GOOD = """\
dimension: 2
components: [E1, E2]
faces: [[1], [2], [1, 2]]
symbols: [L]
trunc: 4
divisors:
  D: [1, 1]
bundles:
  B: {components: [1, 0], symbols: {L: 1}}
pseudo_seq:
  - {div: D}
  - {global: B}
  - {global: {components: [0, 1]}}
"""


def test_parse_full_document():
    ff = parse(GOOD)
    assert ff.cfg.dim == 2 and ff.cfg.m == 2 and ff.cfg.symbols == ("L",)
    assert ff.trunc == 4
    assert ff.divisors["D"] == CartierDiv((1, 1))
    assert ff.bundles["B"] == BundleExpr((1, 0), {"L": 1})
    assert len(ff.pseudo_seq) == 3
    assert ff.pseudo_seq[0].div == CartierDiv((1, 1))
    assert ff.pseudo_seq[2].global_bundle == BundleExpr((0, 1))
    assert ff.pseudo("B").is_global


def test_faces_default_to_everything():
    ff = parse("dimension: 2\ncomponents: [A, B, C]\n")
    assert len(ff.cfg.faces) == 1 + 3 + 3


@pytest.mark.parametrize("path", CONFIGS, ids=lambda p: p.name)
def test_bundled_configs_load(path):
    assert load(path).cfg.m >= 1


@pytest.mark.parametrize(
    "text, where, line",
    [
        ("dimension: 2\ncomponents: [E1]\nfaces: [[1, 2]]\n", "faces[0]", 3),
        ("dimension: 1\ncomponents: [E1, E2]\nfaces: [[1], [2], [1, 2]]\n", "faces", 3),
        ("dimension: 2\ncomponents: [E1, E2]\nfaces: [[1, 2]]\n", "faces", 3),
        ("dimension: x\ncomponents: [E1]\n", "dimension", 1),
        ("dimension: 1\n", "components", 1),
        ("dimension: 1\ncomponents: [E1]\ndivisors:\n  D: [1, 2]\n", "divisors.D", 4),
        ("dimension: 1\ncomponents: [E1]\ndivisors:\n  D: [-1]\n", "divisors.D[0]", 4),
        ("dimension: 1\ncomponents: [E1]\npseudo_seq:\n  - {div: Q}\n", "pseudo_seq[0].div", 4),
        ("dimension: 1\ncomponents: [E1]\nbundles:\n  B: {components: [1], symbols: {M: 1}}\n", "bundles.B.symbols", 4),
        ("dimension: 1\ncomponents: [E1]\ncolour: red\n", "colour", 3),
        ("dimension: 1\ncomponents: [E1]\ndivisors: {D: [1]}\nbundles:\n  D: {components: [1]}\n", "bundles.D", 5),
    ],
)
def test_errors_carry_context(text, where, line):
    with pytest.raises(ConfigError) as err:
        parse(text)
    assert err.value.where == where
    assert err.value.line == line


def test_syntax_error_has_line():
    with pytest.raises(ConfigError) as err:
        parse("dimension: 1\ncomponents: [E1\n")
    assert err.value.line is not None


def test_missing_file():
    with pytest.raises(ConfigError):
        load("/nonexistent/frame.yaml")
