import subprocess
import sys
from pathlib import Path

import pytest

from refcob.cli import main

ROOT = Path(__file__).parent.parent
TWO = str(ROOT / "configs" / "two_lines.yaml")
TRI = str(ROOT / "configs" / "triangle.yaml")
FREE = str(ROOT / "configs" / "free_bundle.yaml")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return [tuple(line.split("\t")) for line in out.splitlines()]


def test_expand(capsys):
    code, out, _ = run(capsys, "fgl", "expand", "--trunc", "1", "--format", "rows")
    assert code == 0 and rows(out) == [("u", "1"), ("v", "1")]
    code, out, _ = run(capsys, "fgl", "expand", "--trunc", "2", "--format", "rows")
    assert rows(out)[-1] == ("u*v", "-2*m1")
    code, out, _ = run(capsys, "--trunc", "2", "fgl", "expand")
    assert out.splitlines()[0].split() == ["monomial", "coefficient"]


def test_bad_trunc_is_usage_error(capsys):
    code, _, err = run(capsys, "fgl", "expand", "--trunc", "0")
    assert code == 2 and "trunc" in err


def test_nsum(capsys):
    _, out, _ = run(capsys, "fgl", "nsum", "1", "--format", "rows")
    assert rows(out) == [("u1", "1")]
    _, out, _ = run(capsys, "fgl", "nsum", "1", "1", "--trunc", "2", "--format", "rows")
    assert rows(out) == [("u1", "1"), ("u2", "1"), ("u1*u2", "-2*m1")]
    code, out, _ = run(capsys, "fgl", "nsum", "0", "--format", "rows")
    assert code == 0 and out == ""
    code, _, _ = run(capsys, "fgl", "nsum")
    assert code == 2


def test_jdecompose(capsys):
    _, out, _ = run(capsys, "fgl", "jdecompose", "1", "1", "--trunc", "2", "--format", "rows")
    assert rows(out) == [("10", "1", "1"), ("01", "1", "1"), ("11", "1", "-2*m1")]
    _, out, _ = run(capsys, "fgl", "jdecompose", "1", "--format", "rows")
    assert rows(out) == [("1", "1", "1")]
    _, out, _ = run(capsys, "fgl", "jdecompose", "0", "1", "--format", "rows")
    assert all(r[0][0] == "0" for r in rows(out))


def test_inverse(capsys):
    _, out, _ = run(capsys, "fgl", "inverse", "--trunc", "2", "--format", "rows")
    assert rows(out) == [("u", "-1"), ("u^2", "-2*m1")]


def test_divclass(capsys):
    _, out, _ = run(capsys, "divclass", "--config", TWO, "--divisor", "E1", "--format", "rows")
    assert rows(out) == [("{E1}", "1", "1")]
    _, out, _ = run(capsys, "divclass", "--config", TWO, "--divisor", "twoE1", "--format", "rows")
    assert rows(out) == [("{E1}", "1", "2"), ("{E1}", "E1", "-2*m1")]
    code, _, err = run(capsys, "divclass", "--config", TRI, "--divisor", "E1", "--seq", "C,Q")
    assert code == 2 and "Q" in err


def test_divclass_inadmissible(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text(
        "dimension: 3\ncomponents: [E1, E2, E3]\n"
        "divisors:\n  A: [1, 0, 0]\n  P: [0, 2, 1]\n  Q: [0, 1, 2]\n"
        "pseudo_seq:\n  - {div: P}\n  - {div: Q}\n"
    )
    code, _, err = run(capsys, "divclass", "--config", str(cfg), "--divisor", "A")
    assert code == 2
    assert "{E1}" in err and "prefix 2" in err


def test_intersect(capsys):
    _, out, _ = run(capsys, "intersect", "--config", TWO, "--C", "E1", "--D", "E1", "--format", "rows")
    assert rows(out) == [("{E1}", "1", "1")]
    _, via_global, _ = run(capsys, "intersect", "--config", TWO, "--C", "OD", "--D", "OD", "--format", "rows")
    _, via_div, _ = run(capsys, "divclass", "--config", TWO, "--divisor", "D", "--seq", "", "--format", "rows")
    assert via_global == via_div
    code, _, err = run(capsys, "intersect", "--config", TWO, "--C", "D", "--D", "E1")
    assert code == 2 and "supported" in err
    _, out, _ = run(capsys, "intersect", "--config", FREE, "--C", "L", "--D", "L", "--class", "E1", "--format", "rows")
    assert rows(out) == [("{E1}", "L", "1")]
    code, _, _ = run(capsys, "intersect", "--config", TWO, "--C", "E1", "--D", "E1", "--class", "E9")
    assert code == 2


def test_verify_axioms(capsys):
    code, out, _ = run(capsys, "verify", "axioms")
    assert code == 0
    assert out.splitlines()[-1].startswith("summary status=pass")


def test_verify_file(capsys):
    code, out, _ = run(capsys, "verify", "file", "--config", TRI)
    assert code == 0 and "status=fail" not in out
    code2, out2, _ = run(capsys, "verify", TRI)
    assert (code2, out2) == (code, out)


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "suite", "--max-m", "2", "--max-d", "2")
    assert code == 0
    _, par, _ = run(capsys, "verify", "suite", "--max-m", "2", "--max-d", "2", "--jobs", "2")
    assert par == out


def test_corrupted_file(tmp_path, capsys):
    bad = tmp_path / "broken.yaml"
    bad.write_text("dimension: 2\ncomponents: [E1, E2\nfaces: [[1]]\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "line" in err
    code, _, err = run(capsys, "divclass", "--config", str(bad), "--divisor", "E1")
    assert code == 2


def test_unknown_command(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


COMMANDS = [
    ["fgl", "expand", "--trunc", "4"],
    ["fgl", "nsum", "2", "-1", "1", "--trunc", "4"],
    ["fgl", "jdecompose", "2", "1", "--trunc", "4", "--format", "rows"],
    ["fgl", "inverse"],
] + [
    cmd
    for path in sorted((ROOT / "configs").glob("*.yaml"))
    for cmd in (
        ["divclass", "--config", str(path), "--divisor", "E1"],
        ["intersect", "--config", str(path), "--C", "E1", "--D", "E1", "--seq", "", "--class", "unit"],
        ["verify", "file", "--config", str(path)],
    )
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(Path(x).name if "/" in x else x for x in a))
def test_output_is_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "refcob.cli"] + argv
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
