"""Command-line front end.

    refcob fgl expand --trunc 3
    refcob fgl nsum 1 2 --trunc 3
    refcob fgl jdecompose 1 1
    refcob fgl inverse
    refcob divclass --config configs/two_lines.yaml --divisor D
    refcob intersect --config configs/two_lines.yaml --C C --D D --class unit
    refcob verify axioms | suite | file --config PATH

Exit status: 0 on success, 1 when a verification fails, 2 for usage, parse or
precondition errors.  Coefficients are printed in the rational model where the
logarithm is u + sum m_i u^(i+1); other normalisations of the Lazard ring give
different printed coefficients for the same identities.
"""
from __future__ import annotations

import argparse
import sys
from typing import Iterable, Sequence

from . import fgl, verify
from .config import ConfigError, FrameFile, load
from .fgl import DEFAULT_TRUNC, make_context
from .omega import AdmissibilityError, FaceClass, SupportError, divisor_class, face_generator, intersect, unit
from .series import Series, render_monomial
from .snc import FaceError, PreconditionError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering


def _table(rows: Sequence[tuple[str, ...]], header: Sequence[str], indent: str = "") -> list[str]:
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    fmt = lambda cells: indent + "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return [fmt(header)] + [fmt(r) for r in rows]


def series_rows(s: Series, names: Sequence[str]) -> list[tuple[str, str]]:
    return [(render_monomial(key, names), str(c)) for key, c in s.sorted_terms()]


def render_series(s: Series, names: Sequence[str], fmt: str) -> list[str]:
    rows = series_rows(s, names)
    if fmt == "rows":
        return ["\t".join(r) for r in rows]
    return _table(rows, ("monomial", "coefficient"))


def render_sections(sections: Iterable[tuple[str, list[tuple[str, str]]]], label: str, fmt: str) -> list[str]:
    out = []
    for name, rows in sections:
        if fmt == "rows":
            out += [f"{name}\t{m}\t{c}" for m, c in rows]
        else:
            out.append(f"{label} {name}")
            out += _table(rows, ("monomial", "coefficient"), indent="  ")
    return out


def render_class(x: FaceClass, fmt: str) -> list[str]:
    grouped: dict[str, list] = {}
    order = []
    for face, mono, c in x.render_rows():
        if face not in grouped:
            grouped[face] = []
            order.append(face)
        grouped[face].append((mono, c))
    return render_sections(((f, grouped[f]) for f in order), "face", fmt)


# ---------------------------------------------------------------------------
# commands


def _trunc(args, default: int = DEFAULT_TRUNC) -> int:
    t = getattr(args, "trunc", None)
    t = default if t is None else t
    if t < 1:
        raise UsageError("--trunc must be at least 1")
    return t


def _mults(args) -> list[int]:
    if not args.mults:
        raise UsageError("give at least one multiplicity")
    return list(args.mults)


def cmd_fgl_expand(args) -> list[str]:
    ctx = make_context(_trunc(args))
    return render_series(ctx.F, ("u", "v"), args.format)


def cmd_fgl_nsum(args) -> list[str]:
    mults = _mults(args)
    ctx = make_context(_trunc(args))
    names = [f"u{i + 1}" for i in range(len(mults))]
    return render_series(fgl.formal_sum(ctx, mults), names, args.format)


def cmd_fgl_jdecompose(args) -> list[str]:
    mults = _mults(args)
    ctx = make_context(_trunc(args))
    names = [f"u{i + 1}" for i in range(len(mults))]
    dec = fgl.j_decompose(fgl.formal_sum(ctx, mults), len(mults))
    sections = [("".join(map(str, J)), series_rows(s, names)) for J, s in sorted(dec.parts.items(), key=_bits_key) if s]
    return render_sections(sections, "J =", args.format)


def _bits_key(item):
    J = item[0]
    return (sum(J), tuple(-j for j in J))


def cmd_fgl_inverse(args) -> list[str]:
    ctx = make_context(_trunc(args))
    return render_series(fgl.formal_inverse(ctx), ("u",), args.format)


def _frame(args) -> tuple[FrameFile, object]:
    if not getattr(args, "config", None):
        raise UsageError("--config PATH is required")
    ff = load(args.config)
    t = getattr(args, "trunc", None)
    if t is None:
        t = ff.trunc if ff.trunc is not None else max(DEFAULT_TRUNC, ff.cfg.dim)
    if t < 1:
        raise UsageError("--trunc must be at least 1")
    if t < ff.cfg.dim:
        raise UsageError(f"--trunc {t} is below the frame dimension {ff.cfg.dim}")
    return ff, make_context(t)


def _seq(ff: FrameFile, names: str | None) -> tuple:
    if names is None:
        return ff.pseudo_seq
    return tuple(ff.pseudo(n) for n in names.split(",") if n)


def cmd_divclass(args) -> list[str]:
    ff, ctx = _frame(args)
    E = ff.divisor(args.divisor)
    if E.is_zero():
        raise UsageError(f"divisor {args.divisor} is zero and has no divisor class")
    x, _ = divisor_class(ff.cfg, ctx, E, _seq(ff, args.seq))
    return render_class(x, args.format)


def _class_spec(ff: FrameFile, ctx, spec: str) -> FaceClass:
    if spec == "unit":
        return unit(ff.cfg, ctx)
    names = [n.strip() for n in spec.strip("{}").split(",") if n.strip()]
    index = {n: i for i, n in enumerate(ff.cfg.components)}
    missing = [n for n in names if n not in index]
    if missing or not names:
        raise UsageError(f"class must be 'unit' or a face such as E1,E2; got {spec!r}")
    return face_generator(ff.cfg, ctx, [index[n] for n in names])


def cmd_intersect(args) -> list[str]:
    ff, ctx = _frame(args)
    x = _class_spec(ff, ctx, args.cls)
    y, _ = intersect(ff.pseudo(args.C), ff.pseudo(args.D), _seq(ff, args.seq), x)
    return render_class(y, args.format)


def cmd_verify(args) -> tuple[list[str], bool]:
    scope = args.scope
    if scope == "axioms":
        reports = verify.fgl_axioms(_trunc(args))
    elif scope == "suite":
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        reports = verify.sweep(args.max_m, args.max_d, getattr(args, "trunc", None), jobs=args.jobs)
    else:
        if scope != "file":
            args.config = scope
        ff, ctx = _frame(args)
        reports = verify.verify_frame_file(ff, ctx)
    ok = all(r.ok for r in reports)
    lines = [r.render() for r in reports]
    lines.append(f"summary status={'pass' if ok else 'fail'} reports={len(reports)} failed={sum(not r.ok for r in reports)}")
    return lines, ok


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--trunc", type=int, default=argparse.SUPPRESS, help="total-degree truncation")
    p.add_argument("--format", choices=("table", "rows"), default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(prog="refcob", description="Refined divisor classes in a face-module model.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("fgl", help="formal group law expansions")
    gs = g.add_subparsers(dest="fgl_command", required=True)
    gs.add_parser("expand", parents=[common], help="F(u, v)").set_defaults(run=cmd_fgl_expand)
    for name, fn, text in (("nsum", cmd_fgl_nsum, "n1 u1 +F ... +F nm um"), ("jdecompose", cmd_fgl_jdecompose, "the J-parts of a formal sum")):
        q = gs.add_parser(name, parents=[common], help=text)
        q.add_argument("mults", type=int, nargs="*")
        q.set_defaults(run=fn)
    gs.add_parser("inverse", parents=[common], help="the formal inverse i(u)").set_defaults(run=cmd_fgl_inverse)

    d = sub.add_parser("divclass", parents=[common], help="refined divisor class of a named divisor")
    d.add_argument("--config", required=True)
    d.add_argument("--divisor", required=True)
    d.add_argument("--seq", help="comma-separated divisor/bundle names; default is the file's pseudo_seq")
    d.set_defaults(run=cmd_divclass)

    i = sub.add_parser("intersect", parents=[common], help="intersect a class with C supported in D")
    i.add_argument("--config", required=True)
    i.add_argument("--C", required=True)
    i.add_argument("--D", required=True)
    i.add_argument("--seq")
    i.add_argument("--class", dest="cls", default="unit", help="'unit' or a face like E1,E2")
    i.set_defaults(run=cmd_intersect)

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("scope", help="axioms, suite, file, or a path to a frame file")
    v.add_argument("--config")
    v.add_argument("--max-m", type=int, default=3)
    v.add_argument("--max-d", type=int, default=3)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(run=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if not hasattr(args, "format"):
        args.format = "table"
    ok = True
    try:
        result = args.run(args)
        if isinstance(result, tuple):
            lines, ok = result
        else:
            lines = result
    except (UsageError, ConfigError, FaceError) as exc:
        print(f"refcob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AdmissibilityError, SupportError, PreconditionError) as exc:
        print(f"refcob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = "\n".join(lines)
    if out:
        sys.stdout.write(out + "\n")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
