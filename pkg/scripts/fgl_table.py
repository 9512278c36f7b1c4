"""Print the coefficients of the universal law, grouped by total degree.

    python scripts/fgl_table.py --trunc 5
"""
import argparse

from refcob.fgl import formal_inverse, make_context
from refcob.series import render_monomial


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trunc", type=int, default=5)
    args = p.parse_args()
    ctx = make_context(args.trunc)
    for title, s, names in (("F(u, v)", ctx.F, ["u", "v"]), ("i(u)", formal_inverse(ctx), ["u"])):
        print(title)
        for deg in range(1, args.trunc + 1):
            for key in sorted((k for k in s.terms if sum(k) == deg), reverse=True):
                print(f"  {render_monomial(key, names):10s} {s.terms[key]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
