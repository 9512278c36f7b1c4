"""Run the exhaustive identity sweep and print a per-identity tally.

    python scripts/run_sweep.py --max-m 3 --max-d 3
"""
import argparse
import time
from collections import defaultdict

from refcob.verify import sweep


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-contracts", action="store_true")
    args = p.parse_args()

    start = time.perf_counter()
    reports = sweep(args.max_m, args.max_d, contracts=not args.no_contracts, jobs=args.jobs)
    elapsed = time.perf_counter() - start

    cases, failed = defaultdict(int), defaultdict(int)
    for r in reports:
        cases[r.identity] += r.cases
        if not r.ok:
            failed[r.identity] += 1
            print(r.render())
    for name in sorted(cases):
        print(f"{name:30s} cases={cases[name]:>10d} failed_frames={failed[name]}")
    print(f"frames={len({r.config for r in reports})} seconds={elapsed:.1f}")
    return 1 if any(failed.values()) else 0


if __name__ == "__main__":
    raise SystemExit(main())
