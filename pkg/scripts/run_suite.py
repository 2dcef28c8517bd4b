#!/usr/bin/env python3
"""Run the full labeled check suite over one or more presets and print a table.

Examples:
    python3 scripts/run_suite.py
    python3 scripts/run_suite.py --presets heisenberg,virasoro --format csv
    python3 scripts/run_suite.py --only insertion_at_zero,equivariance_exact
"""
import argparse
import sys
from fractions import Fraction

from voxfact.scalars import DegreeWindow
from voxfact.suite import SUITE_LABELS, SuiteConfig, emit_tables, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--presets", default="heisenberg,virasoro,affine_sl2")
    ap.add_argument("--only", default=None,
                    help="comma separated subset of: " + ",".join(SUITE_LABELS))
    ap.add_argument("--window", default="0:6")
    ap.add_argument("--mode-degree", type=int, default=4)
    ap.add_argument("--tol", type=float, default=1e-8)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--c", default="1/2", help="virasoro central charge")
    ap.add_argument("--level", default="1", help="affine level")
    ap.add_argument("--format", default="csv", choices=["json", "csv"])
    args = ap.parse_args(argv)

    only = tuple(args.only.split(",")) if args.only else None
    if only:
        unknown = set(only) - set(SUITE_LABELS)
        if unknown:
            ap.error(f"unknown labels: {sorted(unknown)}")
    config = SuiteConfig(presets=tuple(args.presets.split(",")),
                         c=Fraction(args.c), level=Fraction(args.level),
                         window=DegreeWindow.parse(args.window),
                         tol=args.tol, seed=args.seed,
                         mode_degree=args.mode_degree, only=only)
    results = run_suite(config)
    print(emit_tables(results, args.format))
    failed = [(label, p) for label, p, rep, _ in results if not rep.passed]
    if failed:
        print(f"FAILED: {failed}", file=sys.stderr)
        return 1
    total = sum(sec for _, _, _, sec in results)
    print(f"# {len(results)} checks passed in {total:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
