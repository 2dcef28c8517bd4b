#!/usr/bin/env python3
"""Print exact mode-action tables a_(n) b for PBW basis pairs of a preset.

Examples:
    python3 scripts/mode_tables.py --preset heisenberg --max-degree 3
    python3 scripts/mode_tables.py --preset virasoro --c 1/2 --max-degree 4
"""
import argparse
import sys
from fractions import Fraction

from voxfact.graded import mono_degree
from voxfact.presets import basis_upto, preset_from_name, state_mode_mono


def fmt(mono) -> str:
    return "".join(f"{g}(-{m})" for g, m in mono) or "|0>"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", default="heisenberg",
                    choices=["heisenberg", "virasoro", "affine_sl2"])
    ap.add_argument("--c", default=None, help="virasoro central charge")
    ap.add_argument("--level", default=None, help="affine level")
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--nonzero-only", action="store_true")
    args = ap.parse_args(argv)

    preset = preset_from_name(args.preset,
                              c=Fraction(args.c) if args.c else None,
                              level=Fraction(args.level) if args.level else None)
    states = basis_upto(preset, args.max_degree)
    for am in states:
        for bm in states:
            bound = mono_degree(am) + mono_degree(bm)
            for n in range(-1, bound):
                out = state_mode_mono(preset, am, n, bm)
                if args.nonzero_only and not out:
                    continue
                print(f"{fmt(am)} _({n}) {fmt(bm)} = {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
