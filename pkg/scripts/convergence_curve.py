#!/usr/bin/env python3
"""Trace the truncation-error curve of the nested composition identity.

Compares mu(a, z1, ..., mu(b, w1, c, w2)-at-zc, ...) against the direct
multi-point value, summing inner weight components degree by degree, and
prints the remaining error after each partial sum.

Example:
    python3 scripts/convergence_curve.py --outer 4.0 --inner 0.3,-0.3 --at 1.0
"""
import argparse
import sys

from voxfact.graded import GradedVector
from voxfact.mu import check_associativity
from voxfact.presets import heisenberg
from voxfact.scalars import DegreeWindow


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outer", default="4.0",
                    help="comma separated outer insertion points")
    ap.add_argument("--inner", default="0.3,-0.3",
                    help="comma separated inner insertion points")
    ap.add_argument("--at", type=complex, default=1.0,
                    help="where the composed inner value is inserted")
    ap.add_argument("--window", default="0:4")
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args(argv)

    a = GradedVector.basis((("a", 1),))
    outer = [(a, complex(z)) for z in args.outer.split(",")]
    inner = [(a, complex(z)) for z in args.inner.split(",")]
    rep = check_associativity(heisenberg(), outer, inner, args.at,
                              DegreeWindow.parse(args.window), tol=args.tol)
    for k, err in enumerate(rep.truncation["curve"]):
        print(f"inner degrees <= {k}: residual {err:.3e}")
    status = "pass" if rep.passed else "FAIL"
    print(f"{status}: final error {rep.max_err:.3e} (tol {rep.tol:.1e})")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
