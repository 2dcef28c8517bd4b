"""Command line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import UsageError, VoxfactError
from .expressions import Expression, evaluate_expression, multiply
from .geometry import OpenSet
from .graded import GradedVector
from .mu import (check_insertion_at_zero, check_meromorphicity, mu_numeric,
                 two_point_value)
from .presets import basis, preset_from_name
from .relations import (relation_kernel, roundtrip_check, run_counterexample,
                        weight_project)
from .scalars import DegreeWindow, QQi, parse_qqi
from .suite import SuiteConfig, emit_tables, run_suite


def build_parser():
    top = argparse.ArgumentParser(prog="voxfact")
    top.add_argument("--config", help="JSON file with default option values")
    sub = top.add_subparsers(dest="command", required=True)

    # defaults stay None here so that --config values can fill them in;
    # the hard fallbacks live in _apply_config
    def common(p):
        p.add_argument("--preset", default=None,
                       choices=["heisenberg", "virasoro", "affine_sl2"])
        p.add_argument("--c", default=None, help="virasoro central charge")
        p.add_argument("--level", default=None, help="affine level")
        p.add_argument("--window", default=None, help="degree window lo:hi")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--quad-n", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--format", default=None, choices=["json", "csv"])

    p = sub.add_parser("define", help="describe a preset and its basis")
    common(p)

    p = sub.add_parser("mode", help="apply a state mode: a_(n) b")
    common(p)
    p.add_argument("--a", required=True, help="state JSON")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--b", required=True, help="state JSON")

    p = sub.add_parser("npoint", help="multi-point multiplication map")
    common(p)
    p.add_argument("--states", required=True, help="JSON list of states")
    p.add_argument("--points", required=True,
                   help="JSON list of points (Gaussian rational strings)")
    p.add_argument("--numeric", action="store_true")

    p = sub.add_parser("check", help="run a single defining-property check")
    common(p)
    p.add_argument("--axiom", required=True,
                   choices=["insertion", "meromorphicity"])

    p = sub.add_parser("factor", help="expression-level operations")
    common(p)
    fsub = p.add_subparsers(dest="factor_command", required=True)
    fm = fsub.add_parser("multiply")
    fm.add_argument("--x", required=True, help="expression JSON")
    fm.add_argument("--y", required=True, help="expression JSON")
    fm.add_argument("--target", required=True, help="open set JSON")
    fe = fsub.add_parser("eval")
    fe.add_argument("--expr", required=True, help="expression JSON")
    fk = fsub.add_parser("kernel")
    fk.add_argument("--exprs", required=True, help="JSON list of expressions")
    fsub.add_parser("counterexample")
    fsub.add_parser("weiss")
    fsub.add_parser("roundtrip")
    fp = fsub.add_parser("project")
    fp.add_argument("--expr", required=True, help="expression JSON")
    fp.add_argument("--k", required=True, type=int)

    p = sub.add_parser("counterexample",
                       help="the annulus kernel obstruction, exactly")
    common(p)
    p.add_argument("--m", type=int, default=1)

    p = sub.add_parser("suite", help="run the full check suite")
    common(p)
    p.add_argument("--presets", default="heisenberg,virasoro,affine_sl2")
    p.add_argument("--only", default=None,
                   help="comma separated subset of check labels")
    p.add_argument("--mode-degree", type=int, default=4)
    return top


def _apply_config(args):
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad config file: {exc}") from exc
        for key, val in data.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and getattr(args, attr) in (None, ""):
                setattr(args, attr, val)
    fallback = {"preset": "heisenberg", "window": "0:6", "tol": 1e-8,
                "seed": 2024, "format": "json"}
    for attr, val in fallback.items():
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, val)
    if hasattr(args, "tol"):
        args.tol = float(args.tol)
    if hasattr(args, "seed"):
        args.seed = int(args.seed)
    return args


def _preset(args):
    return preset_from_name(args.preset,
                            c=Fraction(args.c) if args.c else None,
                            level=Fraction(args.level) if args.level else None)


def _window(args):
    return DegreeWindow.parse(args.window)


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


_MONO_RE = None


def _load_state(text):
    """A state is either a GradedVector JSON object or a compact monomial
    string like 'a(-2)a(-1)' ('' or '|0>' for the vacuum), coefficient 1."""
    text = text.strip()
    if text.startswith("{"):
        return GradedVector.from_obj(json.loads(text))
    if text in ("", "|0>"):
        return GradedVector.vacuum()
    import re
    toks = re.findall(r"[A-Za-z]+\(-\d+\)", text)
    if "".join(toks) != text.replace(" ", ""):
        raise UsageError(f"cannot parse state {text!r}")
    from .graded import parse_token
    return GradedVector.basis(tuple(parse_token(t) for t in toks))


def _load_states(text):
    text = text.strip()
    if text.startswith("["):
        return [GradedVector.from_obj(o) for o in json.loads(text)]
    return [_load_state(part) for part in text.split(";")]


def _load_points(text):
    text = text.strip()
    if text.startswith("["):
        return [parse_qqi(p) for p in json.loads(text)]
    return [parse_qqi(p) for p in text.split(";")]


def main(argv=None) -> int:
    try:
        args = _apply_config(build_parser().parse_args(argv))
        return _dispatch(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VoxfactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "define":
        preset = _preset(args)
        window = _window(args)
        payload = {"preset": preset.kind,
                   "generators": list(preset.generators),
                   "c": str(preset.c), "level": str(preset.level),
                   "basis": {str(d): ["".join(f"{g}(-{m})" for g, m in mono)
                                      or "|0>" for mono in basis(preset, d)]
                             for d in window.degrees()}}
        _emit(args, json.dumps(payload, indent=2, sort_keys=True))
        return 0

    if cmd == "mode":
        preset = _preset(args)
        from .presets import state_mode
        out = state_mode(preset, _load_state(args.a), args.n,
                         _load_state(args.b))
        _emit(args, out.to_json(indent=2))
        return 0

    if cmd == "npoint":
        preset = _preset(args)
        window = _window(args)
        states = _load_states(args.states)
        points = _load_points(args.points)
        if not args.numeric and len(states) == 2 \
                and points[1] == QQi(0):
            pv = two_point_value(preset, states[0], states[1],
                                 points[0], QQi(0), window)
        else:
            pv = mu_numeric(preset, states, points, window, tol=args.tol)
        _emit(args, json.dumps(pv.to_obj(), indent=2, sort_keys=True))
        return 0

    if cmd == "check":
        preset = _preset(args)
        if args.axiom == "insertion":
            rep = check_insertion_at_zero(preset)
        else:
            rep = check_meromorphicity(preset)
        _emit(args, rep.to_json(indent=2))
        return 0 if rep.passed else 1

    if cmd == "factor":
        return _dispatch_factor(args)

    if cmd == "counterexample":
        preset = _preset(args)
        rep, _ = run_counterexample(args.m, preset, _window(args))
        _emit(args, rep.to_json(indent=2))
        return 0 if rep.passed else 1

    if cmd == "suite":
        from .suite import SUITE_LABELS
        if args.only:
            unknown = set(args.only.split(",")) - set(SUITE_LABELS)
            if unknown:
                raise UsageError(f"unknown suite labels: {sorted(unknown)}")
        config = SuiteConfig(
            presets=tuple(args.presets.split(",")),
            c=Fraction(args.c) if args.c else Fraction(1, 2),
            level=Fraction(args.level) if args.level else Fraction(1),
            window=_window(args), tol=args.tol, quad_n=args.quad_n,
            seed=args.seed, mode_degree=args.mode_degree,
            only=tuple(args.only.split(",")) if args.only else None)
        results = run_suite(config)
        _emit(args, emit_tables(results, args.format))
        return 0 if all(r.passed for _, _, r, _ in results) else 1

    raise UsageError(f"unknown command {cmd!r}")


def _dispatch_factor(args) -> int:
    preset = _preset(args)
    window = _window(args)
    fc = args.factor_command
    if fc == "multiply":
        x = Expression.from_obj(json.loads(args.x))
        y = Expression.from_obj(json.loads(args.y))
        target = OpenSet.from_obj(json.loads(args.target))
        _emit(args, json.dumps(multiply(x, y, target).to_obj(),
                               indent=2, sort_keys=True))
        return 0
    if fc == "eval":
        expr = Expression.from_obj(json.loads(args.expr))
        pv = evaluate_expression(expr, preset, window, tol=args.tol,
                                 quad_n=args.quad_n)
        _emit(args, json.dumps(pv.to_obj(), indent=2, sort_keys=True))
        return 0
    if fc == "kernel":
        exprs = [Expression.from_obj(o) for o in json.loads(args.exprs)]
        basis_vecs = relation_kernel(preset, exprs, window)
        payload = [[str(c) for c in vec] for vec in basis_vecs]
        _emit(args, json.dumps(payload, indent=2))
        return 0
    if fc == "counterexample":
        rep, _ = run_counterexample(1, preset, window)
        _emit(args, rep.to_json(indent=2))
        return 0 if rep.passed else 1
    if fc == "weiss":
        from .suite import _weiss_accept, _weiss_reject
        ra, rr = _weiss_accept(preset), _weiss_reject(preset)
        _emit(args, json.dumps([ra.to_obj(), rr.to_obj()], indent=2,
                               sort_keys=True, default=str))
        return 0 if (ra.passed and rr.passed) else 1
    if fc == "roundtrip":
        import random
        rng = random.Random(args.seed)
        from .suite import _random_point, _random_state
        samples = [(_random_state(rng, preset, 3), _random_point(rng),
                    rng.randrange(window.lo, window.hi + 1))
                   for _ in range(5)]
        rep = roundtrip_check(preset, 4, samples, window, tol=args.tol)
        _emit(args, rep.to_json(indent=2))
        return 0 if rep.passed else 1
    if fc == "project":
        expr = Expression.from_obj(json.loads(args.expr))
        vec, meta = weight_project(expr, args.k, preset, window,
                                   quad_n=args.quad_n)
        _emit(args, json.dumps({"vector": vec.to_obj(), "meta": meta},
                               indent=2, sort_keys=True))
        return 0
    raise UsageError(f"unknown factor command {fc!r}")


if __name__ == "__main__":
    sys.exit(main())
