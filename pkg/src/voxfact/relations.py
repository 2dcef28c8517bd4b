"""Relation kernels, weight projections, and model-level checks.

This module ties the functional calculus to the multiplication maps: exact
evaluation kernels over Gaussian rationals, contour-extracted weight
components of the dilation orbit, the annulus obstruction showing that
evaluation kernels fail to form an ideal under multiplication, and the
finite-shadow checks for multiplicativity, covers, and density of
disc-supported relations along scaling orbits.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import NotDisjoint, VoxfactError
from .expressions import (Expression, Term, _factor_key, _state_key,
                          affine_act, evaluate_expression, extend, multiply)
from .functionals import AtomicFunctional, CircleMoment, DeltaJet
from .geometry import Annulus, Disc, OpenSet
from .graded import GradedVector
from .linalg import nullspace
from .mu import mu_one_point
from .presets import VAPreset, basis_upto, heisenberg, state_mode
from .report import CheckReport
from .scalars import DegreeWindow, QQi, as_complex


# ---------------------------------------------------------------------------
# relation kernels


def relation_kernel(preset: VAPreset, exprs, window: DegreeWindow):
    """Exact basis of the evaluation kernel of a family of expressions.

    All expressions must evaluate exactly in the window.  Returns a list of
    QQi coefficient vectors c with sum_i c_i ev(expr_i) = 0 degreewise.
    """
    evs = []
    for e in exprs:
        if not e.is_exact():
            raise VoxfactError("relation kernels need exactly evaluable input")
        evs.append(evaluate_expression(e, preset, window))
    row_index = {}
    for pv in evs:
        for k in window.degrees():
            for mono in pv.component(k).terms:
                row_index.setdefault((k, mono), len(row_index))
    rows = [[QQi(0)] * len(exprs) for _ in range(len(row_index))]
    for col, pv in enumerate(evs):
        for k in window.degrees():
            for mono, coeff in pv.component(k).terms.items():
                rows[row_index[(k, mono)]][col] = coeff
    return nullspace(rows, len(exprs))


def kernel_combination(exprs, coeffs) -> Expression:
    out = None
    for e, c in zip(exprs, coeffs):
        piece = e.scale(c)
        out = piece if out is None else out + piece
    return out


# ---------------------------------------------------------------------------
# weight projections


def weight_project(expr: Expression, k: int, preset: VAPreset,
                   window: DegreeWindow, quad_n: int | None = None,
                   t: float | None = None):
    """Degree-k weight component of an expression via the dilation orbit.

    Samples the scaling action q |-> ev(q . expr) on a circle |q| = t and
    extracts the q^k Fourier coefficient by the trapezoid rule, which is
    exact below the aliasing bandwidth.  Returns (GradedVector, metadata).
    """
    if quad_n is None:
        quad_n = 2 * window.hi + 16
    if t is None:
        t = _orbit_radius(expr)
    acc = GradedVector.zero()
    for s in range(quad_n):
        q = t * cmath.exp(2j * cmath.pi * s / quad_n)
        scaled = affine_act(q, QQi(0), expr)
        v = evaluate_expression(scaled, preset, window).flatten()
        acc = acc + v.scale(q ** (-k)) if v else acc
    acc = acc.scale(1.0 / quad_n)
    off = sum(acc.project(d).norm_inf()
              for d in acc.degrees() if d != k)
    meta = {"quad_n": quad_n, "t": t, "off_degree_mass": off}
    return acc.project(k), meta


def _orbit_radius(expr: Expression) -> float:
    pts, circles = expr.support_points()
    r = 0.0
    for p in pts:
        r = max(r, abs(complex(p)))
    for c, rad in circles:
        r = max(r, abs(complex(c)) + float(rad))
    R = _outer_radius(expr.carrier)
    if R is None or R <= r:
        R = 2.0 * r + 1.0
    return 0.5 * (1.0 + r / R)


def _outer_radius(u: OpenSet):
    if isinstance(u, Disc) and complex(u.center) == 0:
        return float(u.radius)
    if isinstance(u, Annulus) and complex(u.center) == 0:
        return float(u.outer)
    return None


# ---------------------------------------------------------------------------
# the annulus obstruction


def run_counterexample(m: int = 1, preset: VAPreset | None = None,
                       window: DegreeWindow | None = None):
    """Evaluation kernels are not multiplicative ideals: an annulus moment
    expression with vanishing evaluation whose product with a disc
    expression evaluates to a nonzero mode.

    Returns (report, data) with exact witness vectors.
    """
    if preset is None:
        preset = heisenberg()
    if window is None:
        window = DegreeWindow(0, 4)
    u1 = Annulus(QQi(0), Fraction(1), Fraction(2))
    u2 = Disc(QQi(0), Fraction(1))
    w = Disc(QQi(0), Fraction(2))
    gen = preset.generators[0]
    a = GradedVector.basis(((gen, 1),))
    x = Expression.single(u1, [CircleMoment(QQi(0), Fraction(3, 2), m)], [a])
    y = Expression.single(u2, [DeltaJet(QQi(0), 0)], [a])
    ev_x = evaluate_expression(x, preset, window)
    xy = multiply(x, y, w)
    ev_xy = evaluate_expression(xy, preset, window)
    expected = state_mode(preset, a, m, a)
    got = ev_xy.flatten()
    ok = (ev_x.flatten() == GradedVector.zero()) and (got == expected) \
        and bool(expected)
    report = CheckReport(
        "kernel_not_an_ideal", ok, 0.0, 0.0,
        {"m": m, "ev_x": ev_x.flatten().to_obj(),
         "ev_product": got.to_obj(), "expected": expected.to_obj()}, {})
    data = {"x": x, "y": y, "product": xy, "ev_x": ev_x, "ev_xy": ev_xy}
    return report, data


# ---------------------------------------------------------------------------
# multiplicativity by support partition


def term_signature(t: Term):
    return (tuple(_factor_key(f) for f in t.atom.factors),
            tuple(_state_key(s) for s in t.states),
            _state_key_coeff(t.coeff))


def _state_key_coeff(c):
    return str(complex(c))


def expression_signature(e: Expression):
    return tuple(term_signature(t) for t in e.terms)


def support_partition(product: Expression, u: OpenSet, v: OpenSet):
    """Split each delta-supported term of a product by point membership.

    Returns a pair of expressions (on u and v) whose product reproduces the
    input; raises if some point is in neither or both carriers.
    """
    terms_u, terms_v = [], []
    for t in product.terms:
        fu, fv, su, sv = [], [], [], []
        for f, s in zip(t.atom.factors, t.states):
            if not isinstance(f, DeltaJet):
                raise VoxfactError("support partition needs delta factors")
            in_u = u.contains_point(f.point)
            in_v = v.contains_point(f.point)
            if in_u == in_v:
                raise NotDisjoint("point fails to pick a unique carrier")
            (fu if in_u else fv).append(f)
            (su if in_u else sv).append(s)
        terms_u.append(Term(t.coeff, AtomicFunctional(tuple(fu)), tuple(su)))
        terms_v.append(Term(QQi(1), AtomicFunctional(tuple(fv)), tuple(sv)))
    if len({term_signature(Term(QQi(1), t.atom, t.states))
            for t in product.terms}) != len(product.terms):
        raise VoxfactError("ambiguous product terms")
    return ([Expression(u, [tu], validate=False) for tu in terms_u],
            [Expression(v, [tv], validate=False) for tv in terms_v])


def multiplicativity_check(preset: VAPreset, u: OpenSet, v: OpenSet,
                           target: OpenSet, exprs_u, exprs_v) -> CheckReport:
    """Pairwise products of delta families match the support-partition
    oracle exactly, and distinct pairs stay distinct."""
    ok = True
    witness = {}
    seen = {}
    for i, eu in enumerate(exprs_u):
        for j, ev_ in enumerate(exprs_v):
            prod = multiply(eu, ev_, target)
            sig = expression_signature(prod)
            if sig in seen and seen[sig] != (i, j):
                ok = False
                witness = {"collision": [seen[sig], [i, j]]}
            seen[sig] = (i, j)
            # factor back through point membership and compare
            parts_u, parts_v = support_partition(prod, u, v)
            rebuilt = None
            for tu, tv in zip(parts_u, parts_v):
                piece = multiply(tu, tv, target)
                rebuilt = piece if rebuilt is None else rebuilt + piece
            if expression_signature(rebuilt) != sig:
                ok = False
                witness = {"pair": [i, j]}
    return CheckReport("multiplicativity_support_partition", ok, 0.0, 0.0,
                       witness, {"pairs": len(exprs_u) * len(exprs_v)})


# ---------------------------------------------------------------------------
# scaling-orbit density of disc relations


def concentric_density_check(preset: VAPreset, expr: Expression, center,
                             qs, window: DegreeWindow,
                             tol: float = 1e-9) -> CheckReport:
    """A relation on a disc evaluates to zero along its whole dilation
    orbit about the disc center."""
    base = evaluate_expression(expr, preset, window)
    worst = base.norm_inf()
    witness = {}
    for q in qs:
        qc = q if isinstance(q, QQi) else complex(q)
        shift = _one_minus(qc, center)
        scaled = affine_act(qc, shift, expr)
        val = evaluate_expression(scaled, preset, window)
        nrm = val.norm_inf()
        if nrm > worst:
            worst = nrm
            witness = {"q": str(q)}
    return CheckReport("concentric_density", worst <= tol, worst, tol,
                       witness, {"samples": len(qs)})


def _one_minus(q, center):
    if isinstance(q, QQi) and isinstance(center, QQi):
        return (QQi(1) - q) * center
    return (1.0 - complex(q)) * complex(center)


# ---------------------------------------------------------------------------
# cover checks


def find_cover_element(cover, expr: Expression):
    pts, circles = expr.support_points()
    for idx, elem in enumerate(cover):
        if all(elem.contains_point(p) for p in pts) and \
           all(elem.contains_circle(c, r) for c, r in circles):
            return idx
    return None


def weiss_cover_check(preset: VAPreset, cover, ambient: OpenSet, exprs,
                      window: DegreeWindow, tol: float = 0.0) -> CheckReport:
    """Every expression's finite support must land in a single cover
    element; lifted copies on different elements agree after extension.

    Fails (reporting the witness support) when the cover misses some finite
    configuration, so non-Weiss covers are rejected on concrete data.
    """
    ok = True
    worst = 0.0
    witness = {}
    lifted = 0
    double = 0
    for num, expr in enumerate(exprs):
        idx = find_cover_element(cover, expr)
        if idx is None:
            ok = False
            pts, circles = expr.support_points()
            witness = {"expression": num,
                       "points": [str(complex(p)) for p in pts],
                       "circles": len(circles)}
            continue
        lifted += 1
        on_elem = Expression(cover[idx], list(expr.terms), validate=False)
        back = extend(on_elem, ambient)
        e0 = evaluate_expression(expr, preset, window)
        e1 = evaluate_expression(back, preset, window)
        err = max(e0.component(k).distance(e1.component(k))
                  for k in window.degrees()) if window.hi >= window.lo else 0.0
        worst = max(worst, err)
        if err > tol:
            ok = False
            witness = {"expression": num, "err": err}
        # a second element containing the support gives the same answer
        for jdx in range(idx + 1, len(cover)):
            if find_cover_element([cover[jdx]], expr) == 0:
                other = extend(Expression(cover[jdx], list(expr.terms),
                                          validate=False), ambient)
                e2 = evaluate_expression(other, preset, window)
                err2 = max(e1.component(k).distance(e2.component(k))
                           for k in window.degrees())
                worst = max(worst, err2)
                double += 1
                if err2 > tol:
                    ok = False
                    witness = {"expression": num, "second_element": jdx}
                break
    return CheckReport("weiss_cover", ok, worst, tol, witness,
                       {"lifted": lifted, "double_lifts": double,
                        "total": len(exprs)})


# ---------------------------------------------------------------------------
# round trips between states and expressions


def state_embedding(carrier: OpenSet, a: GradedVector) -> Expression:
    """The comparison embedding a |-> [delta_0 (x) a]."""
    return Expression.single(carrier, [DeltaJet(QQi(0), 0)], [a])


def roundtrip_check(preset: VAPreset, max_degree: int,
                    samples, window: DegreeWindow,
                    tol: float = 1e-9) -> CheckReport:
    """ev(state_embedding(a)) == a exactly, and the homomorphism square:
    the degree-k weight projection of [delta_z (x) a] equals
    p_k mu(a, z) within tol for sampled (a, z, k)."""
    carrier = Disc(QQi(0), Fraction(1))
    ok = True
    witness = {}
    for mono in basis_upto(preset, max_degree):
        a = GradedVector.basis(mono)
        got = evaluate_expression(state_embedding(carrier, a), preset,
                                  DegreeWindow(0, max(a.degree(), window.hi)),
                                  ).flatten()
        if got != a:
            ok = False
            witness = {"state": a.to_obj()}
    worst = 0.0
    for a, z, k in samples:
        r = abs(as_complex(z))
        big = Disc(QQi(0), Fraction(4 * (int(r) + 1)))
        expr = Expression.single(big, [DeltaJet(z, 0)], [a])
        proj, _meta = weight_project(expr, k, preset, window)
        direct = mu_one_point(preset, a.to_complex(), as_complex(z),
                              window).component(k)
        scale = max(direct.norm_inf(), 1.0)
        err = proj.distance(direct) / scale
        if err > worst:
            worst = err
            witness = {"z": str(z), "k": k}
        if err > tol:
            ok = False
    return CheckReport("embedding_roundtrip", ok, worst, tol, witness,
                       {"samples": len(samples)})


# ---------------------------------------------------------------------------
# weight projection identities


def check_weight_partition(preset: VAPreset, exprs, window: DegreeWindow,
                           tol: float = 1e-9) -> CheckReport:
    """sum_k l_k recovers the full evaluation on windowed expressions."""
    worst = 0.0
    witness = {}
    for num, expr in enumerate(exprs):
        total = GradedVector.zero()
        for k in window.degrees():
            piece, _ = weight_project(expr, k, preset, window)
            total = total + piece
        direct = evaluate_expression(expr, preset, window,
                                     force_numeric=False).flatten()
        scale = max(direct.norm_inf(), 1.0)
        err = total.distance(direct.to_complex()) / scale
        if err > worst:
            worst = err
            witness = {"expression": num}
    return CheckReport("weight_projection_partition", worst <= tol, worst,
                       tol, witness, {"count": len(exprs)})


def check_weight_idempotent(preset: VAPreset, exprs, window: DegreeWindow,
                            tol: float = 1e-9) -> CheckReport:
    """l_k o l_k = l_k and l_j o l_k = 0 for j != k, on embedded outputs."""
    worst = 0.0
    witness = {}
    carrier = Disc(QQi(0), Fraction(1))
    for num, expr in enumerate(exprs):
        for k in window.degrees():
            piece, _ = weight_project(expr, k, preset, window)
            if not piece:
                continue
            embedded = state_embedding(carrier, piece)
            again, _ = weight_project(embedded, k, preset, window)
            scale = max(piece.norm_inf(), 1.0)
            err = again.distance(piece) / scale
            j = k + 1 if k + 1 in window else k - 1
            if j in window:
                cross, _ = weight_project(embedded, j, preset, window)
                err = max(err, cross.norm_inf() / scale)
            if err > worst:
                worst = err
                witness = {"expression": num, "k": k}
    return CheckReport("weight_projection_idempotent", worst <= tol, worst,
                       tol, witness, {"count": len(exprs)})


def check_weight_quadrature(preset: VAPreset, samples, window: DegreeWindow,
                            quad_n: int | None = None,
                            tol: float = 1e-9) -> CheckReport:
    """Quadrature weight components against the exact degree parts of the
    one-point map, at exact sample points."""
    worst = 0.0
    witness = {}
    for a, z, k in samples:
        r = abs(as_complex(z))
        big = Disc(QQi(0), Fraction(4 * (int(r) + 1)))
        expr = Expression.single(big, [DeltaJet(z, 0)], [a])
        proj, _ = weight_project(expr, k, preset, window, quad_n=quad_n)
        exact = mu_one_point(preset, a, z, window).component(k)
        scale = max(exact.norm_inf(), 1.0)
        err = proj.distance(exact.to_complex()) / scale
        if err > worst:
            worst = err
            witness = {"z": str(z), "k": k}
    return CheckReport("weight_projection_quadrature", worst <= tol, worst,
                       tol, witness, {"samples": len(samples)})
