"""Finite-rank analytic functionals: point jets and circle moments.

An atomic functional on m-variable functions is a product of one factor per
coordinate, each factor either

* ``DeltaJet(p, d)``: f |-> f^(d)(p) / d!, or
* ``CircleMoment(c, r, n)``: f |-> (1/2 pi i) contour integral of (z-c)^n f over |z-c|=r,

applied iteratively from the first coordinate outward.  General functionals
are finite linear combinations of atomics.  Pushforward along an affine map
z -> lam z + w follows from substitution in the defining pairing and forces
the scale factors lam^d (jets) and lam^(-n-1) (moments).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .scalars import QQi, as_complex, is_exact, parse_qqi, scalar_pow


@dataclass(frozen=True)
class DeltaJet:
    point: object          # QQi or complex
    order: int = 0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("jet order must be >= 0")

    def to_obj(self):
        return {"delta": {"p": _pt_str(self.point), "d": self.order}}


@dataclass(frozen=True)
class CircleMoment:
    center: object         # QQi or complex
    radius: object         # Fraction or float, > 0
    exponent: int = 0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("moment radius must be positive")

    def to_obj(self):
        return {"moment": {"c": _pt_str(self.center), "r": _rad_str(self.radius),
                           "n": self.exponent}}


def _pt_str(p):
    return str(p) if isinstance(p, QQi) else repr(complex(p))


def _rad_str(r):
    return str(r) if isinstance(r, Fraction) else repr(float(r))


def factor_from_obj(obj):
    if "delta" in obj:
        d = obj["delta"]
        return DeltaJet(parse_qqi(d["p"]), int(d.get("d", 0)))
    if "moment" in obj:
        d = obj["moment"]
        return CircleMoment(parse_qqi(d["c"]), Fraction(d["r"]), int(d.get("n", 0)))
    raise UsageError(f"bad functional factor {obj!r}")


@dataclass(frozen=True)
class AtomicFunctional:
    factors: tuple

    @property
    def arity(self):
        return len(self.factors)

    def is_exact(self) -> bool:
        for f in self.factors:
            if isinstance(f, DeltaJet):
                if not is_exact(f.point):
                    return False
            else:
                if not (is_exact(f.center) and isinstance(f.radius, Fraction)):
                    return False
        return True


@dataclass(frozen=True)
class Functional:
    """Linear combination of atomic functionals of a common arity."""

    arity: int
    atoms: tuple  # of (coeff, AtomicFunctional)

    def __post_init__(self):
        for _, atom in self.atoms:
            if atom.arity != self.arity:
                raise ValueError("atom arity mismatch")

    @classmethod
    def atomic(cls, *factors, coeff=None):
        return cls(len(factors),
                   ((QQi(1) if coeff is None else coeff,
                     AtomicFunctional(tuple(factors))),))

    def scale(self, s):
        return Functional(self.arity,
                          tuple((c * s, a) for c, a in self.atoms))

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Functional(self.arity, self.atoms + other.atoms)

    def to_obj(self):
        return {"arity": self.arity,
                "atoms": [{"coeff": _coeff_obj(c),
                           "factors": [f.to_obj() for f in a.factors]}
                          for c, a in self.atoms]}

    @classmethod
    def from_obj(cls, obj):
        atoms = []
        for entry in obj["atoms"]:
            coeff = _coeff_from_obj(entry["coeff"])
            factors = tuple(factor_from_obj(f) for f in entry["factors"])
            atoms.append((coeff, AtomicFunctional(factors)))
        return cls(int(obj["arity"]), tuple(atoms))


def _coeff_obj(c):
    if is_exact(c):
        q = c if isinstance(c, QQi) else QQi(c)
        return {"re": str(q.re), "im": str(q.im)}
    z = as_complex(c)
    return {"re": repr(z.real), "im": repr(z.imag)}


def _coeff_from_obj(obj):
    re_s, im_s = str(obj["re"]), str(obj["im"])
    if any(ch in re_s + im_s for ch in ".e") and "/" not in re_s + im_s:
        return complex(float(re_s), float(im_s))
    return QQi(Fraction(re_s), Fraction(im_s))


# ---------------------------------------------------------------------------
# operations


def external_product(f: Functional, g: Functional) -> Functional:
    """(f x g)(h) = f(z -> g(w -> h(z, w))): concatenate coordinates."""
    atoms = []
    for cf, af in f.atoms:
        for cg, ag in g.atoms:
            atoms.append((cf * cg, AtomicFunctional(af.factors + ag.factors)))
    return Functional(f.arity + g.arity, tuple(atoms))


def sqrt_of_modulus(lam):
    """|lam| as a Fraction when that is exact, else a float."""
    if isinstance(lam, QQi):
        a2 = lam.abs2()
        num, den = a2.numerator, a2.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return math.sqrt(float(a2))
    return abs(complex(lam))


def pushforward_factor(factor, lam, shift):
    """Pushforward along g(z) = lam z + shift; returns (scale, factor)."""
    if isinstance(factor, DeltaJet):
        newp = _aff(lam, factor.point, shift)
        return scalar_pow(lam, factor.order), DeltaJet(newp, factor.order)
    mod = sqrt_of_modulus(lam)
    newc = _aff(lam, factor.center, shift)
    newr = (factor.radius * mod if isinstance(factor.radius, Fraction)
            and isinstance(mod, Fraction) else float(factor.radius) * float(mod))
    return scalar_pow(lam, -factor.exponent - 1), CircleMoment(newc, newr,
                                                               factor.exponent)


def _aff(lam, p, shift):
    if isinstance(lam, QQi) and isinstance(p, QQi) and isinstance(shift, QQi):
        return lam * p + shift
    return complex(lam) * complex(p) + complex(shift)


def pushforward_affine(f: Functional, lam, shift) -> Functional:
    """g_* f for g(z) = lam z + shift, applied to every coordinate."""
    if (isinstance(lam, QQi) and not lam) or complex(lam) == 0:
        raise ValueError("affine scale must be invertible")
    atoms = []
    for c, atom in f.atoms:
        scale = c
        factors = []
        for factor in atom.factors:
            s, nf = pushforward_factor(factor, lam, shift)
            scale = scale * s
            factors.append(nf)
        atoms.append((scale, AtomicFunctional(tuple(factors))))
    return Functional(f.arity, tuple(atoms))


# ---------------------------------------------------------------------------
# numeric quadrature


def circle_nodes(center, radius, n: int):
    c = complex(center)
    r = float(radius)
    return [c + r * cmath.exp(2j * cmath.pi * s / n) for s in range(n)]


def quadrature_moment(fn, center, radius, exponent: int, n: int):
    """Trapezoid-rule contour integral (1/2 pi i normalized) of (z-c)^exponent fn(z) on n nodes.

    Exact for Laurent polynomials of bandwidth below n (aliasing identity).
    """
    c = complex(center)
    acc = None
    for z in circle_nodes(center, radius, n):
        val = fn(z)
        w = (z - c) ** (exponent + 1)
        term = val * w if not hasattr(val, "scale") else val.scale(w)
        acc = term if acc is None else acc + term
    if hasattr(acc, "scale"):
        return acc.scale(1.0 / n)
    return acc / n


def apply_factor_numeric(factor, fn, quad_n: int, jet_radius=None):
    """Apply one analytic factor to a numeric callable of one variable."""
    if isinstance(factor, DeltaJet):
        if factor.order == 0:
            return fn(complex(factor.point))
        r = jet_radius if jet_radius is not None else 0.25
        return quadrature_moment(fn, factor.point, r, -factor.order - 1, quad_n)
    return quadrature_moment(fn, factor.center, factor.radius,
                             factor.exponent, quad_n)
