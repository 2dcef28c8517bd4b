"""Vertex algebra presets and exact mode arithmetic on the PBW basis.

Three vacuum modules are provided:

* ``heisenberg``: one weight-1 current a with [a_m, a_n] = m delta_{m+n,0};
* ``virasoro``: the stress tensor L with central charge c,
  [L_m, L_n] = (m-n) L_{m+n} + c/12 (m^3-m) delta_{m+n,0};
* ``affine_sl2``: currents e, h, f of weight 1 at a fixed level, with
  [x_m, y_n] = [x,y]_{m+n} + m kappa(x,y) delta_{m+n,0} and kappa the
  level-scaled trace form (kappa(h,h) = 2 level, kappa(e,f) = level).

States live on the PBW basis of `graded.GradedVector`.  Mode actions are
computed on basis monomials with exact coefficients and cached; linear
extension then works for exact or complex coefficients alike.

`state_mode` peels the leading PBW factor of the acting state through the
standard iterate expansion

    (u_(p) v)_(n) = sum_i (-1)^i C(p,i) (u_(p-i) v_(n+i)
                                         - (-1)^p v_(p+n-i) u_(i)),

with both sums truncated by the grading bound a_(n) b = 0 for
n >= deg a + deg b.  An independent normal-ordered-field expansion lives in
`oracle` and is used to cross-check this recursion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graded import GradedVector, Mono, mono_degree
from .scalars import QQi, binom


@dataclass(frozen=True)
class VAPreset:
    """A choice of vacuum module together with its structure constants."""

    kind: str
    c: Fraction = Fraction(0)       # virasoro central charge
    level: Fraction = Fraction(0)   # affine level

    def __post_init__(self):
        if self.kind not in ("heisenberg", "virasoro", "affine_sl2"):
            raise ValueError(f"unknown preset {self.kind!r}")
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "level", Fraction(self.level))
        # per-instance memo tables shared by the mode engine (not fields,
        # so equality and hashing still go through the structure constants)
        object.__setattr__(self, "_memos", _shared_memos(self.key()))

    @property
    def generators(self):
        return _GENERATORS[self.kind]

    def weight(self, gen: str) -> int:
        return 2 if self.kind == "virasoro" else 1

    def gen_index(self, gen: str) -> int:
        return self.generators.index(gen)

    def creation_floor(self, gen: str) -> int:
        """Smallest m with x_{-m}|0> nonzero."""
        return 2 if self.kind == "virasoro" else 1

    def commutator(self, x: str, nx: int, y: str, ny: int):
        """[x_nx, y_ny] as (list of (gen, mode, int coeff), central scalar)."""
        if self.kind == "heisenberg":
            central = QQi(nx) if nx + ny == 0 else QQi(0)
            return (), central
        if self.kind == "virasoro":
            gens = ((("L", nx + ny, nx - ny),) if nx != ny else ())
            central = (QQi(Fraction(self.c) * (nx ** 3 - nx) / 12)
                       if nx + ny == 0 else QQi(0))
            return gens, central
        lie = _SL2_BRACKET[(x, y)]
        gens = tuple((g, nx + ny, coeff) for g, coeff in lie)
        kap = _SL2_KAPPA[(x, y)] * self.level
        central = QQi(nx * kap) if nx + ny == 0 else QQi(0)
        return gens, central

    def vacuum_state(self) -> GradedVector:
        return GradedVector.vacuum()

    def key(self):
        return (self.kind, self.c, self.level)


_memo_root: dict = {}


def _shared_memos(key):
    m = _memo_root.get(key)
    if m is None:
        m = {"gen": {}, "tr": {}, "sm": {}, "basis": {}, "oracle": {}}
        _memo_root[key] = m
    return m


_GENERATORS = {
    "heisenberg": ("a",),
    "virasoro": ("L",),
    "affine_sl2": ("e", "h", "f"),
}

_SL2_BRACKET = {
    ("e", "e"): (), ("h", "h"): (), ("f", "f"): (),
    ("e", "f"): (("h", 1),), ("f", "e"): (("h", -1),),
    ("h", "e"): (("e", 2),), ("e", "h"): (("e", -2),),
    ("h", "f"): (("f", -2),), ("f", "h"): (("f", 2),),
}

_SL2_KAPPA = {
    ("e", "e"): Fraction(0), ("h", "h"): Fraction(2), ("f", "f"): Fraction(0),
    ("e", "f"): Fraction(1), ("f", "e"): Fraction(1),
    ("h", "e"): Fraction(0), ("e", "h"): Fraction(0),
    ("h", "f"): Fraction(0), ("f", "h"): Fraction(0),
}


def heisenberg() -> VAPreset:
    return VAPreset("heisenberg")


def virasoro(c=Fraction(1, 2)) -> VAPreset:
    return VAPreset("virasoro", c=Fraction(c))


def affine_sl2(level=1) -> VAPreset:
    return VAPreset("affine_sl2", level=Fraction(level))


def preset_from_name(name: str, c=None, level=None) -> VAPreset:
    if name == "heisenberg":
        return heisenberg()
    if name == "virasoro":
        return virasoro(Fraction(c) if c is not None else Fraction(1, 2))
    if name == "affine_sl2":
        return affine_sl2(Fraction(level) if level is not None else 1)
    raise ValueError(f"unknown preset {name!r}")


# ---------------------------------------------------------------------------
# basis enumeration


def basis(preset: VAPreset, degree: int):
    """All canonical PBW monomials of the given degree."""
    memo = preset._memos["basis"]
    if degree in memo:
        return memo[degree]
    floor = preset.creation_floor(preset.generators[0])
    gens = preset.generators

    out = []

    def rec(remaining, max_key, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        # factors in weakly decreasing (m, then generator-order) sequence
        for m in range(min(remaining, max_key[0]), floor - 1, -1):
            start = max_key[1] if m == max_key[0] else 0
            for gi in range(start, len(gens)):
                prefix.append((gens[gi], m))
                rec(remaining - m, (m, gi), prefix)
                prefix.pop()

    rec(degree, (degree, 0), [])
    memo[degree] = tuple(out)
    return memo[degree]


def basis_upto(preset: VAPreset, max_degree: int):
    out = []
    for d in range(max_degree + 1):
        out.extend(basis(preset, d))
    return out


# ---------------------------------------------------------------------------
# oscillator mode action


def gen_mode_mono(preset: VAPreset, gen: str, n: int, mono: Mono) -> GradedVector:
    """Apply the oscillator mode gen_n to a canonical basis monomial."""
    memo = preset._memos["gen"]
    key = (gen, n, mono)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = _gen_mode_mono_impl(preset, gen, n, mono, memo)
    memo[key] = out
    return out


def _gen_mode_mono_impl(preset, gen, n, mono, memo):
    if preset.kind == "heisenberg" and n == 0:
        # a_0 is central and kills the vacuum
        return GradedVector.zero()
    if not mono:
        if n <= -preset.creation_floor(gen):
            return GradedVector.basis(((gen, -n),))
        return GradedVector.zero()
    g0, m0 = mono[0]
    rest = mono[1:]
    if n < 0 and (-n > m0 or (-n == m0
                              and preset.gen_index(gen) <= preset.gen_index(g0))):
        return GradedVector.basis(((gen, -n),) + mono)
    # not in place: commute past the first factor
    out = gen_mode_apply(preset, g0, -m0, gen_mode_mono(preset, gen, n, rest))
    gens, central = preset.commutator(gen, n, g0, -m0)
    rest_vec = GradedVector.basis(rest)
    if central:
        out = out + rest_vec.scale(central)
    for g2, n2, coeff in gens:
        if coeff:
            out = out + gen_mode_mono(preset, g2, n2, rest).scale(coeff)
    return out


def gen_mode_apply(preset: VAPreset, gen: str, n: int, v: GradedVector) -> GradedVector:
    """Linear extension of `gen_mode_mono` to arbitrary vectors."""
    out = GradedVector.zero()
    for mono, coeff in v.terms.items():
        out = out + gen_mode_mono(preset, gen, n, mono).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# translation operator


def translate_mono(preset: VAPreset, mono: Mono) -> GradedVector:
    """T = L_{-1} on a basis monomial, by the derivation rule
    [T, x_{-m}] = (m - w + 1) x_{-m-1} for a weight-w current."""
    memo = preset._memos["tr"]
    hit = memo.get(mono)
    if hit is not None:
        return hit
    if not mono:
        out = GradedVector.zero()
    else:
        g0, m0 = mono[0]
        rest = mono[1:]
        w = preset.weight(g0)
        out = GradedVector.basis(((g0, m0 + 1),) + rest).scale(m0 - w + 1)
        out = out + gen_mode_apply(preset, g0, -m0, translate_mono(preset, rest))
    memo[mono] = out
    return out


def translate(preset: VAPreset, v: GradedVector) -> GradedVector:
    out = GradedVector.zero()
    for mono, coeff in v.terms.items():
        out = out + translate_mono(preset, mono).scale(coeff)
    return out


def translate_power(preset: VAPreset, v: GradedVector, j: int) -> GradedVector:
    for _ in range(j):
        v = translate(preset, v)
    return v


# ---------------------------------------------------------------------------
# state modes


def state_mode_mono(preset: VAPreset, a: Mono, n: int, b: Mono) -> GradedVector:
    """The n-th vertex operator mode of basis state a applied to basis state b."""
    memo = preset._memos["sm"]
    key = (a, n, b)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = _state_mode_impl(preset, a, n, b)
    memo[key] = out
    return out


def _state_mode_impl(preset, a, n, b):
    if not a:
        return GradedVector.basis(b) if n == -1 else GradedVector.zero()
    x, m = a[0]
    rest = a[1:]
    w = preset.weight(x)
    p = -m + w - 1
    deg_rest = mono_degree(rest)
    deg_b = mono_degree(b)
    out = GradedVector.zero()
    # sum_i (-1)^i C(p,i) u_(p-i) (rest_(n+i) b); rest_(k) b vanishes for
    # k > deg rest + deg b - 1 by the grading bound
    for i in range(0, max(0, deg_rest + deg_b - n)):
        inner = state_mode_mono(preset, rest, n + i, b)
        if inner:
            coeff = (1 if i % 2 == 0 else -1) * binom(p, i)
            if coeff:
                # u_(j) is the oscillator mode x_{j-w+1}
                out = out + gen_mode_apply(preset, x, (p - i) - w + 1,
                                           inner).scale(coeff)
    # -(-1)^p sum_i (-1)^i C(p,i) rest_(p+n-i) (u_(i) b); u_(i) b vanishes
    # once the oscillator index i-w+1 exceeds deg b
    sign_p = 1 if p % 2 == 0 else -1
    for i in range(0, deg_b + w):
        coeff = binom(p, i)
        if not coeff:
            continue
        ub = gen_mode_mono(preset, x, i - w + 1, b)
        if not ub:
            continue
        inner = state_mode_apply_mono_left(preset, rest, p + n - i, ub)
        if inner:
            sgn = -sign_p * (1 if i % 2 == 0 else -1)
            out = out + inner.scale(sgn * coeff)
    return out


def state_mode_apply_mono_left(preset, a: Mono, n: int, v: GradedVector) -> GradedVector:
    out = GradedVector.zero()
    for mono, coeff in v.terms.items():
        out = out + state_mode_mono(preset, a, n, mono).scale(coeff)
    return out


def state_mode(preset: VAPreset, a: GradedVector, n: int, b: GradedVector) -> GradedVector:
    """Bilinear extension: a_(n) b for arbitrary vectors a, b."""
    out = GradedVector.zero()
    for am, ac in a.terms.items():
        for bm, bc in b.terms.items():
            piece = state_mode_mono(preset, am, n, bm)
            if piece:
                out = out + piece.scale(ac * bc)
    return out


def pole_bound(preset: VAPreset, a: GradedVector, b: GradedVector) -> int:
    """Smallest N >= 0 with a_(n) b = 0 for all n >= N."""
    top = a.max_degree() + b.max_degree()
    for n in range(top - 1, -1, -1):
        if state_mode(preset, a, n, b):
            return n + 1
    return 0


def clear_caches():
    for m in _memo_root.values():
        for sub in m.values():
            sub.clear()
