"""Graded state vectors on a PBW basis and windowed product-space vectors.

A basis monomial is a tuple of (generator, m) pairs, m >= 1, read left to
right as the oscillator word x1_{-m1} ... xk_{-mk} applied to the vacuum.
Canonical order is weakly decreasing m, ties broken by generator order.
The empty tuple is the vacuum.  Degree of a monomial is the sum of the m's.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .scalars import (DegreeWindow, QQi, as_complex, format_qqi, is_exact,
                      scalar_zero)

Mono = tuple  # tuple[tuple[str, int], ...]

VACUUM: Mono = ()

_TOKEN_RE = re.compile(r"^([A-Za-z]+)\(-(\d+)\)$")


def mono_degree(mono: Mono) -> int:
    return sum(m for _, m in mono)


def mono_token(factor) -> str:
    gen, m = factor
    return f"{gen}(-{m})"


def parse_token(tok: str):
    m = _TOKEN_RE.match(tok)
    if not m:
        raise ValueError(f"bad generator token {tok!r}")
    return (m.group(1), int(m.group(2)))


class GradedVector:
    """Finite linear combination of PBW monomials.

    Coefficients are QQi (exact path) or complex (numeric path); the two mix
    by coercion to complex.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for mono, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if scalar_zero(coeff):
                    continue
                if mono in cleaned:
                    s = cleaned[mono] + coeff
                    if scalar_zero(s):
                        del cleaned[mono]
                    else:
                        cleaned[mono] = s
                else:
                    cleaned[mono] = coeff
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("GradedVector is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def basis(cls, mono: Mono, coeff=None):
        return cls({tuple(mono): QQi(1) if coeff is None else coeff})

    @classmethod
    def vacuum(cls):
        return cls.basis(VACUUM)

    # -- linear structure ---------------------------------------------

    def __add__(self, other):
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, 0) + coeff
            if scalar_zero(s):
                out.pop(mono, None)
            else:
                out[mono] = s
        return GradedVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        if scalar_zero(s):
            return GradedVector()
        return GradedVector({m: c * s for m, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedVector):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def __hash__(self):
        return hash(frozenset((m, _hashable(c)) for m, c in self.terms.items()))

    # -- grading ------------------------------------------------------

    def degrees(self):
        return sorted({mono_degree(m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous vector; vacuum and zero have degree 0."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return degs[0]

    def max_degree(self) -> int:
        degs = self.degrees()
        return degs[-1] if degs else 0

    def project(self, k: int) -> "GradedVector":
        return GradedVector({m: c for m, c in self.terms.items()
                             if mono_degree(m) == k})

    def grading_act(self, q) -> "GradedVector":
        """Scale each homogeneous component of degree k by q**k."""
        from .scalars import scalar_pow
        return GradedVector({m: c * scalar_pow(q, mono_degree(m))
                             for m, c in self.terms.items()})

    # -- norms and comparison -----------------------------------------

    def norm_inf(self) -> float:
        return max((abs(as_complex(c)) for c in self.terms.values()), default=0.0)

    def approx_eq(self, other, rtol=1e-9, atol=None) -> bool:
        scale = max(self.norm_inf(), other.norm_inf(), 1.0)
        tol = atol if atol is not None else rtol * scale
        diff = self - other
        return diff.norm_inf() <= tol

    def distance(self, other) -> float:
        return (self - other).norm_inf()

    def to_complex(self) -> "GradedVector":
        return GradedVector({m: as_complex(c) for m, c in self.terms.items()})

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    # -- serialization ------------------------------------------------

    def to_obj(self):
        out = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[mono]
            if is_exact(c):
                q = QQi(c) if not isinstance(c, QQi) else c
                entry = {"mono": [mono_token(f) for f in mono],
                         "re": str(q.re), "im": str(q.im)}
            else:
                z = as_complex(c)
                entry = {"mono": [mono_token(f) for f in mono],
                         "re": repr(z.real), "im": repr(z.imag)}
            out.append(entry)
        return {"terms": out}

    @classmethod
    def from_obj(cls, obj) -> "GradedVector":
        terms = {}
        for entry in obj["terms"]:
            mono = tuple(parse_token(t) for t in entry["mono"])
            re_s, im_s = entry["re"], entry["im"]
            if "/" in re_s or "/" in im_s or ("." not in re_s and "." not in im_s
                                              and "e" not in re_s and "e" not in im_s):
                coeff = QQi(re_s, im_s)
            else:
                coeff = complex(float(re_s), float(im_s))
            terms[mono] = terms.get(mono, 0) + coeff
        return cls(terms)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, **kw)

    @classmethod
    def from_json(cls, text: str) -> "GradedVector":
        return cls.from_obj(json.loads(text))

    def __repr__(self):
        if not self.terms:
            return "GradedVector(0)"
        bits = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[mono]
            body = "".join(mono_token(f) for f in mono) or "|0>"
            ctxt = format_qqi(c) if isinstance(c, QQi) else str(c)
            bits.append(f"({ctxt})*{body}")
        return " + ".join(bits)


def _hashable(c):
    return c if isinstance(c, QQi) else complex(c)


def _mono_sort_key(mono: Mono):
    return (mono_degree(mono), mono)


@dataclass
class ProductVector:
    """Element of the degreewise product space, truncated to a window."""

    window: DegreeWindow
    components: dict = field(default_factory=dict)  # degree -> GradedVector
    truncated: bool = False
    tail_estimate: float = 0.0

    def component(self, k: int) -> GradedVector:
        return self.components.get(k, GradedVector.zero())

    def set_component(self, k: int, v: GradedVector):
        if v:
            if not v.is_homogeneous() or v.degree() != k:
                raise ValueError(f"component at {k} must be homogeneous of degree {k}")
            self.components[k] = v
        else:
            self.components.pop(k, None)

    def __add__(self, other):
        if self.window != other.window:
            raise ValueError("window mismatch")
        out = ProductVector(self.window, dict(self.components),
                            self.truncated or other.truncated,
                            max(self.tail_estimate, other.tail_estimate))
        for k, v in other.components.items():
            out.set_component(k, out.component(k) + v)
        return out

    def scale(self, s) -> "ProductVector":
        return ProductVector(self.window,
                             {k: v.scale(s) for k, v in self.components.items()},
                             self.truncated, self.tail_estimate * abs(as_complex(s)))

    def flatten(self) -> GradedVector:
        out = GradedVector.zero()
        for v in self.components.values():
            out = out + v
        return out

    def norm_inf(self) -> float:
        return max((v.norm_inf() for v in self.components.values()), default=0.0)

    def approx_eq(self, other, rtol=1e-9, atol=None) -> bool:
        if self.window != other.window:
            return False
        scale = max(self.norm_inf(), other.norm_inf(), 1.0)
        tol = atol if atol is not None else rtol * scale
        for k in self.window.degrees():
            if self.component(k).distance(other.component(k)) > tol:
                return False
        return True

    def to_obj(self):
        return {"window": [self.window.lo, self.window.hi],
                "by_degree": {str(k): self.component(k).to_obj()
                              for k in sorted(self.components)},
                "truncated": self.truncated,
                "tail_estimate": self.tail_estimate}

    @classmethod
    def from_obj(cls, obj) -> "ProductVector":
        lo, hi = obj["window"]
        pv = cls(DegreeWindow(lo, hi))
        for k, gv in obj["by_degree"].items():
            pv.set_component(int(k), GradedVector.from_obj(gv))
        pv.truncated = obj.get("truncated", False)
        pv.tail_estimate = obj.get("tail_estimate", 0.0)
        return pv

    @classmethod
    def from_vector(cls, v: GradedVector, window: DegreeWindow) -> "ProductVector":
        pv = cls(window)
        for k in window.degrees():
            pv.set_component(k, v.project(k))
        return pv
