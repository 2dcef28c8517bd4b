"""Exact Gaussian-rational scalars, generalized binomials, degree windows.

Coefficients throughout the package are either exact (`QQi`, a pair of
`fractions.Fraction`) or approximate (python `complex`).  Arithmetic between
the two coerces to `complex`; arithmetic with `int` / `Fraction` stays exact.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class QQi:
    """A Gaussian rational re + im*i with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re",
                           re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im",
                           im if type(im) is Fraction else Fraction(im))

    # immutable by convention
    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    @staticmethod
    def _lift(x):
        if isinstance(x, QQi):
            return x
        if isinstance(x, (int, Fraction)):
            return QQi(x)
        return None

    def __add__(self, other):
        o = QQi._lift(other)
        if o is None:
            return complex(self) + other
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        o = QQi._lift(other)
        if o is None:
            return complex(self) - other
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is int:
            if other == 1:
                return self
            return QQi(self.re * other, self.im * other)
        o = QQi._lift(other)
        if o is None:
            return complex(self) * other
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi._lift(other)
        if o is None:
            return complex(self) / other
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi((self.re * o.re + self.im * o.im) / n,
                   (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = QQi._lift(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return complex(self) ** e
        if e == 0:
            return QQi(1)
        if e < 0:
            return QQi(1) / (self ** (-e))
        half = self ** (e // 2)
        out = half * half
        return out * self if e % 2 else out

    def conjugate(self):
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|self|^2, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.sqrt(float(self.abs2()))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        o = QQi._lift(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == complex(other)
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"QQi({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_qqi(self)


_QQI_RE = re.compile(
    r"""^\s*
    (?P<re>[+-]?\d+(?:/\d+)?)?
    (?P<im>(?:(?<=\S)[+-]|^[+-]?)(?:\d+(?:/\d+)?)?i)?
    \s*$""",
    re.VERBOSE,
)


def parse_qqi(s) -> QQi:
    """Parse strings like '3/2', '-1/2+3i', 'i', '2-i', '0' into QQi."""
    if isinstance(s, QQi):
        return s
    if isinstance(s, (int, Fraction)):
        return QQi(s)
    text = str(s).replace(" ", "")
    m = _QQI_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse Gaussian rational: {s!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    if im_txt is None:
        im_part = Fraction(0)
    else:
        body = im_txt[:-1]
        if body in ("", "+"):
            im_part = Fraction(1)
        elif body == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(body)
    return QQi(re_part, im_part)


def format_qqi(x: QQi) -> str:
    if x.im == 0:
        return str(x.re)
    if x.re == 0:
        if x.im == 1:
            return "i"
        if x.im == -1:
            return "-i"
        return f"{x.im}i"
    sign = "+" if x.im > 0 else "-"
    mag = abs(x.im)
    imtxt = "i" if mag == 1 else f"{mag}i"
    return f"{x.re}{sign}{imtxt}"


def is_exact(x) -> bool:
    return isinstance(x, (QQi, int, Fraction))


def as_complex(x) -> complex:
    return complex(x)


def scalar_zero(x) -> bool:
    if isinstance(x, QQi):
        return not x
    return x == 0


def scalar_pow(base, e: int):
    """base**e with the 0**0 == 1 convention, exact when base is exact."""
    if e == 0:
        return QQi(1) if is_exact(base) else complex(1)
    b = QQi(base) if isinstance(base, (int, Fraction)) else base
    if scalar_zero(b):
        if e > 0:
            return QQi(0) if is_exact(b) else complex(0)
        raise ZeroDivisionError("0 raised to a negative power")
    return b ** e


@lru_cache(maxsize=None)
def binom(t: int, i: int) -> int:
    """Generalized binomial C(t, i) for integer t (possibly negative), i >= 0."""
    if i < 0:
        return 0
    num = 1
    for l in range(i):
        num *= t - l
    val = Fraction(num, math.factorial(i))
    assert val.denominator == 1
    return val.numerator


@dataclass(frozen=True)
class DegreeWindow:
    """Closed integer range [lo, hi] of retained degrees, lo >= 0."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"bad degree window {self.lo}:{self.hi}")

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def __contains__(self, k):
        return self.lo <= k <= self.hi

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        try:
            lo, hi = text.split(":")
            return cls(int(lo), int(hi))
        except ValueError as exc:
            raise ValueError(f"bad window spec {text!r}, expected lo:hi") from exc

    def __str__(self):
        return f"{self.lo}:{self.hi}"
