"""Exact scalar arithmetic and the exact/approx coercion rule."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from voxfact.scalars import (DegreeWindow, QQi, binom, format_qqi, is_exact,
                             parse_qqi, scalar_pow)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
qqis = st.builds(QQi, rationals, rationals)


@given(qqis, qqis, qqis)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(qqis)
def test_additive_inverse(x):
    assert x + (-x) == QQi(0)


@given(qqis)
def test_multiplicative_inverse(x):
    if x:
        assert x * (QQi(1) / x) == QQi(1)
    else:
        with pytest.raises(ZeroDivisionError):
            QQi(1) / x


@given(qqis, qqis)
def test_exact_closed(x, y):
    # closure of the exact variant under ring ops
    assert is_exact(x + y) and is_exact(x * y) and is_exact(-x)
    if y:
        assert is_exact(x / y)


@given(qqis)
def test_exact_to_approx_coercion(x):
    mixed = x + 0.5j
    assert isinstance(mixed, complex)
    assert not is_exact(mixed)


@given(qqis)
def test_parse_format_roundtrip(x):
    assert parse_qqi(format_qqi(x)) == x


def test_parse_forms():
    assert parse_qqi("3/2") == QQi(Fraction(3, 2))
    assert parse_qqi("-i") == QQi(0, -1)
    assert parse_qqi("1/2-3/4i") == QQi(Fraction(1, 2), Fraction(-3, 4))
    assert parse_qqi("2i") == QQi(0, 2)
    assert parse_qqi("0") == QQi(0)
    with pytest.raises(ValueError):
        parse_qqi("3/2+1/2")


def test_conjugate_abs2():
    x = QQi(Fraction(3, 5), Fraction(4, 5))
    assert x.abs2() == 1
    assert x * x.conjugate() == QQi(x.abs2())


@given(qqis, st.integers(min_value=-4, max_value=6))
def test_scalar_pow(x, e):
    if not x and e < 0:
        return
    expect = QQi(1)
    for _ in range(abs(e)):
        expect = expect * x
    if e < 0:
        expect = QQi(1) / expect
    assert scalar_pow(x, e) == expect


def test_pow_zero_conventions():
    assert scalar_pow(QQi(0), 0) == QQi(1)
    assert scalar_pow(0.0, 0) == 1.0
    with pytest.raises(ZeroDivisionError):
        scalar_pow(QQi(0), -1)


def test_binom_values():
    # C(t, i) for negative upper index: C(-1, i) = (-1)^i
    assert [binom(-1, i) for i in range(5)] == [1, -1, 1, -1, 1]
    assert binom(5, 2) == 10
    assert binom(-3, 2) == 6
    assert binom(2, 5) == 0
    assert binom(4, 0) == 1


def test_degree_window():
    w = DegreeWindow.parse("0:6")
    assert list(w.degrees()) == list(range(7))
    assert 6 in w and 7 not in w
    with pytest.raises(ValueError):
        DegreeWindow(3, 1)
    with pytest.raises(ValueError):
        DegreeWindow.parse("junk")
