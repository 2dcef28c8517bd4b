"""Mode arithmetic on the three built-in presets.

Frozen expected values below come straight from the defining brackets:
free boson [a_m, a_n] = m delta_{m+n,0}; Virasoro
[L_m, L_n] = (m-n) L_{m+n} + (c/12)(m^3-m) delta_{m+n,0}; sl2 currents with
the level form. The normal-ordered-field route in voxfact.oracle is the
independent machine oracle for everything beyond these one-bracket cases.
"""
from fractions import Fraction

import pytest

from voxfact.graded import GradedVector, mono_degree
from voxfact.oracle import oracle_mode_mono
from voxfact.presets import (basis, basis_upto, gen_mode_apply, pole_bound,
                             preset_from_name, state_mode, state_mode_mono,
                             translate)
from voxfact.scalars import QQi

VAC = GradedVector.vacuum()


def B(*tokens):
    from voxfact.graded import parse_token
    return GradedVector.basis(tuple(parse_token(t) for t in tokens))


# --- frozen single values -------------------------------------------------

def test_boson_generator_pairing(boson):
    a = B("a(-1)")
    assert state_mode(boson, a, 1, a) == VAC
    assert state_mode(boson, a, 0, a) == GradedVector.zero()
    assert state_mode(boson, a, -1, a) == B("a(-1)", "a(-1)")
    assert state_mode(boson, a, -2, a) == B("a(-2)", "a(-1)")


def test_boson_grading_bound(boson):
    a = B("a(-1)")
    for n in range(2, 6):
        assert state_mode(boson, a, n, a) == GradedVector.zero()


def test_virasoro_conformal_vector(vir):
    w = B("L(-2)")
    assert state_mode(vir, w, 1, w) == w.scale(QQi(2))          # L_0 acts by degree
    assert state_mode(vir, w, 0, w) == B("L(-3)")               # L_{-1} = T
    assert state_mode(vir, w, 2, w) == GradedVector.zero()
    assert state_mode(vir, w, 3, w) == VAC.scale(QQi(Fraction(1, 4)))  # c/2, c=1/2


def test_virasoro_central_charge_dial():
    vir5 = preset_from_name("virasoro", c=Fraction(5))
    w = B("L(-2)")
    assert state_mode(vir5, w, 3, w) == VAC.scale(QQi(Fraction(5, 2)))


def test_sl2_level_pairings(sl2):
    e, h, f = B("e(-1)"), B("h(-1)"), B("f(-1)")
    # x_(0) y = [x, y](-1)|0>, x_(1) y = kappa(x, y)|0> at level 1
    assert state_mode(sl2, e, 0, f) == B("h(-1)")
    assert state_mode(sl2, h, 0, e) == B("e(-1)").scale(QQi(2))
    assert state_mode(sl2, h, 0, f) == B("f(-1)").scale(QQi(-2))
    assert state_mode(sl2, e, 1, f) == VAC
    assert state_mode(sl2, h, 1, h) == VAC.scale(QQi(2))
    assert state_mode(sl2, e, 1, e) == GradedVector.zero()


def test_translation_vacuum_and_leibniz(boson):
    assert translate(boson, VAC) == GradedVector.zero()
    # [T, a_(-m)] = m a_(-m-1) on a monomial
    assert translate(boson, B("a(-1)")) == B("a(-2)")
    assert translate(boson, B("a(-2)", "a(-1)")) == \
        B("a(-3)", "a(-1)").scale(QQi(2)) + B("a(-2)", "a(-2)")


def test_basis_counts(boson, vir, sl2):
    # free boson: partitions of d
    assert [len(basis(boson, d)) for d in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    # virasoro floor 2: partitions into parts >= 2
    assert [len(basis(vir, d)) for d in range(7)] == [1, 0, 1, 1, 2, 2, 4]
    # sl2: partitions with 3 colors
    assert [len(basis(sl2, d)) for d in range(5)] == [1, 3, 9, 22, 51]


def test_basis_monomials_canonical(sl2):
    for mono in basis_upto(sl2, 4):
        modes = [m for _, m in mono]
        assert modes == sorted(modes, reverse=True)
        for (g1, m1), (g2, m2) in zip(mono, mono[1:]):
            if m1 == m2:
                assert sl2.gen_index(g1) <= sl2.gen_index(g2)


# --- structural laws over random basis pairs ------------------------------

def _pairs(preset, dmax):
    out = []
    for am in basis_upto(preset, dmax):
        for bm in basis_upto(preset, dmax):
            out.append((am, bm))
    return out


@pytest.mark.parametrize("name", ["heisenberg", "virasoro", "affine_sl2"])
def test_iterate_matches_field_oracle(name):
    preset = preset_from_name(name)
    for am, bm in _pairs(preset, 3):
        da, db = mono_degree(am), mono_degree(bm)
        for n in range(-2, da + db + 1):
            assert state_mode_mono(preset, am, n, bm) == \
                oracle_mode_mono(preset, am, n, bm), (am, n, bm)


@pytest.mark.parametrize("name", ["heisenberg", "virasoro", "affine_sl2"])
def test_degree_rule_and_grading_bound(name):
    preset = preset_from_name(name)
    for am, bm in _pairs(preset, 3):
        da, db = mono_degree(am), mono_degree(bm)
        for n in range(-3, da + db + 2):
            v = state_mode_mono(preset, am, n, bm)
            if n >= da + db:
                assert not v
            elif v:
                assert v.degree() == da + db - n - 1


@pytest.mark.parametrize("name", ["heisenberg", "virasoro", "affine_sl2"])
def test_vacuum_is_identity_like(name):
    preset = preset_from_name(name)
    for bm in basis_upto(preset, 4):
        b = GradedVector.basis(bm)
        assert state_mode_mono(preset, (), -1, bm) == b
        assert state_mode_mono(preset, (), 0, bm) == GradedVector.zero()
        assert state_mode(preset, b, -1, VAC) == b


def test_state_mode_bilinear(boson):
    a, b = B("a(-1)"), B("a(-2)")
    c = QQi(Fraction(2, 3), Fraction(1, 5))
    lhs = state_mode(boson, a.scale(c) + b, -1, a)
    rhs = state_mode(boson, a, -1, a).scale(c) + state_mode(boson, b, -1, a)
    assert lhs == rhs


def test_pole_bound_values(boson, vir):
    a, w = B("a(-1)"), B("L(-2)")
    assert pole_bound(boson, a, a) == 2
    assert pole_bound(vir, w, w) == 4


def test_gen_mode_annihilates_vacuum(boson):
    for n in range(0, 4):
        assert not gen_mode_apply(boson, "a", n, VAC)
