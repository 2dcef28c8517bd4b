"""Exact plane geometry: membership, circle containment, subset, disjointness."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from voxfact.geometry import (AllPlane, Annulus, Disc, OpenSet, UnionSet,
                              is_disjoint, is_subset, union_of)
from voxfact.scalars import QQi

rat = st.fractions(min_value=-6, max_value=6, max_denominator=8)
pts = st.builds(QQi, rat, rat)
radii = st.fractions(min_value=Fraction(1, 8), max_value=4, max_denominator=8)
discs = st.builds(Disc, pts, radii)


def test_point_membership_exact():
    d = Disc(QQi(0), Fraction(1))
    assert d.contains_point(QQi(Fraction(3, 5), Fraction(4, 5) - Fraction(1, 100)))
    assert not d.contains_point(QQi(Fraction(3, 5), Fraction(4, 5)))  # boundary is out
    a = Annulus(QQi(0), Fraction(1), Fraction(2))
    assert a.contains_point(QQi(Fraction(3, 2)))
    assert not a.contains_point(QQi(1))
    assert not a.contains_point(QQi(0))


def test_circle_containment():
    a = Annulus(QQi(0), Fraction(1), Fraction(2))
    # concentric circle strictly between the radii
    assert a.contains_circle(QQi(0), Fraction(3, 2))
    assert not a.contains_circle(QQi(0), Fraction(1, 2))
    assert not a.contains_circle(QQi(0), Fraction(2))
    # small circle inside the band
    assert a.contains_circle(QQi(Fraction(3, 2)), Fraction(1, 4))
    # circle crossing the hole
    assert not a.contains_circle(QQi(Fraction(3, 2)), Fraction(1))
    d = Disc(QQi(1), Fraction(2))
    assert d.contains_circle(QQi(1), Fraction(3, 2))
    assert not d.contains_circle(QQi(1), Fraction(2))


def test_subset_cases():
    big = Disc(QQi(0), Fraction(4))
    assert is_subset(Disc(QQi(1), Fraction(1)), big)
    assert not is_subset(big, Disc(QQi(1), Fraction(1)))
    assert is_subset(Annulus(QQi(0), Fraction(1), Fraction(2)), big)
    assert is_subset(big, AllPlane())
    assert is_subset(UnionSet((Disc(QQi(-2), Fraction(1)),
                               Disc(QQi(2), Fraction(1)))), big)
    assert is_subset(Disc(QQi(0), Fraction(1)),
                     UnionSet((Disc(QQi(0), Fraction(2)),
                               Disc(QQi(5), Fraction(1)))))


def test_disjoint_cases():
    assert is_disjoint(Disc(QQi(-2), Fraction(1)), Disc(QQi(2), Fraction(1)))
    assert not is_disjoint(Disc(QQi(0), Fraction(2)), Disc(QQi(1), Fraction(1)))
    # touching open discs are disjoint
    assert is_disjoint(Disc(QQi(-1), Fraction(1)), Disc(QQi(1), Fraction(1)))
    assert is_disjoint(Disc(QQi(0), Fraction(1)),
                       Annulus(QQi(0), Fraction(1), Fraction(2)))
    assert not is_disjoint(AllPlane(), Disc(QQi(0), Fraction(1)))


def test_union_validation():
    from voxfact.errors import NotDisjoint
    with pytest.raises(NotDisjoint):
        union_of(Disc(QQi(0), Fraction(2)), Disc(QQi(1), Fraction(2)))
    u = union_of(Disc(QQi(-2), Fraction(1)), Disc(QQi(2), Fraction(1)))
    assert isinstance(u, UnionSet)


def test_annulus_validation():
    with pytest.raises(ValueError):
        Annulus(QQi(0), Fraction(2), Fraction(1))


def test_from_obj_roundtrip():
    objs = [
        {"disc": {"center": "1/2+i", "radius": "3/4"}},
        {"annulus": {"center": "0", "inner": "1", "outer": "2"}},
        {"all": True},
        {"union": [{"disc": {"center": "-2", "radius": "1"}},
                   {"disc": {"center": "2", "radius": "1"}}]},
    ]
    for obj in objs:
        s = OpenSet.from_obj(obj)
        assert OpenSet.from_obj(s.to_obj()).to_obj() == s.to_obj()


@given(discs, discs)
def test_subset_implies_membership(d1, d2):
    # conservative subset: a yes answer must be honest on the center
    if is_subset(d1, d2):
        assert d2.contains_point(d1.center)


@given(discs, discs)
def test_disjoint_symmetric_and_honest(d1, d2):
    assert is_disjoint(d1, d2) == is_disjoint(d2, d1)
    if is_disjoint(d1, d2):
        assert not d2.contains_point(d1.center)
