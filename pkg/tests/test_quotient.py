from fractions import Fraction as Q
from math import gcd

import pytest
from hypothesis import given, strategies as st

from sasaki_join.errors import DegenerateRay, UnsupportedWeight, ValidationError
from sasaki_join.join import FanoBase, WeightVector, has_regular_ray, make_join
from sasaki_join.quotient import (
    REGULAR,
    ReebRay,
    orbit_periods,
    reeb_quotient,
    ypq_quotient,
)


def _join(fano_index, w1, w2, d_N=2):
    return make_join(FanoBase.custom(fano_index, d_N), WeightVector(w1, w2))


def test_worked_example_11_1():
    q = reeb_quotient(_join(1, 11, 1), ReebRay(4, 5))
    assert (q.s, q.m, q.m1, q.m2, q.degree_n) == (3, 4, 16, 20, 17)
    assert q.branch == (("D1", Q(15, 16)), ("D2", Q(19, 20)))
    assert q.fiber_descriptor == "CP^1[4,5]/Z_4"
    assert q.lens_descriptor == "L(12; 11, 1)"
    q = reeb_quotient(_join(1, 11, 1), ReebRay(1, 1))
    assert (q.s, q.m, q.m1, q.m2, q.degree_n) == (2, 6, 6, 6, 5)
    assert q.branch == (("D1", Q(5, 6)), ("D2", Q(5, 6)))


def test_ypq_7_3_quotient():
    q = reeb_quotient(_join(2, 5, 2, 1), ReebRay(5, 4))
    assert (q.s, q.m, q.m1, q.m2, q.degree_n) == (1, 7, 35, 28, 20)


def test_degenerate_and_reversed():
    with pytest.raises(DegenerateRay):
        reeb_quotient(_join(1, 2, 1), ReebRay(2, 1))
    q = reeb_quotient(_join(1, 11, 1), ReebRay(12, 1))
    assert q.orientation_reversed and q.signed_degree < 0 < q.degree_n
    assert q.branch[0] == ("D1", 1 - Q(1, q.m2))
    with pytest.raises(ValidationError):
        ReebRay(2, 4)


def test_periods_examples():
    p = orbit_periods(_join(1, 11, 1), ReebRay(4, 5))
    assert (p.generic, p.at_D1, p.at_D2) == (Q(1, 3), Q(1, 48), Q(1, 60))
    assert p.ramification == (16, 20)
    p = orbit_periods(_join(2, 3, 1), ReebRay(1, 1))
    assert p.generic == p.at_D1 == p.at_D2 == Q(1, 2)
    with pytest.raises(UnsupportedWeight):
        orbit_periods(_join(3, 1, 1), ReebRay(2, 1))


def test_regular_rays_have_equal_periods():
    for fano_index in range(1, 7):
        for w1 in range(2, 30):
            for w2 in range(1, w1):
                if gcd(w1, w2) != 1:
                    continue
                j = _join(fano_index, w1, w2)
                if has_regular_ray(j, (1, 1)):
                    p = orbit_periods(j, ReebRay(1, 1))
                    assert p.generic == p.at_D1 == p.at_D2


def test_ypq_quotient_examples():
    q = ypq_quotient(2, 1)
    assert (q.degree_n, q.m) == (1, 1) and q.regularity == REGULAR
    assert all(c == 0 for _, c in q.branch)
    q = ypq_quotient(3, 1)
    assert (q.degree_n, q.m) == (2, 3)
    assert q.branch == (("D1", Q(2, 3)), ("D2", Q(2, 3)))
    q = ypq_quotient(4, 1)
    assert (q.degree_n, q.m) == (1, 2)


pairs = st.tuples(st.integers(1, 50), st.integers(1, 50)).filter(lambda t: gcd(*t) == 1)


@given(st.integers(1, 12), pairs, pairs)
def test_quotient_invariants(fano_index, wp, vp):
    w = WeightVector(max(wp), min(wp))
    v = ReebRay(*vp)
    if w.w1 * v.v2 == w.w2 * v.v1:
        return
    j = make_join(FanoBase.custom(fano_index, 1), w)
    q = reeb_quotient(j, v)
    assert q.m * q.s == j.l2
    assert Q(q.m1, q.m2) == Q(v.v1, v.v2)
    assert q.signed_degree * q.s == j.l1 * (w.w1 * v.v2 - w.w2 * v.v1)
    assert q.orb_pi1_order == q.m
    if not w.is_trivial:
        assert (q.regularity == REGULAR) == has_regular_ray(j, v)
        p = orbit_periods(j, v)
        assert (p.generic / p.at_D1).denominator == 1
        assert (p.generic / p.at_D2).denominator == 1
