from math import gcd

import pytest
from hypothesis import given, strategies as st

from sasaki_join.errors import UnsupportedWeight, ValidationError
from sasaki_join.join import (
    FanoBase,
    WeightVector,
    enumerate_regular_cones,
    has_regular_ray,
    make_join,
)
from sasaki_join.admissible import ypq_bridge


def test_weight_validation():
    with pytest.raises(ValidationError):
        WeightVector(2, 2)
    with pytest.raises(ValidationError):
        WeightVector(1, 3)
    with pytest.raises(ValidationError):
        WeightVector(0, 0)
    assert WeightVector(1, 1).is_trivial
    assert WeightVector(5, 2).norm == 7


def test_base_families():
    assert (FanoBase.projective_space(2).fano_index, FanoBase.projective_space(2).d_N) == (3, 2)
    assert FanoBase.quadric_product().fano_index == 2
    assert FanoBase.del_pezzo(3).fano_index == 1
    with pytest.raises(ValidationError):
        FanoBase.del_pezzo(9)
    with pytest.raises(ValidationError):
        FanoBase("x", 2, 3, "projective_space", 3)
    assert FanoBase.del_pezzo(2).admits_ke_metric is False
    assert FanoBase.custom(4, 3).admits_ke_metric is None


def test_make_join_examples():
    cp2 = FanoBase.projective_space(2)
    assert (make_join(cp2, WeightVector(2, 1)).l1, make_join(cp2, WeightVector(2, 1)).l2) == (1, 1)
    j = make_join(cp2, WeightVector(5, 1))
    assert (j.l1, j.l2) == (1, 2)
    for w in [WeightVector(3, 2), WeightVector(11, 1), WeightVector(7, 4)]:
        j = make_join(FanoBase.del_pezzo(3), w)
        assert (j.l1, j.l2) == (1, w.norm)


def test_has_regular_ray_examples():
    assert has_regular_ray(make_join(FanoBase.custom(2, 1), WeightVector(3, 1)), (1, 1))
    assert not has_regular_ray(make_join(FanoBase.custom(1, 2), WeightVector(3, 2)), (1, 1))
    assert not has_regular_ray(make_join(FanoBase.custom(3, 2), WeightVector(2, 1)), (2, 1))
    with pytest.raises(UnsupportedWeight):
        has_regular_ray(make_join(FanoBase.custom(3, 2), WeightVector(1, 1)), (1, 1))


def test_enumerate_examples():
    assert enumerate_regular_cones(FanoBase.custom(2, 1)) == [WeightVector(3, 1)]
    assert enumerate_regular_cones(FanoBase.custom(3, 2)) == [WeightVector(2, 1), WeightVector(5, 1)]
    assert enumerate_regular_cones(FanoBase.custom(1, 2)) == []


@pytest.mark.parametrize("fano_index", range(1, 13))
def test_enumeration_matches_brute_force(fano_index):
    base = FanoBase.custom(fano_index, 2)
    found = enumerate_regular_cones(base)
    for w in found:
        assert has_regular_ray(make_join(base, w), (1, 1))
    brute = [
        WeightVector(w1, w2)
        for w1 in range(2, 201)
        for w2 in range(1, w1)
        if gcd(w1, w2) == 1 and has_regular_ray(make_join(base, WeightVector(w1, w2)), (1, 1))
    ]
    assert brute == found


@given(st.integers(1, 40), st.integers(1, 300), st.integers(1, 300))
def test_join_invariants(fano_index, a, b):
    if gcd(a, b) != 1:
        return
    w = WeightVector(max(a, b), min(a, b))
    j = make_join(FanoBase.custom(fano_index, 1), w)
    assert gcd(j.l1, j.l2) == 1
    assert j.l2 * fano_index == w.norm * j.l1
    assert gcd(j.l2, j.l1 * w.product) == 1


def test_ypq_relative_indices():
    for p in range(2, 51):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            w, l1, l2 = ypq_bridge(p, q)
            j = make_join(FanoBase.projective_space(1), w)
            assert (j.l1, j.l2) == (gcd(p + q, p - q), p) == (l1, l2)
