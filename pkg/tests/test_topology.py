import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from sasaki_join.errors import ParityError, ValidationError
from sasaki_join.exact import factorize
from sasaki_join.join import WeightVector
from sasaki_join.topology import (
    EQUIVALENT,
    INCONCLUSIVE,
    INEQUIVALENT,
    AbelianGroup,
    class_label,
    cohomology_delpezzo_join,
    cohomology_quadric_join,
    cohomology_sphere_join,
    delpezzo_coincidences,
    derive_groups,
    homeo_obstruction,
    homeo_residues,
    homotopy_equivalent_7,
    p1_residue,
    partition_classes,
    pi4_distinguishes,
    split_classes,
)

W = WeightVector
EX2 = [W(6545, 1), W(1309, 5), W(935, 7), W(595, 11), W(385, 17), W(187, 35), W(119, 55), W(85, 77)]


def test_abelian_group_normal_form():
    assert AbelianGroup(0, (5, 6)).invariant_factors() == (30,)
    assert AbelianGroup(0, (3, 3, 3, 2)).invariant_factors() == (3, 3, 6)
    assert AbelianGroup(0, (1,)).is_zero
    assert AbelianGroup(0, (6, 5)).isomorphic(AbelianGroup(0, (30,)))
    assert not AbelianGroup(0, (2, 2)).isomorphic(AbelianGroup(0, (4,)))
    assert str(AbelianGroup(2, (3,))) == "Z^2 x Z_3"


def test_sphere_join_examples():
    assert cohomology_sphere_join(2, W(2, 1)).group(4) == AbelianGroup(0, (2,))
    assert cohomology_sphere_join(2, W(3, 1)).group(4) == AbelianGroup(0, (27,))
    assert cohomology_sphere_join(2, W(1, 1)).group(4) == AbelianGroup(0, (9,))
    ring = cohomology_sphere_join(2, W(3, 1))
    assert ring.relation_strings() == ["27*x^2", "x^3", "x^2*y", "y^2"]
    with pytest.raises(ValidationError):
        cohomology_sphere_join(1, W(2, 1))


def test_quadric_examples():
    ring = cohomology_quadric_join(W(3, 1))
    assert "2*x*y" in ring.relation_strings() and "3*y^2" in ring.relation_strings()
    ring = cohomology_quadric_join(W(5, 2))
    assert "7*x*y" in ring.relation_strings() and "40*y^2" in ring.relation_strings()
    ring = cohomology_quadric_join(W(1, 1))
    assert "x*y" in ring.relation_strings() and "y^2" in ring.relation_strings()
    assert ring.group(4).is_zero


def test_delpezzo_examples():
    assert cohomology_delpezzo_join(3, W(2, 1)).group(4).invariant_factors() == (3, 3, 6)
    assert str(cohomology_delpezzo_join(3, W(2, 1)).group(4)) == "Z_3 x Z_3 x Z_3 x Z_2"
    assert cohomology_delpezzo_join(1, W(3, 2)).group(4).invariant_factors() == (30,)
    assert cohomology_delpezzo_join(1, W(5, 1)).group(4).invariant_factors() == (30,)
    assert cohomology_delpezzo_join(5, W(3, 2)).group(2).rank == 6


def _rings():
    for r in (2, 3, 4):
        for w in (W(1, 1), W(2, 1), W(3, 1), W(5, 2), W(7, 4)):
            yield cohomology_sphere_join(r, w)
    for w in (W(1, 1), W(3, 1), W(5, 2), W(9, 4)):
        yield cohomology_quadric_join(w)
    for k in range(1, 9):
        for w in (W(1, 1), W(3, 2), W(5, 1), W(8, 3)):
            yield cohomology_delpezzo_join(k, w)


@pytest.mark.parametrize("ring", list(_rings()), ids=lambda r: r.name)
def test_rings_duality_and_derivation(ring):
    assert ring.poincare_duality_holds()
    derived = derive_groups(ring.generators, ring.relations, ring.dim)
    for q in ring.determined:
        assert derived.get(q, AbelianGroup()).isomorphic(ring.group(q))


def test_partition_examples():
    assert partition_classes(15) == [W(15, 1), W(5, 3)]
    assert partition_classes(6545) == EX2
    assert partition_classes(1) == [W(1, 1)]
    assert all(class_label(w) == "P0" for w in EX2)
    assert split_classes(15) == {"P0": [], "P1": [W(15, 1), W(5, 3)]}


def test_partition_cardinality_random():
    rng = random.Random(20240611)
    for _ in range(200):
        n = rng.randint(2, 10**6)
        assert len(partition_classes(n)) == 2 ** (len(factorize(n)) - 1)


def test_class_split_agrees_with_w_plus_one():
    # for coprime w1, w2: 3 | w1 + w2 exactly when 3 | W + 1
    for a in range(1, 200):
        for b in range(1, a + 1):
            if gcd(a, b) == 1:
                assert (class_label(W(a, b)) == "P0") == ((a * b + 1) % 3 == 0)


def test_homotopy_examples():
    v = homotopy_equivalent_7(W(15, 1), W(5, 3))
    assert v.verdict == INEQUIVALENT and v.modulus == 135 and v.residues == (46, 107)
    assert homotopy_equivalent_7(W(5, 3), W(5, 3)).verdict == EQUIVALENT
    for a, b in combinations(EX2, 2):
        assert homotopy_equivalent_7(a, b).verdict == INEQUIVALENT
    assert homotopy_equivalent_7(W(2, 1), W(2, 1)).verdict == INCONCLUSIVE
    assert homotopy_equivalent_7(W(3, 1), W(5, 2)).verdict == INEQUIVALENT


def test_isomorphic_pairs_55():
    ws = partition_classes(165)
    assert ws == [W(165, 1), W(55, 3), W(33, 5), W(15, 11)]
    for a, b in combinations(ws, 2):
        assert homotopy_equivalent_7(a, b).verdict == INEQUIVALENT


def test_homotopy_reflexive_symmetric():
    for n in range(1, 10**4, 2):
        ws = partition_classes(n)
        for a in ws:
            assert homotopy_equivalent_7(a, a).verdict == EQUIVALENT
        for a, b in combinations(ws, 2):
            assert homotopy_equivalent_7(a, b).verdict == homotopy_equivalent_7(b, a).verdict


def test_p1_examples():
    assert p1_residue(W(3, 1)) == (12, 27)
    assert p1_residue(W(2, 1)) == (0, 2)
    res, mod = p1_residue(W(1, 1))
    assert 0 <= res < mod


def test_homeo_examples():
    assert homeo_obstruction(W(5, 3), W(5, 3))
    assert not homeo_obstruction(W(15, 1), W(5, 3))
    assert homeo_residues(W(15, 1), W(5, 3)) == (17, 38, 45)
    assert homeo_residues(W(85, 77), W(119, 55)) == (13218, 1647, 19635)
    assert not homeo_obstruction(W(85, 77), W(119, 55))
    with pytest.raises(ParityError):
        homeo_obstruction(W(2, 1), W(2, 1))
    with pytest.raises(ValidationError):
        homeo_obstruction(W(3, 1), W(5, 1))


def test_delpezzo_coincidences():
    groups = delpezzo_coincidences(30, [1])
    assert [(1, W(3, 2)), (1, W(5, 1))] in groups
    h30 = [w for w in (W(a, b) for a in range(2, 31) for b in range(1, a) if gcd(a, b) == 1)
           if cohomology_delpezzo_join(1, w).group(4).invariant_factors() == (30,)]
    assert h30 == [W(3, 2), W(5, 1)]


def test_pi4_fact():
    assert pi4_distinguishes("sphere_join", "su3_quotient")


@given(st.integers(1, 10**6))
def test_partition_classes_property(n):
    ws = partition_classes(n)
    assert len(ws) == (1 if n == 1 else 2 ** (len(factorize(n)) - 1))
    for w in ws:
        assert w.product == n and gcd(w.w1, w.w2) == 1
