from fractions import Fraction as Q
import math

import pytest
from hypothesis import given, strategies as st

from sasaki_join.errors import InputTooLarge, SingularSystem
from sasaki_join.exact import (
    IsolatingInterval,
    Polynomial,
    count_roots,
    factorize,
    integrate,
    is_square,
    isolate_roots,
    positive_on_open_interval,
    rational_roots,
    solve_linear,
    squarefree_decomposition,
)

Z = Polynomial.x()
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=9).map(Polynomial)


def test_integrate_examples():
    assert integrate(Polynomial.constant(1), -1, 1) == 2
    assert integrate(Z, -1, 1) == 0
    p = Polynomial.linear(Q(1, 5), Q(-9, 5)) * Polynomial.linear(3, 1)
    assert integrate(p, -1, 1) == 0


def test_polynomial_basics():
    p = (Z - 1) * (Z + 1)
    assert p.degree == 2 and p.leading == 1
    assert Polynomial().degree == -1 and Polynomial().is_zero
    assert p(Q(3)) == 8
    q, r = divmod(p, Z - 1)
    assert q == Z + 1 and r.is_zero
    assert p.derivative() == 2 * Z
    assert p.antiderivative()(0) == 0
    assert str(Polynomial([Q(13, 420), Q(1, 140), Q(-13, 420), Q(-1, 140)])) == (
        "-1/140*z^3 - 13/420*z^2 + 1/140*z + 13/420"
    )


def test_isolate_examples():
    p = Polynomial([-1, -1, 3])
    ivs = isolate_roots(p, Q(1, 3), None)
    root = (1 + math.sqrt(13)) / 6
    assert len(ivs) == 1
    assert ivs[0].lo < root < ivs[0].hi
    assert ivs[0].width <= Q(1, 10**12)
    assert isolate_roots(Z * Z + 1) == []
    two = isolate_roots((Z - 1) * (Z + 1), -2, 2)
    assert len(two) == 2
    assert two[0].contains(-1) and two[1].contains(1)


def test_isolate_multiplicity():
    p = (Z - 2) ** 3 * (Z + Q(1, 2))
    ivs = isolate_roots(p)
    assert [iv.multiplicity for iv in ivs] == [1, 3]
    assert ivs[1].contains(2)
    assert sorted(m for _, m in squarefree_decomposition(p)) == [1, 3]


def test_refine_shrinks():
    iv = isolate_roots(Z * Z - 2, 0, None, width=Q(1, 4))[0]
    fine = iv.refine(Z * Z - 2, Q(1, 10**20))
    assert fine.width <= Q(1, 10**20)
    assert fine.lo ** 2 < 2 < fine.hi ** 2


def test_positive_examples():
    assert positive_on_open_interval(1 - Z * Z, -1, 1)
    assert not positive_on_open_interval(Z, -1, 1)
    F = Polynomial([13, 3, -13, -3]) / 420
    assert positive_on_open_interval(F, -1, 1)
    assert not positive_on_open_interval(Polynomial(), -1, 1)
    # a double root inside the interval is not positivity
    assert not positive_on_open_interval(Z * Z, -1, 1)


def test_rational_roots_examples():
    assert rational_roots(Polynomial([-1, -1, 3])) == []
    assert rational_roots(Z - Q(4, 5)) == [Q(4, 5)]
    assert set(rational_roots(Z * Z - 1)) == {Q(1), Q(-1)}
    big = (Z - Q(123457, 99991)) * (Z * Z + 3)
    assert rational_roots(big) == [Q(123457, 99991)]


def test_factorize():
    assert factorize(6545) == [(5, 1), (7, 1), (11, 1), (17, 1)]
    assert factorize(1) == []
    assert factorize(27) == [(3, 3)]
    assert factorize(999983 * 1000003) == [(999983, 1), (1000003, 1)]
    with pytest.raises(InputTooLarge):
        factorize(2**63)


def test_squares_and_linear():
    assert is_square(169) and not is_square(13) and is_square(0)
    assert solve_linear([[2, 1], [1, 3]], [3, 5]) == [Q(4, 5), Q(7, 5)]
    with pytest.raises(SingularSystem):
        solve_linear([[1, 2], [2, 4]], [1, 1])


@given(polys, polys, rationals, rationals)
def test_integration_linear(p, q, a, b):
    assert integrate(a * p + b * q, -1, 1) == a * integrate(p, -1, 1) + b * integrate(q, -1, 1)


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=1, max_size=5),
       st.integers(1, 3))
def test_isolation_properties(roots, extra):
    p = Polynomial([extra])
    for x in roots:
        p = p * (Z - x)
    ivs = isolate_roots(p, width=Q(1, 1000))
    assert len(ivs) == len(set(roots)) == count_roots(p)
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi <= b.lo
    for iv in ivs:
        if iv.exact is None:
            assert iv.sign_change in (1, -1)
        assert sum(1 for x in set(roots) if iv.lo < x < iv.hi or x == iv.exact) == 1


@given(st.lists(st.integers(-20, 20), min_size=4, max_size=4).filter(lambda c: c[3] != 0))
def test_positivity_matches_sampling(coeffs):
    p = Polynomial(coeffs)
    sampled = all(p(Q(-1) + Q(2 * i + 1, 2000)) > 0 for i in range(1000))
    decided = positive_on_open_interval(p, -1, 1)
    if decided:
        assert sampled
    elif sampled:
        # a sign change between samples: confirm a root really lies in (-1, 1)
        assert count_roots(p, -1, 1) > 0 or p(-1) == 0 or p(1) == 0 or any(
            iv.lo > -1 and iv.hi < 1 for iv in isolate_roots(p, -1, 1)
        )


@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=9), min_size=1, max_size=4),
       st.lists(st.integers(-9, 9), min_size=1, max_size=3))
def test_rational_roots_substitute_to_zero(roots, noise):
    p = Polynomial(noise) if any(noise) else Polynomial([1])
    for x in roots:
        p = p * (Z - x)
    found = rational_roots(p)
    assert set(roots) <= set(found)
    assert all(p(x) == 0 for x in found)
