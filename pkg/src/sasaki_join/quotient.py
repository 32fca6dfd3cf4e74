"""Quotients of a join by the flow of a quasi-regular Reeb field xi_v.

The quotient is a log pair (S_n, Delta): a CP^1-bundle over the base with
branch divisor Delta = (1 - 1/m1) D1 + (1 - 1/m2) D2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateRay, UnsupportedWeight, ValidationError
from .join import FanoBase, JoinSpec, WeightVector, make_join

REGULAR = "regular"
QUASI_REGULAR = "quasi_regular_with_branching"


@dataclass(frozen=True, order=True)
class ReebRay:
    v1: int
    v2: int

    def __post_init__(self):
        if not (isinstance(self.v1, int) and isinstance(self.v2, int)):
            raise ValidationError("ray components must be integers")
        if self.v1 < 1 or self.v2 < 1 or gcd(self.v1, self.v2) != 1:
            raise ValidationError(f"ray ({self.v1},{self.v2}) must have coprime positive components")

    @property
    def ratio(self) -> Fraction:
        """c = v2 / v1"""
        return Fraction(self.v2, self.v1)

    @classmethod
    def from_ratio(cls, c: Fraction) -> "ReebRay":
        return cls(c.denominator, c.numerator)

    def as_tuple(self) -> tuple[int, int]:
        return (self.v1, self.v2)

    def __str__(self):
        return f"({self.v1},{self.v2})"


@dataclass(frozen=True)
class ReebQuotient:
    """Log pair data of the quotient by xi_v.

    ``degree_n`` is |n|.  When w1*v2 < w2*v1 the line bundle has negative
    degree; the pair is then reported for L_{|n|} with the zero and infinity
    sections exchanged and ``orientation_reversed`` set.
    """

    s: int
    m: int
    m1: int
    m2: int
    degree_n: int
    orientation_reversed: bool
    branch: tuple[tuple[str, Fraction], ...]
    fiber: tuple[int, int, int]
    orb_pi1_order: int
    lens_fiber: tuple[int, int, int]
    regularity: str

    @property
    def signed_degree(self) -> int:
        return -self.degree_n if self.orientation_reversed else self.degree_n

    @property
    def fiber_descriptor(self) -> str:
        v1, v2, m = self.fiber
        return f"CP^1[{v1},{v2}]/Z_{m}"

    @property
    def lens_descriptor(self) -> str:
        return "L({}; {}, {})".format(*self.lens_fiber)

    @property
    def is_regular(self) -> bool:
        return self.regularity == REGULAR


@dataclass(frozen=True)
class OrbitPeriods:
    """Reeb orbit periods in units of 2*pi."""

    generic: Fraction
    at_D1: Fraction
    at_D2: Fraction

    @property
    def ramification(self) -> tuple[int, int]:
        r1, r2 = self.generic / self.at_D1, self.generic / self.at_D2
        assert r1.denominator == 1 and r2.denominator == 1
        return int(r1), int(r2)


def _as_ray(v) -> ReebRay:
    return v if isinstance(v, ReebRay) else ReebRay(*v)


def reeb_quotient(join: JoinSpec, v) -> ReebQuotient:
    v = _as_ray(v)
    w = join.w
    cross = w.w1 * v.v2 - w.w2 * v.v1
    if cross == 0:
        raise DegenerateRay(f"ray {v} is parallel to w={w}")
    s = gcd(abs(cross), join.l2)
    m = join.l2 // s
    m1, m2 = v.v1 * m, v.v2 * m
    n, rem = divmod(join.l1 * cross, s)
    assert rem == 0
    reversed_ = n < 0
    d1 = Fraction(1) - Fraction(1, m1)
    d2 = Fraction(1) - Fraction(1, m2)
    branch = (("D1", d2), ("D2", d1)) if reversed_ else (("D1", d1), ("D2", d2))
    return ReebQuotient(
        s=s,
        m=m,
        m1=m1,
        m2=m2,
        degree_n=abs(n),
        orientation_reversed=reversed_,
        branch=branch,
        fiber=(v.v1, v.v2, m),
        orb_pi1_order=m,
        lens_fiber=join.lens,
        regularity=REGULAR if m1 == m2 == 1 else QUASI_REGULAR,
    )


def orbit_periods(join: JoinSpec, v) -> OrbitPeriods:
    v = _as_ray(v)
    if join.w.is_trivial:
        raise UnsupportedWeight("period formulas assume w != (1,1)")
    cross = join.w.w1 * v.v2 - join.w.w2 * v.v1
    s = gcd(abs(cross), join.l2)
    norm = join.w.norm
    # D1 is the zero section z2 = 0, where the period involves v1
    return OrbitPeriods(
        generic=Fraction(1, s),
        at_D1=Fraction(join.K, v.v1 * norm),
        at_D2=Fraction(join.K, v.v2 * norm),
    )


def ypq_weights(p: int, q: int) -> WeightVector:
    from .admissible import ypq_bridge

    return ypq_bridge(p, q)[0]


def ypq_quotient(p: int, q: int) -> ReebQuotient:
    """Quotient of Y^{p,q} by the ray v = (1,1) of its w-Sasaki cone."""
    join = make_join(FanoBase.projective_space(1), ypq_weights(p, q))
    return reeb_quotient(join, ReebRay(1, 1))
