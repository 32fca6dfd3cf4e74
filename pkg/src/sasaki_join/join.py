"""Weighted joins M *_{l1,l2} S^3_w over a Fano base.

The relative Fano indices are fixed by the cohomological Einstein condition
l2 * I_N = |w| * l1 with gcd(l1, l2) = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import SmoothnessViolation, UnsupportedWeight, ValidationError

FAMILIES = ("projective_space", "quadric_product", "del_pezzo", "custom")


@dataclass(frozen=True, order=True)
class WeightVector:
    w1: int
    w2: int

    def __post_init__(self):
        if not (isinstance(self.w1, int) and isinstance(self.w2, int)):
            raise ValidationError("weights must be integers")
        if self.w2 < 1 or self.w1 < self.w2:
            raise ValidationError(f"need w1 >= w2 >= 1, got ({self.w1},{self.w2})")
        if gcd(self.w1, self.w2) != 1:
            raise ValidationError(f"weights ({self.w1},{self.w2}) are not coprime")

    @property
    def norm(self) -> int:
        """|w| = w1 + w2"""
        return self.w1 + self.w2

    @property
    def product(self) -> int:
        return self.w1 * self.w2

    @property
    def is_trivial(self) -> bool:
        return self.w1 == self.w2 == 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.w1, self.w2)

    def __str__(self):
        return f"({self.w1},{self.w2})"


@dataclass(frozen=True)
class FanoBase:
    name: str
    d_N: int
    fano_index: int
    family: str
    param: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if self.d_N < 1 or self.fano_index < 1:
            raise ValidationError("a Fano base needs d_N >= 1 and I_N >= 1")
        if self.family == "projective_space":
            if self.param is None or self.param < 1:
                raise ValidationError("projective space needs r >= 1")
            if (self.d_N, self.fano_index) != (self.param, self.param + 1):
                raise ValidationError("CP^r has d_N = r and I_N = r + 1")
        elif self.family == "quadric_product":
            if (self.d_N, self.fano_index) != (2, 2):
                raise ValidationError("CP^1 x CP^1 has d_N = 2 and I_N = 2")
        elif self.family == "del_pezzo":
            if self.param is None or not 1 <= self.param <= 8:
                raise ValidationError("del Pezzo blow-up count k must be in 1..8")
            if (self.d_N, self.fano_index) != (2, 1):
                raise ValidationError("CP^2 # k(-CP^2) has d_N = 2 and I_N = 1")

    @classmethod
    def projective_space(cls, r: int) -> "FanoBase":
        if r < 1:
            raise ValidationError("projective space needs r >= 1")
        return cls(f"CP^{r}", r, r + 1, "projective_space", r)

    @classmethod
    def quadric_product(cls) -> "FanoBase":
        return cls("CP^1xCP^1", 2, 2, "quadric_product")

    @classmethod
    def del_pezzo(cls, k: int) -> "FanoBase":
        if not 1 <= k <= 8:
            raise ValidationError("del Pezzo blow-up count k must be in 1..8")
        return cls(f"CP^2#{k}(-CP^2)", 2, 1, "del_pezzo", k)

    @classmethod
    def custom(cls, fano_index: int, d_N: int, name: str = "custom") -> "FanoBase":
        return cls(name, d_N, fano_index, "custom")

    @property
    def admits_ke_metric(self) -> bool | None:
        """False only for the blow-ups of CP^2 at one or two points; None if unknown."""
        if self.family == "del_pezzo":
            return self.param >= 3
        if self.family == "custom":
            return None
        return True


@dataclass(frozen=True)
class JoinSpec:
    base: FanoBase
    w: WeightVector
    l1: int
    l2: int
    smooth: bool = field(default=True)

    @property
    def K(self) -> int:
        """gcd(I_N, |w|)"""
        return gcd(self.base.fano_index, self.w.norm)

    @property
    def lens(self) -> tuple[int, int, int]:
        """Fiber lens space L(l2; l1*w1, l1*w2)."""
        return (self.l2, self.l1 * self.w.w1, self.l1 * self.w.w2)


def relative_fano_indices(fano_index: int, w: WeightVector) -> tuple[int, int]:
    g = gcd(w.norm, fano_index)
    return fano_index // g, w.norm // g


def make_join(base: FanoBase, w: WeightVector) -> JoinSpec:
    l1, l2 = relative_fano_indices(base.fano_index, w)
    assert gcd(l1, l2) == 1 and l2 * base.fano_index == w.norm * l1
    if gcd(l2, l1 * w.product) != 1:
        raise SmoothnessViolation(
            f"gcd(l2, l1*w1*w2) = {gcd(l2, l1 * w.product)} != 1 for w={w}, I_N={base.fano_index}"
        )
    return JoinSpec(base, w, l1, l2)


def _check_ray(v) -> tuple[int, int]:
    v1, v2 = (v.v1, v.v2) if hasattr(v, "v1") else v
    if v1 < 1 or v2 < 1 or gcd(v1, v2) != 1:
        raise ValidationError(f"ray ({v1},{v2}) must have coprime positive components")
    return v1, v2


def has_regular_ray(join: JoinSpec, v) -> bool:
    """Whether the ray v is regular: v = (1,1) and l2 divides w1 - w2."""
    v1, v2 = _check_ray(v)
    if join.w.is_trivial:
        raise UnsupportedWeight("regularity criterion assumes w != (1,1)")
    return (v1, v2) == (1, 1) and (join.w.w1 - join.w.w2) % join.l2 == 0


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_regular_cones(base: FanoBase) -> list[WeightVector]:
    """All w != (1,1) whose w-Sasaki cone contains a regular Reeb field.

    K = gcd(I_N, |w|) is only known once w is, so every divisor K of I_N is
    tried and candidates whose actual gcd differs are discarded.
    """
    found = set()
    for K in _divisors(base.fano_index):
        for j in range(1, K):
            g = gcd(K + j, K - j)
            w = WeightVector((K + j) // g, (K - j) // g)
            if gcd(base.fano_index, w.norm) == K:
                found.add(w)
    return sorted(found)
