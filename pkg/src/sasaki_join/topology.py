"""Integral cohomology of the join families and the 7-dimensional homotopy tests.

Rings are stored as generators plus monomial relations ``c * X^e = 0``.  For
such a presentation each graded piece splits over monomials: a monomial
contributes Z_g, with g the gcd of the coefficients of all relations whose
monomial divides it (Z when no relation applies).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from math import gcd

from .errors import ParityError, ValidationError
from .exact import factorize
from .join import FanoBase, WeightVector, relative_fano_indices

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
INCONCLUSIVE = "inconclusive"

# pi_4 separates the S^5 x S^3 quotients from the free circle quotients of SU(3)
PI4 = {"sphere_join": "Z_2", "su3_quotient": "0"}


def pi4_distinguishes(a: str, b: str) -> bool:
    return PI4[a] != PI4[b]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank x prod Z_t for t in ``torsion`` (cyclic factors as written)."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(t for t in self.torsion if t != 1))

    @property
    def order(self) -> int | None:
        """Order of the torsion part, or None if the group is infinite."""
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion in normal form d_1 | d_2 | ... | d_n."""
        powers: dict[int, list[int]] = defaultdict(list)
        for t in self.torsion:
            for p, e in factorize(t):
                powers[p].append(p**e)
        n = max((len(v) for v in powers.values()), default=0)
        factors = [1] * n
        for v in powers.values():
            v.sort(reverse=True)
            for i, q in enumerate(v):
                factors[n - 1 - i] *= q
        return tuple(factors)

    def normal_form(self) -> "AbelianGroup":
        return AbelianGroup(self.rank, self.invariant_factors())

    def isomorphic(self, other: "AbelianGroup") -> bool:
        return self.rank == other.rank and self.invariant_factors() == other.invariant_factors()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Relation:
    coefficient: int
    exponents: tuple[int, ...]

    def divides(self, exponents: tuple[int, ...]) -> bool:
        return all(a <= b for a, b in zip(self.exponents, exponents))


@dataclass(frozen=True)
class RingPresentation:
    name: str
    dim: int
    generators: tuple[tuple[str, int], ...]
    relations: tuple[Relation, ...]
    groups_by_degree: dict
    determined: tuple[int, ...]

    def group(self, q: int) -> AbelianGroup:
        return self.groups_by_degree.get(q, AbelianGroup())

    def relation_strings(self) -> list[str]:
        return [format_relation(self.generators, rel) for rel in self.relations]

    def poincare_duality_holds(self) -> bool:
        n = self.dim
        for q in range(n + 1):
            if self.group(q).rank != self.group(n - q).rank:
                return False
            if q >= 1 and not (
                AbelianGroup(0, self.group(q).torsion).isomorphic(AbelianGroup(0, self.group(n + 1 - q).torsion))
            ):
                return False
        return True


def format_relation(generators, rel: Relation) -> str:
    mono = "*".join(
        name if e == 1 else f"{name}^{e}" for (name, _), e in zip(generators, rel.exponents) if e
    )
    return mono if rel.coefficient == 1 else f"{rel.coefficient}*{mono}"


def _monomials(degrees: list[int], q: int):
    if not degrees:
        if q == 0:
            yield ()
        return
    head, rest = degrees[0], degrees[1:]
    for e in range(q // head + 1):
        for tail in _monomials(rest, q - e * head):
            yield (e,) + tail


def derive_groups(generators, relations, dim: int) -> dict:
    """Graded pieces of Z[generators]/(relations) in degrees 0..dim."""
    degrees = [d for _, d in generators]
    out = {}
    for q in range(dim + 1):
        rank, torsion = 0, []
        for mono in _monomials(degrees, q):
            g = 0
            for rel in relations:
                if rel.divides(mono):
                    g = gcd(g, rel.coefficient)
            if g == 0:
                rank += 1
            elif g > 1:
                torsion.append(g)
        group = AbelianGroup(rank, tuple(sorted(torsion)))
        if not group.is_zero:
            out[q] = group
    return out


def _rel(coefficient: int, *exponents: int) -> Relation:
    return Relation(coefficient, tuple(exponents))


def cohomology_sphere_join(r: int, w: WeightVector) -> RingPresentation:
    """Z[x,y]/(W l1^2 x^2, x^(r+1), x^2 y, y^2), deg x = 2, deg y = 2r+1."""
    if r < 2:
        raise ValidationError("the sphere join ring needs r >= 2")
    l1, _ = relative_fano_indices(r + 1, w)
    t = w.product * l1 * l1
    dim = 2 * r + 3
    gens = (("x", 2), ("y", 2 * r + 1))
    rels = (_rel(t, 2, 0), _rel(1, r + 1, 0), _rel(1, 2, 1), _rel(1, 0, 2))
    groups = {0: AbelianGroup(1), 2: AbelianGroup(1), 2 * r + 1: AbelianGroup(1), dim: AbelianGroup(1)}
    for j in range(2, r + 1):
        groups[2 * j] = AbelianGroup(0, (t,))
    groups = {q: g for q, g in groups.items() if not g.is_zero}
    return RingPresentation(
        f"S^{2 * r + 1} * S^3_{w}", dim, gens, rels, dict(sorted(groups.items())), tuple(range(dim + 1))
    )


def cohomology_quadric_join(w: WeightVector) -> RingPresentation:
    """Z[x,y,u,z]/(x^2, l2 xy, W l1^2 y^2, z^2, u^2, zu, zx, ux, uy)."""
    base = FanoBase.quadric_product()
    l1, l2 = relative_fano_indices(base.fano_index, w)
    t = w.product * l1 * l1
    gens = (("x", 2), ("y", 2), ("u", 5), ("z", 5))
    rels = (
        _rel(1, 2, 0, 0, 0),
        _rel(l2, 1, 1, 0, 0),
        _rel(t, 0, 2, 0, 0),
        _rel(1, 0, 0, 0, 2),
        _rel(1, 0, 0, 2, 0),
        _rel(1, 0, 0, 1, 1),
        _rel(1, 1, 0, 0, 1),
        _rel(1, 1, 0, 1, 0),
        _rel(1, 0, 1, 1, 0),
    )
    groups = {
        0: AbelianGroup(1),
        2: AbelianGroup(2),
        4: AbelianGroup(0, (l2, t)),
        5: AbelianGroup(2),
        7: AbelianGroup(1),
    }
    groups = {q: g for q, g in groups.items() if not g.is_zero}
    # y^3 survives the monomial relations; degree 6 is fixed only by duality
    return RingPresentation(f"(S^2xS^3) * S^3_{w}", 7, gens, rels, groups, (0, 1, 2, 3, 4, 5, 7))


def cohomology_delpezzo_join(k: int, w: WeightVector) -> RingPresentation:
    """Classes alpha_1..alpha_k, s in degree 2 and k+1 classes in degree 5.

    Relations alpha_i alpha_j = 0, W s^2 = 0, |w| alpha_i s = 0.
    """
    if not 1 <= k <= 8:
        raise ValidationError("del Pezzo blow-up count k must be in 1..8")
    n = k + 1
    gens = tuple((f"a{i}", 2) for i in range(1, k + 1)) + (("s", 2),)
    gens += tuple((f"e{i}", 5) for i in range(n))
    size = len(gens)

    def mono(**idx):
        e = [0] * size
        for pos, power in idx.values():
            e[pos] += power
        return tuple(e)

    rels = []
    for i in range(k):
        for j in range(i, k):
            rels.append(Relation(1, mono(a=(i, 1), b=(j, 1))))
    rels.append(Relation(w.product, mono(s=(k, 2))))
    for i in range(k):
        rels.append(Relation(w.norm, mono(a=(i, 1), s=(k, 1))))
    for i in range(n):
        for j in range(i, n):
            rels.append(Relation(1, mono(a=(k + 1 + i, 1), b=(k + 1 + j, 1))))
    groups = {
        0: AbelianGroup(1),
        2: AbelianGroup(n),
        4: AbelianGroup(0, (w.norm,) * k + (w.product,)),
        5: AbelianGroup(n),
        7: AbelianGroup(1),
    }
    groups = {q: g for q, g in groups.items() if not g.is_zero}
    # products into degree 6 and 7 are not given by the relations
    return RingPresentation(f"S_{k} * S^3_{w}", 7, gens, tuple(rels), groups, (0, 1, 2, 3, 4, 5))


def delpezzo_h4(k: int, w: WeightVector) -> AbelianGroup:
    return cohomology_delpezzo_join(k, w).group(4)


def delpezzo_coincidences(max_norm: int, ks=range(1, 9)) -> list[list[tuple[int, WeightVector]]]:
    """Groups of (k, w) with w != (1,1), |w| <= max_norm and isomorphic H^2, H^4.

    Different k never collide (rank H^2 = k + 1), so each group has a single k.
    """
    buckets = defaultdict(list)
    for k in ks:
        for norm in range(3, max_norm + 1):
            for w2 in range(1, norm // 2 + 1):
                w1 = norm - w2
                if gcd(w1, w2) != 1 or w1 == w2:
                    continue
                w = WeightVector(w1, w2)
                buckets[(k, delpezzo_h4(k, w).invariant_factors())].append((k, w))
    return sorted(sorted(v) for v in buckets.values() if len(v) > 1)


def partition_classes(W: int, r: int = 2) -> list[WeightVector]:
    """Coprime w1 >= w2 with w1 w2 = W, sorted by w1 descending."""
    if W < 1:
        raise ValidationError("W must be positive")
    if r < 2:
        raise ValidationError("r must be at least 2")
    prime_powers = [p**e for p, e in factorize(W)]
    found = set()
    for choice in product((0, 1), repeat=len(prime_powers)):
        a = 1
        for bit, q in zip(choice, prime_powers):
            if bit:
                a *= q
        b = W // a
        found.add(WeightVector(max(a, b), min(a, b)))
    return sorted(found, reverse=True)


def class_label(w: WeightVector) -> str:
    """P0 when 3 divides |w| (H^4 of order W), P1 otherwise (order 9W); r = 2."""
    return "P0" if w.norm % 3 == 0 else "P1"


def split_classes(W: int) -> dict[str, list[WeightVector]]:
    out: dict[str, list[WeightVector]] = {"P0": [], "P1": []}
    for w in partition_classes(W, 2):
        out[class_label(w)].append(w)
    return out


@dataclass(frozen=True)
class HomotopyVerdict:
    verdict: str
    modulus: int
    residues: tuple[int, int]
    reason: str


def _h4_order(w: WeightVector) -> int:
    l1, _ = relative_fano_indices(3, w)
    return w.product * l1 * l1


def homotopy_equivalent_7(w: WeightVector, wp: WeightVector) -> HomotopyVerdict:
    """Homotopy type of M^7_w versus M^7_w' (r = 2).

    Within one cohomology class with odd |H^4| = l1^2 W the manifolds are
    equivalent iff l2(w')^3 = +-l2(w)^3 in the units mod l1^2 W.
    """
    o, op = _h4_order(w), _h4_order(wp)
    if o != op:
        return HomotopyVerdict(INEQUIVALENT, 0, (o, op), "orders of H^4 differ")
    l1, l2 = relative_fano_indices(3, w)
    _, l2p = relative_fano_indices(3, wp)
    mod = o
    a, b = pow(l2, 3, mod), pow(l2p, 3, mod)
    if mod % 2 == 0:
        return HomotopyVerdict(INCONCLUSIVE, mod, (a, b), "order of H^4 is even")
    same = b == a or b == (-a) % mod
    return HomotopyVerdict(
        EQUIVALENT if same else INEQUIVALENT, mod, (a, b), "cubes of l2 compared up to sign"
    )


def p1_residue(w: WeightVector) -> tuple[int, int]:
    """First Pontrjagin class of M^7_w as (residue, modulus)."""
    n = w.norm
    if n % 3:
        mod = 9 * w.product
        return (-6 * n * n) % mod, mod
    mod = w.product
    return (-6 * (n // 3) ** 2) % mod, mod


def homeo_obstruction(w: WeightVector, wp: WeightVector) -> bool:
    """Necessary condition 2|w'|^2 = 2|w|^2 mod 3W for M^7_w and M^7_w' to be homeomorphic."""
    if w.product != wp.product:
        raise ValidationError("homeomorphism test needs w1 w2 = w1' w2'")
    if w.product % 2 == 0:
        raise ParityError(f"W = {w.product} is even")
    mod = 3 * w.product
    return (2 * wp.norm**2 - 2 * w.norm**2) % mod == 0


def homeo_residues(w: WeightVector, wp: WeightVector) -> tuple[int, int, int]:
    mod = 3 * w.product
    return (2 * w.norm**2) % mod, (2 * wp.norm**2) % mod, mod
