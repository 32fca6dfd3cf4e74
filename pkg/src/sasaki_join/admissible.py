"""Admissible Kähler data on the quotient log pairs and the equations on them.

Everything is phrased through the profile polynomial F(z) on [-1, 1], with
Theta = F / p and p(z) = (1 + r z)^d_N:

* Kähler-Einstein: F' = p * ((1 - z)/m2 - (1 + z)/m1), solvable iff the
  integral of the right-hand side over [-1, 1] vanishes;
* Ricci soliton: the same integral weighted by exp(-a z);
* extremal: F'' = (1 + r z)^(d_N - 1) P(z) with P quadratic.

On the Sasaki side the KE condition for the ray v in the w-cone reduces to
f(c) = 0 where t = w2/w1, c = v2/v1 and

    f(c) = int_{-1}^{1} ((1 - c) - (1 + c) z) ((c + t) + (c - t) z)^d_N dz.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd

from mpmath.ctx_iv import MPIntervalContext

from .errors import (
    BracketNotFound,
    ComputationError,
    DegenerateRay,
    InvalidK,
    InvalidPQ,
    ValidationError,
)
from .exact import (
    DEFAULT_WIDTH,
    IsolatingInterval,
    Polynomial,
    as_rational,
    integrate,
    is_square,
    isolate_roots,
    positive_on_open_interval,
    rational_root_in,
    solve_linear,
)
from .join import FanoBase, WeightVector, make_join, relative_fano_indices
from .quotient import REGULAR, ReebQuotient, ReebRay, reeb_quotient

Z = Polynomial.x()


@dataclass(frozen=True)
class AdmissibleData:
    d_N: int
    scalar_s: Fraction
    r: Fraction
    m1: int
    m2: int

    def __post_init__(self):
        if self.d_N < 1:
            raise ValidationError("d_N must be positive")
        if not 0 < abs(self.r) < 1:
            raise ValidationError(f"admissible parameter r={self.r} must satisfy 0 < |r| < 1")
        if self.m1 < 1 or self.m2 < 1:
            raise ValidationError("ramification indices must be positive")
        if (self.scalar_s > 0) != (self.r > 0):
            raise ValidationError("r and the base scalar s_N must have the same sign")

    @classmethod
    def from_ray(cls, w: WeightVector, v: ReebRay, d_N: int, fano_index: int) -> "AdmissibleData":
        join = make_join(FanoBase.custom(fano_index, d_N), w)
        q = reeb_quotient(join, v)
        return cls(
            d_N=d_N,
            scalar_s=Fraction(fano_index, q.signed_degree),
            r=ray_r(w, v),
            m1=q.m1,
            m2=q.m2,
        )

    @property
    def p(self) -> Polynomial:
        """(1 + r z)^d_N"""
        return Polynomial.linear(1, self.r) ** self.d_N

    @property
    def ke_rhs(self) -> Polynomial:
        """(1 - z)/m2 - (1 + z)/m1"""
        return Polynomial.linear(Fraction(1, self.m2) - Fraction(1, self.m1),
                                 -Fraction(1, self.m2) - Fraction(1, self.m1))

    @property
    def lam(self) -> Fraction:
        """Einstein constant lambda with 2 lambda = 1/m1 + 1/m2."""
        return (Fraction(1, self.m1) + Fraction(1, self.m2)) / 2

    def fano_condition_holds(self) -> bool:
        """2 s r = (1 + r)/m2 + (1 - r)/m1."""
        r = self.r
        return 2 * self.scalar_s * r == (1 + r) / self.m2 + (1 - r) / self.m1


def ray_r(w: WeightVector, v: ReebRay) -> Fraction:
    cross = w.w1 * v.v2 - w.w2 * v.v1
    if cross == 0:
        raise DegenerateRay(f"ray {v} is parallel to w={w}")
    return Fraction(cross, w.w1 * v.v2 + w.w2 * v.v1)


def ke_profile(data: AdmissibleData) -> Polynomial:
    """F(z) = int_{-1}^{z} ((1-u)/m2 - (1+u)/m1) p(u) du.

    Satisfies F(-1) = 0 and the derivative conditions at both ends; F(1) is
    zero exactly when the KE integral vanishes (see ke_profile_defect).
    """
    integrand = data.ke_rhs * data.p
    G = integrand.antiderivative()
    F = G - G(Fraction(-1))
    dF = F.derivative()
    p = data.p
    assert F(Fraction(-1)) == 0
    assert dF(Fraction(-1)) == 2 * p(Fraction(-1)) / data.m2
    assert dF(Fraction(1)) == -2 * p(Fraction(1)) / data.m1
    return F


def ke_profile_defect(data: AdmissibleData) -> Fraction:
    return ke_profile(data)(Fraction(1))


def _check_ratios(w: WeightVector, v: ReebRay) -> tuple[Fraction, Fraction]:
    t, c = Fraction(w.w2, w.w1), v.ratio
    if c == t:
        raise DegenerateRay(f"c = t = {t}: ray {v} is parallel to w={w}")
    return t, c


def ke_defect(w: WeightVector, v: ReebRay, d_N: int) -> Fraction:
    """f(c) at c = v2/v1, t = w2/w1, integrated directly in z."""
    t, c = _check_ratios(w, v)
    integrand = Polynomial.linear(1 - c, -(1 + c)) * Polynomial.linear(c + t, c - t) ** d_N
    return integrate(integrand, -1, 1)


def _beta(a: int, b: int) -> Fraction:
    """int_{-1}^{1} (1 - z)^a (1 + z)^b dz"""
    return Fraction(2 ** (a + b + 1) * factorial(a) * factorial(b), factorial(a + b + 1))


def ke_defect_polynomial(t: Fraction, d_N: int) -> Polynomial:
    """f as a polynomial in c of degree d_N + 1.

    Uses (c + t) + (c - t) z = c (1 + z) + t (1 - z) and
    (1 - c) - (1 + c) z = (1 - z) - c (1 + z), so each term is a Beta integral.
    """
    t = as_rational(t)
    coeffs = [Fraction(0)] * (d_N + 2)
    for j in range(d_N + 1):
        base = comb(d_N, j) * t ** (d_N - j)
        coeffs[j] += base * _beta(d_N - j + 1, j)
        coeffs[j + 1] -= base * _beta(d_N - j, j + 1)
    return Polynomial(coeffs)


RATIONAL = "rational"
IRRATIONAL = "irrational"
IRREGULAR = "irregular"
QUASI_REGULAR = "quasi_regular"


@dataclass(frozen=True)
class KERoot:
    interval: IsolatingInterval
    value: Fraction | None
    multiplicity: int
    classification: str
    v: ReebRay | None = None
    quotient: ReebQuotient | None = None
    lam: Fraction | None = None

    @property
    def rationality(self) -> str:
        return RATIONAL if self.value is not None else IRRATIONAL


@dataclass(frozen=True)
class KESolution:
    w: WeightVector
    d_N: int
    t: Fraction
    polynomial: Polynomial
    roots: tuple[KERoot, ...]

    @property
    def unique(self) -> bool:
        return len(self.roots) == 1


def solve_ke_ray(
    w: WeightVector,
    d_N: int,
    precision: Fraction = DEFAULT_WIDTH,
    fano_index: int | None = None,
) -> KESolution:
    """Every Einstein ray c_t in (t, oo) of the w-Sasaki cone.

    Rational roots give quasi-regular rays v = (denominator, numerator);
    irrational roots are irregular and reported as certified intervals.
    With ``fano_index`` the quotient data and lambda are attached to
    rational roots.
    """
    if not w.w1 > w.w2:
        raise ValidationError("the Einstein ray search assumes w1 > w2 (0 < t < 1)")
    t = Fraction(w.w2, w.w1)
    f = ke_defect_polynomial(t, d_N)
    join = make_join(FanoBase.custom(fano_index, d_N), w) if fano_index else None
    roots = []
    for iv in isolate_roots(f, t, None, width=as_rational(precision)):
        value = rational_root_in(iv, f)
        if value is None:
            roots.append(KERoot(iv, None, iv.multiplicity, IRREGULAR))
            continue
        v = ReebRay.from_ratio(value)
        quotient = lam = None
        # f(1) < 0 for every t in (0,1), so v = (1,1) never occurs and a
        # rational root is always quasi-regular
        cls = QUASI_REGULAR
        if join is not None:
            quotient = reeb_quotient(join, v)
            lam = (Fraction(1, quotient.m1) + Fraction(1, quotient.m2)) / 2
            cls = REGULAR if quotient.is_regular else QUASI_REGULAR
        roots.append(KERoot(iv, value, iv.multiplicity, cls, v, quotient, lam))
    return KESolution(w, d_N, t, f, tuple(roots))


def _family_integrals(k: Fraction, d_N: int) -> tuple[Fraction, Fraction]:
    base = Polynomial.linear(k + 1, k - 1) ** d_N
    lower = integrate(Polynomial.linear(1, -1) * base, -1, 1)
    upper = integrate(Polynomial.linear(1, 1) * base, -1, 1)
    return lower, upper


def family_t(k, d_N: int) -> Fraction:
    """t(k) = int (1-z) q^d / (k int (1+z) q^d) with q = (k+1) + (k-1) z."""
    k = as_rational(k)
    if k <= 1:
        raise InvalidK(f"k = {k} must exceed 1")
    lower, upper = _family_integrals(k, d_N)
    if not 0 < lower < upper:
        raise ComputationError(f"integral ordering fails at k={k}, d_N={d_N}")
    return lower / (k * upper)


@dataclass(frozen=True)
class FamilyMember:
    k: Fraction
    d_N: int
    t: Fraction
    w: WeightVector
    v: ReebRay
    l1: int | None
    l2: int | None


def quasiregular_family(k, d_N: int, fano_index: int | None = None) -> FamilyMember:
    """Quasi-regular Einstein ray with c = k t for rational k > 1."""
    k = as_rational(k)
    t = family_t(k, d_N)
    w = WeightVector(t.denominator, t.numerator)
    v = ReebRay.from_ratio(k * t)
    if ke_defect(w, v, d_N) != 0:
        raise ComputationError(f"family member for k={k} is not Einstein")
    l1 = l2 = None
    if fano_index is not None:
        l1, l2 = relative_fano_indices(fano_index, w)
    return FamilyMember(k, d_N, t, w, v, l1, l2)


def ypq_bridge(p: int, q: int) -> tuple[WeightVector, int, int]:
    """(w, l1, l2) for Y^{p,q}: w = (p+q, p-q)/gcd, l1 = gcd(p+q, p-q), l2 = p."""
    if not (1 <= q < p and gcd(p, q) == 1):
        raise InvalidPQ(f"need coprime 1 <= q < p, got p={p}, q={q}")
    g = gcd(p + q, p - q)
    w = WeightVector((p + q) // g, (p - q) // g)
    assert relative_fano_indices(2, w) == (g, p)
    return w, g, p


def ypq_from_ab(a: int, b: int) -> tuple[int, int]:
    """(p, q) = (ab + a^2 + b^2, a^2 - b^2) for k = a/b, reduced to a coprime pair.

    When a = b mod 3 both entries are divisible by 3; the reduced pair has the
    same w and the same k.
    """
    if not (a > b >= 1 and gcd(a, b) == 1):
        raise InvalidPQ(f"need coprime a > b >= 1, got a={a}, b={b}")
    p, q = a * b + a * a + b * b, a * a - b * b
    g = gcd(p, q)
    return p // g, q // g


def ypq_k(p: int, q: int) -> Fraction | None:
    """k = (q + sqrt(4p^2 - 3q^2)) / (2(p - q)) when the root is an integer, else None."""
    disc = 4 * p * p - 3 * q * q
    if not is_square(disc):
        return None
    return Fraction(q + math.isqrt(disc), 2 * (p - q))


# -- Ricci solitons ----------------------------------------------------------

SERIES_CUTOFF = Fraction(1, 2**20)
_SERIES_TERMS = 12


def _soliton_integrand(w: WeightVector, v: ReebRay, d_N: int, fano_index: int | None) -> Polynomial:
    """((1-z)/m2 - (1+z)/m1) (1 + r z)^d_N; m = 1 unless fano_index is given."""
    r = ray_r(w, v)
    if fano_index is None:
        m1, m2 = v.v1, v.v2
    else:
        q = reeb_quotient(make_join(FanoBase.custom(fano_index, d_N), w), v)
        m1, m2 = q.m1, q.m2
    rhs = Polynomial.linear(Fraction(1, m2) - Fraction(1, m1), -Fraction(1, m2) - Fraction(1, m1))
    return rhs * Polynomial.linear(1, r) ** d_N


def _moments(ctx, a, n: int, small: bool):
    """I_j(a) = int_{-1}^{1} z^j exp(-a z) dz for j = 0..n, as intervals."""
    if small:
        out = []
        absa = abs(a)
        tail = 2 * absa**_SERIES_TERMS / math.factorial(_SERIES_TERMS) * ctx.exp(absa)
        for j in range(n + 1):
            acc = ctx.mpf(0)
            for k in range(_SERIES_TERMS):
                if (j + k) % 2 == 0:
                    acc += (-a) ** k / math.factorial(k) * ctx.mpf(2) / (j + k + 1)
            out.append(acc + ctx.mpf([-1, 1]) * tail)
        return out
    e_pos, e_neg = ctx.exp(a), ctx.exp(-a)
    inv = 1 / a
    out = []
    for j in range(n + 1):
        upper = ctx.mpf(0)
        lower = ctx.mpf(0)
        for i in range(j + 1):
            fall = math.factorial(j) // math.factorial(j - i)
            term = fall * inv ** (i + 1)
            upper += term
            lower += term if (j - i) % 2 == 0 else -term
        out.append(-e_neg * upper + e_pos * lower)
    return out


_contexts = threading.local()


def _context(dps: int) -> MPIntervalContext:
    """Private interval context per thread and precision; the global one is never touched."""
    cache = getattr(_contexts, "by_dps", None)
    if cache is None:
        cache = _contexts.by_dps = {}
    ctx = cache.get(dps)
    if ctx is None:
        ctx = MPIntervalContext()
        ctx.dps = dps
        cache[dps] = ctx
    return ctx


def _interval_value(phi: Polynomial, a: Fraction, dps: int):
    ctx = _context(dps)
    x = ctx.mpf(a.numerator) / ctx.mpf(a.denominator)
    small = abs(a) < SERIES_CUTOFF
    moms = _moments(ctx, x, phi.degree, small)
    acc = ctx.mpf(0)
    for c, mom in zip(phi.coeffs, moms):
        acc += ctx.mpf(c.numerator) / ctx.mpf(c.denominator) * mom
    return acc


def _working_dps(a: Fraction, degree: int) -> int:
    x = abs(float(a))
    loss = (degree + 1) * max(0.0, -math.log10(x)) if x and abs(a) >= SERIES_CUTOFF else 0.0
    return 40 + int(loss) + int(x * 0.4343) + 1


def soliton_sign(phi: Polynomial, a: Fraction) -> int:
    """Certified sign of G(a); 0 only if G(a) = 0 exactly (a = 0) or unresolved."""
    if a == 0:
        g0 = integrate(phi, -1, 1)
        return (g0 > 0) - (g0 < 0)
    dps = _working_dps(a, phi.degree)
    for _ in range(4):
        val = _interval_value(phi, a, dps)
        if val.a > 0:
            return 1
        if val.b < 0:
            return -1
        dps *= 2
    return 0


def soliton_function(w: WeightVector, v: ReebRay, d_N: int, a, fano_index: int | None = None) -> float:
    """G(a) as a float (midpoint of a certified enclosure)."""
    phi = _soliton_integrand(w, v, d_N, fano_index)
    a = Fraction(a)
    if a == 0:
        return float(integrate(phi, -1, 1))
    val = _interval_value(phi, a, _working_dps(a, phi.degree))
    return float(val.mid)


@dataclass(frozen=True)
class SolitonSolution:
    a_lo: Fraction
    a_hi: Fraction
    sign_lo: int
    sign_hi: int
    g0: Fraction

    @property
    def a(self) -> float:
        return float((self.a_lo + self.a_hi) / 2)

    @property
    def bracket_width(self) -> float:
        return float(self.a_hi - self.a_lo)

    @property
    def is_einstein(self) -> bool:
        return self.g0 == 0


MAX_BRACKET_EXPONENT = 10


def solve_soliton(
    w: WeightVector,
    v: ReebRay,
    d_N: int,
    tol: float = 1e-12,
    fano_index: int | None = None,
) -> SolitonSolution:
    """Root a of G(a) = int exp(-a z) ((1-z)/m2 - (1+z)/m1)(1 + r z)^d_N dz.

    G(0) is the KE integral; if it vanishes the answer is a = 0 exactly.
    Otherwise a sign change is searched at a = +-1, +-2, ..., +-2^10 and the
    bracket is bisected until narrower than ``tol``.  Endpoint signs are
    certified with interval arithmetic.  The zero set does not depend on
    the common factor m, so it defaults to 1.
    """
    _check_ratios(w, v)
    phi = _soliton_integrand(w, v, d_N, fano_index)
    g0 = integrate(phi, -1, 1)
    if g0 == 0:
        return SolitonSolution(Fraction(0), Fraction(0), 0, 0, g0)
    s0 = 1 if g0 > 0 else -1

    bracket = None
    prev = {1: Fraction(0), -1: Fraction(0)}
    for e in range(MAX_BRACKET_EXPONENT + 1):
        for direction in (1, -1):
            a = Fraction(direction * 2**e)
            s = soliton_sign(phi, a)
            if s == -s0:
                lo, hi = sorted((prev[direction], a))
                bracket = (lo, hi)
                break
            prev[direction] = a
        if bracket:
            break
    if bracket is None:
        raise BracketNotFound(f"no sign change of G within |a| <= 2^{MAX_BRACKET_EXPONENT}")

    lo, hi = bracket
    s_lo = soliton_sign(phi, lo)
    s_hi = soliton_sign(phi, hi)
    tol = Fraction(tol)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = soliton_sign(phi, mid)
        if s == 0:
            mid = lo + (hi - lo) * 3 / 8
            s = soliton_sign(phi, mid)
            if s == 0:
                raise ComputationError(f"sign of G unresolved near a = {float(mid)}")
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return SolitonSolution(lo, hi, s_lo, s_hi, g0)


# -- extremal metrics --------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSolution:
    data: AdmissibleData
    P: Polynomial
    F: Polynomial
    positive: bool

    def endpoint_conditions(self) -> dict[str, bool]:
        F, dF, p = self.F, self.F.derivative(), self.data.p
        one, neg = Fraction(1), Fraction(-1)
        return {
            "F(-1)=0": F(neg) == 0,
            "F(1)=0": F(one) == 0,
            "F'(-1)=2p(-1)/m2": dF(neg) == 2 * p(neg) / self.data.m2,
            "F'(1)=-2p(1)/m1": dF(one) == -2 * p(one) / self.data.m1,
        }


def extremal_profile(data: AdmissibleData) -> tuple[Polynomial, Polynomial]:
    """Solve F'' = (1 + r z)^(d_N - 1) P, P(-1/r) = 2 d_N s r, with the endpoint conditions."""
    r, d = data.r, data.d_N
    weight = Polynomial.linear(1, r) ** (d - 1)
    basis = [(weight * Z**k).antiderivative().antiderivative() for k in range(3)]
    dbasis = [b.derivative() for b in basis]
    p = data.p
    one, neg = Fraction(1), Fraction(-1)
    x0 = -1 / r
    # unknowns: P = p0 + p1 z + p2 z^2, then F += alpha + beta z
    rows = [
        [Fraction(1), x0, x0 * x0, 0, 0],
        [basis[0](neg), basis[1](neg), basis[2](neg), 1, -1],
        [basis[0](one), basis[1](one), basis[2](one), 1, 1],
        [dbasis[0](neg), dbasis[1](neg), dbasis[2](neg), 0, 1],
        [dbasis[0](one), dbasis[1](one), dbasis[2](one), 0, 1],
    ]
    rhs = [2 * d * data.scalar_s * r, 0, 0, 2 * p(neg) / data.m2, -2 * p(one) / data.m1]
    p0, p1, p2, alpha, beta = solve_linear(rows, rhs)
    P = Polynomial([p0, p1, p2])
    F = p0 * basis[0] + p1 * basis[1] + p2 * basis[2] + Polynomial([alpha, beta])
    return P, F


def solve_extremal(w: WeightVector, v: ReebRay, d_N: int, fano_index: int) -> ExtremalSolution:
    _check_ratios(w, v)
    data = AdmissibleData.from_ray(w, v, d_N, fano_index)
    P, F = extremal_profile(data)
    return ExtremalSolution(data, P, F, positive_on_open_interval(F, -1, 1))
