"""Exact rational polynomial algebra and certified real-root isolation.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable and stored
as coefficient tuples in increasing degree.  Root counting uses Sturm
sequences of the square-free part, so multiple roots are handled exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence, Union

from .errors import InputTooLarge, SingularSystem

Rational = Fraction
Number = Union[int, Fraction]

DEFAULT_WIDTH = Fraction(1, 10**12)
FACTORIZE_CAP = 2**63 - 1


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Polynomial:
    """Univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def linear(cls, c0: Number, c1: Number) -> "Polynomial":
        """c0 + c1*z"""
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self.coefficient(k) + o.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_rational(other)
            return Polynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_rational(other)
        return Polynomial(a / c for a in self.coeffs)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Polynomial.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def antiderivative(self) -> "Polynomial":
        """Antiderivative vanishing at 0."""
        return Polynomial([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self / self.leading

    def integer_coefficients(self) -> list[int]:
        """Primitive integer multiple with positive leading coefficient."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return ints


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), keeping the sign of the leading coefficient of p."""
    if p.degree < 1:
        return p
    return p // poly_gcd(p, p.derivative())


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: p = lc * prod q_i^i with q_i square-free and pairwise coprime.

    Only factors of positive degree are returned.
    """
    if p.degree < 1:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w // g
        y = z // g
        i += 1
    return out


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


@lru_cache(maxsize=512)
def _int_form(p: Polynomial) -> tuple[int, ...]:
    return tuple(p.integer_coefficients()) if not p.is_zero() else ()


def sign_at(p: Polynomial, x) -> int:
    """Sign of p(x) for rational x using integer arithmetic only."""
    coeffs = _int_form(p)
    if not coeffs:
        return 0
    x = as_rational(x)
    n, d = x.numerator, x.denominator
    acc, dp = coeffs[-1], 1
    for c in reversed(coeffs[:-1]):
        dp *= d
        acc = acc * n + c * dp
    # integer_coefficients may flip the overall sign; compare with the leading term
    return _sign(acc) * _sign(p.leading) * _sign(coeffs[-1])


def _sign_at(p: Polynomial, x) -> int:
    if x is None:
        raise ValueError("use _sign_at_infinity")
    return sign_at(p, x)


def _sign_at_infinity(p: Polynomial, direction: int) -> int:
    if p.is_zero():
        return 0
    s = _sign(p.leading)
    return s if direction > 0 or p.degree % 2 == 0 else -s


def sign_variations(seq: Sequence[Polynomial], x) -> int:
    """Sign changes of the sequence at x; x may be +inf/-inf given as +1/-1 in a tuple ('inf', dir)."""
    if isinstance(x, tuple):
        signs = [_sign_at_infinity(p, x[1]) for p in seq]
    else:
        signs = [sign_at(p, x) for p in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Polynomial, a=None, b=None) -> int:
    """Number of distinct real roots of p in the open interval (a, b); None means infinite."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    q = squarefree_part(p)
    if q.degree < 1:
        return 0
    return _count_open(sturm_sequence(q), q, a, b)


def _count_open(seq, q, a, b) -> int:
    va = sign_variations(seq, ("inf", -1) if a is None else a)
    vb = sign_variations(seq, ("inf", 1) if b is None else b)
    n = va - vb
    if b is not None and sign_at(q, b) == 0:
        n -= 1
    return n


def root_bound(p: Polynomial) -> Fraction:
    """Cauchy bound: every complex root z satisfies |z| < bound."""
    lc = abs(p.leading)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def integrate(p: Polynomial, a: Number, b: Number) -> Fraction:
    """Exact definite integral of p over [a, b]."""
    P = p.antiderivative()
    return P(as_rational(b)) - P(as_rational(a))


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval (lo, hi) holding exactly one real root of a polynomial.

    ``sign_change`` is the sign of the square-free part at ``hi`` (its sign at
    ``lo`` is the opposite).  ``exact`` is set when the root was hit exactly
    during bisection, which only happens for rational roots.
    """

    lo: Fraction
    hi: Fraction
    sign_change: int
    multiplicity: int = 1
    exact: Fraction | None = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def refine(self, p: Polynomial, width: Fraction = DEFAULT_WIDTH) -> "IsolatingInterval":
        """Bisect until hi - lo <= width.  p may be any polynomial with this root."""
        q = squarefree_part(p)
        lo, hi, exact = self.lo, self.hi, self.exact
        s_lo = sign_at(q, lo)
        if exact is None:
            while hi - lo > width:
                mid = (lo + hi) / 2
                s = sign_at(q, mid)
                if s == 0:
                    exact = mid
                    break
                if s == s_lo:
                    lo = mid
                else:
                    hi = mid
        if exact is not None and hi - lo > width:
            half = width / 4
            lo, hi = max(lo, exact - half), min(hi, exact + half)
        return IsolatingInterval(lo, hi, self.sign_change, self.multiplicity, exact)


def _split_point(q: Polynomial, a: Fraction, b: Fraction) -> Fraction:
    j = 2
    while True:
        m = a + (b - a) / j
        if sign_at(q, m) != 0:
            return m
        j += 1


def _nudge(q, seq, x: Fraction, toward: Fraction) -> Fraction:
    """Move a root endpoint x toward `toward` without crossing another root."""
    step = (toward - x) / 2
    while True:
        y = x + step
        a, b = (x, y) if y > x else (y, x)
        if sign_at(q, y) != 0 and _count_open(seq, q, a, b) == 0:
            return y
        step /= 2


def isolate_roots(
    p: Polynomial,
    lo: Number | None = None,
    hi: Number | None = None,
    *,
    width: Fraction | None = DEFAULT_WIDTH,
) -> list[IsolatingInterval]:
    """Disjoint isolating intervals for every distinct real root of p in (lo, hi).

    ``None`` bounds mean -inf / +inf.  Intervals are refined to ``width``
    (pass ``width=None`` to skip refinement) and sorted increasingly.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    bound = root_bound(q)
    a = -bound if lo is None else as_rational(lo)
    b = bound if hi is None else as_rational(hi)
    if a >= b or _count_open(seq, q, a, b) == 0:
        return []
    if sign_at(q, a) == 0:
        a = _nudge(q, seq, a, b)
    if sign_at(q, b) == 0:
        b = _nudge(q, seq, b, a)

    factors = [(f, sturm_sequence(f), mult) for f, mult in squarefree_decomposition(p)]
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(a, b, _count_open(seq, q, a, b))]
    while stack:
        x, y, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append((x, y))
            continue
        m = _split_point(q, x, y)
        left = _count_open(seq, q, x, m)
        stack.append((x, m, left))
        stack.append((m, y, n - left))

    out = []
    for x, y in sorted(found):
        mult = next(k for f, s, k in factors if _count_open(s, f, x, y) == 1)
        iv = IsolatingInterval(x, y, sign_at(q, y), mult)
        if width is not None:
            iv = iv.refine(q, width)
        out.append(iv)
    return out


def positive_on_open_interval(p: Polynomial, a: Number, b: Number) -> bool:
    """True iff p(z) > 0 for every z in (a, b)."""
    a, b = as_rational(a), as_rational(b)
    if a >= b:
        return True
    if p.is_zero():
        return False
    if p.degree >= 1 and count_roots(p, a, b) > 0:
        return False
    return sign_at(p, (a + b) / 2) > 0


def rational_roots(p: Polynomial) -> list[Fraction]:
    """All rational roots of p (distinct, increasing).

    A rational root n/d of the primitive integer form has d | leading
    coefficient, so distinct candidates are at least 1/lc^2 apart; each real
    root is isolated to half that width, snapped to the nearest fraction with
    denominator <= lc, and verified exactly.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every rational as a root")
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    roots = []
    for iv in isolate_roots(q, width=_snap_width(q)):
        x = rational_root_in(iv, q)
        if x is not None:
            roots.append(x)
    return roots


def _snap_width(q: Polynomial) -> Fraction:
    lc = abs(_int_form(q)[-1])
    return Fraction(1, 4 * lc * lc)


def rational_root_in(iv: IsolatingInterval, p: Polynomial) -> Fraction | None:
    """The root isolated by ``iv`` if it is rational, else None."""
    if iv.exact is not None:
        return iv.exact
    q = squarefree_part(p)
    tol = _snap_width(q)
    if iv.width > tol:
        iv = iv.refine(q, tol)
        if iv.exact is not None:
            return iv.exact
    lc = abs(_int_form(q)[-1])
    cand = iv.midpoint.limit_denominator(lc)
    if iv.lo < cand < iv.hi and sign_at(q, cand) == 0:
        return cand
    return None


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, primes increasing."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if n > FACTORIZE_CAP:
        raise InputTooLarge(f"{n} exceeds the trial-division cap 2^63-1")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f, step = 5, 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return out


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def solve_linear(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> list[Fraction]:
    """Solve a square linear system exactly by Gauss-Jordan elimination."""
    n = len(matrix)
    rows = [[as_rational(x) for x in row] + [as_rational(r)] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if pivot is None:
            raise SingularSystem("linear system is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        piv = rows[col][col]
        rows[col] = [x / piv for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return [rows[i][n] for i in range(n)]
