"""Exact univariate polynomial toolkit over the rationals.

Provides Descartes' rule of signs, Sturm-sequence root counting on
intervals of the positive axis, Swan's closed-form discriminant for
trinomials, and the sign trichotomy that counts positive roots of an
alternating trinomial x^n - c*x^k + b.

All counting paths use exact rational arithmetic; floating point appears
only in root refinement helpers, which always start from exact
Sturm-isolated intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class ZeroPolynomialError(ValueError):
    """Raised when an operation is undefined for the zero polynomial."""


def _sign(q: Fraction) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


class UniPoly:
    """Dense univariate polynomial with Fraction coefficients (ascending degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def monomial(cls, coeff, exp: int) -> "UniPoly":
        c = Fraction(coeff)
        if c == 0:
            return cls.zero()
        return cls([Fraction(0)] * exp + [c])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if self.is_zero:
            raise ZeroPolynomialError("degree of zero polynomial is undefined")
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def scale(self, k) -> "UniPoly":
        k = Fraction(k)
        return UniPoly([c * k for c in self.coeffs])

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q: list[Fraction] = []
        rem = list(self.coeffs)
        d = other.degree()
        lc = other.leading()
        for k in range(len(rem) - 1 - d, -1, -1):
            coef = rem[k + d] / lc
            q.append(coef)
            if coef:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= coef * c
        q.reverse()
        return UniPoly(q), UniPoly(rem[:d] if len(rem) > d else rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        return self.scale(1 / self.leading())

    def primitive(self) -> "UniPoly":
        """Scale by a positive rational so coefficients are coprime integers."""
        if self.is_zero:
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return UniPoly([Fraction(c, g) for c in ints])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, (a % b).primitive() if not (a % b).is_zero else UniPoly.zero()
        if a.is_zero:
            return a
        return a.monic()

    def squarefree_part(self) -> "UniPoly":
        if self.is_zero:
            raise ZeroPolynomialError("squarefree part of zero polynomial")
        if self.degree() == 0:
            return UniPoly([1])
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def strip_root_at_zero(self) -> tuple["UniPoly", int]:
        """Divide out the largest power of x; returns (quotient, multiplicity)."""
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial")
        v = 0
        while self.coeffs[v] == 0:
            v += 1
        return UniPoly(self.coeffs[v:]), v

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"


def descartes_sign_changes(p: UniPoly) -> int:
    """Sign changes in the coefficient list, zeros removed."""
    if p.is_zero:
        raise ZeroPolynomialError("Descartes' rule requires a nonzero polynomial")
    signs = [_sign(c) for c in p.coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero and chain[-1].degree() > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero:
            break
        chain.append((-r).primitive())
    return [q for q in chain if not q.is_zero]


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _variations_at(chain: Sequence[UniPoly], x: Fraction) -> int:
    return _variations([_sign(q(x)) for q in chain])


def _variations_at_inf(chain: Sequence[UniPoly]) -> int:
    return _variations([_sign(q.leading()) for q in chain])


def _count_open(p: UniPoly, a: Fraction | None, b: Fraction | None) -> int:
    """Distinct real roots of squarefree p in the open interval (a, b).

    ``a = None`` means 0 with the root at 0 excluded; ``b = None`` means +inf.
    Endpoints that are roots are divided out first, so the count is for the
    open interval.
    """
    if a is None:
        a = Fraction(0)
    for endpoint in (a, b):
        if endpoint is not None:
            while not p.is_zero and p.degree() >= 1 and p(endpoint) == 0:
                p = p // UniPoly([-endpoint, 1])
    if p.is_zero or p.degree() == 0:
        return 0
    chain = sturm_chain(p)
    va = _variations_at(chain, a)
    vb = _variations_at_inf(chain) if b is None else _variations_at(chain, b)
    return va - vb


def sturm_count_positive(p: UniPoly) -> int:
    """Number of distinct roots in (0, inf), via Sturm on the squarefree part."""
    if p.is_zero:
        raise ZeroPolynomialError("Sturm count requires a nonzero polynomial")
    q, _ = p.strip_root_at_zero()
    if q.degree() == 0:
        return 0
    return _count_open(q.squarefree_part(), Fraction(0), None)


def sturm_count_open_interval(p: UniPoly, a: Fraction, b: Fraction | None) -> int:
    """Distinct roots of p in the open interval (a, b); b=None means +inf."""
    if p.is_zero:
        raise ZeroPolynomialError("Sturm count requires a nonzero polynomial")
    if p.degree() == 0:
        return 0
    return _count_open(p.squarefree_part(), Fraction(a), b)


def root_upper_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lc = abs(p.leading())
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return Fraction(1) + m / lc


def rational_roots(p: UniPoly, divisor_bound: int = 10**7) -> list[Fraction]:
    """Rational roots of p (without multiplicity), by the rational root test.

    Enumerating divisors is only feasible for moderate coefficients; when
    the constant or leading coefficient exceeds divisor_bound the search
    is skipped (callers fall back to isolating intervals).
    """
    q, v = p.strip_root_at_zero()
    q = q.primitive()
    roots = [Fraction(0)] if v else []
    if q.degree() == 0:
        return roots
    if q.degree() == 1:
        roots.append(-q.coeffs[0] / q.coeffs[1])
        return roots
    if q.degree() == 2:
        c0, c1, c2 = q.coeffs
        disc = c1 * c1 - 4 * c0 * c2
        if disc < 0:
            return roots
        s = math.isqrt(int(disc))
        if s * s != disc:
            return roots
        roots.extend({(-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)})
        return roots
    a0 = abs(int(q.coeffs[0]))
    an = abs(int(q.coeffs[-1]))
    if a0 > divisor_bound or an > divisor_bound:
        return roots
    for s in _divisors(a0):
        for t in _divisors(an):
            for cand in (Fraction(s, t), Fraction(-s, t)):
                if q(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def isolate_positive_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open rational intervals, each holding exactly one positive root.

    Exact rational roots r are returned as the degenerate interval (r, r).
    """
    q, _ = p.strip_root_at_zero()
    sf = q.squarefree_part()
    total = _count_open(sf, Fraction(0), None)
    if total == 0:
        return []
    rational = sorted(r for r in rational_roots(sf) if r > 0)
    work = sf
    for r in rational:
        work = work // UniPoly([-r, 1])
    intervals: list[tuple[Fraction, Fraction]] = [(r, r) for r in rational]
    remaining = total - len(rational)
    if remaining:
        lo, hi = Fraction(0), root_upper_bound(work)
        stack = [(lo, hi, _count_open(work, lo, hi))]
        while stack:
            a, b, cnt = stack.pop()
            if cnt == 0:
                continue
            if cnt == 1:
                intervals.append((a, b))
                continue
            mid = (a + b) / 2
            while work(mid) == 0:
                # mid is an irrational-root-free rational, perturb
                mid = (a + mid) / 2
            left = _count_open(work, a, mid)
            stack.append((a, mid, left))
            stack.append((mid, b, cnt - left))
    intervals.sort(key=lambda iv: iv[0])
    return intervals


def refine_root(p: UniPoly, a: Fraction, b: Fraction, rel_width: Fraction = Fraction(1, 10**12)) -> Fraction:
    """Bisect the isolating interval (a, b) down to relative width rel_width."""
    if a == b:
        return a
    sf = p.squarefree_part()
    fa = sf(a)
    if fa == 0:
        return a
    if sf(b) == 0:
        return b
    sa = _sign(fa)
    while (b - a) > rel_width * max(abs(a), abs(b), Fraction(1)):
        mid = (a + b) / 2
        fm = sf(mid)
        if fm == 0:
            return mid
        if _sign(fm) == sa:
            a = mid
        else:
            b = mid
    return (a + b) / 2


# ---------------------------------------------------------------------------
# Resultants and Swan's trinomial discriminant


def sylvester_matrix(f: UniPoly, g: UniPoly) -> list[list[Fraction]]:
    m, n = f.degree(), g.degree()
    size = m + n
    fm = list(reversed(f.coeffs))
    gm = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fm + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gm + [Fraction(0)] * (size - n - 1 - i))
    return rows


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    rows = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col] == 0:
                continue
            factor = rows[r][col] * inv
            for c in range(col, n):
                rows[r][c] -= factor * rows[col][c]
    return det


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    if f.is_zero or g.is_zero:
        raise ZeroPolynomialError("resultant of zero polynomial")
    if f.degree() == 0:
        return f.coeffs[0] ** g.degree() if not g.is_zero else Fraction(0)
    if g.degree() == 0:
        return g.coeffs[0] ** f.degree()
    return _det(sylvester_matrix(f, g))


def discriminant_via_resultant(p: UniPoly) -> Fraction:
    """Standard discriminant (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    n = p.degree()
    sign = Fraction(-1) ** (n * (n - 1) // 2)
    return sign * resultant(p, p.derivative()) / p.leading()


def trinomial_discriminant(n: int, k: int, a, b) -> Fraction:
    """Discriminant of x^n + a*x^k + b via Swan's closed form."""
    if not 0 < k < n:
        raise ValueError("trinomial requires 0 < k < n")
    a, b = Fraction(a), Fraction(b)
    d = math.gcd(n, k)
    N, K = n // d, k // d
    sign = Fraction(-1) ** (n * (n - 1) // 2)
    inner = (
        Fraction(n) ** N * b ** (N - K)
        - Fraction(-1) ** N * Fraction(n - k) ** (N - K) * Fraction(k) ** K * a**N
    )
    return sign * b ** (k - 1) * inner**d


@dataclass(frozen=True)
class TrinomialForm:
    """Normalized alternating trinomial x^n - c*x^k + b with b, c > 0."""

    n: int
    k: int
    b: Fraction
    c: Fraction
    d: int = field(init=False)
    N: int = field(init=False)
    K: int = field(init=False)

    def __post_init__(self) -> None:
        if not 0 < self.k < self.n:
            raise ValueError("trinomial requires 0 < k < n")
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.b <= 0 or self.c <= 0:
            raise ValueError("trinomial form requires b > 0 and c > 0")
        d = math.gcd(self.n, self.k)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "N", self.n // d)
        object.__setattr__(self, "K", self.k // d)

    def polynomial(self) -> UniPoly:
        coeffs = [Fraction(0)] * (self.n + 1)
        coeffs[0] = self.b
        coeffs[self.k] = -self.c
        coeffs[self.n] = Fraction(1)
        return UniPoly(coeffs)


def trinomial_D(t: TrinomialForm) -> Fraction:
    """The quantity whose sign decides the positive-root trichotomy."""
    return (
        Fraction(t.n) ** t.N * t.b ** (t.N - t.K)
        - Fraction(t.n - t.k) ** (t.N - t.K) * Fraction(t.k) ** t.K * t.c**t.N
    )


def trinomial_positive_roots(t: TrinomialForm) -> int:
    """Positive roots of x^n - c*x^k + b, counted without multiplicity."""
    D = trinomial_D(t)
    if D < 0:
        return 2
    if D == 0:
        return 1
    return 0
