"""Exact real root isolation for univariate rational polynomials.

Polynomials are lists of Fractions, lowest degree first.  Isolation uses a
Sturm chain of the square-free part and bisection with non-root endpoints.
Each isolating interval is then refined far enough to decide whether its root
is rational: a rational root of a primitive integer polynomial has
denominator dividing the leading coefficient N, and two distinct fractions
with denominators <= N are at least 1/N^2 apart.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Poly = List[Fraction]


def trim(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1  # -1 for the zero polynomial


def peval(p: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def padd(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(s, p: Sequence) -> Poly:
    return trim([s * c for c in p])


def pmul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def deriv(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def pdivmod(p: Sequence, d: Sequence) -> Tuple[Poly, Poly]:
    p, d = trim(p), trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(d) + 1, 1)
    rem = list(p)
    lead = d[-1]
    while len(rem) >= len(d) and rem:
        k = len(rem) - len(d)
        f = rem[-1] / lead
        quo[k] = f
        for i, c in enumerate(d):
            rem[i + k] -= f * c
        rem = trim(rem)
    return trim(quo), rem


def monic(p: Sequence) -> Poly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def pgcd(p: Sequence, q: Sequence) -> Poly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return monic(a)


def squarefree(p: Sequence) -> Poly:
    p = trim(p)
    if len(p) <= 2:
        return p
    g = pgcd(p, deriv(p))
    return pdivmod(p, g)[0] if len(g) > 1 else p


def sturm_chain(p: Sequence) -> List[Poly]:
    chain = [trim(p), deriv(p)]
    while chain[-1]:
        r = pdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(pscale(-1, r))
    return [c for c in chain if c]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_changes(chain: Sequence[Poly], t) -> int:
    signs = [s for s in (_sign(peval(c, t)) for c in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: Sequence[Poly], a, b) -> int:
    """Number of distinct roots in (a, b] (Sturm's theorem, chain of a square-free poly)."""
    return sign_changes(chain, a) - sign_changes(chain, b)


def cauchy_bound(p: Sequence) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def integer_primitive(p: Sequence) -> List[int]:
    p = trim(p)
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for n in ints:
        g = gcd(g, n)
    return [n // g for n in ints]


@dataclass(frozen=True)
class Root:
    """A real root inside the open interval (lo, hi); ``exact`` is set when it is rational."""
    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None

    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    def __repr__(self):
        if self.exact is not None:
            return f"Root({self.exact})"
        return f"Root(in ({self.lo}, {self.hi}))"


def _split_point(p, lo, hi) -> Fraction:
    # a non-root strictly inside (lo, hi); there are finitely many roots
    k = 2
    while True:
        for j in range(1, k):
            m = lo + (hi - lo) * Fraction(j, k)
            if peval(p, m) != 0:
                return m
        k += 1


def _rational_root_in(p, ip, lo, hi) -> Tuple[Fraction, Fraction, Optional[Fraction]]:
    """Decide whether the single simple root in (lo, hi) is rational."""
    n = abs(ip[-1])
    slo = _sign(peval(p, lo))
    # narrow until width < 1 / (2 n^2)
    target = Fraction(1, 2 * n * n)
    while hi - lo >= target:
        m = (lo + hi) / 2
        v = peval(p, m)
        if v == 0:
            return lo, hi, m
        if _sign(v) == slo:
            lo = m
        else:
            hi = m
    cand = ((lo + hi) / 2).limit_denominator(n)
    if lo < cand < hi and peval(p, cand) == 0:
        return lo, hi, cand
    return lo, hi, None


def isolate_real_roots(p: Sequence) -> List[Root]:
    """All distinct real roots of p in increasing order. The zero polynomial has none."""
    p = trim(p)
    if len(p) <= 1:
        return []
    if len(p) == 2:
        r = -p[0] / p[1]
        return [Root(r - 1, r + 1, r)]
    sf = squarefree(p)
    chain = sturm_chain(sf)
    ip = integer_primitive(sf)
    b = cauchy_bound(sf) + 1
    out: List[Root] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(Root(*_rational_root_in(sf, ip, lo, hi)))
            continue
        m = _split_point(sf, lo, hi)
        stack.append((m, hi))
        stack.append((lo, m))
    out.sort(key=lambda r: r.lo)
    return out


def simplest_between(a, b) -> Fraction:
    """The rational with the smallest denominator (then closest to 0) in the open interval (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("empty interval")
    if a < 0 < b:
        return Fraction(0)
    if b <= 0:
        return -simplest_between(-b, -a)
    fl = a.numerator // a.denominator
    if fl + 1 < b:
        return Fraction(fl + 1)
    x, y = a - fl, b - fl
    if x == 0:
        k = int(1 / y) + 1
        return fl + Fraction(1, k)
    return fl + 1 / simplest_between(1 / y, 1 / x)


def sign_at_root_side(p, r: Root, side: int) -> int:
    """Sign of p just left (side=-1) or right (side=+1) of root r; uses the interval endpoints."""
    return _sign(peval(p, r.lo if side < 0 else r.hi))
