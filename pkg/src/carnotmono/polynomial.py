"""Polynomials in the six coordinates (theta1, theta2, theta3, omega12, omega13, omega23)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .multivec import Q
from .roots import Poly, padd, pmul, pscale, trim

Exps = Tuple[int, int, int, int, int, int]
VARS = ("theta1", "theta2", "theta3", "omega12", "omega13", "omega23")


@dataclass(frozen=True)
class Poly6:
    terms: Tuple[Tuple[Exps, Fraction], ...]

    @classmethod
    def from_dict(cls, d: Mapping) -> "Poly6":
        acc: Dict[Exps, Fraction] = {}
        for e, c in d.items():
            e = tuple(int(k) for k in e)
            if len(e) != 6 or min(e) < 0:
                raise ValueError(f"bad exponent vector {e}")
            acc[e] = acc.get(e, Fraction(0)) + Q(c)
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def from_terms(cls, terms: Iterable) -> "Poly6":
        acc: Dict = {}
        for e, c in terms:
            e = tuple(e)
            acc[e] = acc.get(e, Fraction(0)) + Q(c)
        return cls.from_dict(acc)

    @classmethod
    def constant(cls, c) -> "Poly6":
        return cls.from_dict({(0,) * 6: c})

    @classmethod
    def sum_of_squares(cls, offset=0) -> "Poly6":
        """|theta|^2 + |omega|^2 + offset."""
        d = {tuple(2 * int(i == k) for k in range(6)): 1 for i in range(6)}
        d[(0,) * 6] = offset
        return cls.from_dict(d)

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def __call__(self, coords: Sequence) -> Fraction:
        s = Fraction(0)
        for e, c in self.terms:
            m = c
            for x, k in zip(coords, e):
                if k:
                    m *= x ** k
            s += m
        return s

    def compose_affine(self, base: Sequence, vel: Sequence) -> Poly:
        """Coefficients in t of p(base + t*vel), computed symbolically."""
        lin = [[Fraction(b), Fraction(v)] for b, v in zip(base, vel)]
        cache: Dict[Tuple[int, int], Poly] = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = [Fraction(1)] if k == 0 else pmul(power(i, k - 1), lin[i])
            return cache[(i, k)]

        out: Poly = []
        for e, c in self.terms:
            m: Poly = [c]
            for i, k in enumerate(e):
                if k:
                    m = pmul(m, power(i, k))
            out = padd(out, m)
        return trim(out)
