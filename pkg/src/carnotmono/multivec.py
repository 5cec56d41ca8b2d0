"""Exact exterior algebra of R^3.

Scalars are ``fractions.Fraction``.  A multivector stores all four grades:
g0, g1 in (e1, e2, e3), g2 in (e12, e13, e23) and g3 as the coefficient of
nu = e1^e2^e3.  1-forms and 2-forms are also passed around as bare 3-tuples
(``Vec3``); the helpers ``wedge11`` and ``wedge12`` work directly on those and
are what the hot paths use.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Tuple

from .errors import CarnotError

Vec3 = Tuple[Fraction, Fraction, Fraction]

_Z = Fraction(0)
ZERO3: Vec3 = (_Z, _Z, _Z)


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec3(xs) -> Vec3:
    """Coerce a 3-sequence, or a grade-pure MultiVec of grade 1 or 2, to a Vec3."""
    if isinstance(xs, MultiVec):
        if xs.is_one_form():
            return xs.g1
        if xs.is_two_form():
            return xs.g2
        raise ValueError("expected a pure 1-form or 2-form")
    t = tuple(Q(x) for x in xs)
    if len(t) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(t)}")
    return t  # type: ignore[return-value]


def add3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale3(s, a: Vec3) -> Vec3:
    return (s * a[0], s * a[1], s * a[2])


def is_zero3(a: Vec3) -> bool:
    return not (a[0] or a[1] or a[2])


def wedge11(a: Vec3, b: Vec3) -> Vec3:
    """1-form ^ 1-form, as a 2-form in (e12, e13, e23)."""
    return (
        a[0] * b[1] - a[1] * b[0],
        a[0] * b[2] - a[2] * b[0],
        a[1] * b[2] - a[2] * b[1],
    )


def wedge12(a: Vec3, w: Vec3) -> Fraction:
    """nu-coefficient of 1-form ^ 2-form (equal to 2-form ^ 1-form)."""
    return a[0] * w[2] - a[1] * w[1] + a[2] * w[0]


@dataclass(frozen=True)
class MultiVec:
    g0: Fraction = _Z
    g1: Vec3 = ZERO3
    g2: Vec3 = ZERO3
    g3: Fraction = _Z

    def __post_init__(self):
        object.__setattr__(self, "g0", Q(self.g0))
        object.__setattr__(self, "g1", vec3(self.g1))
        object.__setattr__(self, "g2", vec3(self.g2))
        object.__setattr__(self, "g3", Q(self.g3))

    @classmethod
    def scalar(cls, s) -> "MultiVec":
        return cls(g0=s)

    @classmethod
    def one_form(cls, *xs) -> "MultiVec":
        return cls(g1=xs[0] if len(xs) == 1 else xs)

    @classmethod
    def two_form(cls, *xs) -> "MultiVec":
        return cls(g2=xs[0] if len(xs) == 1 else xs)

    @classmethod
    def volume(cls, s=1) -> "MultiVec":
        return cls(g3=s)

    def is_zero(self) -> bool:
        return not self.g0 and is_zero3(self.g1) and is_zero3(self.g2) and not self.g3

    def is_one_form(self) -> bool:
        return not self.g0 and is_zero3(self.g2) and not self.g3

    def is_two_form(self) -> bool:
        return not self.g0 and is_zero3(self.g1) and not self.g3

    def is_three_form(self) -> bool:
        return not self.g0 and is_zero3(self.g1) and is_zero3(self.g2)

    def __add__(self, other: "MultiVec") -> "MultiVec":
        return MultiVec(self.g0 + other.g0, add3(self.g1, other.g1),
                        add3(self.g2, other.g2), self.g3 + other.g3)

    def __sub__(self, other: "MultiVec") -> "MultiVec":
        return MultiVec(self.g0 - other.g0, sub3(self.g1, other.g1),
                        sub3(self.g2, other.g2), self.g3 - other.g3)

    def __neg__(self) -> "MultiVec":
        return MultiVec(-self.g0, scale3(-1, self.g1), scale3(-1, self.g2), -self.g3)

    def __mul__(self, s) -> "MultiVec":
        s = Q(s)
        return MultiVec(s * self.g0, scale3(s, self.g1), scale3(s, self.g2), s * self.g3)

    __rmul__ = __mul__

    def __xor__(self, other: "MultiVec") -> "MultiVec":
        return wedge(self, other)


def wedge(a: MultiVec, b: MultiVec) -> MultiVec:
    """Exterior product; anything above grade 3 vanishes."""
    g1 = add3(scale3(a.g0, b.g1), scale3(b.g0, a.g1))
    g2 = add3(add3(scale3(a.g0, b.g2), scale3(b.g0, a.g2)), wedge11(a.g1, b.g1))
    g3 = a.g0 * b.g3 + b.g0 * a.g3 + wedge12(a.g1, b.g2) + wedge12(b.g1, a.g2)
    return MultiVec(a.g0 * b.g0, g1, g2, g3)


def nu_coefficient(t: MultiVec) -> Fraction:
    if not t.is_three_form():
        raise CarnotError("NOT_GRADE_3", "multivector has nonzero lower-grade components")
    return t.g3


def fmt_vec3(a: Vec3) -> str:
    return "(" + ", ".join(str(x) for x in a) + ")"


e1 = MultiVec.one_form(1, 0, 0)
e2 = MultiVec.one_form(0, 1, 0)
e3 = MultiVec.one_form(0, 0, 1)
e12 = MultiVec.two_form(1, 0, 0)
e13 = MultiVec.two_form(0, 1, 0)
e23 = MultiVec.two_form(0, 0, 1)
NU = MultiVec.volume(1)
