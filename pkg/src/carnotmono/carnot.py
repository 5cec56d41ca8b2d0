"""The step-2 group on Lambda^1 R^3 + Lambda^2 R^3.

Group law (theta, omega).(tau, zeta) = (theta + tau, omega + zeta + theta^tau).
The inverse is negation and the identity is the origin.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

from . import linalg
from .errors import CarnotError
from .multivec import (ZERO3, Q, Vec3, add3, is_zero3, scale3, sub3, vec3,
                       wedge11)

Vec6 = Tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class Point:
    theta: Vec3 = ZERO3
    omega: Vec3 = ZERO3

    def __post_init__(self):
        object.__setattr__(self, "theta", vec3(self.theta))
        object.__setattr__(self, "omega", vec3(self.omega))

    @classmethod
    def from_coords(cls, c: Sequence) -> "Point":
        return cls(tuple(c[:3]), tuple(c[3:6]))

    def coords(self) -> Vec6:
        return self.theta + self.omega  # type: ignore[return-value]

    # vector-space structure (not the group law)
    def __add__(self, other: "Point") -> "Point":
        return Point(add3(self.theta, other.theta), add3(self.omega, other.omega))

    def __sub__(self, other: "Point") -> "Point":
        return Point(sub3(self.theta, other.theta), sub3(self.omega, other.omega))

    def __neg__(self) -> "Point":
        return Point(scale3(-1, self.theta), scale3(-1, self.omega))

    def scale(self, s) -> "Point":
        s = Q(s)
        return Point(scale3(s, self.theta), scale3(s, self.omega))

    def max_abs(self) -> Fraction:
        return max(abs(c) for c in self.coords())


ORIGIN = Point()


def mul(x: Point, y: Point) -> Point:
    return Point(add3(x.theta, y.theta),
                 add3(add3(x.omega, y.omega), wedge11(x.theta, y.theta)))


def inverse(x: Point) -> Point:
    return -x


def horizontal(tau) -> Point:
    """The point (tau, 0)."""
    return Point(tau, ZERO3)


def primitive(v: Sequence) -> Vec3:
    """Scale a nonzero rational vector to integers with gcd 1, first nonzero entry positive."""
    v = [Q(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for n in ints:
        g = gcd(g, n)
    if g == 0:
        raise CarnotError("ZERO_DIRECTION", "direction must be nonzero")
    lead = next(n for n in ints if n)
    if lead < 0:
        g = -g
    return tuple(Fraction(n // g) for n in ints)  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class HLine:
    """Horizontal line {base.(t*dir, 0) : t}.

    ``dir`` is stored in primitive form, so ``line_point`` is parametrised by
    the primitive direction.  Equality and hashing compare point sets.
    """
    base: Point
    dir: Vec3

    def __post_init__(self):
        object.__setattr__(self, "dir", primitive(self.dir))

    def direction_vector(self) -> Vec6:
        """Velocity in R^6 of t -> line_point(self, t)."""
        return self.dir + wedge11(self.base.theta, self.dir)  # type: ignore[return-value]

    def point(self, t) -> Point:
        return line_point(self, t)

    def key(self) -> Tuple[Vec6, Vec3]:
        # the unique point of the line whose theta-coordinate at the first
        # nonzero index of dir is 0
        i = next(k for k in range(3) if self.dir[k])
        t0 = -self.base.theta[i] / self.dir[i]
        return (line_point(self, t0).coords(), self.dir)

    def __eq__(self, other):
        if not isinstance(other, HLine):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"HLine(base={self.base!r}, dir={self.dir!r})"


def line_point(l: HLine, t) -> Point:
    t = Q(t)
    th, om, y = l.base.theta, l.base.omega, l.dir
    return Point(add3(th, scale3(t, y)), add3(om, scale3(t, wedge11(th, y))))


def flow(x: Point, y: Vec3, t) -> Point:
    """x.(t*y, 0) for an arbitrary (not necessarily primitive) 1-form y."""
    t = Q(t)
    return Point(add3(x.theta, scale3(t, y)),
                 add3(x.omega, scale3(t, wedge11(x.theta, y))))


def aligned(x: Point, z: Point) -> bool:
    d = sub3(z.theta, x.theta)
    return not is_zero3(d) and sub3(z.omega, x.omega) == wedge11(x.theta, d)


def line_through(x: Point, z: Point):
    """The horizontal line through x and z, or None if they are not aligned."""
    if x == z:
        raise CarnotError("SAME_POINT", "line_through needs two distinct points")
    if not aligned(x, z):
        return None
    return HLine(x, sub3(z.theta, x.theta))


@dataclass(frozen=True)
class AffineSubspace:
    base: Point
    basis: Tuple[Vec6, ...] = ()

    def __post_init__(self):
        b = tuple(tuple(Q(c) for c in v) for v in self.basis)
        if any(len(v) != 6 for v in b):
            raise ValueError("basis vectors live in R^6")
        if linalg.rank(b, 6) != len(b):
            raise CarnotError("DEPENDENT_BASIS", "basis vectors are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, coeffs: Sequence) -> Point:
        c = list(self.base.coords())
        for s, v in zip(coeffs, self.basis):
            s = Q(s)
            for i in range(6):
                c[i] += s * v[i]
        return Point.from_coords(c)

    def contains(self, p: Point) -> bool:
        d = [a - b for a, b in zip(p.coords(), self.base.coords())]
        if not any(d):
            return True
        return linalg.rank(list(self.basis) + [d], 6) == self.dim

    def same_as(self, other: "AffineSubspace") -> bool:
        if self.dim != other.dim or not self.contains(other.base):
            return False
        return linalg.rank(list(self.basis) + list(other.basis), 6) == self.dim


def hor_space(x: Point) -> AffineSubspace:
    basis = []
    for i in range(3):
        e = tuple(Fraction(int(i == k)) for k in range(3))
        basis.append(e + wedge11(x.theta, e))
    return AffineSubspace(x, tuple(basis))


def lie_subalgebra(xi, tau) -> AffineSubspace:
    xi, tau = vec3(xi), vec3(tau)
    w = wedge11(xi, tau)
    if is_zero3(w):
        raise CarnotError("DEGENERATE", "xi ^ tau = 0")
    return AffineSubspace(ORIGIN, (xi + ZERO3, tau + ZERO3, ZERO3 + w))


@dataclass(frozen=True)
class QuotientPoint:
    theta: Vec3
    omega: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Quotient:
    """f23 modulo an ideal spanned by 2-forms.

    Quotient coordinates keep the omega-coordinates outside the pivot set of
    the kernel's reduced row echelon form.
    """
    kernel: Tuple[Vec3, ...]
    rows: Tuple[Tuple[Fraction, ...], ...] = field(init=False)
    pivots: Tuple[int, ...] = field(init=False)
    free: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        k = tuple(vec3(z) for z in self.kernel)
        object.__setattr__(self, "kernel", k)
        if k:
            red, piv = linalg.rref(k, 3)
        else:
            red, piv = [], []
        if len(piv) != len(k):
            raise CarnotError("DEPENDENT_KERNEL", "kernel 2-forms are linearly dependent")
        object.__setattr__(self, "rows", tuple(tuple(r) for r in red))
        object.__setattr__(self, "pivots", tuple(piv))
        object.__setattr__(self, "free", tuple(c for c in range(3) if c not in piv))

    def reduce(self, w: Vec3) -> Tuple[Fraction, ...]:
        w = list(w)
        for row, pc in zip(self.rows, self.pivots):
            s = w[pc]
            if s:
                w = [a - s * b for a, b in zip(w, row)]
        return tuple(w[c] for c in self.free)

    def project(self, x: Point) -> QuotientPoint:
        return QuotientPoint(x.theta, self.reduce(x.omega))

    def lift(self, p: QuotientPoint) -> Point:
        w = [Fraction(0)] * 3
        for c, v in zip(self.free, p.omega):
            w[c] = Q(v)
        return Point(p.theta, tuple(w))

    def mul(self, p: QuotientPoint, q: QuotientPoint) -> QuotientPoint:
        br = self.reduce(wedge11(p.theta, q.theta))
        return QuotientPoint(add3(p.theta, q.theta),
                             tuple(a + b + c for a, b, c in zip(p.omega, q.omega, br)))


def quotient_project(x: Point, kernel: Iterable) -> QuotientPoint:
    return Quotient(tuple(kernel)).project(x)
