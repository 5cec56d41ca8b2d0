"""h-affine functions on f23.

    phi(theta, omega) = eta3 + eta2^theta + eta1^omega + eta0 * theta^omega

with every 3-form read as its coefficient against nu = e1^e2^e3.  Level sets
are always taken at 0; a level c is folded into eta3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from . import linalg
from .carnot import (AffineSubspace, HLine, Point, Quotient, QuotientPoint,
                     horizontal, mul)
from .errors import CarnotError
from .multivec import (ZERO3, Q, Vec3, add3, is_zero3, scale3, sub3, vec3,
                       wedge11, wedge12)


@dataclass(frozen=True)
class HAffine:
    eta0: Fraction = Fraction(0)
    eta1: Vec3 = ZERO3
    eta2: Vec3 = ZERO3
    eta3: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "eta0", Q(self.eta0))
        object.__setattr__(self, "eta1", vec3(self.eta1))
        object.__setattr__(self, "eta2", vec3(self.eta2))
        object.__setattr__(self, "eta3", Q(self.eta3))

    def is_constant(self) -> bool:
        return not self.eta0 and is_zero3(self.eta1) and is_zero3(self.eta2)

    def is_affine(self) -> bool:
        return not self.eta0

    def components(self) -> Tuple[Fraction, ...]:
        return (self.eta0,) + self.eta1 + self.eta2 + (self.eta3,)

    def __call__(self, x: Point) -> Fraction:
        return evaluate(self, x)

    def scaled(self, s) -> "HAffine":
        s = Q(s)
        return HAffine(s * self.eta0, scale3(s, self.eta1), scale3(s, self.eta2), s * self.eta3)

    def shifted(self, c) -> "HAffine":
        return HAffine(self.eta0, self.eta1, self.eta2, self.eta3 + Q(c))


def evaluate(phi: HAffine, x: Point) -> Fraction:
    th, om = x.theta, x.omega
    return (phi.eta3 + wedge12(th, phi.eta2) + wedge12(phi.eta1, om)
            + phi.eta0 * wedge12(th, om))


def linear_part(phi: HAffine, x: Point) -> Fraction:
    """eta2^theta + eta1^omega, the differential of phi at the origin."""
    return wedge12(x.theta, phi.eta2) + wedge12(phi.eta1, x.omega)


def slope_form(phi: HAffine, x: Point) -> Vec3:
    """The 2-form eta2 + eta1^theta + eta0*omega; phi(x.(ty,0)) = phi(x) + t*nu(slope^y)."""
    return add3(add3(phi.eta2, wedge11(phi.eta1, x.theta)), scale3(phi.eta0, x.omega))


def restrict_to_line(phi: HAffine, l: HLine) -> Tuple[Fraction, Fraction]:
    return evaluate(phi, l.base), wedge12(l.dir, slope_form(phi, l.base))


@dataclass(frozen=True)
class HorizontalDifferential:
    dtheta: Vec3
    domega: Vec3

    def __call__(self, h: Point) -> Fraction:
        return wedge12(h.theta, self.dtheta) + wedge12(self.domega, h.omega)


def differential(phi: HAffine, x: Point) -> HorizontalDifferential:
    return HorizontalDifferential(add3(phi.eta2, scale3(phi.eta0, x.omega)),
                                  add3(phi.eta1, scale3(phi.eta0, x.theta)))


def _require_level(phi: HAffine, x: Point):
    if evaluate(phi, x) != 0:
        raise CarnotError("NOT_ON_LEVEL_SET", "phi(x) != 0")


def is_characteristic(phi: HAffine, x: Point) -> bool:
    _require_level(phi, x)
    return is_zero3(slope_form(phi, x))


def hor_levelset_subspace(phi: HAffine, x: Point) -> AffineSubspace:
    _require_level(phi, x)
    w = slope_form(phi, x)
    # tau -> nu(w ^ tau) has coefficient vector (w23, -w13, w12)
    row = [w[2], -w[1], w[0]]
    taus = linalg.nullspace([row] if any(row) else [], 3)
    basis = tuple(tuple(t) + wedge11(x.theta, tuple(t)) for t in taus)
    return AffineSubspace(x, basis)


def proportional(phi: HAffine, psi: HAffine) -> Optional[Fraction]:
    if phi.is_constant():
        raise CarnotError("CONSTANT_INPUT", "phi is constant")
    a, b = phi.components(), psi.components()
    i = next(k for k in range(len(a)) if a[k])
    lam = b[i] / a[i]
    if all(lam * u == v for u, v in zip(a, b)):
        return lam
    return None


def q_form(x: Point) -> Fraction:
    """The pure quadratic form theta^omega."""
    return wedge12(x.theta, x.omega)


@dataclass(frozen=True)
class AffineChange:
    """T(theta, omega) = (eta0*theta + eta1, omega + eta2/eta0)."""
    eta0: Fraction
    eta1: Vec3
    eta2: Vec3

    def __call__(self, x: Point) -> Point:
        return Point(add3(scale3(self.eta0, x.theta), self.eta1),
                     add3(x.omega, scale3(1 / self.eta0, self.eta2)))

    def inverse(self, y: Point) -> Point:
        return Point(scale3(1 / self.eta0, sub3(y.theta, self.eta1)),
                     sub3(y.omega, scale3(1 / self.eta0, self.eta2)))


def normalize(phi: HAffine) -> Tuple[AffineChange, Fraction]:
    """phi = q o T + kappa with q = theta^omega."""
    if not phi.eta0:
        raise CarnotError("ETA0_ZERO", "normalization needs eta0 != 0")
    kappa = phi.eta3 - wedge12(phi.eta1, phi.eta2) / phi.eta0
    return AffineChange(phi.eta0, phi.eta1, phi.eta2), kappa


@dataclass(frozen=True)
class QuotientFunction:
    """Affine function on quotient coordinates (theta, reduced omega)."""
    quotient: Quotient
    theta_coeffs: Vec3
    omega_coeffs: Tuple[Fraction, ...]
    offset: Fraction

    def __call__(self, p: QuotientPoint) -> Fraction:
        s = self.offset
        for c, v in zip(self.theta_coeffs + self.omega_coeffs, p.theta + p.omega):
            s += c * v
        return s

    def is_constant(self) -> bool:
        return not any(self.theta_coeffs) and not any(self.omega_coeffs)


def factors_through(phi: HAffine, kernel: Sequence) -> bool:
    for z in kernel:
        z = vec3(z)
        if wedge12(phi.eta1, z) != 0 or (phi.eta0 and not is_zero3(z)):
            return False
    return True


def factor_through(phi: HAffine, kernel: Iterable) -> Optional[QuotientFunction]:
    quo = Quotient(tuple(kernel))
    if not quo.kernel:
        raise CarnotError("EMPTY_KERNEL", "factor_through needs a nonempty kernel")
    if not factors_through(phi, quo.kernel):
        return None
    # phi has eta0 = 0 here, so it is affine; read its coefficients on the
    # section that puts zeros in the pivot coordinates
    th = (phi.eta2[2], -phi.eta2[1], phi.eta2[0])
    full = (phi.eta1[2], -phi.eta1[1], phi.eta1[0])  # omega12, omega13, omega23 coefficients
    om = tuple(full[c] for c in quo.free)
    return QuotientFunction(quo, th, om, phi.eta3)
