"""Classification machinery turned into checkable certificates.

* Sigma = {theta^omega = 0} and annihilators Anh(omega).
* Components of {phi != 0}: paths inside a component with a Sturm certificate
  per straight segment.
* Points of the zero set on either side of Sigma near the origin.
* Witness lines: a horizontal line from a zero point outside Sigma back into Sigma.
* Graph coefficients: the zero set written as a graph over five coordinates.
* Half-spaces induced on quotients by ideals of 2-forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .carnot import HLine, Point, Quotient, QuotientPoint, flow, inverse, mul
from .errors import CarnotError
from .haffine import (HAffine, QuotientFunction, differential, evaluate,
                      factor_through, linear_part, normalize, q_form)
from .monotone import AffineFunctional
from .multivec import (ZERO3, Q, Vec3, add3, is_zero3, scale3, sub3, vec3,
                       wedge11, wedge12)
from .roots import count_roots, peval, squarefree, sturm_chain, trim


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# -- Sigma and annihilators ---------------------------------------------------

def in_sigma(x: Point) -> bool:
    return q_form(x) == 0


def anh(omega) -> List[Vec3]:
    """Basis of {xi : omega^xi = 0}, one vector per free coordinate in order."""
    w = vec3(omega)
    row = [w[2], -w[1], w[0]]
    basis = linalg.nullspace([row] if any(row) else [], 3)
    return [tuple(v) for v in basis]  # type: ignore[misc]


def decompose_two_form(omega) -> Tuple[Vec3, Vec3]:
    """xi, tau in Anh(omega) with xi^tau = omega; xi is the first annihilator vector."""
    w = vec3(omega)
    if is_zero3(w):
        raise CarnotError("ZERO_FORM", "cannot decompose the zero 2-form")
    a1, a2 = anh(w)
    return a1, _complete(a1, a2, w)


def _complete(xi: Vec3, other: Vec3, w: Vec3) -> Vec3:
    # xi^other is a nonzero multiple of w; rescale other to hit w exactly
    b = wedge11(xi, other)
    i = next(k for k in range(3) if w[k])
    return scale3(w[i] / b[i], other)


# -- components and certified paths --------------------------------------------

class Component(Enum):
    MINUS = "MINUS"
    PLUS = "PLUS"
    LEVEL = "LEVEL"


def component_of(phi: HAffine, x: Point) -> Component:
    if phi.is_constant():
        raise CarnotError("CONSTANT_INPUT", "phi is constant")
    v = evaluate(phi, x)
    return Component.MINUS if v < 0 else Component.PLUS if v > 0 else Component.LEVEL


def segment_restriction(phi: HAffine, x0: Point, x1: Point) -> List[Fraction]:
    """Coefficients of s -> phi(x0 + s(x1 - x0)) (vector-space segment)."""
    d = x1 - x0
    return [evaluate(phi, x0), differential(phi, x0)(d), phi.eta0 * q_form(d)]


@dataclass(frozen=True)
class SegmentCertificate:
    start: Point
    end: Point
    poly: Tuple[Fraction, ...]
    roots_in_unit: int

    def check(self, phi: HAffine, sign: int) -> bool:
        # recompute the quadratic by interpolation at 0, 1/2, 1
        f0 = evaluate(phi, self.start)
        fh = evaluate(phi, self.start + (self.end - self.start).scale(Fraction(1, 2)))
        f1 = evaluate(phi, self.end)
        c2 = 2 * f0 - 4 * fh + 2 * f1
        c1 = f1 - f0 - c2
        if trim([f0, c1, c2]) != trim(self.poly):
            return False
        if _sgn(f0) != sign or _sgn(f1) != sign:
            return False
        return self.roots_in_unit == 0 and _unit_root_count(self.poly) == 0


def _unit_root_count(p) -> int:
    p = trim(p)
    if len(p) <= 1:
        return 0
    return count_roots(sturm_chain(squarefree(p)), Fraction(0), Fraction(1))


def certify_segment(phi: HAffine, x0: Point, x1: Point) -> SegmentCertificate:
    p = segment_restriction(phi, x0, x1)
    return SegmentCertificate(x0, x1, tuple(p), _unit_root_count(p))


@dataclass(frozen=True)
class PiecewisePath:
    phi: HAffine
    sign: int
    segments: Tuple[SegmentCertificate, ...]

    @property
    def waypoints(self) -> Tuple[Point, ...]:
        return (self.segments[0].start,) + tuple(s.end for s in self.segments)

    def verify(self) -> bool:
        for a, b in zip(self.segments, self.segments[1:]):
            if a.end != b.start:
                return False
        return all(s.check(self.phi, self.sign) for s in self.segments)


def _to_hyp(p: Point) -> Tuple[Vec3, Vec3]:
    sig = (p.omega[2], -p.omega[1], p.omega[0])
    half = Fraction(1, 2)
    return scale3(half, add3(p.theta, sig)), scale3(half, sub3(p.theta, sig))


def _from_hyp(a: Vec3, b: Vec3) -> Point:
    th, sig = add3(a, b), sub3(a, b)
    return Point(th, (sig[2], -sig[1], sig[0]))


def _grow(u: Vec3, r2: Fraction) -> Vec3:
    s = 1
    n = _dot(u, u)
    while s * s * n < r2:
        s *= 2
    return scale3(s, u)


def _orthogonal_to(u: Vec3, toward: Vec3) -> Vec3:
    w = sub3(toward, scale3(_dot(u, toward) / _dot(u, u), u))
    if not is_zero3(w):
        return w
    for k in range(3):
        e = tuple(Fraction(int(i == k)) for i in range(3))
        w = sub3(e, scale3(_dot(u, e) / _dot(u, u), u))
        if not is_zero3(w):
            return w
    raise AssertionError("unreachable for nonzero u")


def _middle_leg(u0: Vec3, u1: Vec3, c: Fraction) -> List[Vec3]:
    """Waypoints from u0 to u1 keeping -|u|^2 < c."""
    if c > 0 or u0 == u1:
        return [u0, u1]
    r2 = 2 * (-c) + 1
    s0, s1 = _grow(u0, r2), _grow(u1, r2)
    if _dot(u0, u1) >= 0:
        return [u0, s0, s1, u1]
    w = _grow(_orthogonal_to(u0, u1), r2)
    return [u0, s0, w, s1, u1]


def _dedupe(points: List[Point]) -> List[Point]:
    out = [points[0]]
    for p in points[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def path_in_component(phi: HAffine, x: Point, y: Point) -> PiecewisePath:
    cx, cy = component_of(phi, x), component_of(phi, y)
    if Component.LEVEL in (cx, cy):
        raise CarnotError("ON_LEVEL_SET", "endpoints must avoid the zero set")
    if cx is not cy:
        raise CarnotError("DIFFERENT_COMPONENTS", "endpoints lie in different components")
    sign = -1 if cx is Component.MINUS else 1
    if x == y:
        return PiecewisePath(phi, sign, (certify_segment(phi, x, x),))
    if phi.is_affine():
        pts = [x, y]
    else:
        T, kappa = normalize(phi)
        # in hyperbolic coordinates phi = |a|^2 - |b|^2 + kappa; write the
        # component as {|v|^2 - |u|^2 < c}
        if sign < 0:
            c = -kappa
            split = lambda p: (lambda a, b: (b, a))(*_to_hyp(T(p)))
            join = lambda u, v: T.inverse(_from_hyp(v, u))
        else:
            c = kappa
            split = lambda p: _to_hyp(T(p))
            join = lambda u, v: T.inverse(_from_hyp(u, v))
        u0, v0 = split(x)
        u1, v1 = split(y)
        mids = _middle_leg(u0, u1, c)
        pts = [x] + [join(u, ZERO3) for u in mids] + [y]
        pts = _dedupe(pts)
    segs = tuple(certify_segment(phi, a, b) for a, b in zip(pts, pts[1:]))
    path = PiecewisePath(phi, sign, segs)
    if not path.verify():
        raise AssertionError("constructed path failed its own certificate")
    return path


# -- zero points on both sides of Sigma ------------------------------------------

def sigma_crossing(phi: HAffine, radius) -> Tuple[Point, Point]:
    """Zero points of phi with theta^omega > 0 and < 0, all coordinates within radius."""
    radius = Q(radius)
    if radius <= 0 or phi.eta3 or (is_zero3(phi.eta1) and is_zero3(phi.eta2)):
        raise CarnotError("NOT_FOUND", "needs eta3 = 0, (eta1, eta2) != 0 and radius > 0")
    a, b = phi.eta2, phi.eta1
    lin_coeffs = (a[2], -a[1], a[0], b[2], -b[1], b[0])  # linear part on the six coordinates
    out = []
    for s in (1, -1):
        # the 3-space sigma(omega) = s*theta, on which theta^omega = s|theta|^2
        ell = (a[2] + s * b[0], -a[1] + s * b[1], a[0] + s * b[2])
        ker = linalg.nullspace([list(ell)] if any(ell) else [], 3)
        th = tuple(ker[0])
        xbar = Point(th, (s * th[2], -s * th[1], s * th[0]))
        if phi.is_affine():
            m = xbar.max_abs()
            z = xbar.scale(min(Fraction(1), radius / m))
        else:
            k = next(i for i in range(6) if lin_coeffs[i])
            dirn = [Fraction(0)] * 6
            # push the linear part to the opposite sign of eta0*q
            dirn[k] = Fraction(-_sgn(phi.eta0) * s * _sgn(lin_coeffs[k]))
            d = Point.from_coords(dirn)
            eps = Fraction(1)
            while True:
                xh = xbar + d.scale(eps)
                qv, lv = q_form(xh), linear_part(phi, xh)
                if _sgn(qv) == s and lv:
                    t = -lv / (phi.eta0 * qv)
                    if t > 0:
                        z = xh.scale(t)
                        if z.max_abs() <= radius:
                            break
                eps /= 2
        assert evaluate(phi, z) == 0 and _sgn(q_form(z)) == s
        out.append(z)
    return out[0], out[1]


# -- witness lines ----------------------------------------------------------------

@dataclass(frozen=True)
class WitnessCertificate:
    """Data for a horizontal line from x (on the zero set, off Sigma) into Sigma.

    gamma(t) = x.(t*direction, 0) with direction = p*xi + q*tau - theta, so that
    gamma(1) is a zero of phi in Sigma.  ``gamma`` is the same line with a
    primitive direction.
    """
    phi: HAffine
    point: Point
    p: Fraction
    q: Fraction
    r: Fraction
    u: Fraction
    v: Fraction
    xi: Vec3
    tau: Vec3

    @property
    def direction(self) -> Vec3:
        return sub3(add3(scale3(self.p, self.xi), scale3(self.q, self.tau)), self.point.theta)

    @property
    def gamma(self) -> HLine:
        return HLine(self.point, self.direction)

    def gamma_at(self, t) -> Point:
        return flow(self.point, self.direction, t)

    def checks(self) -> Dict[str, bool]:
        phi, (th, om) = self.phi, (self.point.theta, self.point.omega)
        phi2 = lambda w: evaluate(phi, Point(ZERO3, w))
        phix = lambda z: evaluate(phi, Point(z, wedge11(th, z)))
        xs = Point(ZERO3, add3(scale3(self.u, wedge11(self.xi, th)),
                               scale3(self.v, wedge11(self.tau, th))))
        g1 = self.gamma_at(1)
        return {
            "on_level_set": evaluate(phi, self.point) == 0,
            "xi_tau": wedge11(self.xi, self.tau) == om,
            "annihilators": wedge12(self.xi, om) == 0 and wedge12(self.tau, om) == 0,
            "condition_1": phix(self.xi) * self.p + phix(self.tau) * self.q == -phi2(om),
            "condition_2": self.r != 1 and -self.r * self.q * self.u + self.r * self.p * self.v == 1 - self.r,
            "condition_3": phi2(wedge11(self.xi, th)) * self.u + phi2(wedge11(self.tau, th)) * self.v == 0,
            "gamma0": self.gamma_at(0) == self.point,
            "gamma1_zero": evaluate(phi, g1) == 0,
            "gamma1_sigma": in_sigma(g1),
            "gamma_r_zero": evaluate(phi, self.gamma_at(self.r)) == 0,
            "gamma_r_sigma_shift": in_sigma(mul(inverse(xs), self.gamma_at(self.r))),
            "shift_zero": evaluate(phi, xs) == 0,
        }

    def verify(self) -> bool:
        return all(self.checks().values())


def in_f1(phi: HAffine, x: Point) -> bool:
    th = x.theta
    a1, a2 = anh(x.omega)[:2]
    return all(evaluate(phi, Point(z, wedge11(th, z))) == 0 for z in (a1, a2, add3(a1, a2)))


def witness_line(phi: HAffine, x: Point) -> WitnessCertificate:
    """Solve the three linear conditions for a witness line through x.

    The construction takes the origin to be on the zero set, so eta3 must vanish.
    """
    if evaluate(phi, x) != 0:
        raise CarnotError("NOT_ON_LEVEL_SET", "phi(x) != 0")
    if in_sigma(x):
        raise CarnotError("IN_SIGMA", "x lies in Sigma")
    if phi.eta3:
        raise CarnotError("ETA3_NONZERO", "witness lines need phi(0) = 0")
    th, om = x.theta, x.omega
    phi2 = lambda w: wedge12(phi.eta1, w)  # = phi(0, w) since eta3 = 0
    phix = lambda z: evaluate(phi, Point(z, wedge11(th, z)))
    a1, a2 = anh(om)
    xi = next((z for z in (a1, a2, add3(a1, a2)) if phix(z) != 0), None)
    if xi is None:
        raise CarnotError("DEGENERATE_F1", "phi(xi, theta^xi) = 0 on Anh(omega)")
    if not is_zero3(phi.eta1) and phi2(om) == 0:
        raise CarnotError("DEGENERATE_F2", "phi_2 != 0 but phi_2(omega) = 0")
    other = a2 if xi == a1 else a1 if xi == a2 else a2
    tau = _complete(xi, other, om)
    A, B, R = phix(xi), phix(tau), -phi2(om)
    al, be = phi2(wedge11(xi, th)), phi2(wedge11(tau, th))
    if al == 0 and be == 0:
        # case 1: any nonzero (p, q) on the condition-1 line, r = 2
        p, q = R / A, Fraction(0)
        if p == 0:
            p, q = -B / A, Fraction(1)
        r = Fraction(2)
        if p != q:
            u = v = (1 - r) / (r * (p - q))
        else:
            u, v = (r - 1) / (r * q), Fraction(0)
    else:
        # case 2: (p, q) on the condition-1 line with delta != 0, r = 1/2
        p, q = R / A, Fraction(0)
        if al * p + be * q == 0:
            p, q = (R - B) / A, Fraction(1)
        delta = al * p + be * q
        r = Fraction(1, 2)
        u = -(1 - r) / (delta * r) * be
        v = (1 - r) / (delta * r) * al
    return WitnessCertificate(phi, x, p, q, r, u, v, xi, tau)


# -- graph coefficients --------------------------------------------------------------

_VERT = {1: "z23", 2: "z13", 3: "z12"}


@dataclass(frozen=True)
class RationalFunction:
    """(num0 + num1*z) / (den0 + den1*z) in one vertical coordinate z."""
    num: Tuple[Fraction, Fraction]
    den: Tuple[Fraction, Fraction]

    def __call__(self, z) -> Fraction:
        z = Q(z)
        d = self.den[0] + self.den[1] * z
        if d == 0:
            raise CarnotError("ZERO_PIVOT_AT_POINT", "denominator vanishes")
        return (self.num[0] + self.num[1] * z) / d


@dataclass(frozen=True)
class GraphCoeffs:
    axis: int
    var: str
    A: Dict[int, RationalFunction]
    B: Dict[int, RationalFunction]
    C: RationalFunction

    def pivot(self, partial: Sequence) -> Fraction:
        """Pivot coordinate from the five others (non-pivot taus ascending, z12, z13, z23)."""
        vals = [Q(v) for v in partial]
        i = self.axis
        others = [k for k in (1, 2, 3) if k != i]
        tau = dict(zip(others, vals[:2]))
        z12, z13, z23 = vals[2:]
        A, B, C = self.A, self.B, self.C
        if i == 1:
            z = z23
            return (A[3](z) * tau[2] - A[2](z) * tau[3] - B[1](z) - B[3](z) * z12
                    + B[2](z) * z13 + C(z) * tau[2] * z13 - C(z) * tau[3] * z12)
        if i == 2:
            z = z13
            return (A[1](z) * tau[3] - A[3](z) * tau[1] - B[2](z) - B[1](z) * z23
                    - B[3](z) * z12 - C(z) * tau[3] * z12 - C(z) * tau[1] * z23)
        z = z12
        return (A[2](z) * tau[1] - A[1](z) * tau[2] - B[3](z) + B[2](z) * z13
                - B[1](z) * z23 - C(z) * tau[1] * z23 + C(z) * tau[2] * z13)


def graph_coefficients(phi: HAffine, axis: int) -> GraphCoeffs:
    """Coefficients of the zero set as a graph tau_axis = f(other coordinates).

    For axis 1 with D = a23 + c*z23:  A2 = a12/D, A3 = a13/D, B1 = (eta3 + b1*z23)/D,
    B2 = b2/D, B3 = b3/D, C = c/D.  Axes 2 and 3 are the relabelled versions.
    """
    a12, a13, a23 = phi.eta2
    b1, b2, b3 = phi.eta1
    c, e, z = phi.eta0, phi.eta3, Fraction(0)
    if axis == 1:
        if not a23:
            raise CarnotError("ZERO_PIVOT", "a23 = 0")
        D = (a23, c)
        A = {2: (a12, z), 3: (a13, z)}
        B = {1: (e, b1), 2: (b2, z), 3: (b3, z)}
    elif axis == 2:
        if not a13:
            raise CarnotError("ZERO_PIVOT", "a13 = 0")
        D = (-a13, -c)
        A = {1: (-a12, z), 3: (a23, z)}
        B = {1: (b1, z), 2: (e, -b2), 3: (b3, z)}
    elif axis == 3:
        if not a12:
            raise CarnotError("ZERO_PIVOT", "a12 = 0")
        D = (a12, c)
        A = {1: (-a13, z), 2: (-a23, z)}
        B = {1: (b1, z), 2: (b2, z), 3: (e, b3)}
    else:
        raise ValueError("axis must be 1, 2 or 3")
    rf = lambda n: RationalFunction(n, D)
    return GraphCoeffs(axis, _VERT[axis], {k: rf(n) for k, n in A.items()},
                       {k: rf(n) for k, n in B.items()}, rf((c, z)))


def _assemble(axis: int, pivot, partial: Sequence) -> Point:
    vals = [Q(v) for v in partial]
    if len(vals) != 5:
        raise ValueError("partial needs 5 coordinates")
    tau = vals[:2]
    tau.insert(axis - 1, Q(pivot))
    return Point(tuple(tau), tuple(vals[2:]))


def graph_solve(phi: HAffine, axis: int, partial: Sequence) -> Point:
    """Complete the pivot coordinate so that phi vanishes (phi is affine in it)."""
    if axis not in (1, 2, 3):
        raise ValueError("axis must be 1, 2 or 3")
    v0 = evaluate(phi, _assemble(axis, 0, partial))
    slope = evaluate(phi, _assemble(axis, 1, partial)) - v0
    if slope == 0:
        raise CarnotError("ZERO_PIVOT_AT_POINT", "pivot coefficient vanishes here")
    return _assemble(axis, -v0 / slope, partial)


# -- quotients ------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientHalfSpace:
    """The open half-space {psi < 0} in quotient coordinates."""
    psi: QuotientFunction

    @property
    def quotient(self) -> Quotient:
        return self.psi.quotient

    def contains(self, p: QuotientPoint) -> bool:
        return self.psi(p) < 0

    def pullback(self) -> AffineFunctional:
        """psi composed with the projection, as an affine functional on R^6."""
        quo, psi = self.psi.quotient, self.psi
        om = []
        for k in range(3):
            red = quo.reduce(tuple(Fraction(int(i == k)) for i in range(3)))
            om.append(_dot(psi.omega_coeffs, red))
        return AffineFunctional(psi.theta_coeffs + tuple(om), psi.offset)


def halfspace_from_quotient(phi: HAffine, kernel: Iterable) -> Optional[QuotientHalfSpace]:
    psi = factor_through(phi, kernel)
    if psi is None:
        return None
    if psi.is_constant():
        raise CarnotError("CONSTANT_QUOTIENT_FUNCTION", "induced function is constant")
    return QuotientHalfSpace(psi)
