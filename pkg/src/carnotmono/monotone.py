"""Checking precise monotonicity along horizontal lines.

A set E is precisely monotone when every horizontal line meets E and its
complement in connected sets.  For algebraic oracles the payload is composed
with the line symbolically, its real roots are isolated exactly, and the
membership of each cell (open interval or root) is read off from the sign and
the boundary rule.  Both memberships must form at most two runs.
"""
from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from .carnot import HLine, Point, flow, line_point, line_through
from .errors import CarnotError
from .haffine import HAffine, evaluate, restrict_to_line
from .multivec import Q, Vec3, is_zero3, vec3, wedge11
from .polynomial import Poly6
from .roots import (Poly, Root, isolate_real_roots, peval, simplest_between,
                    squarefree, trim)


class Kind(Enum):
    HAFFINE_SUBLEVEL = "haffine_sublevel"
    POLY_SUBLEVEL = "poly_sublevel"
    HALF_SPACE = "half_space"
    CUSTOM = "custom"


class Boundary(Enum):
    OPEN = "open"
    CLOSED = "closed"
    CALLBACK = "callback"


@dataclass(frozen=True)
class AffineFunctional:
    """x -> coeffs . coords(x) + offset on R^6."""
    coeffs: Tuple[Fraction, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        c = tuple(Q(v) for v in self.coeffs)
        if len(c) != 6:
            raise ValueError("affine functional needs 6 coefficients")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "offset", Q(self.offset))

    def __call__(self, x: Point) -> Fraction:
        return self.offset + sum((a * b for a, b in zip(self.coeffs, x.coords())), Fraction(0))


@dataclass(frozen=True)
class BoundaryLocus:
    """What a CALLBACK boundary rule is asked about.

    ``point`` is the exact boundary point when it is rational.  For an
    irrational root only ``line`` and ``root`` are set; when a whole line lies
    in the zero set, ``root`` is None and the answer applies to the line.
    """
    point: Optional[Point]
    line: Optional[HLine] = None
    root: Optional[Root] = None


@dataclass(frozen=True)
class SetOracle:
    kind: Kind
    payload: object
    boundary: Boundary = Boundary.OPEN
    callback: Optional[Callable[[BoundaryLocus], bool]] = field(default=None, compare=False)

    @classmethod
    def haffine_sublevel(cls, phi: HAffine, boundary=Boundary.OPEN, callback=None):
        return cls(Kind.HAFFINE_SUBLEVEL, phi, Boundary(boundary), callback)

    @classmethod
    def poly_sublevel(cls, poly: Poly6, boundary=Boundary.OPEN, callback=None):
        return cls(Kind.POLY_SUBLEVEL, poly, Boundary(boundary), callback)

    @classmethod
    def half_space(cls, f: AffineFunctional, boundary=Boundary.OPEN, callback=None):
        return cls(Kind.HALF_SPACE, f, Boundary(boundary), callback)

    @classmethod
    def custom(cls, member: Callable[[Point], bool]):
        return cls(Kind.CUSTOM, member, Boundary.OPEN)

    @property
    def algebraic(self) -> bool:
        return self.kind is not Kind.CUSTOM

    def value(self, x: Point) -> Fraction:
        if self.kind is Kind.HAFFINE_SUBLEVEL:
            return evaluate(self.payload, x)
        if self.kind is Kind.POLY_SUBLEVEL:
            return self.payload(x.coords())
        if self.kind is Kind.HALF_SPACE:
            return self.payload(x)
        raise CarnotError("CUSTOM_ORACLE", "custom oracles have no payload")

    def restriction(self, l: HLine) -> Poly:
        if self.kind is Kind.HAFFINE_SUBLEVEL:
            return trim(restrict_to_line(self.payload, l))
        if self.kind is Kind.POLY_SUBLEVEL:
            return self.payload.compose_affine(l.base.coords(), l.direction_vector())
        if self.kind is Kind.HALF_SPACE:
            f = self.payload
            slope = sum((a * b for a, b in zip(f.coeffs, l.direction_vector())), Fraction(0))
            return trim([f(l.base), slope])
        raise CarnotError("CUSTOM_ORACLE", "tracing requires an algebraic payload")

    def _on_boundary(self, locus: BoundaryLocus) -> bool:
        if self.boundary is Boundary.OPEN:
            return False
        if self.boundary is Boundary.CLOSED:
            return True
        if self.callback is None:
            raise CarnotError("NO_CALLBACK", "boundary rule CALLBACK needs a callback")
        return bool(self.callback(locus))

    def contains(self, x: Point, line: Optional[HLine] = None) -> bool:
        if self.kind is Kind.CUSTOM:
            return bool(self.payload(x))
        v = self.value(x)
        if v:
            return v < 0
        return self._on_boundary(BoundaryLocus(x, line))


@dataclass(frozen=True)
class SignPattern:
    """Roots of the restriction in increasing order and the sign on every cell.

    Cells alternate interval, root, interval, ...; ``samples`` holds a rational
    point of each open interval.
    """
    poly: Tuple[Fraction, ...]
    roots: Tuple[Root, ...]
    signs: Tuple[int, ...]
    samples: Tuple[Fraction, ...]

    def cells(self) -> List[Union[Fraction, Root]]:
        out: List[Union[Fraction, Root]] = []
        for i, s in enumerate(self.samples):
            out.append(s)
            if i < len(self.roots):
                out.append(self.roots[i])
        return out


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _root_anchor(r: Root, side: int) -> Fraction:
    if r.exact is not None:
        return r.exact
    return r.lo if side < 0 else r.hi


def sign_pattern(p: Sequence[Fraction]) -> SignPattern:
    p = trim(p)
    roots = isolate_real_roots(p)
    if not roots:
        return SignPattern(tuple(p), (), (_sgn(p[0]) if p else 0,), (Fraction(0),))
    left, right = _root_anchor(roots[0], -1), _root_anchor(roots[-1], +1)
    samples = [Fraction(math.floor(left) - 1)]
    for a, b in zip(roots, roots[1:]):
        samples.append(simplest_between(_root_anchor(a, +1), _root_anchor(b, -1))
                       if a.exact is not None or b.exact is not None or a.hi < b.lo
                       else a.hi)
    samples.append(Fraction(math.ceil(right) + 1))
    signs: List[int] = []
    for i, s in enumerate(samples):
        signs.append(_sgn(peval(p, s)))
        if i < len(roots):
            signs.append(0)
    return SignPattern(tuple(p), tuple(roots), tuple(signs), tuple(samples))


def line_trace(oracle: SetOracle, l: HLine) -> SignPattern:
    if not oracle.algebraic:
        raise CarnotError("CUSTOM_ORACLE", "tracing requires an algebraic payload")
    return sign_pattern(oracle.restriction(l))


class Verdict(Enum):
    PASS = "PASS"
    VIOLATION = "VIOLATION"


Witness = Union[Fraction, Root]


@dataclass(frozen=True)
class MonotoneReport:
    verdict: Verdict
    witnesses: Tuple[Witness, ...] = ()
    membership: Tuple[bool, ...] = ()
    lines_checked: int = 0
    line: Optional[HLine] = None
    certified: bool = True

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def _cell_membership(oracle: SetOracle, l: HLine, pat: SignPattern) -> List[bool]:
    out = []
    cells = pat.cells()
    for i, c in enumerate(cells):
        s = pat.signs[i]
        if s:
            out.append(s < 0)
        elif isinstance(c, Root):
            pt = line_point(l, c.exact) if c.exact is not None else None
            out.append(oracle._on_boundary(BoundaryLocus(pt, l, c)))
        else:
            # restriction identically zero: the whole line is boundary
            out.append(oracle._on_boundary(BoundaryLocus(None, l, None)))
    return out


def _pick(cells, idx: List[int]) -> Witness:
    # prefer open-interval samples, then rational roots, then isolating intervals
    for want in (Fraction, "exact"):
        for i in idx:
            c = cells[i]
            if want is Fraction and isinstance(c, Fraction):
                return c
            if want == "exact" and isinstance(c, Root) and c.exact is not None:
                return c.exact
    return cells[idx[0]]


def _runs(members: Sequence[bool]) -> List[List[int]]:
    runs: List[List[int]] = []
    for i, m in enumerate(members):
        if runs and members[runs[-1][0]] == m:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def check_line_monotone(oracle: SetOracle, l: HLine) -> MonotoneReport:
    pat = line_trace(oracle, l)
    members = _cell_membership(oracle, l, pat)
    runs = _runs(members)
    if len(runs) <= 2:
        return MonotoneReport(Verdict.PASS, lines_checked=1)
    cells = pat.cells()
    wit = tuple(_pick(cells, r) for r in runs[:3])
    mem = tuple(members[r[0]] for r in runs[:3])
    return MonotoneReport(Verdict.VIOLATION, wit, mem, 1, l)


def membership_at(oracle: SetOracle, l: HLine, w: Witness) -> bool:
    """Re-evaluate membership at a witness parameter (rational or isolated root)."""
    if not isinstance(w, Root):
        return oracle.contains(line_point(l, w), l)
    p = oracle.restriction(l)
    if w.exact is not None:
        ok = peval(p, w.exact) == 0
    else:
        sf = squarefree(p)
        ok = _sgn(peval(sf, w.lo)) * _sgn(peval(sf, w.hi)) < 0
    if not ok:
        raise CarnotError("BAD_WITNESS", "witness is not a root of the restriction")
    pt = line_point(l, w.exact) if w.exact is not None else None
    return oracle._on_boundary(BoundaryLocus(pt, l, w))


def verify_report(oracle: SetOracle, report: MonotoneReport) -> bool:
    """A VIOLATION report is valid when its witnesses reproduce an in/out/in pattern."""
    if report.passed:
        return True
    if report.line is None or len(report.witnesses) != 3:
        return False
    ts = [w.lo if isinstance(w, Root) else w for w in report.witnesses]
    his = [w.hi if isinstance(w, Root) else w for w in report.witnesses]
    if not (his[0] <= ts[1] and his[1] <= ts[2]):
        return False
    m = [membership_at(oracle, report.line, w) for w in report.witnesses]
    return m[0] == m[2] != m[1]


# -- sampled checking for black-box oracles -------------------------------

def default_ladder(span: int = 8, density: int = 4) -> Tuple[Fraction, ...]:
    return tuple(Fraction(k, density) for k in range(-span * density, span * density + 1))


def check_line_sampled(oracle: SetOracle, l: HLine, ladder: Sequence = None) -> MonotoneReport:
    """Probe membership on a fixed rational ladder. Not a proof of anything."""
    ts = sorted(Q(t) for t in (ladder if ladder is not None else default_ladder()))
    members = [oracle.contains(line_point(l, t), l) for t in ts]
    runs = _runs(members)
    if len(runs) <= 2:
        return MonotoneReport(Verdict.PASS, lines_checked=1, certified=False)
    wit = tuple(ts[r[0]] for r in runs[:3])
    mem = tuple(members[r[0]] for r in runs[:3])
    return MonotoneReport(Verdict.VIOLATION, wit, mem, 1, l, certified=False)


# -- line enumeration -------------------------------------------------------

def _num(x: Fraction):
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class GridSampler:
    """All horizontal lines through two aligned points of {lo, lo+step, ..., hi}^6."""
    lo: Fraction = Fraction(-2)
    hi: Fraction = Fraction(2)
    step: Fraction = Fraction(1)

    def __post_init__(self):
        for f in ("lo", "hi", "step"):
            object.__setattr__(self, f, Q(getattr(self, f)))
        if self.step <= 0 or self.hi < self.lo:
            raise ValueError("grid needs step > 0 and lo <= hi")

    @classmethod
    def centered(cls, n: int) -> "GridSampler":
        """n evenly spaced values with unit step, symmetric about 0."""
        if n < 1:
            raise ValueError("grid size must be positive")
        return cls(Fraction(-(n - 1), 2), Fraction(n - 1, 2), Fraction(1))

    def values(self) -> List:
        n = int((self.hi - self.lo) / self.step)
        return [_num(self.lo + k * self.step) for k in range(n + 1)]

    def aligned_pairs(self) -> Iterator[Tuple[Point, Point]]:
        """Pairs x < z (lexicographic in coordinates) with z on a horizontal line through x."""
        vals = self.values()
        vset = set(vals)
        thetas = list(itertools.product(vals, repeat=3))
        for tx in thetas:
            for ox in itertools.product(vals, repeat=3):
                x = tx + ox
                for tz in thetas:
                    if tz < tx:
                        continue
                    if tz == tx:
                        continue  # vertical displacement is never horizontal
                    w = wedge11(tx, tz)
                    oz = (ox[0] + w[0], ox[1] + w[1], ox[2] + w[2])
                    if oz[0] in vset and oz[1] in vset and oz[2] in vset:
                        yield Point(tx, ox), Point(tz, oz)

    def lines(self) -> Iterator[HLine]:
        seen = set()
        for x, z in self.aligned_pairs():
            l = line_through(x, z)
            k = l.key()
            if k not in seen:
                seen.add(k)
                yield l


@dataclass(frozen=True)
class RandomSampler:
    """n random lines with bounded-height rational data."""
    n: int = 100
    seed: int = 0
    height: int = 3
    through_origin: bool = False

    def _rat(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.height, self.height), rng.randint(1, self.height))

    def lines(self) -> Iterator[HLine]:
        rng = random.Random(self.seed)
        for _ in range(self.n):
            if self.through_origin:
                base = Point()
            else:
                base = Point(tuple(self._rat(rng) for _ in range(3)),
                             tuple(self._rat(rng) for _ in range(3)))
            while True:
                d = tuple(rng.randint(-self.height, self.height) for _ in range(3))
                if any(d):
                    break
            yield HLine(base, d)


@dataclass(frozen=True)
class ExplicitSampler:
    line_list: Tuple[HLine, ...]

    def lines(self) -> Iterator[HLine]:
        return iter(self.line_list)


def _check_chunk(args):
    oracle, lines = args
    for i, l in enumerate(lines):
        r = check_line_monotone(oracle, l)
        if not r.passed:
            return i, r
    return len(lines), None


def _chunks(it, size):
    it = iter(it)
    while True:
        c = list(itertools.islice(it, size))
        if not c:
            return
        yield c


def check_monotone_batch(oracle: SetOracle, sampler, certify: bool = True,
                         ladder: Sequence = None, workers: int = 1,
                         chunk: int = 2000) -> MonotoneReport:
    """Check every line of the sampler; report the first violation in enumeration order."""
    if not oracle.algebraic:
        if certify:
            raise CarnotError("CUSTOM_ORACLE", "custom oracles cannot be certified")
        n = 0
        for l in sampler.lines():
            n += 1
            r = check_line_sampled(oracle, l, ladder)
            if not r.passed:
                return MonotoneReport(r.verdict, r.witnesses, r.membership, n, l, False)
        return MonotoneReport(Verdict.PASS, lines_checked=n, certified=False)

    n = 0
    if workers <= 1 or oracle.callback is not None:
        for l in sampler.lines():
            n += 1
            r = check_line_monotone(oracle, l)
            if not r.passed:
                return MonotoneReport(r.verdict, r.witnesses, r.membership, n, l)
        return MonotoneReport(Verdict.PASS, lines_checked=n)

    with ProcessPoolExecutor(max_workers=workers) as ex:
        # map preserves submission order, so the first reported violation is
        # the first in enumeration order
        jobs = ((oracle, c) for c in _chunks(sampler.lines(), chunk))
        for (i, r) in ex.map(_check_chunk, jobs):
            if r is None:
                n += i
                continue
            n += i + 1
            return MonotoneReport(r.verdict, r.witnesses, r.membership, n, r.line)
    return MonotoneReport(Verdict.PASS, lines_checked=n)


# -- exact checks of the single-line constructions ---------------------------

def verify_linee(oracle: SetOracle, l: HLine, t1, t2, probes: Sequence) -> bool:
    """Two boundary points on a line force the whole line into the zero set."""
    t1, t2 = Q(t1), Q(t2)
    if t1 == t2:
        raise CarnotError("PRECONDITION_FAILED", "t1 == t2")
    if oracle.value(line_point(l, t1)) != 0 or oracle.value(line_point(l, t2)) != 0:
        raise CarnotError("PRECONDITION_FAILED", "both parameters must lie on the boundary")
    return all(oracle.value(line_point(l, Q(t))) == 0 for t in probes)


def verify_tretre(oracle: SetOracle, x: Point, y, probes: Sequence) -> bool:
    """From a boundary point, a horizontal ray entering the interior stays inside,
    and the opposite ray stays strictly outside."""
    y = vec3(y)
    if is_zero3(y):
        raise CarnotError("PRECONDITION_FAILED", "y must be nonzero")
    if oracle.value(x) != 0:
        raise CarnotError("PRECONDITION_FAILED", "x is not on the boundary")
    if not oracle.value(flow(x, y, 1)) < 0:
        raise CarnotError("PRECONDITION_FAILED", "x.y is not in the interior")
    for t in probes:
        t = Q(t)
        if t <= 0:
            raise CarnotError("PRECONDITION_FAILED", "probes must be positive")
        if not (oracle.value(flow(x, y, t)) < 0 and oracle.value(flow(x, y, -t)) > 0):
            return False
    return True
