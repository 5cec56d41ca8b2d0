"""JSON forms of points, lines, functions, oracles, reports and certificates.

Every rational is written as the string "p/q" (or "p").  Readers reject
unknown keys and floating point numbers.
"""
from __future__ import annotations

import importlib
from fractions import Fraction
from typing import Any, Dict, Iterable, List

from .carnot import HLine, Point
from .classify import (PiecewisePath, QuotientHalfSpace, SegmentCertificate,
                       WitnessCertificate)
from .errors import CarnotError
from .haffine import HAffine
from .monotone import (AffineFunctional, Boundary, ExplicitSampler,
                       GridSampler, Kind, MonotoneReport, RandomSampler,
                       SetOracle)
from .polynomial import Poly6
from .roots import Root


def parse_error(msg: str) -> CarnotError:
    return CarnotError("PARSE", msg)


def rat(x) -> str:
    return str(Fraction(x))


def parse_rat(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise parse_error(f"expected a rational string, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise parse_error(f"not a rational: {v!r}") from None
    raise parse_error(f"expected a rational, got {type(v).__name__}")


def _obj(d, required: Iterable[str] = (), optional: Iterable[str] = (), what="object") -> Dict:
    if not isinstance(d, dict):
        raise parse_error(f"{what} must be a JSON object")
    req, opt = set(required), set(optional)
    extra = set(d) - req - opt
    if extra:
        raise parse_error(f"unknown field(s) in {what}: {', '.join(sorted(extra))}")
    missing = req - set(d)
    if missing:
        raise parse_error(f"missing field(s) in {what}: {', '.join(sorted(missing))}")
    return d


def _vec(v, n=3) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise parse_error(f"expected a list of {n} rationals")
    return tuple(parse_rat(x) for x in v)


def vec_to_json(v) -> List[str]:
    return [rat(x) for x in v]


def point_to_json(x: Point) -> Dict:
    return {"theta": vec_to_json(x.theta), "omega": vec_to_json(x.omega)}


def point_from_json(d) -> Point:
    d = _obj(d, ("theta", "omega"), what="point")
    return Point(_vec(d["theta"]), _vec(d["omega"]))


def line_to_json(l: HLine) -> Dict:
    return {"base": point_to_json(l.base), "dir": vec_to_json(l.dir)}


def line_from_json(d) -> HLine:
    d = _obj(d, ("base", "dir"), what="line")
    try:
        return HLine(point_from_json(d["base"]), _vec(d["dir"]))
    except CarnotError as e:
        raise parse_error(str(e)) from None


def haffine_to_json(phi: HAffine) -> Dict:
    return {"eta0": rat(phi.eta0), "eta1": vec_to_json(phi.eta1),
            "eta2": vec_to_json(phi.eta2), "eta3": rat(phi.eta3)}


def haffine_from_json(d) -> HAffine:
    d = _obj(d, (), ("eta0", "eta1", "eta2", "eta3"), what="h-affine function")
    return HAffine(parse_rat(d.get("eta0", "0")), _vec(d.get("eta1", ["0"] * 3)),
                   _vec(d.get("eta2", ["0"] * 3)), parse_rat(d.get("eta3", "0")))


def poly_to_json(p: Poly6) -> Dict:
    return {"terms": [[list(e), rat(c)] for e, c in p.terms]}


def poly_from_json(d) -> Poly6:
    d = _obj(d, ("terms",), what="polynomial")
    terms = []
    for t in d["terms"]:
        if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], list)
                and all(isinstance(k, int) and not isinstance(k, bool) for k in t[0])):
            raise parse_error("polynomial terms are [[e1..e6], coefficient]")
        terms.append((tuple(t[0]), parse_rat(t[1])))
    try:
        return Poly6.from_terms(terms)
    except ValueError as e:
        raise parse_error(str(e)) from None


def _boundary(v) -> Boundary:
    try:
        b = Boundary(v)
    except ValueError:
        raise parse_error(f"boundary must be 'open' or 'closed', got {v!r}") from None
    if b is Boundary.CALLBACK:
        raise parse_error("callback boundary rules cannot be given in JSON")
    return b


def oracle_to_json(o: SetOracle) -> Dict:
    if o.kind is Kind.HAFFINE_SUBLEVEL:
        return {"kind": o.kind.value, "phi": haffine_to_json(o.payload), "boundary": o.boundary.value}
    if o.kind is Kind.POLY_SUBLEVEL:
        return {"kind": o.kind.value, "poly": poly_to_json(o.payload), "boundary": o.boundary.value}
    if o.kind is Kind.HALF_SPACE:
        return {"kind": o.kind.value, "coeffs": vec_to_json(o.payload.coeffs),
                "offset": rat(o.payload.offset), "boundary": o.boundary.value}
    raise CarnotError("CUSTOM_ORACLE", "custom oracles are not serializable")


def oracle_from_json(d) -> SetOracle:
    if not isinstance(d, dict) or "kind" not in d:
        raise parse_error("oracle needs a 'kind'")
    kind = d["kind"]
    if kind == "haffine_sublevel":
        d = _obj(d, ("kind", "phi"), ("boundary",), what="oracle")
        return SetOracle.haffine_sublevel(haffine_from_json(d["phi"]), _boundary(d.get("boundary", "open")))
    if kind == "poly_sublevel":
        d = _obj(d, ("kind", "poly"), ("boundary",), what="oracle")
        return SetOracle.poly_sublevel(poly_from_json(d["poly"]), _boundary(d.get("boundary", "open")))
    if kind == "half_space":
        d = _obj(d, ("kind", "coeffs"), ("offset", "boundary"), what="oracle")
        f = AffineFunctional(_vec(d["coeffs"], 6), parse_rat(d.get("offset", "0")))
        return SetOracle.half_space(f, _boundary(d.get("boundary", "open")))
    if kind == "custom":
        d = _obj(d, ("kind", "callable"), what="oracle")
        mod, _, attr = str(d["callable"]).partition(":")
        try:
            fn = getattr(importlib.import_module(mod), attr)
        except (ImportError, AttributeError, ValueError):
            raise parse_error(f"cannot import custom membership {d['callable']!r}") from None
        return SetOracle.custom(fn)
    raise parse_error(f"unknown oracle kind {kind!r}")


def sampler_from_json(d):
    if not isinstance(d, dict) or "kind" not in d:
        raise parse_error("sampler needs a 'kind'")
    if d["kind"] == "grid":
        d = _obj(d, ("kind",), ("lo", "hi", "step"), what="grid sampler")
        return GridSampler(parse_rat(d.get("lo", "-2")), parse_rat(d.get("hi", "2")),
                           parse_rat(d.get("step", "1")))
    if d["kind"] == "random":
        d = _obj(d, ("kind",), ("n", "seed", "height", "through_origin"), what="random sampler")
        ints = {k: d[k] for k in ("n", "seed", "height") if k in d}
        for k, v in ints.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise parse_error(f"sampler field {k} must be a nonnegative integer")
        return RandomSampler(ints.get("n", 100), ints.get("seed", 0), ints.get("height", 3),
                             bool(d.get("through_origin", False)))
    if d["kind"] == "lines":
        d = _obj(d, ("kind", "lines"), what="line list sampler")
        return ExplicitSampler(tuple(line_from_json(l) for l in d["lines"]))
    raise parse_error(f"unknown sampler kind {d['kind']!r}")


def sampler_to_json(s) -> Dict:
    if isinstance(s, GridSampler):
        return {"kind": "grid", "lo": rat(s.lo), "hi": rat(s.hi), "step": rat(s.step)}
    if isinstance(s, RandomSampler):
        return {"kind": "random", "n": s.n, "seed": s.seed, "height": s.height,
                "through_origin": s.through_origin}
    return {"kind": "lines", "lines": [line_to_json(l) for l in s.line_list]}


def witness_to_json(w) -> Any:
    if isinstance(w, Root):
        if w.exact is not None:
            return rat(w.exact)
        return {"root_in": [rat(w.lo), rat(w.hi)]}
    return rat(w)


def report_to_json(r: MonotoneReport) -> Dict:
    out = {"verdict": r.verdict.value, "lines_checked": r.lines_checked,
           "certified": r.certified}
    if not r.passed:
        out["witnesses"] = [witness_to_json(w) for w in r.witnesses]
        out["membership"] = ["in" if m else "out" for m in r.membership]
        out["line"] = line_to_json(r.line)
    return out


def witness_cert_to_json(c: WitnessCertificate) -> Dict:
    return {"kind": "witness", "phi": haffine_to_json(c.phi), "point": point_to_json(c.point),
            "p": rat(c.p), "q": rat(c.q), "r": rat(c.r), "u": rat(c.u), "v": rat(c.v),
            "xi": vec_to_json(c.xi), "tau": vec_to_json(c.tau), "gamma": line_to_json(c.gamma)}


def witness_cert_from_json(d) -> WitnessCertificate:
    d = _obj(d, ("kind", "phi", "point", "p", "q", "r", "u", "v", "xi", "tau"), ("gamma",),
             what="witness certificate")
    c = WitnessCertificate(haffine_from_json(d["phi"]), point_from_json(d["point"]),
                           *(parse_rat(d[k]) for k in "pqruv"), _vec(d["xi"]), _vec(d["tau"]))
    if "gamma" in d and line_from_json(d["gamma"]) != c.gamma:
        raise CarnotError("BAD_CERTIFICATE", "stored gamma does not match p, q, xi, tau")
    return c


def path_to_json(p: PiecewisePath) -> Dict:
    return {"kind": "path", "phi": haffine_to_json(p.phi), "sign": p.sign,
            "segments": [{"start": point_to_json(s.start), "end": point_to_json(s.end),
                          "poly": vec_to_json(s.poly) if s.poly else [],
                          "roots_in_unit": s.roots_in_unit} for s in p.segments]}


def path_from_json(d) -> PiecewisePath:
    d = _obj(d, ("kind", "phi", "sign", "segments"), what="path certificate")
    segs = []
    for s in d["segments"]:
        s = _obj(s, ("start", "end", "poly", "roots_in_unit"), what="segment")
        segs.append(SegmentCertificate(point_from_json(s["start"]), point_from_json(s["end"]),
                                       tuple(parse_rat(c) for c in s["poly"]), int(s["roots_in_unit"])))
    if d["sign"] not in (-1, 1) or not segs:
        raise parse_error("path needs sign +-1 and at least one segment")
    return PiecewisePath(haffine_from_json(d["phi"]), d["sign"], tuple(segs))


def halfspace_to_json(h: QuotientHalfSpace) -> Dict:
    quo = h.quotient
    names = ["omega12", "omega13", "omega23"]
    return {"kernel": [vec_to_json(k) for k in quo.kernel],
            "quotient_coordinates": ["theta1", "theta2", "theta3"] + [names[c] for c in quo.free],
            "coefficients": vec_to_json(h.psi.theta_coeffs + h.psi.omega_coeffs),
            "offset": rat(h.psi.offset), "relation": "<"}
