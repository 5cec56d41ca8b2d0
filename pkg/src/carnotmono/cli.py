"""Command line front end.

    carnotmono eval       --scene S --point P
    carnotmono check      --scene S [--seed N] [--grid n] [--out F]
    carnotmono classify   --scene S --points F [--out F]
    carnotmono sample     --scene S [--grid n] [--out F] [--floats]
    carnotmono verify-cert CERT

Exit codes: 0 verified PASS, 1 verified VIOLATION or negative result,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from . import serialize as S
from .carnot import Point
from .classify import (component_of, graph_solve, halfspace_from_quotient,
                       in_sigma, witness_line)
from .errors import CarnotError
from .haffine import HAffine, evaluate, is_characteristic
from .monotone import (GridSampler, RandomSampler, SetOracle,
                       check_monotone_batch)

SCENE_FIELDS = ("phi", "oracle", "kernel", "sampler", "certify", "axis", "outputs")


@dataclass
class Scene:
    phi: HAffine
    oracle: Optional[SetOracle] = None
    kernel: Optional[Tuple] = None
    sampler: object = None
    certify: bool = True
    axis: int = 1
    outputs: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_json(cls, d) -> "Scene":
        d = S._obj(d, ("phi",), SCENE_FIELDS[1:], what="scene")
        phi = S.haffine_from_json(d["phi"])
        oracle = S.oracle_from_json(d["oracle"]) if "oracle" in d else None
        kernel = None
        if "kernel" in d:
            if not isinstance(d["kernel"], list):
                raise S.parse_error("kernel must be a list of 2-forms")
            kernel = tuple(S._vec(k) for k in d["kernel"])
        sampler = S.sampler_from_json(d["sampler"]) if "sampler" in d else None
        certify = d.get("certify", True)
        axis = d.get("axis", 1)
        if not isinstance(certify, bool) or axis not in (1, 2, 3):
            raise S.parse_error("certify must be a boolean and axis one of 1, 2, 3")
        outputs = d.get("outputs", {})
        if not isinstance(outputs, dict) or not all(isinstance(v, str) for v in outputs.values()):
            raise S.parse_error("outputs maps names to paths")
        return cls(phi, oracle, kernel, sampler, certify, axis, dict(outputs))

    def to_json(self) -> Dict:
        d = {"phi": S.haffine_to_json(self.phi), "certify": self.certify, "axis": self.axis}
        if self.oracle is not None:
            d["oracle"] = S.oracle_to_json(self.oracle)
        if self.kernel is not None:
            d["kernel"] = [S.vec_to_json(k) for k in self.kernel]
        if self.sampler is not None:
            d["sampler"] = S.sampler_to_json(self.sampler)
        if self.outputs:
            d["outputs"] = dict(self.outputs)
        return d


class UsageError(Exception):
    pass


def _load_json(path_or_text: str):
    try:
        if path_or_text.lstrip().startswith(("{", "[")):
            return json.loads(path_or_text)
        with open(path_or_text) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise S.parse_error(f"malformed JSON: {e}") from None
    except OSError as e:
        raise UsageError(f"cannot read {path_or_text}: {e.strerror}") from None


def load_scene(path: str) -> Scene:
    return Scene.from_json(_load_json(path))


def write_atomic(path: Optional[str], text: str):
    if not path:
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_eval(args) -> int:
    scene = load_scene(args.scene)
    x = S.point_from_json(_load_json(args.point))
    write_atomic(args.out, S.rat(evaluate(scene.phi, x)) + "\n")
    return 0


def cmd_check(args) -> int:
    scene = load_scene(args.scene)
    oracle = scene.oracle or SetOracle.haffine_sublevel(scene.phi)
    sampler = scene.sampler or GridSampler()
    if args.grid is not None:
        sampler = GridSampler.centered(args.grid)
    if args.seed is not None:
        if not isinstance(sampler, RandomSampler):
            sampler = RandomSampler()
        sampler = replace(sampler, seed=args.seed)
    if not oracle.algebraic and scene.certify:
        raise UsageError("custom oracles cannot be certified; set \"certify\": false for a sampled check")
    report = check_monotone_batch(oracle, sampler, certify=scene.certify, workers=args.workers)
    write_atomic(args.out or scene.outputs.get("report"), _dump(S.report_to_json(report)))
    return 0 if report.passed else 1


def classify_point(phi: HAffine, x: Point) -> Dict:
    comp = component_of(phi, x)
    entry = {"point": S.point_to_json(x), "component": comp.value}
    if comp.value == "LEVEL":
        entry["characteristic"] = is_characteristic(phi, x)
        entry["in_sigma"] = in_sigma(x)
        try:
            entry["witness"] = S.witness_cert_to_json(witness_line(phi, x))
        except CarnotError as e:
            entry["witness_error"] = e.code
    return entry


def cmd_classify(args) -> int:
    scene = load_scene(args.scene)
    if scene.phi.is_constant():
        raise CarnotError("CONSTANT_INPUT", "phi is constant")
    pts = []
    if args.points:
        data = _load_json(args.points)
        if not isinstance(data, list):
            raise S.parse_error("points file must hold a JSON list of points")
        pts = [S.point_from_json(p) for p in data]
    out: Dict = {"phi": S.haffine_to_json(scene.phi),
                 "points": [classify_point(scene.phi, x) for x in pts]}
    if scene.kernel is not None:
        h = halfspace_from_quotient(scene.phi, scene.kernel)
        if h is None:
            out["does_not_factor"] = True
        else:
            out["halfspace"] = S.halfspace_to_json(h)
    write_atomic(args.out or scene.outputs.get("classify"), _dump(out))
    return 0


def cmd_sample(args) -> int:
    import itertools
    scene = load_scene(args.scene)
    vals = GridSampler.centered(args.grid if args.grid is not None else 5).values()
    axis = scene.axis
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["tau1", "tau2", "tau3", "z12", "z13", "z23", "phi"]
    if args.floats:
        header += [h + "_float" for h in header[:6]]
    w.writerow(header)
    skipped = rows = 0
    for partial in itertools.product(vals, repeat=5):
        try:
            x = graph_solve(scene.phi, axis, partial)
        except CarnotError as e:
            if e.code != "ZERO_PIVOT_AT_POINT":
                raise
            skipped += 1
            continue
        c = x.coords()
        row = [S.rat(v) for v in c] + [S.rat(evaluate(scene.phi, x))]
        if args.floats:
            row += [repr(float(v)) for v in c]
        w.writerow(row)
        rows += 1
    buf.write(f"# rows {rows}; skipped {skipped} (pivot denominator zero)\n")
    if args.floats:
        buf.write("# *_float columns are lossy decimal approximations\n")
    write_atomic(args.out or scene.outputs.get("samples"), buf.getvalue())
    return 0


def _verify_one(d) -> bool:
    kind = d.get("kind") if isinstance(d, dict) else None
    if kind == "witness":
        return S.witness_cert_from_json(d).verify()
    if kind == "path":
        return S.path_from_json(d).verify()
    raise S.parse_error("certificate kind must be 'witness' or 'path'")


def cmd_verify_cert(args) -> int:
    data = _load_json(args.cert)
    if isinstance(data, dict) and "points" in data:
        certs = [p["witness"] for p in data["points"] if "witness" in p]
    elif isinstance(data, list):
        certs = data
    else:
        certs = [data]
    results = []
    for c in certs:
        try:
            results.append(_verify_one(c))
        except CarnotError as e:
            if e.code == "PARSE":
                raise
            results.append(False)
    ok = all(results)
    write_atomic(args.out, _dump({"verified": ok, "count": len(results),
                                  "failed": [i for i, r in enumerate(results) if not r]}))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="carnotmono", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate phi at a point")
    e.add_argument("--scene", required=True)
    e.add_argument("--point", required=True, help="point JSON, inline or a file path")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", help="verify monotonicity along sampled horizontal lines")
    c.add_argument("--scene", required=True)
    c.add_argument("--seed", type=int)
    c.add_argument("--grid", type=int, help="use the centered grid with n values per axis")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("classify", help="classify points and extract quotient half-spaces")
    k.add_argument("--scene", required=True)
    k.add_argument("--points")
    k.add_argument("--out")
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("sample", help="sample the zero set as a graph over five coordinates")
    s.add_argument("--scene", required=True)
    s.add_argument("--grid", type=int, help="values per coordinate (default 5)")
    s.add_argument("--floats", action="store_true", help="add lossy decimal columns")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify-cert", help="re-verify witness or path certificates")
    v.add_argument("cert")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_cert)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CarnotError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
