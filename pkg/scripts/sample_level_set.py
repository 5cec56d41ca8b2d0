"""Write a CSV of zero-set points of an h-affine function and re-check each row exactly.

usage: python3 scripts/sample_level_set.py SCENE.json [--grid 5] [--out samples.csv]
"""
import argparse
import csv
import io
import sys

from carnotmono import serialize as S
from carnotmono.cli import load_scene, main as cli_main
from carnotmono.haffine import evaluate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("scene")
    ap.add_argument("--grid", type=int, default=5)
    ap.add_argument("--out", default="samples.csv")
    args = ap.parse_args()
    code = cli_main(["sample", "--scene", args.scene, "--grid", str(args.grid), "--floats",
                     "--out", args.out])
    if code:
        return code
    phi = load_scene(args.scene).phi
    with open(args.out) as fh:
        body = [l for l in fh if not l.startswith("#")]
    bad = 0
    rows = list(csv.DictReader(io.StringIO("".join(body))))
    for r in rows:
        x = S.point_from_json({"theta": [r["tau1"], r["tau2"], r["tau3"]],
                               "omega": [r["z12"], r["z13"], r["z23"]]})
        bad += evaluate(phi, x) != 0
    print(f"{len(rows)} rows written to {args.out}; {bad} fail exact re-evaluation", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
