"""Exhaustively check {theta^omega < 0} on every horizontal line of an integer grid.

usage: python3 scripts/grid_bruteforce.py [--half 2] [--workers 1]
"""
import argparse
import time

from carnotmono import HAffine
from carnotmono.monotone import GridSampler, SetOracle, check_monotone_batch


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--half", type=int, default=2, help="grid is [-half, half]^6")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    sampler = GridSampler(-args.half, args.half, 1)
    t0 = time.perf_counter()
    pairs = sum(1 for _ in sampler.aligned_pairs())
    oracle = SetOracle.haffine_sublevel(HAffine(eta0=1))
    report = check_monotone_batch(oracle, sampler, workers=args.workers)
    print(f"aligned pairs: {pairs}")
    print(f"distinct lines: {report.lines_checked}")
    print(f"verdict: {report.verdict.value} ({time.perf_counter() - t0:.1f} s)")
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
