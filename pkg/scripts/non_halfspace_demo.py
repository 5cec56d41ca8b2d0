"""A monotone set that is not a half-space: the sublevel set of theta^omega + theta1.

Prints two zeros whose midpoint is not a zero, a witness line through a zero
off Sigma, and whether the function factors through any coordinate quotient.
"""
from fractions import Fraction

from carnotmono import HAffine, Point, evaluate
from carnotmono.classify import graph_solve, halfspace_from_quotient, in_sigma, witness_line


def main():
    phi = HAffine(eta0=1, eta2=(0, 0, 1))
    a, b = Point((0, 0, 0), (1, 0, 0)), Point((1, 0, 0), (0, 0, -1))
    mid = (a + b).scale(Fraction(1, 2))
    print(f"phi(a) = {evaluate(phi, a)}, phi(b) = {evaluate(phi, b)}, "
          f"phi(midpoint) = {evaluate(phi, mid)}")
    x = graph_solve(phi, 1, (1, 0, 0, 1, 0))
    cert = witness_line(phi, x)
    print(f"zero x = {tuple(map(str, x.coords()))}, in Sigma: {in_sigma(x)}")
    print(f"witness line direction {tuple(map(str, cert.direction))}, r = {cert.r}, "
          f"verified: {cert.verify()}")
    for k in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        print(f"kernel {k}: factors = {halfspace_from_quotient(phi, [k]) is not None}")


if __name__ == "__main__":
    main()
