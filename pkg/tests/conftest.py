import random
from fractions import Fraction

from hypothesis import strategies as st

from carnotmono.carnot import HLine, Point
from carnotmono.haffine import HAffine

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_rats = st.fractions(min_value=-4, max_value=4, max_denominator=6)
vec3s = st.tuples(rats, rats, rats)
nonzero_vec3s = vec3s.filter(any)
points = st.builds(Point, vec3s, vec3s)
haffines = st.builds(HAffine, rats, vec3s, vec3s, rats)
nonconstant_haffines = haffines.filter(lambda p: not p.is_constant())
lines = st.builds(HLine, points, nonzero_vec3s)


def rand_rat(rng: random.Random, h: int = 100) -> Fraction:
    return Fraction(rng.randint(-h, h), rng.randint(1, h))


def rand_vec(rng, h=100, nonzero=False):
    while True:
        v = tuple(rand_rat(rng, h) for _ in range(3))
        if any(v) or not nonzero:
            return v


def rand_point(rng, h=100) -> Point:
    return Point(rand_vec(rng, h), rand_vec(rng, h))


def rand_haffine(rng, h=100, **fixed) -> HAffine:
    kw = dict(eta0=rand_rat(rng, h), eta1=rand_vec(rng, h), eta2=rand_vec(rng, h),
              eta3=rand_rat(rng, h))
    kw.update(fixed)
    return HAffine(**kw)


def rand_line(rng, h=100) -> HLine:
    return HLine(rand_point(rng, h), rand_vec(rng, h, nonzero=True))
