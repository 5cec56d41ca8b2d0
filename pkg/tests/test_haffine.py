import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from carnotmono.carnot import HLine, Point, horizontal, line_point, mul
from carnotmono.classify import graph_solve
from carnotmono.errors import CarnotError
from carnotmono.haffine import (HAffine, differential, evaluate,
                                factor_through, hor_levelset_subspace,
                                is_characteristic, normalize, proportional,
                                q_form, restrict_to_line)
from carnotmono.multivec import wedge11

from conftest import (haffines, lines, nonconstant_haffines, points,
                      rand_haffine, rand_line, rand_point, rand_rat, rand_vec,
                      rats, vec3s)

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
Z = (0, 0, 0)
Q0 = HAffine(eta0=1)


def test_eval_examples():
    assert evaluate(Q0, Point(E1, E3)) == 1
    assert evaluate(Q0, Point(E1, E1)) == 0
    assert evaluate(HAffine(eta3=5), Point((1, 2, 3), (4, 5, 6))) == 5
    assert HAffine(eta2=E3)(Point((7, 1, 1))) == 7


def test_restrict_examples():
    assert restrict_to_line(Q0, HLine(Point(Z, E3), E1)) == (0, 1)
    assert restrict_to_line(Q0, HLine(Point(), E1)) == (0, 0)


@given(haffines, lines, rats)
def test_restriction_matches_eval(phi, l, t):
    a, b = restrict_to_line(phi, l)
    assert evaluate(phi, line_point(l, t)) == a + b * t
    assert evaluate(phi, line_point(l, 3)) == a + 3 * b


def test_haffinity_bulk():
    rng = random.Random(5)
    for _ in range(10_000):
        phi, l = rand_haffine(rng), rand_line(rng)
        v = [evaluate(phi, line_point(l, t)) for t in (-1, 0, 1, 2)]
        assert v[0] - 2 * v[1] + v[2] == 0 and v[1] - 2 * v[2] + v[3] == 0
        a, b = restrict_to_line(phi, l)
        assert v[1] == a and v[2] == a + b


def test_differential_examples():
    d = differential(Q0, Point(E1, E3))
    assert d.dtheta == E3 and d.domega == E1
    phi = HAffine(0, (1, 2, 3), (4, 5, 6), 7)
    d = differential(phi, Point((9, 9, 9), (1, 1, 1)))
    assert d.dtheta == (4, 5, 6) and d.domega == (1, 2, 3)


@given(haffines, points, points)
def test_differential_symmetric_difference(phi, x, h):
    assert evaluate(phi, x + h) - evaluate(phi, x - h) == 2 * differential(phi, x)(h)


def test_is_characteristic_examples():
    assert is_characteristic(Q0, Point(E1))
    assert not is_characteristic(Q0, Point(E1, E1))
    phi = HAffine(eta2=E3)
    assert not is_characteristic(phi, Point((0, 4, -1), (3, 3, 3)))
    with pytest.raises(CarnotError) as ei:
        is_characteristic(Q0, Point(E3, E1))
    assert ei.value.code == "NOT_ON_LEVEL_SET"


def _zero_point(phi, rng):
    """A zero of phi via the graph over whichever axis has a usable pivot."""
    for axis in (1, 2, 3):
        try:
            return graph_solve(phi, axis, [rand_rat(rng, 9) for _ in range(5)])
        except CarnotError:
            continue
    return None


def test_characteristic_brute_force():
    rng = random.Random(8)
    seen = {True: 0, False: 0}
    for k in range(400):
        phi = rand_haffine(rng, 9)
        x = _zero_point(phi, rng)
        if x is None:
            continue
        if k % 4 == 0:
            # force a characteristic point: shift the level so that the
            # degenerate point (-eta1/eta0, -eta2/eta0) lies on it
            if not phi.eta0:
                continue
            c = Point(tuple(-v / phi.eta0 for v in phi.eta1), tuple(-v / phi.eta0 for v in phi.eta2))
            phi = phi.shifted(-evaluate(phi, c))
            x = c
        taus = [E1, E2, E3] + [rand_vec(rng, 9) for _ in range(10)]
        brute = all(evaluate(phi, mul(x, horizontal(t))) == 0 for t in taus)
        assert is_characteristic(phi, x) == brute
        seen[brute] += 1
    assert seen[True] > 10 and seen[False] > 100


def test_hor_levelset_examples():
    h = hor_levelset_subspace(Q0, Point(E1, E1))
    assert h.dim == 2
    assert h.contains(mul(Point(E1, E1), horizontal(E2)))
    assert not h.contains(mul(Point(E1, E1), horizontal(E3)))
    from carnotmono.carnot import hor_space
    x = Point(E1)
    assert hor_levelset_subspace(Q0, x).same_as(hor_space(x))


@settings(max_examples=150)
@given(nonconstant_haffines, st.lists(rats, min_size=5, max_size=5), rats, rats, rats)
def test_hor_levelset_points_on_level(phi, partial, a, b, c):
    try:
        x = graph_solve(phi, 1, partial)
    except CarnotError:
        return
    h = hor_levelset_subspace(phi, x)
    assert h.dim == (3 if is_characteristic(phi, x) else 2)
    assert evaluate(phi, h.point((a, b, c)[: h.dim])) == 0


def test_proportional_examples():
    phi = HAffine(1, (1, 2, 3), (0, 1, 0), 4)
    assert proportional(phi, phi.scaled(3)) == 3
    assert proportional(phi, phi.shifted(1)) is None
    assert proportional(HAffine(eta2=E3), HAffine(eta2=E1)) is None
    with pytest.raises(CarnotError) as ei:
        proportional(HAffine(eta3=2), phi)
    assert ei.value.code == "CONSTANT_INPUT"


def test_proportional_level_sets():
    rng = random.Random(21)
    for _ in range(60):
        phi = rand_haffine(rng, 9, eta3=0)
        if phi.is_constant():
            continue
        lam = rand_rat(rng, 9) or Fraction(1)
        psi = phi.scaled(lam)
        assert proportional(phi, psi) == lam
        for _ in range(17):
            x = _zero_point(phi, rng)
            if x is not None:
                assert evaluate(psi, x) == 0
    # non-proportional pairs through the origin: a separating zero point exists
    for _ in range(40):
        phi, psi = rand_haffine(rng, 9, eta3=0), rand_haffine(rng, 9, eta3=0)
        if phi.is_constant() or psi.is_constant() or proportional(phi, psi) is not None:
            continue
        found = False
        for _ in range(50):
            x = _zero_point(phi, rng)
            if x is not None and evaluate(psi, x) != 0:
                found = True
                break
        assert found


def test_normalize_examples():
    phi = HAffine(1, E1, E3, 0)
    T, kappa = normalize(phi)
    assert kappa == -1
    assert T(Point()) == Point(E1, E3)
    assert q_form(T(Point())) + kappa == evaluate(phi, Point()) == 0
    T, kappa = normalize(Q0)
    x = Point((1, 2, 3), (4, 5, 6))
    assert T(x) == x and kappa == 0
    with pytest.raises(CarnotError) as ei:
        normalize(HAffine(eta2=E3))
    assert ei.value.code == "ETA0_ZERO"


def test_normalize_identity_bulk():
    rng = random.Random(2)
    for _ in range(100):
        phi = rand_haffine(rng)
        if not phi.eta0:
            continue
        T, kappa = normalize(phi)
        for _ in range(100):
            x = rand_point(rng)
            assert evaluate(phi, x) == q_form(T(x)) + kappa
            assert T.inverse(T(x)) == x


def test_factor_through_examples():
    assert factor_through(Q0, [E1]) is None
    assert factor_through(HAffine(eta1=E1), [E1]) is not None
    assert factor_through(HAffine(eta1=E3), [E1]) is None
    with pytest.raises(CarnotError) as ei:
        factor_through(HAffine(eta1=E1), [E1, (2, 0, 0)])
    assert ei.value.code == "DEPENDENT_KERNEL"


def test_factor_through_brute_force():
    rng = random.Random(4)
    agree = {True: 0, False: 0}
    for k in range(300):
        zeta = rand_vec(rng, 5, nonzero=True)
        phi = rand_haffine(rng, 5)
        if k % 2:
            # make eta1 annihilate zeta and drop eta0 so that phi factors
            a, b = rand_rat(rng, 5), rand_rat(rng, 5)
            from carnotmono.classify import anh
            n1, n2 = anh(zeta)
            phi = HAffine(0, tuple(a * u + b * v for u, v in zip(n1, n2)), phi.eta2, phi.eta3)
        invariant = True
        for _ in range(100):
            x, s = rand_point(rng, 5), rand_rat(rng, 5)
            y = Point(x.theta, tuple(w + s * z for w, z in zip(x.omega, zeta)))
            if evaluate(phi, x) != evaluate(phi, y):
                invariant = False
                break
        psi = factor_through(phi, [zeta])
        assert (psi is not None) == invariant
        if psi is not None:
            x = rand_point(rng, 5)
            assert psi(psi.quotient.project(x)) == evaluate(phi, x)
        agree[invariant] += 1
    assert min(agree.values()) > 50
