import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carnotmono.carnot import HLine, Point, horizontal, line_point, mul
from carnotmono.classify import graph_solve
from carnotmono.errors import CarnotError
from carnotmono.haffine import HAffine, evaluate, hor_levelset_subspace
from carnotmono.monotone import (AffineFunctional, Boundary, ExplicitSampler,
                                 GridSampler, RandomSampler, SetOracle,
                                 Verdict, check_line_monotone,
                                 check_line_sampled, check_monotone_batch,
                                 line_trace, membership_at, verify_linee,
                                 verify_report, verify_tretre)
from carnotmono.polynomial import Poly6
from carnotmono.roots import Root

from conftest import haffines, lines, rand_haffine, rand_line, rand_vec

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
Z = (0, 0, 0)
Q0 = HAffine(eta0=1)
BALL = SetOracle.poly_sublevel(Poly6.sum_of_squares(-1))


def test_trace_examples():
    pat = line_trace(SetOracle.haffine_sublevel(Q0), HLine(Point(Z, E3), E1))
    assert [r.exact for r in pat.roots] == [0] and pat.signs == (-1, 0, 1)
    pat = line_trace(BALL, HLine(Point(), E1))
    assert [r.exact for r in pat.roots] == [-1, 1] and pat.signs == (1, 0, -1, 0, 1)
    pat = line_trace(SetOracle.poly_sublevel(Poly6.constant(0)), HLine(Point(), E1))
    assert pat.roots == () and pat.signs == (0,)
    with pytest.raises(CarnotError) as ei:
        line_trace(SetOracle.custom(lambda x: True), HLine(Point(), E1))
    assert ei.value.code == "CUSTOM_ORACLE"


def test_check_line_examples():
    r = check_line_monotone(BALL, HLine(Point(), E1))
    assert r.verdict is Verdict.VIOLATION
    assert r.witnesses == (-2, 0, 2) and r.membership == (False, True, False)
    assert verify_report(BALL, r)
    hs = SetOracle.half_space(AffineFunctional((1, 2, 3, 4, 5, 6), 7))
    assert check_line_monotone(hs, HLine(Point((1, 1, 1)), (1, -1, 2))).passed


poly_terms = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 6).filter(lambda e: sum(e) <= 3),
    st.integers(-5, 5), max_size=6)


@settings(max_examples=150, deadline=None)
@given(poly_terms, lines, st.sampled_from([Boundary.OPEN, Boundary.CLOSED]))
def test_pattern_consistency(terms, l, rule):
    o = SetOracle.poly_sublevel(Poly6.from_dict(terms), rule)
    pat = line_trace(o, l)
    assert len(pat.signs) == 2 * len(pat.roots) + 1
    assert all(pat.signs[i] != 0 for i in range(0, len(pat.signs), 2)) or pat.signs == (0,)
    p = o.restriction(l)
    if p:
        lead = (p[-1] > 0) - (p[-1] < 0)
        assert pat.signs[-1] == lead
        assert pat.signs[0] == lead * (-1) ** (len(p) - 1)
    # the sign read off each sample agrees with the payload at that point
    for s, t in zip(pat.signs[::2], pat.samples):
        v = o.value(line_point(l, t))
        assert (v > 0) - (v < 0) == s
    r = check_line_monotone(o, l)
    if not r.passed:
        assert verify_report(o, r)


@settings(max_examples=300)
@given(haffines, lines, st.sampled_from([Boundary.OPEN, Boundary.CLOSED]))
def test_haffine_sublevels_pass(phi, l, rule):
    assert check_line_monotone(SetOracle.haffine_sublevel(phi, rule), l).passed


def test_callback_boundary():
    # E = {theta1 < 0} plus the part of its boundary with theta2 >= 0
    phi = HAffine(eta2=E3)
    seen = []

    def cb(locus):
        seen.append(locus)
        if locus.point is None:
            return True
        return locus.point.theta[1] >= 0

    o = SetOracle.haffine_sublevel(phi, Boundary.CALLBACK, cb)
    assert check_line_monotone(o, HLine(Point((0, -1, 0)), E1)).passed
    assert check_line_monotone(o, HLine(Point((0, 1, 0)), E1)).passed
    # a line inside the boundary plane: the whole line is asked about at once
    assert check_line_monotone(o, HLine(Point(), E2)).passed
    assert seen[-1].point is None and seen[-1].root is None


def test_callback_on_irrational_root():
    # theta1^3 < 2 along theta1: one irrational boundary point, no rational point to hand over
    seen = []
    o = SetOracle.poly_sublevel(Poly6.from_dict({(3, 0, 0, 0, 0, 0): 1, (0,) * 6: -2}),
                                Boundary.CALLBACK, lambda loc: seen.append(loc) or True)
    assert check_line_monotone(o, HLine(Point(), E1)).passed
    assert seen[0].point is None and seen[0].root.exact is None
    assert seen[0].root.lo ** 3 < 2 < seen[0].root.hi ** 3
    # squared: (t^2-2)^2 <= 0 is two isolated points, so E is disconnected
    sq = Poly6.from_dict({(4, 0, 0, 0, 0, 0): 1, (2, 0, 0, 0, 0, 0): -4, (0,) * 6: 4})
    o = SetOracle.poly_sublevel(sq, Boundary.CLOSED)
    r = check_line_monotone(o, HLine(Point(), E1))
    assert r.verdict is Verdict.VIOLATION
    assert r.witnesses[0] == -3 and isinstance(r.witnesses[1], Root) and r.witnesses[2] == 0
    assert verify_report(o, r)


def test_batch_examples():
    r = check_monotone_batch(SetOracle.haffine_sublevel(Q0), GridSampler(-1, 1))
    assert r.passed and r.lines_checked > 0
    r = check_monotone_batch(BALL, RandomSampler(100, 1))
    assert r.verdict is Verdict.VIOLATION and verify_report(BALL, r)
    r = check_monotone_batch(SetOracle.poly_sublevel(Poly6.constant(1)), RandomSampler(50, 1))
    assert r.passed and r.lines_checked == 50


def test_batch_deterministic_and_parallel():
    a = check_monotone_batch(BALL, RandomSampler(300, 7))
    b = check_monotone_batch(BALL, RandomSampler(300, 7))
    c = check_monotone_batch(BALL, RandomSampler(300, 7), workers=2, chunk=5)
    assert a == b == c
    o = SetOracle.haffine_sublevel(HAffine(1, (1, 0, 2), (0, 1, 1), 1), Boundary.CLOSED)
    assert check_monotone_batch(o, RandomSampler(200, 3), workers=2, chunk=30) == \
        check_monotone_batch(o, RandomSampler(200, 3))


def test_grid_pairs_are_aligned():
    g = GridSampler(-1, 1)
    pairs = list(g.aligned_pairs())
    assert len(pairs) == len(set(pairs))
    from carnotmono.carnot import line_through
    assert all(line_through(x, z) is not None for x, z in pairs)
    lines = list(g.lines())
    assert len(lines) == len(set(lines))


def test_custom_oracle_sampled():
    ball = SetOracle.custom(lambda x: sum(c * c for c in x.coords()) < 1)
    with pytest.raises(CarnotError):
        check_monotone_batch(ball, RandomSampler(5, 1))
    r = check_line_sampled(ball, HLine(Point(), E1))
    assert r.verdict is Verdict.VIOLATION and not r.certified
    r = check_monotone_batch(ball, ExplicitSampler((HLine(Point(), E1),)), certify=False)
    assert r.verdict is Verdict.VIOLATION and not r.certified


def test_linee_examples():
    o = SetOracle.haffine_sublevel(Q0)
    assert verify_linee(o, HLine(Point(E1, E1), E1), 0, 1, [5, -7])
    plane = SetOracle.haffine_sublevel(HAffine(eta2=E3))
    assert verify_linee(plane, HLine(Point((0, 3, 1), (1, 2, 3)), (0, 1, 5)), -1, 2, [9, Fraction(1, 3)])
    with pytest.raises(CarnotError) as ei:
        verify_linee(o, HLine(Point(Z, E3), E1), 1, 0, [2])
    assert ei.value.code == "PRECONDITION_FAILED"


def test_linee_random():
    rng = random.Random(12)
    for _ in range(300):
        phi, l = rand_haffine(rng, 9), rand_line(rng, 9)
        a, b = (evaluate(phi, l.base), evaluate(phi, line_point(l, 1)) - evaluate(phi, l.base))
        phi = phi.shifted(-a)  # now base is a zero; two zeros only if b == 0
        o = SetOracle.haffine_sublevel(phi)
        if b == 0:
            assert verify_linee(o, l, 0, 5, [-3, 17, Fraction(2, 7)])


def test_tretre_examples():
    o = SetOracle.haffine_sublevel(Q0)
    assert verify_tretre(o, Point(Z, E3), (-1, 0, 0), [1, 2, 100])
    hs = SetOracle.half_space(AffineFunctional((1, 0, 0, 0, 0, 0), 0))
    assert verify_tretre(hs, Point((0, 5, 5), (1, 1, 1)), (-1, 0, 0), [1, Fraction(1, 9)])
    with pytest.raises(CarnotError) as ei:
        verify_tretre(o, Point(Z, E3), E2, [1])
    assert ei.value.code == "PRECONDITION_FAILED"


def test_hor_boundary_is_affine():
    # E = {phi <= 0}: horizontal directions from a boundary point staying on
    # the boundary are exactly the level subspace
    rng = random.Random(31)
    done = 0
    while done < 100:
        phi = rand_haffine(rng, 9)
        try:
            x = graph_solve(phi, 1, [Fraction(rng.randint(-5, 5)) for _ in range(5)])
        except CarnotError:
            continue
        o = SetOracle.haffine_sublevel(phi, Boundary.CLOSED)
        h = hor_levelset_subspace(phi, x)
        taus = [E1, E2, E3] + [rand_vec(rng, 9) for _ in range(10)]
        for t in taus + [tuple(c for c in h.basis[0][:3])]:
            p = mul(x, horizontal(t))
            assert (o.value(p) == 0) == h.contains(p)
        done += 1
