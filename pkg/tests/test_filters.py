import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import bounded_seqs, sets

from betaz.errors import InconsistentTraceError, RefinePointError, ValidationError
from betaz.filters import (
    Direction,
    Principal,
    auto_extend,
    check_filter_axioms,
    extend_point,
    filter_contains,
    filter_from_base,
    limit_at,
    point_contains,
    point_from_trace,
    trace_of,
)
from betaz.seqalg import poly
from betaz.seqalg.sequence import SymbolicSequence as S
from betaz.setalg import ALL, DefinableSet, random_set

EVENS = DefinableSet.periodic(2, {0})
ODDS = DefinableSet.periodic(2, {1})
MULT3 = DefinableSet.periodic(3, {0})

directions = st.builds(
    lambda sign, m, r: Direction(sign, m, r % m),
    st.sampled_from([1, -1]),
    st.integers(1, 12),
    st.integers(0, 11),
)
points = st.one_of(directions, st.integers(-30, 30).map(Principal))


def test_filter_base_examples():
    f = filter_from_base([EVENS, MULT3])
    assert f.core == DefinableSet.periodic(6, {0})
    assert filter_contains(f, ALL)
    with pytest.raises(ValidationError, match="not a filter base"):
        filter_from_base([EVENS, ODDS])


def test_point_contains_examples():
    pt = Direction(1, 2, 0)
    assert point_contains(pt, EVENS)
    assert not point_contains(pt, DefinableSet.finite([2, 4, 6, 1000]))
    assert point_contains(Principal(5), DefinableSet.finite([5]))


def test_coarse_point_demands_refinement():
    with pytest.raises(RefinePointError) as e:
        point_contains(Direction(1), EVENS)
    assert e.value.required_modulus == 2


def test_extend_point_examples():
    assert extend_point(Direction(1, 2, 0), 6, 4) == Direction(1, 6, 4)
    with pytest.raises(ValidationError):
        extend_point(Direction(1, 2, 0), 6, 3)
    fine = extend_point(Direction(1, 2, 0), 6, 4)
    assert not point_contains(fine, DefinableSet.finite(range(-50, 50)))


def test_trace_examples():
    res = point_from_trace([(EVENS, True), (DefinableSet.at_least(0), True)])
    assert Direction(1, 2, 0) in res.completions
    assert point_from_trace([(DefinableSet.finite([5]), True)]).point == Principal(5)
    with pytest.raises(InconsistentTraceError):
        point_from_trace([(EVENS, True), (ODDS, True)])


def test_underdetermined_trace_lists_completions():
    res = point_from_trace([(EVENS, True)])
    assert res.point is None
    assert set(res.completions) == {Direction(1, 2, 0), Direction(-1, 2, 0)}


@given(points, st.lists(sets, min_size=1, max_size=5))
def test_trace_round_trip_admits_point(pt, family):
    for s in family:
        pt = auto_extend(pt, s.modulus)
    res = point_from_trace(trace_of(pt, family))
    assert res.admits(pt)
    # every completion reproduces the decisions
    for c in res.completions:
        for s, b in res.decisions:
            assert point_contains(auto_extend(c, s.modulus), s) == b


@given(directions, sets)
def test_dichotomy_after_extension(pt, s):
    pt = auto_extend(pt, s.modulus)
    assert point_contains(pt, s) != point_contains(pt, ~s)


@given(points, sets, sets)
def test_extension_preserves_answers(pt, s, t):
    a = auto_extend(pt, s.modulus)
    b = auto_extend(a, t.modulus)
    assert point_contains(a, s) == point_contains(b, s)


def test_axiom_harness_on_points_and_bases():
    for target in (Direction(1, 3, 1), Direction(-1, 4, 2), Principal(-7), filter_from_base([EVENS, MULT3])):
        reports = check_filter_axioms(target, samples=300, seed=1)
        assert all(r.ok for r in reports)


def test_axiom_harness_catches_broken_membership():
    reports = check_filter_axioms(lambda s: s.member(0) or s.member(1), samples=500, seed=3)
    broken = [r for r in reports if not r.ok]
    assert broken
    for r in broken:
        assert r.counterexample
        sets_ = {k: DefinableSet.from_dict(v) for k, v in r.counterexample.items()}
        if r.axiom == "intersection":
            a, b = sets_["S"], sets_["T"]
            assert (a.member(0) or a.member(1)) and (b.member(0) or b.member(1))
            assert not ((a & b).member(0) or (a & b).member(1))


def test_limit_examples():
    assert limit_at(S.indicator(EVENS), Direction(1, 2, 0)) == 1
    inv = S.rational((1,), (1, 0, 1))
    for pt in (Direction(1), Direction(-1), Direction(1, 6, 5)):
        assert limit_at(inv, pt) == 0
    conv = S.rational((0, 0, 1), (1, 0, 1))
    assert limit_at(conv, Direction(-1, 1, 0)) == 1
    assert all(abs(float(conv.eval(n).re) - 1) < 1e-6 for n in range(-10**4, -10**3, 997))
    with pytest.raises(RefinePointError):
        limit_at(S.indicator(EVENS), Direction(1))
    assert limit_at(S.indicator(EVENS), Direction(1), auto=True) == 1


def slowest_gap(phi):
    gaps = [poly.deg(t.q) - poly.deg(t.p) for t in phi.normalize().tails if t.rate == 1]
    return min(gaps, default=99)


def net(pt, t):
    return pt.residue + pt.sign * pt.modulus * t


@settings(max_examples=40)
@given(bounded_seqs, directions)
def test_limits_along_progression_nets(phi, pt):
    pt = auto_extend(pt, phi.modulus)
    lim = limit_at(phi, pt)
    errs = [abs(complex(phi.eval(net(pt, t)) - lim)) for t in (10**2, 10**3, 10**4)]
    if slowest_gap(phi) >= 2:
        assert errs[-1] < 1e-6
    else:
        # a 1/n tail shrinks about tenfold per decade of t
        assert errs[-1] <= errs[1] / 5 + 1e-12


def test_one_over_n_tail_converges_at_its_own_rate():
    phi = S.rational((0, 1), (1, 0, 1))
    for t in (10**2, 10**3, 10**4):
        err = abs(complex(phi.eval(t) - limit_at(phi, Direction(1))))
        assert err <= 1 / t


@settings(max_examples=40)
@given(bounded_seqs, bounded_seqs, directions)
def test_limit_is_a_ring_homomorphism(phi, psi, pt):
    pt = auto_extend(pt, (phi * psi).modulus * phi.modulus * psi.modulus)
    a, b = limit_at(phi, pt), limit_at(psi, pt)
    assert limit_at(phi * psi, pt) == a * b
    assert limit_at(phi + psi, pt) == a + b
    assert limit_at(phi.scale(F(3, 7)), pt) == a * F(3, 7)
    assert limit_at(phi.conjugate(), pt) == a.conjugate()


def test_limits_of_random_pairs_meet_net_tolerance():
    rng = random.Random(11)
    for _ in range(20):
        s = random_set(rng)
        phi = S.indicator(s).scale(F(rng.randint(-5, 5), 3)) + S.geometric(F(1, 2), s)
        pt = auto_extend(Direction(rng.choice([1, -1]), 1, 0), phi.modulus)
        lim = limit_at(phi, pt)
        assert abs(complex(phi.eval(net(pt, 10**4)) - lim)) < 1e-6
