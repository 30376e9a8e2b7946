from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import bounded_seqs, real_bounded_seqs

from betaz.errors import DomainError
from betaz.seqalg.bounds import level_set, seminorm, split_pos_neg, threshold_set
from betaz.seqalg.gaussian import GaussianRational as G
from betaz.seqalg.sequence import SymbolicSequence as S
from betaz.setalg import ALL, DefinableSet

EVENS = DefinableSet.periodic(2, {0})
ODDS = DefinableSet.periodic(2, {1})


def inv_sq():
    return S.rational((1,), (1, 0, 1))


def window_max(phi, d, N):
    return max((F(abs(n)) ** (2 * d)) * phi.eval(n).abs2() for n in range(-N, N + 1))


def test_weighted_sup_of_geometric_is_attained():
    s = seminorm("schwartz", S.geometric(F(1, 2)), 1)
    assert s.exact and s.value == F(1, 2)


def test_weighted_sup_of_periodic_indicator_is_infinite():
    assert seminorm("schwartz", S.indicator(EVENS), 1).infinite


def test_sup_of_inverse_square():
    s = seminorm("sup", inv_sq())
    assert s.exact and s.value == 1


def test_sup_approached_only_asymptotically_is_an_interval():
    s = seminorm("sup", S.constant(1) - S.geometric(F(1, 2)))
    assert not s.exact and s.lo == 1 and 0 < s.hi - s.lo <= F(1, 10**9)
    conv = seminorm("sup", S.rational((0, 0, 1), (1, 0, 1)))
    assert conv.lo <= 1 <= conv.hi


def test_linear_growth_is_infinite_and_exceeds_bound_on_window():
    phi = S.indicator(EVENS).scale(200)
    assert seminorm("schwartz", phi, 1).infinite
    assert max(abs(n) * 200 for n in range(-10**4, 10**4 + 1) if n % 2 == 0) > 10**6


@settings(max_examples=30)
@given(bounded_seqs, st.integers(0, 3))
def test_certified_interval_contains_window_max(phi, d):
    s = seminorm("schwartz", phi, d)
    if s.infinite:
        assert d >= 1
        assert window_max(phi, d, 400) > window_max(phi, d, 100)
        return
    assert window_max(phi, d, 150) <= s.hi**2
    assert s.hi - s.lo <= F(1, 10**9)


@pytest.mark.parametrize(
    "phi, t, expected",
    [
        (inv_sq(), F(1, 2), DefinableSet.finite([-1, 0, 1])),
        (S.constant(F(3, 4)), F(1, 2), ALL),
        (S.indicator(EVENS), F(1, 2), EVENS),
    ],
)
def test_threshold_set_examples(phi, t, expected):
    assert threshold_set(phi, t) == expected


def test_threshold_set_domain_errors():
    with pytest.raises(DomainError):
        threshold_set(inv_sq(), 0)
    with pytest.raises(DomainError):
        threshold_set(S.constant(G(0, 1)), F(1, 2))


@settings(max_examples=40)
@given(real_bounded_seqs, st.fractions(min_value=-2, max_value=2, max_denominator=8))
def test_level_set_matches_brute_force(phi, t):
    for strict in (False, True):
        s = level_set(phi, t, strict=strict)
        for n in range(-150, 151):
            v = phi.eval(n).re
            assert s.member(n) == (v > t if strict else v >= t)


def test_split_examples():
    pos, neg = split_pos_neg(S.indicator(EVENS) - S.indicator(ODDS))
    assert pos.equals(S.indicator(EVENS)) and neg.equals(S.indicator(ODDS))
    pos, neg = split_pos_neg(S.constant(-2))
    assert pos.is_zero() and neg.equals(S.constant(2))
    odd_tail = S.rational((0, 1), (1,), F(1, 2))
    pos, neg = split_pos_neg(odd_tail)
    for n in range(-40, 41):
        assert (pos.eval(n).re > 0) == (n > 0)
        assert (neg.eval(n).re > 0) == (n < 0)


@settings(max_examples=40)
@given(real_bounded_seqs)
def test_split_identities(phi):
    pos, neg = split_pos_neg(phi)
    for n in range(-100, 101):
        p, q = pos.eval(n), neg.eval(n)
        assert p.re >= 0 and q.re >= 0 and p.im == 0 and q.im == 0
        assert p - q == phi.eval(n)
        assert (p * q).is_zero()
