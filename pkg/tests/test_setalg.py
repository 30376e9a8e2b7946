import json

import pytest
from hypothesis import given
from strategies import described_sets, sets

from betaz.errors import DomainError, ValidationError
from betaz.setalg import ALL, EMPTY, DefinableSet, boolean, make_set, query

WINDOW = range(-200, 201)
EVENS = DefinableSet.periodic(2, {0})
MULT3 = DefinableSet.periodic(3, {0})


def members(s, window=WINDOW):
    return [n for n in window if s.member(n)]


def test_periodic_constructor_gives_evens():
    s = make_set("periodic", 2, {0}, {0})
    assert members(s, range(-30, 31)) == [n for n in range(-30, 31) if n % 2 == 0]


def test_finite_constructor_has_empty_periodic_part():
    s = make_set("finite", [1, 4, 9])
    assert not s.residues_pos and not s.residues_neg
    assert s.elements() == [1, 4, 9]
    assert query("is_finite", s) and query("cardinality_if_finite", s) == 3


def test_cofinite_is_complement_of_finite():
    assert make_set("cofinite", [0]) == ~make_set("finite", [0])
    assert not make_set("cofinite", [0]).member(0)


def test_bad_residue_is_rejected():
    with pytest.raises(ValidationError):
        make_set("periodic", 3, {3}, {0})
    with pytest.raises(ValidationError):
        make_set("interval", 4, 2)


def test_intersection_of_evens_and_multiples_of_three():
    six = boolean("intersect", EVENS, MULT3)
    assert six == DefinableSet.periodic(6, {0})
    assert members(six, range(-30, 31)) == [n for n in range(-30, 31) if n % 6 == 0]
    assert query("member", six, 18)


def test_cardinality_of_infinite_set_is_a_domain_error():
    assert not query("is_finite", EVENS)
    with pytest.raises(DomainError):
        query("cardinality_if_finite", EVENS)


def test_half_lines():
    assert members(DefinableSet.at_least(-3), range(-10, 11)) == list(range(-3, 11))
    assert members(DefinableSet.at_most(4), range(-10, 11)) == list(range(-10, 5))
    assert DefinableSet.at_least(0) | DefinableSet.at_most(-1) == ALL


@given(described_sets())
def test_membership_matches_description(so):
    s, oracle = so
    assert all(s.member(n) == oracle(n) for n in WINDOW)


@given(described_sets(), described_sets())
def test_boolean_ops_match_pointwise_oracle(a, b):
    (s, f), (t, g) = a, b
    for n in WINDOW:
        assert (s | t).member(n) == (f(n) or g(n))
        assert (s & t).member(n) == (f(n) and g(n))
        assert (s - t).member(n) == (f(n) and not g(n))
        assert (~s).member(n) == (not f(n))


@given(sets, sets, sets)
def test_boolean_algebra_laws(a, b, c):
    assert a | b == b | a and a & b == b & a
    assert (a | b) | c == a | (b | c)
    assert (a & b) & c == a & (b & c)
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)
    assert ~(a | b) == ~a & ~b and ~(a & b) == ~a | ~b
    assert a | (a & b) == a and a & (a | b) == a
    assert ~~a == a
    assert a | ~a == ALL and a & ~a == EMPTY


@given(sets, sets)
def test_result_modulus_divides_lcm(a, b):
    import math

    lcm = a.modulus * b.modulus // math.gcd(a.modulus, b.modulus)
    for r in (a | b, a & b, a - b):
        assert lcm % r.modulus == 0
        assert r.threshold <= max(a.threshold, b.threshold)


@given(sets, sets)
def test_equality_iff_agreement_on_joint_window(a, b):
    import math

    m = a.modulus * b.modulus // math.gcd(a.modulus, b.modulus)
    w = max(a.threshold, b.threshold)
    agree = all(a.member(n) == b.member(n) for n in range(-(w + m), w + m + 1))
    assert (a == b) == agree


@given(described_sets())
def test_canonicalize_is_idempotent(so):
    s, _ = so
    again = DefinableSet.canonical(s.modulus, s.residues_pos, s.residues_neg, s.exceptions)
    assert again == s
    # no proper divisor is also a period of both rules
    m = s.modulus
    for d in range(1, m):
        if m % d == 0:
            assert not all(
                s.rule(sg, k) == s.rule(sg, (k + d) % m) for sg in (1, -1) for k in range(m)
            )


@given(sets)
def test_threshold_is_minimal_and_window_is_consistent(s):
    w = s.threshold
    assert all(-w <= e <= w - 1 for e in s.exceptions)
    if w > 0:
        assert (w - 1) in s.exceptions or -w in s.exceptions
    assert s.window() == [s.member(n) for n in range(-w, w)]


@given(sets)
def test_json_round_trip(s):
    data = json.loads(json.dumps(s.to_dict()))
    assert set(data) >= {"modulus", "residues_pos", "residues_neg", "threshold", "window"}
    assert DefinableSet.from_dict(data) == s


@given(sets)
def test_finite_iff_no_residues(s):
    assert s.is_finite() == (not s.residues_pos and not s.residues_neg)
    if s.is_finite():
        assert s.cardinality() == len(members(s, range(-50, 51)))


@given(sets)
def test_some_element_is_a_member(s):
    x = s.some_element()
    if s.is_empty():
        assert x is None
    else:
        assert s.member(x)


@given(sets, sets)
def test_subset_matches_window(a, b):
    import math

    m = a.modulus * b.modulus // math.gcd(a.modulus, b.modulus)
    w = max(a.threshold, b.threshold) + m
    assert a.issubset(b) == all(b.member(n) for n in range(-w, w + 1) if a.member(n))
