import json
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import bounded_seqs, sets, smooth_seqs

from betaz.errors import ValidationError
from betaz.seqalg import poly
from betaz.seqalg.gaussian import GaussianRational as G
from betaz.seqalg.sequence import SymbolicSequence as S
from betaz.seqalg.sequence import TailTerm, arith
from betaz.setalg import ALL, DefinableSet

EVENS = DefinableSet.periodic(2, {0})
ODDS = DefinableSet.periodic(2, {1})
MULT3 = DefinableSet.periodic(3, {0})
WINDOW = range(-200, 201)

fracs = st.builds(F, st.integers(-99, 99), st.integers(1, 50))
gaussians = st.builds(G, fracs, fracs)
int_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(tuple)


# -- Gaussian rationals ----------------------------------------------------


@given(gaussians, gaussians)
def test_gaussian_product_formula(x, y):
    z = x * y
    assert z.re == x.re * y.re - x.im * y.im
    assert z.im == x.re * y.im + x.im * y.re
    assert (x + y) - y == x


@given(gaussians, gaussians.filter(lambda g: g.re != 0))
def test_gaussian_division_inverts_product(x, y):
    assert (x / y) * y == x
    approx = complex(float(x.re), float(x.im)) / complex(float(y.re), float(y.im))
    q = x / y
    assert abs(complex(float(q.re), float(q.im)) - approx) <= 1e-9 * (1 + abs(approx))


@given(gaussians)
def test_gaussian_conjugate_and_modulus(x):
    assert (x * x.conjugate()).im == 0
    assert (x * x.conjugate()).re == x.abs2()


@pytest.mark.parametrize(
    "text, value",
    [("1/2", G(F(1, 2))), ("3/4 i", G(0, F(3, 4))), ("1/2 + 3/4 i", G(F(1, 2), F(3, 4))), ("-i", G(0, -1))],
)
def test_gaussian_parse(text, value):
    assert G.parse(text) == value


@given(gaussians)
def test_gaussian_json_round_trip(x):
    assert G.from_dict(json.loads(json.dumps(x.to_dict()))) == x


# -- polynomials -----------------------------------------------------------


@given(int_polys, int_polys, st.integers(-20, 20))
def test_poly_ring_ops_evaluate_pointwise(p, q, n):
    assert poly.evaluate(poly.mul(p, q), n) == poly.evaluate(p, n) * poly.evaluate(q, n)
    assert poly.evaluate(poly.add(p, q), n) == poly.evaluate(p, n) + poly.evaluate(q, n)


@given(int_polys, int_polys.filter(lambda q: poly.trim(q)))
def test_poly_division_identity(p, q):
    quo, rem = poly.divmod_(p, q)
    assert poly.trim(poly.add(poly.mul(quo, q), rem)) == poly.trim(tuple(F(c) for c in p))
    assert poly.deg(rem) < poly.deg(q)


@given(int_polys.filter(lambda p: poly.deg(p) >= 1))
def test_has_integer_root_matches_scan(p):
    bound = int(poly.cauchy_bound(p)) + 1
    scan = any(poly.evaluate(p, n) == 0 for n in range(-bound, bound + 1))
    assert poly.has_integer_root(p) == scan


@given(int_polys.filter(lambda p: poly.deg(p) >= 1))
def test_root_bound_exceeds_numpy_real_roots(p):
    nb = poly.root_bound(p)
    roots = np.roots(list(reversed(poly.trim(p))))
    real = [r.real for r in roots if abs(r.imag) < 1e-7]
    assert all(abs(r) < nb + 1e-6 for r in real)
    assert nb <= poly.cauchy_bound(p) + 1


# -- tail terms -------------------------------------------------------------


def test_tail_rejects_vanishing_denominator_and_unbounded_terms():
    with pytest.raises(ValidationError):
        TailTerm(ALL, (1,), (2, 1), F(1))  # n + 2 vanishes at -2
    with pytest.raises(ValidationError):
        TailTerm(ALL, (0, 0, 0, 1), (1, 0, 1), F(1))
    with pytest.raises(ValidationError):
        TailTerm(ALL, (1,), (1,), F(3, 2))
    TailTerm(ALL, (0, 0, 0, 1), (1, 0, 1), F(1, 2))  # rapid decay tames growth


@pytest.mark.parametrize(
    "p, q, r, cls",
    [
        ((1,), (1,), F(1, 2), "rapid"),
        ((1,), (1, 0, 1), F(1), "polynomial"),
        ((0, 0, 1), (1, 0, 1), F(1), "convergent"),
        ((), (1,), F(1), "rapid"),
    ],
)
def test_decay_classes(p, q, r, cls):
    assert TailTerm(ALL, p, q, r).decay_class() == cls


# -- sequence examples ---------------------------------------------------------


def inv_sq():
    return S.rational((1,), (1, 0, 1))


def test_indicator_product():
    assert (S.indicator(EVENS) * S.indicator(MULT3)).equals(S.indicator(DefinableSet.periodic(6, {0})))


def test_add_negation_is_zero():
    phi = inv_sq() + S.indicator(EVENS).scale(G(2, 1))
    assert arith("add", phi, arith("scale", phi, -1)).is_zero()


def test_geometric_square():
    g = S.geometric(F(1, 2))
    sq = g * g
    assert sq.equals(S.geometric(F(1, 4)))
    assert all(sq.eval(n) == G(F(1, 4) ** abs(n)) for n in range(-20, 21))


def test_eval_examples():
    assert inv_sq().eval(0) == G(1)
    assert inv_sq().eval(1) == G(F(1, 2))
    phi = S.indicator(EVENS) + S.indicator(DefinableSet.finite([5])).scale(3)
    assert phi.eval(5) == G(3)


def test_normalize_examples():
    one = (S.indicator(EVENS) + S.indicator(ODDS)).normalize()
    assert one.steps == ((G(1), ALL),) and not one.tails
    folded = S.rational((1, 0, 1), (1, 0, 1)).normalize()
    assert folded.steps == ((G(1), ALL),) and not folded.tails
    cancel = (inv_sq() + S.rational((-1,), (1, 0, 1))).normalize()
    assert not cancel.tails and not cancel.steps


@settings(max_examples=25)
@given(bounded_seqs, bounded_seqs)
def test_eval_is_a_homomorphism(phi, psi):
    add, mul, conj = phi + psi, phi * psi, phi.conjugate()
    for n in WINDOW:
        a, b = phi.eval(n), psi.eval(n)
        assert add.eval(n) == a + b
        assert mul.eval(n) == a * b
        assert conj.eval(n) == a.conjugate()


@settings(max_examples=40)
@given(bounded_seqs)
def test_normalize_is_idempotent_and_pointwise(phi):
    raw = S(phi.steps, phi.tails)  # drop the normal flag
    nf = raw.normalize()
    assert S(nf.steps, nf.tails).normalize() == nf
    assert all(nf.eval(n) == phi.eval(n) for n in range(-60, 61))


@settings(max_examples=40)
@given(bounded_seqs)
def test_normal_form_invariants(phi):
    nf = phi.normalize()
    consts = [c for c, _ in nf.steps]
    assert len(set(consts)) == len(consts) and all(not c.is_zero() for c in consts)
    for i, (_, a) in enumerate(nf.steps):
        for _, b in nf.steps[i + 1 :]:
            assert (a & b).is_empty()
    for t in nf.tails:
        assert not t.is_zero
        if t.rate == 1:
            assert poly.deg(t.p) < poly.deg(t.q)


@settings(max_examples=30)
@given(smooth_seqs, smooth_seqs)
def test_equals_matches_window_agreement(phi, psi):
    for other in (psi, phi + S.rational((1,), (1, 0, 1)).restrict(DefinableSet.finite([3]))):
        nf_same = phi.equals(other)
        agree = all(phi.eval(n) == other.eval(n) for n in range(-60, 61))
        if nf_same:
            assert agree
        assert phi.equals(phi.normalize())


@settings(max_examples=30)
@given(bounded_seqs)
def test_sequence_json_round_trip(phi):
    data = json.loads(json.dumps(phi.to_dict()))
    assert set(data) == {"steps", "tails"}
    assert S.from_dict(data).equals(phi)


@given(sets, st.integers(-60, 60))
def test_restrict_is_multiplication_by_indicator(s, n):
    phi = inv_sq() + S.geometric(F(1, 3))
    assert phi.restrict(s).eval(n) == (phi * S.indicator(s)).eval(n)
