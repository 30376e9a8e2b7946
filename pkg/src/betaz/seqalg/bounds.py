"""Certified asymptotics of symbolic sequences.

Everything here rests on one elementary estimate.  For an integer
polynomial ``p`` of degree ``k`` and ``|n| >= 2 * sum_{i<k} |a_i| / |a_k|``
(and ``|n| >= 1``)::

    |a_k| |n|^k / 2  <=  |p(n)|  <=  3 |a_k| |n|^k / 2

so a component ``c p/q r^|n|`` is sandwiched between ``K_lo |n|^e r^|n|`` and
``K_up |n|^e r^|n|`` with ``e = deg p - deg q``, ``K_up = 3|c||a_k|/|b_m|``
and ``K_lo = |c||a_k|/(3|b_m|)``.  Monotonicity of ``x^e r^x`` beyond a
computable point turns these into bounds valid on whole tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError
from ..setalg import DefinableSet
from . import poly
from .gaussian import frac_str
from .sequence import Component, Germ, SymbolicSequence

DEFAULT_TOL = Fraction(1, 10**9)


# -- elementary envelopes ------------------------------------------------


def _ceil(x) -> int:
    return math.ceil(Fraction(x))


def poly_sandwich_start(p) -> int:
    """Smallest ``N >= 1`` from which the 1/2..3/2 sandwich holds for ``p``."""
    p = poly.trim(p)
    if len(p) <= 1:
        return 1
    d = len(p) - 1
    lead = abs(Fraction(p[-1]))
    coeffs = [abs(Fraction(a)) for a in p[:-1]]

    # sum |a_i| n^(i-d) is decreasing in n, so bisect below the crude bound
    def ok(n):
        return 2 * sum(c / Fraction(n) ** (d - i) for i, c in enumerate(coeffs)) <= lead

    lo, hi = 1, max(1, _ceil(2 * sum(coeffs) / lead))
    if ok(lo):
        return lo
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class Envelope:
    """``K * |n|^e * r^|n|``, valid for ``|n| >= start``."""

    K: Fraction
    e: int
    r: Fraction
    start: int

    def at(self, n: int) -> Fraction:
        return self.K * Fraction(n) ** self.e * self.r**n

    def decreasing_from(self) -> int:
        """First ``N >= start`` from which the envelope is nonincreasing."""
        if self.e <= 0:
            return self.start
        if self.r == 1:
            raise DomainError("growing envelope has no decreasing tail")
        # (1 + 1/n)^e * r <= 1, monotone in n
        def ok(n):
            return (1 + Fraction(1, n)) ** self.e * self.r <= 1

        hi = max(self.start, 1)
        while not ok(hi):
            hi *= 2
        lo = max(self.start, 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid + 1
        return max(hi, self.start)


def _comp_lead_abs(c: Component) -> Fraction:
    return abs(c.coeff) * abs(Fraction(poly.lead(c.p), poly.lead(c.q)))


def upper_envelope(c: Component, shift: int = 0) -> Envelope:
    start = max(poly_sandwich_start(c.p), poly_sandwich_start(c.q))
    return Envelope(3 * _comp_lead_abs(c), c.excess + shift, c.rate, start)


def lower_envelope(c: Component, shift: int = 0) -> Envelope:
    start = max(poly_sandwich_start(c.p), poly_sandwich_start(c.q))
    return Envelope(_comp_lead_abs(c) / 3, c.excess + shift, c.rate, start)


def _rational_component(p, q) -> Component:
    """Wrap a real rational function ``p/q`` (rate 1) as a component."""
    cp, pp = poly.primitive(p)
    cq, qq = poly.primitive(q)
    return Component(Fraction(1), False, pp, qq, cp / cq)


def domination_point(lead: Envelope, others: list[Envelope]) -> int:
    """``N`` such that ``sum(others) < lead`` for all ``|n| >= N``.

    Every entry of ``others`` must decay relative to ``lead``: smaller rate,
    or equal rate with smaller exponent."""
    ratios = []
    for o in others:
        rel = Envelope(o.K / lead.K, o.e - lead.e, o.r / lead.r, max(o.start, lead.start))
        if rel.r > 1 or (rel.r == 1 and rel.e >= 0):
            raise AssertionError("dominated term does not decay relative to the leader")
        ratios.append(rel)
    n = max([lead.start] + [r.decreasing_from() for r in ratios])
    while sum((r.at(n) for r in ratios), Fraction(0)) >= 1:
        n *= 2
    return n


def sum_below(envs: list[Envelope], margin: Fraction) -> int:
    """``N`` such that ``sum(envs) < margin`` for all ``|n| >= N``."""
    n = max([1] + [e.decreasing_from() for e in envs])
    while sum((e.at(n) for e in envs), Fraction(0)) >= margin:
        n *= 2
    return n


def sqrt_interval(x: Fraction, tol: Fraction = DEFAULT_TOL) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= tol``; exact when
    ``x`` is the square of a rational."""
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative number")
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        v = Fraction(rn, rd)
        return v, v
    k = 1
    while Fraction(1, 1 << k) > tol:
        k += 1
    s = 1 << k
    a = math.isqrt(math.floor(x * s * s))
    return Fraction(a, s), Fraction(a + 1, s)


def sqrt_upper(x: Fraction, tol: Fraction = DEFAULT_TOL) -> Fraction:
    return sqrt_interval(x, tol)[1]


def _sign_at_infinity(p, q, sign: int) -> int:
    """Sign of ``p(n)/q(n)`` as ``n -> sign * infinity`` (p nonzero)."""
    s = 1 if Fraction(poly.lead(p)) * Fraction(poly.lead(q)) > 0 else -1
    if sign < 0 and (poly.deg(p) - poly.deg(q)) % 2:
        s = -s
    return s


def cell_points_from(sign: int, k: int, modulus: int, start: int) -> int:
    """First ``n`` with ``n = k (mod modulus)`` and ``sign * n >= start``."""
    if sign > 0:
        return start + (k - start) % modulus
    return -start - ((-start - k) % modulus)


# -- eventual sign of phi - t on one cell -----------------------------------


def eventual_sign(germ: Germ, t: Fraction, sign: int) -> tuple[int, int]:
    """``(s, N)``: for every cell point with ``sign * n >= N`` the sign of
    ``phi(n) - t`` equals ``s`` (``0`` means equality).  Real germs only."""
    c = germ.const.re - t
    slow = [x for x in germ.comps if x.rate == 1]
    fast = [x for x in germ.comps if x.rate < 1]
    if slow:
        (s,) = slow
        q = s.q
        p_total = poly.add(poly.scale(q, c), poly.scale(s.p, s.coeff))
    else:
        q = (1,)
        p_total = (c,) if c else ()

    if not fast:
        if not p_total:
            return 0, 0
        n = max(poly.root_bound(p_total), poly.root_bound(q))
        return _sign_at_infinity(p_total, q, sign), n

    if p_total:
        lead_comp = _rational_component(p_total, q)
        others = [upper_envelope(x) for x in fast]
        lead_sign = _sign_at_infinity(p_total, q, sign)
    else:
        lead_comp = max(fast, key=lambda x: (x.rate, x.excess))
        others = [upper_envelope(x) for x in fast if x is not lead_comp]
        lead_sign = _sign_at_infinity(lead_comp.p, lead_comp.q, sign)
        if lead_comp.coeff < 0:
            lead_sign = -lead_sign
    n = domination_point(lower_envelope(lead_comp), others)
    return lead_sign, n


def _require_real(phi: SymbolicSequence, what: str) -> SymbolicSequence:
    nf = phi.normalize()
    if not nf.is_real():
        raise DomainError(f"{what} requires a real-valued sequence")
    return nf


def level_set(phi: SymbolicSequence, t, strict: bool = False) -> DefinableSet:
    """``{n : phi(n) >= t}`` (or ``> t`` when ``strict``) for real ``phi``."""
    t = Fraction(t)
    nf = _require_real(phi, "level_set")
    m = nf.modulus
    w = nf.threshold
    pos, neg = set(), set()
    reach = w
    for (s, k), g in nf.cells():
        sgn, n0 = eventual_sign(g, t, s)
        if sgn > 0 or (sgn == 0 and not strict):
            (pos if s > 0 else neg).add(k)
        reach = max(reach, n0)

    vals = nf.eval_window(-reach, reach)

    def member(n):
        v = vals[n + reach].re
        return v > t if strict else v >= t

    return DefinableSet.from_rule(m, pos, neg, -reach, reach, member)


def threshold_set(phi: SymbolicSequence, t) -> DefinableSet:
    """``{n : phi(n) >= t}`` for real ``phi`` and rational ``t > 0``."""
    t = Fraction(t)
    if t <= 0:
        raise DomainError(f"threshold must be positive, got {frac_str(t)}")
    return level_set(phi, t)


def split_pos_neg(phi: SymbolicSequence) -> tuple[SymbolicSequence, SymbolicSequence]:
    """``(phi_plus, phi_minus)``, both nonnegative with disjoint supports."""
    nf = _require_real(phi, "split_pos_neg")
    nonneg = level_set(nf, 0)
    plus = nf.restrict(nonneg)
    minus = (-nf).restrict(~nonneg)
    return plus, minus


# -- seminorms -----------------------------------------------------------


@dataclass(frozen=True)
class Seminorm:
    """Certified enclosure ``lo <= value <= hi``; ``infinite`` overrides both."""

    lo: Fraction | None
    hi: Fraction | None
    infinite: bool = False

    @property
    def exact(self) -> bool:
        return not self.infinite and self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise DomainError("seminorm is not known exactly")
        return self.lo

    def contains(self, x) -> bool:
        if self.infinite:
            return True
        return self.lo <= x <= self.hi

    def to_dict(self) -> dict:
        if self.infinite:
            return {"infinite": True}
        out = {"infinite": False, "lo": frac_str(self.lo), "hi": frac_str(self.hi)}
        if self.exact:
            out["value"] = frac_str(self.lo)
        return out

    def __str__(self):
        if self.infinite:
            return "infinite"
        if self.exact:
            return frac_str(self.lo)
        return f"[{frac_str(self.lo)}, {frac_str(self.hi)}]"


@dataclass
class _CellBound:
    sign: int
    k: int
    limit2: Fraction  # |limit of n^d phi|^2 along the cell
    F_num: tuple  # |rational part|^2 = F_num / F_den
    F_den: tuple
    mono_from: int  # F monotone for sign*x >= mono_from
    fast: list  # envelopes for the rapid part (already shifted by d)


def _cell_bound(g: Germ, sign: int, k: int, d: int) -> _CellBound | None:
    """``None`` when ``n^d phi`` is unbounded on the cell."""
    slow = {x.imag: x for x in g.comps if x.rate == 1}
    const = g.const
    if d >= 1 and not const.is_zero():
        return None
    for x in slow.values():
        if x.excess + d > 0:
            return None
    parts = []
    for imag, c0 in ((False, const.re), (True, const.im)):
        x = slow.get(imag)
        if x is None:
            num, den = ((c0,) if c0 else ()), (1,)
        else:
            num = poly.add(poly.scale(x.q, c0), poly.scale(x.p, x.coeff))
            den = x.q
        parts.append((poly.shift(num, d), den))
    (pr, qr), (pi, qi) = parts
    a = poly.add(poly.mul(poly.mul(pr, pr), poly.mul(qi, qi)), poly.mul(poly.mul(pi, pi), poly.mul(qr, qr)))
    b = poly.mul(poly.mul(qr, qr), poly.mul(qi, qi))
    if a and poly.deg(a) == poly.deg(b):
        limit2 = Fraction(poly.lead(a)) / Fraction(poly.lead(b))
    else:
        limit2 = Fraction(0)
    deriv = poly.sub(poly.mul(poly.derivative(a), b), poly.mul(a, poly.derivative(b)))
    mono = max(poly.root_bound(deriv), poly.root_bound(b))
    fast = [upper_envelope(x, d) for x in g.comps if x.rate < 1]
    return _CellBound(sign, k, limit2, a, b, mono, fast)


def seminorm(kind: str, phi: SymbolicSequence, d: int = 0, tol=DEFAULT_TOL) -> Seminorm:
    """``sup_n |n^d phi(n)|`` as a certified interval of width ``<= tol``.

    ``kind`` is ``"sup"`` (``d = 0``) or ``"schwartz"``."""
    if kind == "sup":
        d = 0
    elif kind != "schwartz":
        raise DomainError(f"unknown seminorm kind {kind!r}")
    if not isinstance(d, int) or d < 0:
        raise DomainError(f"seminorm degree must be a non-negative integer, got {d!r}")
    tol = Fraction(tol)
    nf = phi.normalize()
    m = nf.modulus
    cells = []
    for (s, k), g in nf.cells():
        cb = _cell_bound(g, s, k, d)
        if cb is None:
            return Seminorm(None, None, infinite=True)
        cells.append(cb)

    def weight(n):
        return Fraction(n) ** (2 * d)

    start = max(
        [nf.threshold, 2]
        + [c.mono_from for c in cells]
        + [e.decreasing_from() for c in cells for e in c.fast]
    )
    limit2 = max((c.limit2 for c in cells), default=Fraction(0))
    n_eval = -1
    wmax2 = Fraction(0)
    N = start
    while True:
        reach = N + m
        for n in range(n_eval + 1, reach + 1):
            for x in {n, -n}:
                v = nf.eval(x).abs2() * weight(x)
                if v > wmax2:
                    wmax2 = v
        n_eval = reach
        lo2 = max(wmax2, limit2)
        tail_hi = Fraction(0)
        for c in cells:
            n1 = cell_points_from(c.sign, c.k, m, N)
            f1 = Fraction(poly.evaluate(c.F_num, n1), poly.evaluate(c.F_den, n1)) if c.F_num else Fraction(0)
            rat2 = max(f1, c.limit2)
            fast = sum((e.at(N) for e in c.fast), Fraction(0))
            if fast == 0:
                tail_hi = max(tail_hi, rat2)
            else:
                tail_hi = max(tail_hi, (sqrt_upper(rat2, tol / 8) + fast) ** 2)
        hi2 = max(wmax2, tail_hi)
        if hi2 <= lo2:
            lo, hi = sqrt_interval(lo2, tol)
            return Seminorm(lo, hi)
        lo = sqrt_interval(lo2, tol / 4)[0]
        hi = sqrt_interval(hi2, tol / 4)[1]
        if hi - lo <= tol:
            return Seminorm(lo, hi)
        N *= 2
