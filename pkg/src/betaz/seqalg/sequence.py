"""Exact step-plus-tail representation of bounded sequences on Z.

A :class:`SymbolicSequence` is a finite sum of step terms ``c * 1_S`` and
tail terms ``c * p(n)/q(n) * r**|n|`` restricted to eventually periodic sets.
Beyond the largest window of its supports every residue cell ``(sign, k)``
carries a *germ*: a constant plus finitely many rate components.  The
normal form is rebuilt from those germs, which makes it canonical: equal
sequences normalize to equal objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

from ..errors import ValidationError
from ..setalg import ALL, DefinableSet
from . import poly
from .gaussian import ONE, ZERO, GaussianRational, frac_dict, frac_from_dict, frac_str


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class TailTerm:
    """``coeff * p(n)/q(n) * rate**|n|`` on ``support``, zero elsewhere."""

    support: DefinableSet
    p: tuple
    q: tuple
    rate: Fraction
    coeff: GaussianRational = ONE

    def __post_init__(self):
        p = poly.trim(int(a) for a in self.p)
        q = poly.trim(int(a) for a in self.q)
        rate = Fraction(self.rate)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "rate", rate)
        object.__setattr__(self, "coeff", GaussianRational.coerce(self.coeff))
        if not 0 < rate <= 1:
            raise ValidationError(f"rate must be in (0,1], got {frac_str(rate)}")
        if not q:
            raise ValidationError("denominator polynomial is zero")
        if poly.has_integer_root(q):
            raise ValidationError(f"denominator {poly.to_str(q)} vanishes at an integer")
        if rate == 1 and poly.deg(p) > poly.deg(q):
            raise ValidationError(
                f"term {poly.to_str(p)} / ({poly.to_str(q)}) is unbounded on Z"
            )

    @property
    def is_zero(self) -> bool:
        return not self.p or self.coeff.is_zero() or self.support.is_empty()

    def decay_class(self) -> str:
        """``rapid``, ``polynomial`` or ``convergent`` (to a nonzero constant)."""
        if self.rate < 1 or not self.p:
            return "rapid"
        if poly.deg(self.p) < poly.deg(self.q):
            return "polynomial"
        return "convergent"

    def value(self, n: int) -> GaussianRational:
        if not self.support.member(n):
            return ZERO
        return self.coeff * (
            Fraction(poly.evaluate(self.p, n), poly.evaluate(self.q, n)) * self.rate ** abs(n)
        )

    def to_dict(self) -> dict:
        return {
            "coeff": self.coeff.to_dict(),
            "p": list(self.p),
            "q": list(self.q),
            "r": frac_dict(self.rate),
            "set": self.support.to_dict(),
        }

    @classmethod
    def from_dict(cls, data) -> "TailTerm":
        try:
            return cls(
                DefinableSet.from_dict(data["set"]),
                tuple(int(a) for a in data["p"]),
                tuple(int(a) for a in data["q"]),
                frac_from_dict(data["r"]),
                GaussianRational.from_dict(data["coeff"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed tail object: {exc}") from None


@dataclass(frozen=True, order=True)
class Component:
    """One rate component of a germ: ``coeff * p/q * rate**|n|``, times ``i``
    when ``imag``.  ``p/q`` is reduced, ``q`` has positive leading coefficient."""

    rate: Fraction
    imag: bool
    p: tuple
    q: tuple
    coeff: Fraction

    @property
    def excess(self) -> int:
        """``deg p - deg q``; the growth exponent of the rational factor."""
        return poly.deg(self.p) - poly.deg(self.q)

    def real_value(self, n: int) -> Fraction:
        return self.coeff * Fraction(poly.evaluate(self.p, n), poly.evaluate(self.q, n)) * (
            self.rate ** abs(n)
        )

    def value(self, n: int) -> GaussianRational:
        v = self.real_value(n)
        return GaussianRational(0, v) if self.imag else GaussianRational(v)

    def leading_ratio(self) -> Fraction:
        """``coeff * lead(p)/lead(q)``."""
        return self.coeff * Fraction(poly.lead(self.p), poly.lead(self.q))

    def as_gaussian(self, x: Fraction) -> GaussianRational:
        return GaussianRational(0, x) if self.imag else GaussianRational(x)


@dataclass(frozen=True)
class Germ:
    """Behaviour of a sequence on one residue cell beyond its window."""

    const: GaussianRational
    comps: tuple

    def tail_value(self, n: int) -> GaussianRational:
        return sum((c.value(n) for c in self.comps), ZERO)

    @property
    def has_slow_part(self) -> bool:
        return any(c.rate == 1 for c in self.comps)


class _Bucket:
    """Accumulates ``sum c_j p_j/q_j`` for one rate as ``(Nre + i Nim) / D``."""

    __slots__ = ("nre", "nim", "den")

    def __init__(self):
        self.nre, self.nim, self.den = (), (), (1,)

    def add(self, c: GaussianRational, p, q):
        g = poly.gcd(self.den, q)
        qq = poly.divmod_(q, g)[0]
        dd = poly.divmod_(self.den, g)[0]
        self.nre = poly.add(poly.mul(self.nre, qq), poly.scale(poly.mul(p, dd), c.re))
        self.nim = poly.add(poly.mul(self.nim, qq), poly.scale(poly.mul(p, dd), c.im))
        self.den = poly.mul(self.den, qq)


def _reduce_part(num, den):
    if not num:
        return None
    g = poly.gcd(num, den)
    p = poly.divmod_(num, g)[0]
    q = poly.divmod_(den, g)[0]
    cp, pp = poly.primitive(p)
    cq, qq = poly.primitive(q)
    return pp, qq, cp / cq


def germ_at(steps, tails, sign: int, k: int) -> Germ:
    """Germ of the sum of ``steps``/``tails`` on the cell ``(sign, k)``.

    ``k`` is a residue modulo any common multiple of the supports' moduli."""
    const = ZERO
    for c, s in steps:
        if s.rule(sign, k):
            const = const + c
    active = tuple(
        (t.rate, t.coeff, t.p, t.q)
        for t in tails
        if not t.is_zero and t.support.rule(sign, k)
    )
    folded, comps = _tail_germ(active)
    return Germ(const + folded, comps)


@lru_cache(maxsize=8192)
def _tail_germ(active: tuple) -> tuple[GaussianRational, tuple]:
    # cells with the same active tails share this work
    const = ZERO
    buckets: dict[Fraction, _Bucket] = {}
    for rate, coeff, p, q in active:
        buckets.setdefault(rate, _Bucket()).add(coeff, p, q)
    comps = []
    for rate, b in buckets.items():
        nre, nim, den = b.nre, b.nim, b.den
        if rate == 1:
            qre, nre = poly.divmod_(nre, den) if nre else ((), ())
            qim, nim = poly.divmod_(nim, den) if nim else ((), ())
            assert poly.deg(qre) <= 0 and poly.deg(qim) <= 0, "unbounded product"
            const = const + GaussianRational(qre[0] if qre else 0, qim[0] if qim else 0)
        for imag, num in ((False, nre), (True, nim)):
            part = _reduce_part(num, den)
            if part is not None:
                comps.append(Component(rate, imag, part[0], part[1], part[2]))
    return const, tuple(sorted(comps))


@dataclass(frozen=True)
class SymbolicSequence:
    """Finite sum of step terms ``(c, S)`` and :class:`TailTerm` s."""

    steps: tuple = ()
    tails: tuple = ()
    normal: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        steps = tuple((GaussianRational.coerce(c), s) for c, s in self.steps)
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "tails", tuple(self.tails))

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c) -> "SymbolicSequence":
        return cls(((c, ALL),)).normalize()

    @classmethod
    def indicator(cls, s: DefinableSet) -> "SymbolicSequence":
        return cls(((ONE, s),)).normalize()

    @classmethod
    def rational(cls, p, q, rate=1, support: DefinableSet = ALL, coeff=ONE) -> "SymbolicSequence":
        return cls((), (TailTerm(support, tuple(p), tuple(q), Fraction(rate), coeff),)).normalize()

    @classmethod
    def geometric(cls, rate, support: DefinableSet = ALL, coeff=ONE) -> "SymbolicSequence":
        return cls.rational((1,), (1,), rate, support, coeff)

    # -- structure ----------------------------------------------------

    def supports(self):
        yield from (s for _, s in self.steps)
        yield from (t.support for t in self.tails)

    @property
    def modulus(self) -> int:
        return reduce(_lcm, (s.modulus for s in self.supports()), 1)

    @property
    def threshold(self) -> int:
        return max((s.threshold for s in self.supports()), default=0)

    def germ(self, sign: int, k: int) -> Germ:
        return germ_at(self.steps, self.tails, sign, k)

    def cells(self):
        """``((sign, k), germ)`` for every residue cell at the joint modulus."""
        m = self.modulus
        return [((s, k), self.germ(s, k)) for s in (1, -1) for k in range(m)]

    # -- evaluation ---------------------------------------------------

    def eval(self, n: int) -> GaussianRational:
        acc = ZERO
        for c, s in self.steps:
            if s.member(n):
                acc = acc + c
        for t in self.tails:
            if not t.is_zero:
                acc = acc + t.value(n)
        return acc

    __call__ = eval

    def eval_window(self, a: int, b: int) -> list[GaussianRational]:
        # real and imaginary parts are summed separately; GaussianRational
        # construction per partial sum dominated the profile
        re = [Fraction(0)] * (b - a + 1)
        im = [Fraction(0)] * (b - a + 1)
        for c, s in self.steps:
            for n in s.enumerate_window(a, b):
                if c.re:
                    re[n - a] += c.re
                if c.im:
                    im[n - a] += c.im
        for t in self.tails:
            if t.is_zero:
                continue
            rn, rd = t.rate.numerator, t.rate.denominator
            for n in t.support.enumerate_window(a, b):
                k = abs(n)
                x = Fraction(poly.evaluate(t.p, n) * rn**k, poly.evaluate(t.q, n) * rd**k)
                if t.coeff.re:
                    re[n - a] += t.coeff.re * x
                if t.coeff.im:
                    im[n - a] += t.coeff.im * x
        return [GaussianRational(x, y) for x, y in zip(re, im)]

    # -- normal form --------------------------------------------------

    def normalize(self) -> "SymbolicSequence":
        if self.normal:
            return self
        m = self.modulus
        w = self.threshold
        germs = {(s, k): self.germ(s, k) for s in (1, -1) for k in range(m)}

        groups: dict[tuple, tuple[set, set]] = {}
        for (s, k), g in germs.items():
            if g.comps:
                pos, neg = groups.setdefault(g.comps, (set(), set()))
                (pos if s > 0 else neg).add(k)
        tails = []
        for comps, (pos, neg) in groups.items():
            support = DefinableSet.canonical(m, pos, neg)
            for c in comps:
                coeff = GaussianRational(0, c.coeff) if c.imag else GaussianRational(c.coeff)
                tails.append(TailTerm(support, c.p, c.q, c.rate, coeff))

        def cell_of(n):
            return (1 if n >= 0 else -1, n % m)

        window_vals = {}
        for n, v in zip(range(-w, w), self.eval_window(-w, w - 1) if w else ()):
            window_vals[n] = v - germs[cell_of(n)].tail_value(n)

        at_value: dict[GaussianRational, set] = {}
        for n, v in window_vals.items():
            at_value.setdefault(v, set()).add(n)
        values = {g.const for g in germs.values()} | set(at_value)
        values.discard(ZERO)
        steps = []
        for v in values:
            pos = {k for (s, k), g in germs.items() if s > 0 and g.const == v}
            neg = {k for (s, k), g in germs.items() if s < 0 and g.const == v}
            sset = DefinableSet.from_rule(m, pos, neg, -w, w - 1, at_value.get(v, set()).__contains__)
            steps.append((v, sset))
        steps.sort(key=lambda cs: cs[0].sort_key())
        tails.sort(key=_tail_key)
        return SymbolicSequence(tuple(steps), tuple(tails), normal=True)

    def equals(self, other: "SymbolicSequence") -> bool:
        return self.normalize() == other.normalize()

    def is_zero(self) -> bool:
        n = self.normalize()
        return not n.steps and not n.tails

    def is_real(self) -> bool:
        n = self.normalize()
        return all(c.is_real() for c, _ in n.steps) and all(t.coeff.is_real() for t in n.tails)

    def is_step(self) -> bool:
        return not self.normalize().tails

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_sequence(other)
        return SymbolicSequence(self.steps + other.steps, self.tails + other.tails).normalize()

    __radd__ = __add__

    def scale(self, c) -> "SymbolicSequence":
        c = GaussianRational.coerce(c)
        return SymbolicSequence(
            tuple((c * a, s) for a, s in self.steps),
            tuple(TailTerm(t.support, t.p, t.q, t.rate, c * t.coeff) for t in self.tails),
        ).normalize()

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-_as_sequence(other))

    def __rsub__(self, other):
        return _as_sequence(other) - self

    def conjugate(self) -> "SymbolicSequence":
        return SymbolicSequence(
            tuple((a.conjugate(), s) for a, s in self.steps),
            tuple(
                TailTerm(t.support, t.p, t.q, t.rate, t.coeff.conjugate()) for t in self.tails
            ),
        ).normalize()

    def __mul__(self, other):
        if not isinstance(other, SymbolicSequence):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self.normalize(), other.normalize()
        steps = []
        tails = []
        for c1, s1 in a.steps:
            for c2, s2 in b.steps:
                inter = s1 & s2
                if not inter.is_empty():
                    steps.append((c1 * c2, inter))
            for t in b.tails:
                inter = s1 & t.support
                if not inter.is_empty():
                    tails.append(TailTerm(inter, t.p, t.q, t.rate, c1 * t.coeff))
        for t in a.tails:
            for c2, s2 in b.steps:
                inter = t.support & s2
                if not inter.is_empty():
                    tails.append(TailTerm(inter, t.p, t.q, t.rate, c2 * t.coeff))
            for u in b.tails:
                inter = t.support & u.support
                if not inter.is_empty():
                    tails.append(
                        TailTerm(
                            inter,
                            poly.mul(t.p, u.p),
                            poly.mul(t.q, u.q),
                            t.rate * u.rate,
                            t.coeff * u.coeff,
                        )
                    )
        return SymbolicSequence(tuple(steps), tuple(tails)).normalize()

    __rmul__ = __mul__

    def restrict(self, s: DefinableSet) -> "SymbolicSequence":
        return self * SymbolicSequence.indicator(s)

    # -- serialization ------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "steps": [
                {"re": frac_dict(c.re), "im": frac_dict(c.im), "set": s.to_dict()}
                for c, s in self.steps
            ],
            "tails": [t.to_dict() for t in self.tails],
        }

    @classmethod
    def from_dict(cls, data) -> "SymbolicSequence":
        try:
            steps = tuple(
                (
                    GaussianRational(frac_from_dict(st["re"]), frac_from_dict(st["im"])),
                    DefinableSet.from_dict(st["set"]),
                )
                for st in data.get("steps", [])
            )
            tails = tuple(TailTerm.from_dict(t) for t in data.get("tails", []))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError(f"malformed sequence object: {exc}") from None
        return cls(steps, tails)

    def __str__(self) -> str:
        parts = [f"{c}*1[{s}]" for c, s in self.steps]
        for t in self.tails:
            body = f"({poly.to_str(t.p)})/({poly.to_str(t.q)})"
            if t.rate != 1:
                body += f"*({frac_str(t.rate)})^|n|"
            parts.append(f"{t.coeff}*{body} on [{t.support}]")
        return " + ".join(parts) if parts else "0"


def _tail_key(t: TailTerm):
    s = t.support
    return (
        t.rate,
        t.coeff.im != 0,
        t.p,
        t.q,
        t.coeff.sort_key(),
        s.modulus,
        tuple(sorted(s.residues_pos)),
        tuple(sorted(s.residues_neg)),
    )


def _as_sequence(x) -> SymbolicSequence:
    if isinstance(x, SymbolicSequence):
        return x
    return SymbolicSequence(((GaussianRational.coerce(x), ALL),))


def arith(op: str, phi: SymbolicSequence, psi=None) -> SymbolicSequence:
    """Dispatch for ``add``, ``scale``, ``multiply`` and ``conjugate``."""
    if op == "add":
        return phi + psi
    if op == "scale":
        return phi.scale(psi)
    if op == "multiply":
        return phi * psi
    if op == "conjugate":
        return phi.conjugate()
    raise ValidationError(f"unknown arithmetic operation {op!r}")


ZERO_SEQ = SymbolicSequence((), (), normal=True)
