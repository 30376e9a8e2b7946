"""Seeded random generators of representable sequences for the harnesses."""

from __future__ import annotations

import random
from fractions import Fraction

from .seqalg.gaussian import GaussianRational
from .seqalg.sequence import SymbolicSequence, TailTerm
from .setalg import ALL, DefinableSet, random_set

RATES = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4))
# integer polynomials without integer roots
DENOMINATORS = ((1,), (1, 0, 1), (1, 1, 1), (2, 0, 1), (3, 0, 0, 1), (1, 0, 0, 0, 1))


def random_rational(rng: random.Random, lo: int = -4, hi: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def random_scalar(rng: random.Random, real: bool = False) -> GaussianRational:
    if real or rng.random() < 0.6:
        return GaussianRational(random_rational(rng))
    return GaussianRational(random_rational(rng), random_rational(rng))


def _random_poly(rng, max_deg):
    d = rng.randint(0, max(max_deg, 0))
    p = [rng.randint(-3, 3) for _ in range(d + 1)]
    if p[-1] == 0:
        p[-1] = 1
    return tuple(p)


def random_finite_set(rng: random.Random, spread: int = 8) -> DefinableSet:
    return DefinableSet.finite(rng.sample(range(-spread, spread + 1), rng.randint(1, 4)))


def random_step(rng: random.Random, real: bool = False, max_terms: int = 3) -> SymbolicSequence:
    steps = tuple(
        (random_scalar(rng, real), random_set(rng)) for _ in range(rng.randint(1, max_terms))
    )
    return SymbolicSequence(steps).normalize()


def random_rapid_tail(rng: random.Random, real: bool = False, support=None) -> TailTerm:
    q = rng.choice(DENOMINATORS)
    return TailTerm(
        support if support is not None else random_set(rng),
        _random_poly(rng, 3),
        q,
        rng.choice(RATES),
        random_scalar(rng, real),
    )


def random_slow_tail(rng: random.Random, real: bool = False) -> TailTerm:
    q = rng.choice(DENOMINATORS[1:])
    return TailTerm(
        random_set(rng),
        _random_poly(rng, len(q) - 2),
        q,
        Fraction(1),
        random_scalar(rng, real),
    )


def random_schwartz(rng: random.Random, real: bool = False) -> SymbolicSequence:
    steps = tuple(
        (random_scalar(rng, real), random_finite_set(rng)) for _ in range(rng.randint(0, 2))
    )
    tails = tuple(random_rapid_tail(rng, real) for _ in range(rng.randint(1, 2)))
    return SymbolicSequence(steps, tails).normalize()


def random_smooth(rng: random.Random, real: bool = False) -> SymbolicSequence:
    """Element of the step algebra plus Schwartz terms."""
    base = random_step(rng, real)
    if rng.random() < 0.7:
        tails = tuple(random_rapid_tail(rng, real) for _ in range(rng.randint(1, 2)))
        base = base + SymbolicSequence((), tails)
    return base


def random_bounded(rng: random.Random, real: bool = False) -> SymbolicSequence:
    """Any representable sequence, usually with a slowly decaying part."""
    base = random_smooth(rng, real)
    if rng.random() < 0.8:
        base = base + SymbolicSequence((), (random_slow_tail(rng, real),))
    return base


def random_unit_range(rng: random.Random) -> SymbolicSequence:
    """Real sequence with values in ``[0, 1]``: a convex-style combination of
    building blocks that each take values in ``[0, 1]``."""
    parts = rng.randint(1, 3)
    weights = [Fraction(rng.randint(0, 4), 4 * parts) for _ in range(parts)]
    seq = SymbolicSequence()
    for w in weights:
        s = random_set(rng)
        kind = rng.randrange(4)
        if kind == 0:
            block = SymbolicSequence(((1, s),))
        elif kind == 1:
            block = SymbolicSequence((), (TailTerm(s, (1,), (1,), rng.choice(RATES)),))
        elif kind == 2:
            a = rng.randint(1, 3)
            block = SymbolicSequence((), (TailTerm(s, (a,), (a, 0, 1), Fraction(1)),))
        else:
            block = SymbolicSequence((), (TailTerm(s, (0, 0, 1), (1, 0, 1), Fraction(1)),))
        seq = seq + block.scale(w)
    return seq.normalize()


def random_real_step_on(rng: random.Random, s: DefinableSet = ALL) -> SymbolicSequence:
    return SymbolicSequence(((random_rational(rng), s),)).normalize()
