"""Hypothesis strategies.  Sets come with an oracle built from the raw
description, independent of the canonical form."""

import random

from hypothesis import strategies as st

from betaz import sampling
from betaz.setalg import DefinableSet


@st.composite
def described_sets(draw, max_modulus=6, spread=8):
    m = draw(st.integers(1, max_modulus))
    pos = draw(st.frozensets(st.integers(0, m - 1)))
    neg = draw(st.frozensets(st.integers(0, m - 1)))
    exc = draw(st.frozensets(st.integers(-spread, spread), max_size=5))

    def oracle(n):
        base = (n % m) in (pos if n >= 0 else neg)
        return base != (n in exc)

    return DefinableSet.canonical(m, pos, neg, exc), oracle


sets = described_sets().map(lambda so: so[0])
seeds = st.integers(0, 2**32 - 1)


def seeded(gen, **kw):
    return seeds.map(lambda s: gen(random.Random(s), **kw))


smooth_seqs = seeded(sampling.random_smooth)
bounded_seqs = seeded(sampling.random_bounded)
step_seqs = seeded(sampling.random_step)
schwartz_seqs = seeded(sampling.random_schwartz)
real_bounded_seqs = seeded(sampling.random_bounded, real=True)
unit_seqs = seeded(sampling.random_unit_range)
