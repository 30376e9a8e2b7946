"""Projection expansions of sequences.

Two expansions are provided:

* the greedy dyadic series ``phi = sum_q 2^-q 1_{P_q}`` for ``0 <= phi <= 1``,
  truncated at a chosen depth with a certified sup-norm remainder bound;
* the level form ``phi = sum_q c_q 1_{S_q}`` of a step function, with
  pairwise disjoint nonempty supports and distinct nonzero constants.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .seqalg.bounds import level_set, seminorm, threshold_set
from .seqalg.gaussian import GaussianRational, frac_str
from .seqalg.sequence import ZERO_SEQ, SymbolicSequence

DEFAULT_DEPTH = 16


@dataclass(frozen=True)
class DyadicExpansion:
    levels: tuple  # ((Fraction weight, DefinableSet), ...)
    remainder_bound: Fraction
    depth: int
    remainder: SymbolicSequence

    def prefix(self, n: int) -> "DyadicExpansion":
        """Depth-``n`` truncation (the greedy construction is prefix-stable)."""
        if not 1 <= n <= self.depth:
            raise DomainError(f"prefix depth must be in 1..{self.depth}")
        return DyadicExpansion(self.levels[:n], Fraction(1, 2**n), n, None)

    def to_dict(self) -> dict:
        return {
            "kind": "dyadic",
            "depth": self.depth,
            "levels": [
                {"weight": frac_str(w), "set": s.to_dict()} for w, s in self.levels
            ],
            "remainder_bound": frac_str(self.remainder_bound),
        }


@dataclass(frozen=True)
class LevelExpansion:
    terms: tuple  # ((GaussianRational, DefinableSet), ...) sorted by constant

    def to_dict(self) -> dict:
        return {
            "kind": "levels",
            "terms": [
                {"re": frac_str(c.re), "im": frac_str(c.im), "set": s.to_dict()}
                for c, s in self.terms
            ],
        }


def check_unit_range(phi: SymbolicSequence) -> None:
    """Raise :class:`DomainError` with a witness unless ``0 <= phi <= 1``."""
    nf = phi.normalize()
    if not nf.is_real():
        raise DomainError("dyadic expansion requires a real-valued sequence")
    below = ~level_set(nf, 0)
    if not below.is_empty():
        n = below.some_element()
        raise DomainError(f"value {nf.eval(n)} at n={n} is below 0", witness=n)
    above = level_set(nf, 1, strict=True)
    if not above.is_empty():
        n = above.some_element()
        raise DomainError(f"value {nf.eval(n)} at n={n} exceeds 1", witness=n)


# normal form -> (levels, remainder) of the deepest expansion built so far;
# the greedy construction is prefix-stable, so deeper requests resume from it
_GREEDY: OrderedDict = OrderedDict()
_GREEDY_SIZE = 256


def _greedy_levels(nf: SymbolicSequence, depth: int) -> tuple[list, SymbolicSequence]:
    levels, rem = _GREEDY.pop(nf, ([], nf))
    levels = list(levels)
    for q in range(len(levels) + 1, depth + 1):
        w = Fraction(1, 2**q)
        p_q = threshold_set(rem, w)
        levels.append((w, p_q))
        if not p_q.is_empty():
            step = ((GaussianRational(-w), p_q),)
            rem = SymbolicSequence(rem.steps + step, rem.tails).normalize()
    if len(levels) == depth:
        _GREEDY[nf] = (tuple(levels), rem)
        if len(_GREEDY) > _GREEDY_SIZE:
            _GREEDY.popitem(last=False)
        return levels, rem
    # a deeper expansion is cached; its remainder at this depth is rebuilt
    _GREEDY[nf] = (tuple(levels), rem)
    head = levels[:depth]
    steps = tuple((GaussianRational(-w), p) for w, p in head if not p.is_empty())
    return head, SymbolicSequence(nf.steps + steps, nf.tails).normalize()


def dyadic_decompose(phi: SymbolicSequence, depth: int = DEFAULT_DEPTH) -> DyadicExpansion:
    if depth < 1:
        raise DomainError(f"depth must be at least 1, got {depth}")
    nf = phi.normalize()
    if nf not in _GREEDY:
        check_unit_range(nf)
    levels, rem = _greedy_levels(nf, depth)
    bound = Fraction(1, 2**depth)
    if rem.is_step():
        bound = min(bound, seminorm("sup", rem).value)
    return DyadicExpansion(tuple(levels), bound, depth, rem)


def level_decompose(phi: SymbolicSequence) -> LevelExpansion:
    nf = phi.normalize()
    if nf.tails:
        raise DomainError(
            "level form requires step function; tail part returned separately by classify"
        )
    return LevelExpansion(tuple(sorted(nf.steps, key=lambda cs: cs[0].sort_key())))


def recompose(expansion) -> SymbolicSequence:
    if isinstance(expansion, DyadicExpansion):
        steps = tuple(
            (GaussianRational(w), s) for w, s in expansion.levels if not s.is_empty()
        )
    elif isinstance(expansion, LevelExpansion):
        steps = expansion.terms
    else:
        raise TypeError(f"cannot recompose {type(expansion).__name__}")
    if not steps:
        return ZERO_SEQ
    return SymbolicSequence(steps).normalize()
