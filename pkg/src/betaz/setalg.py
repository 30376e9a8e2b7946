"""Eventually periodic subsets of the integers.

A :class:`DefinableSet` is stored as a periodic base set plus a finite set of
exceptions.  The base set follows one residue rule for ``n >= 0`` and
another for ``n < 0``; the actual set is the base set with membership flipped
on the exception points.  The serialized form uses the equivalent
"threshold/window" layout: the residue rules govern ``n >= W`` and
``n < -W`` and an explicit table covers ``[-W, W-1]``.

Canonical form: the modulus is the least common multiple of the minimal
periods of the two half-line rules, so two equal sets always have identical
fields.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import DomainError, ValidationError

__all__ = [
    "DefinableSet",
    "make_set",
    "boolean",
    "query",
    "random_set",
    "EMPTY",
    "ALL",
]


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _min_period(residues: frozenset[int], m: int) -> int:
    for d in _divisors(m):
        if all(((k + d) % m in residues) == (k in residues) for k in range(m)):
            return d
    return m


@dataclass(frozen=True)
class DefinableSet:
    """Immutable eventually periodic subset of Z.  Build through the
    classmethod constructors; the raw constructor assumes canonical input."""

    modulus: int
    residues_pos: frozenset
    residues_neg: frozenset
    exceptions: frozenset

    # -- construction -------------------------------------------------

    @classmethod
    def canonical(cls, modulus, residues_pos, residues_neg, exceptions=()):
        if not isinstance(modulus, int) or modulus < 1:
            raise ValidationError(f"modulus must be a positive integer, got {modulus!r}")
        pos = frozenset(residues_pos)
        neg = frozenset(residues_neg)
        for r in pos | neg:
            if not isinstance(r, int) or not 0 <= r < modulus:
                raise ValidationError(f"residue {r!r} out of range for modulus {modulus}")
        dp = _min_period(pos, modulus)
        dn = _min_period(neg, modulus)
        m = dp * dn // math.gcd(dp, dn)
        pos = frozenset(k for k in range(m) if k % modulus in pos)
        neg = frozenset(k for k in range(m) if k % modulus in neg)
        return cls(m, pos, neg, frozenset(int(e) for e in exceptions))

    @classmethod
    def from_rule(cls, modulus, residues_pos, residues_neg, lo, hi, member: Callable[[int], bool]):
        """Periodic rule outside ``[lo, hi]``, ``member`` decides inside."""
        pos = frozenset(residues_pos)
        neg = frozenset(residues_neg)

        exc = [n for n in range(lo, min(hi, -1) + 1) if bool(member(n)) != (n % modulus in neg)]
        exc += [n for n in range(max(lo, 0), hi + 1) if bool(member(n)) != (n % modulus in pos)]
        return cls.canonical(modulus, pos, neg, exc)

    @classmethod
    def periodic(cls, modulus, residues_pos, residues_neg=None):
        if residues_neg is None:
            residues_neg = residues_pos
        return cls.canonical(modulus, residues_pos, residues_neg)

    @classmethod
    def finite(cls, elements: Iterable[int]):
        return cls.canonical(1, (), (), set(elements))

    @classmethod
    def cofinite(cls, excluded: Iterable[int]):
        return cls.canonical(1, {0}, {0}, set(excluded))

    @classmethod
    def interval(cls, a: int, b: int):
        if a > b:
            raise ValidationError(f"interval requires a <= b, got [{a}, {b}]")
        return cls.finite(range(a, b + 1))

    @classmethod
    def at_least(cls, a: int):
        """``{n : n >= a}``."""
        return cls.from_rule(1, {0}, (), min(a, 0), max(a, 0), lambda n: n >= a)

    @classmethod
    def at_most(cls, b: int):
        """``{n : n <= b}``."""
        return cls.from_rule(1, (), {0}, min(b, 0), max(b, 0), lambda n: n <= b)

    # -- membership ---------------------------------------------------

    def rule(self, sign: int, residue: int) -> bool:
        """Membership rule of the half-line ``sign`` on ``residue`` (any modulus
        that is a multiple of ``self.modulus``)."""
        rs = self.residues_pos if sign > 0 else self.residues_neg
        return (residue % self.modulus) in rs

    def _base(self, n: int) -> bool:
        rs = self.residues_pos if n >= 0 else self.residues_neg
        return (n % self.modulus) in rs

    def member(self, n: int) -> bool:
        return self._base(n) != (n in self.exceptions)

    __contains__ = member

    @property
    def threshold(self) -> int:
        w = 0
        for e in self.exceptions:
            w = max(w, e + 1 if e >= 0 else -e)
        return w

    def window(self) -> list[bool]:
        w = self.threshold
        return [self.member(n) for n in range(-w, w)]

    def enumerate_window(self, a: int, b: int) -> list[int]:
        if a > b:
            raise DomainError(f"enumerate_window requires a <= b, got [{a}, {b}]")
        m, exc = self.modulus, self.exceptions
        out = [n for n in range(a, min(b, -1) + 1) if n % m in self.residues_neg]
        out += [n for n in range(max(a, 0), b + 1) if n % m in self.residues_pos]
        if exc:
            out = sorted(set(out).symmetric_difference(e for e in exc if a <= e <= b))
        return out

    # -- queries ------------------------------------------------------

    def is_finite(self) -> bool:
        return not self.residues_pos and not self.residues_neg

    def is_empty(self) -> bool:
        return self.is_finite() and not self.exceptions

    def is_universe(self) -> bool:
        return (
            self.modulus == 1
            and self.residues_pos == {0}
            and self.residues_neg == {0}
            and not self.exceptions
        )

    def cardinality(self) -> int:
        if not self.is_finite():
            raise DomainError("cardinality requested for an infinite set")
        return len(self.exceptions)

    def elements(self) -> list[int]:
        """Sorted elements of a finite set."""
        if not self.is_finite():
            raise DomainError("elements requested for an infinite set")
        return sorted(self.exceptions)

    def issubset(self, other: "DefinableSet") -> bool:
        return (self - other).is_empty()

    def some_element(self) -> int | None:
        """Element of least absolute value (ties go to the negative one)."""
        bound = self.threshold + self.modulus
        for k in range(bound + 1):
            if self.member(-k):
                return -k
            if self.member(k):
                return k
        return None

    def first_at_or_beyond(self, sign: int, start: int) -> int | None:
        """First element ``n`` with ``sign * n >= start`` walking outward."""
        start = max(start, 0)
        for k in range(start, start + self.threshold + self.modulus + 1):
            n = sign * k
            if self.member(n):
                return n
        return None

    # -- boolean algebra ----------------------------------------------

    def _combine(self, other: "DefinableSet", op: Callable[[bool, bool], bool]) -> "DefinableSet":
        m = self.modulus * other.modulus // math.gcd(self.modulus, other.modulus)
        pos = {k for k in range(m) if op(self.rule(1, k), other.rule(1, k))}
        neg = {k for k in range(m) if op(self.rule(-1, k), other.rule(-1, k))}
        w = max(self.threshold, other.threshold)
        return DefinableSet.from_rule(
            m, pos, neg, -w, w - 1, lambda n: op(self.member(n), other.member(n))
        )

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def __xor__(self, other):
        return self._combine(other, lambda a, b: a != b)

    def __invert__(self):
        m = self.modulus
        return DefinableSet(
            m,
            frozenset(range(m)) - self.residues_pos,
            frozenset(range(m)) - self.residues_neg,
            self.exceptions,
        )

    def complement(self):
        return ~self

    def refine(self, modulus: int) -> tuple[frozenset, frozenset]:
        """Residue rules expressed at a multiple ``modulus`` of the own modulus."""
        if modulus % self.modulus:
            raise DomainError(f"modulus {modulus} is not a multiple of {self.modulus}")
        pos = frozenset(k for k in range(modulus) if self.rule(1, k))
        neg = frozenset(k for k in range(modulus) if self.rule(-1, k))
        return pos, neg

    # -- presentation -------------------------------------------------

    def to_dict(self) -> dict:
        w = self.threshold
        return {
            "modulus": self.modulus,
            "residues_pos": sorted(self.residues_pos),
            "residues_neg": sorted(self.residues_neg),
            "threshold": w,
            "window": [int(b) for b in self.window()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DefinableSet":
        try:
            m = int(data["modulus"])
            pos = [int(r) for r in data["residues_pos"]]
            neg = [int(r) for r in data["residues_neg"]]
            w = int(data.get("threshold", 0))
            table = list(data.get("window", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed set object: {exc}") from None
        if len(table) != 2 * w:
            raise ValidationError(f"window must have {2 * w} entries, got {len(table)}")
        probe = cls.canonical(m, pos, neg)
        exc = [n for n, b in zip(range(-w, w), table) if bool(b) != probe._base(n)]
        return cls.canonical(m, pos, neg, exc)

    def __str__(self) -> str:
        if self.is_finite():
            return "{" + ", ".join(map(str, self.elements())) + "}"
        if self.is_universe():
            return "Z"
        parts = []
        if self.residues_pos == self.residues_neg:
            parts.append(f"n mod {self.modulus} in {sorted(self.residues_pos)}")
        else:
            parts.append(
                f"n mod {self.modulus} in {sorted(self.residues_pos)} (n>=0), "
                f"{sorted(self.residues_neg)} (n<0)"
            )
        if self.exceptions:
            parts.append(f"flipped at {sorted(self.exceptions)}")
        return "; ".join(parts)


EMPTY = DefinableSet(1, frozenset(), frozenset(), frozenset())
ALL = DefinableSet(1, frozenset({0}), frozenset({0}), frozenset())


def make_set(kind: str, *args) -> DefinableSet:
    """Constructor dispatch: ``periodic``, ``finite``, ``cofinite``,
    ``interval``, ``at_least``, ``at_most``, ``all``, ``empty``."""
    builders = {
        "periodic": DefinableSet.periodic,
        "finite": DefinableSet.finite,
        "cofinite": DefinableSet.cofinite,
        "interval": DefinableSet.interval,
        "at_least": DefinableSet.at_least,
        "at_most": DefinableSet.at_most,
        "all": lambda: ALL,
        "empty": lambda: EMPTY,
    }
    if kind not in builders:
        raise ValidationError(f"unknown set kind {kind!r}")
    return builders[kind](*args)


def boolean(op: str, a: DefinableSet, b: DefinableSet | None = None) -> DefinableSet:
    if op == "complement":
        if b is not None:
            raise ValidationError("complement takes one argument")
        return ~a
    if b is None:
        raise ValidationError(f"{op} takes two arguments")
    table = {
        "union": DefinableSet.__or__,
        "intersect": DefinableSet.__and__,
        "difference": DefinableSet.__sub__,
    }
    if op not in table:
        raise ValidationError(f"unknown boolean operation {op!r}")
    return table[op](a, b)


def query(kind: str, s: DefinableSet, *args):
    if kind == "member":
        return s.member(*args)
    if kind == "is_empty":
        return s.is_empty()
    if kind == "is_finite":
        return s.is_finite()
    if kind == "cardinality_if_finite":
        return s.cardinality()
    if kind == "equals":
        return s == args[0]
    if kind == "enumerate_window":
        return s.enumerate_window(*args)
    raise ValidationError(f"unknown query {kind!r}")


def random_set(rng: random.Random, max_modulus: int = 6, spread: int = 8) -> DefinableSet:
    """Random set with small modulus and a few exceptional points near 0."""
    m = rng.randint(1, max_modulus)
    shape = rng.random()
    if shape < 0.1:
        return DefinableSet.finite(rng.sample(range(-spread, spread + 1), rng.randint(0, 4)))
    pos = {k for k in range(m) if rng.random() < 0.5}
    neg = pos if shape < 0.6 else {k for k in range(m) if rng.random() < 0.5}
    exc = rng.sample(range(-spread, spread + 1), rng.randint(0, 3))
    return DefinableSet.canonical(m, pos, neg, exc)
