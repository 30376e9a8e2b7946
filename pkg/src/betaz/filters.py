"""Filters and ultrafilter traces on the eventually periodic algebra.

Points of the compactification that this algebra can see are

* ``Principal(n)`` -- the integer ``n`` itself;
* ``Direction(sign, M, r)`` -- the nonprincipal points that contain every
  cofinite set, the half-line ``sign``, and the residue class ``r mod M``.

A direction with modulus ``M`` decides every set whose modulus divides
``M``; finer questions need :func:`extend_point` first.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

from .errors import InconsistentTraceError, RefinePointError, ValidationError
from .seqalg import poly
from .seqalg.gaussian import ZERO, GaussianRational
from .seqalg.sequence import SymbolicSequence
from .setalg import ALL, DefinableSet, random_set


def _lcm(a, b):
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class Principal:
    n: int

    def __str__(self):
        return f"n={self.n}"

    def to_dict(self):
        return {"kind": "principal", "n": self.n}


@dataclass(frozen=True)
class Direction:
    sign: int
    modulus: int = 1
    residue: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValidationError(f"direction sign must be +1 or -1, got {self.sign!r}")
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise ValidationError(
                f"residue {self.residue} out of range for modulus {self.modulus}"
            )

    def refines(self, other: "Direction") -> bool:
        return (
            self.sign == other.sign
            and self.modulus % other.modulus == 0
            and self.residue % other.modulus == other.residue
        )

    def __str__(self):
        s = "+inf" if self.sign > 0 else "-inf"
        return f"{s} mod {self.modulus} == {self.residue}"

    def to_dict(self):
        return {
            "kind": "direction",
            "sign": "+inf" if self.sign > 0 else "-inf",
            "modulus": self.modulus,
            "residue": self.residue,
        }


UltrafilterSpec = Union[Principal, Direction]


def point_from_dict(data) -> UltrafilterSpec:
    if data.get("kind") == "principal":
        return Principal(int(data["n"]))
    sign = data["sign"]
    sign = 1 if sign in ("+inf", 1, "+") else -1
    return Direction(sign, int(data["modulus"]), int(data["residue"]))


def extend_point(pt: Direction, modulus: int, residue: int) -> Direction:
    if not isinstance(pt, Direction):
        raise ValidationError("only direction points can be extended")
    if modulus % pt.modulus:
        raise ValidationError(f"{modulus} is not a multiple of {pt.modulus}")
    if residue % pt.modulus != pt.residue:
        raise ValidationError(
            f"residue {residue} is not congruent to {pt.residue} mod {pt.modulus}"
        )
    return Direction(pt.sign, modulus, residue)


def auto_extend(pt: UltrafilterSpec, modulus: int) -> UltrafilterSpec:
    """Canonical refinement of ``pt`` to a multiple of ``modulus`` (keeps the
    residue representative)."""
    if isinstance(pt, Principal) or pt.modulus % modulus == 0:
        return pt
    return Direction(pt.sign, _lcm(pt.modulus, modulus), pt.residue)


def _check_modulus(pt: Direction, modulus: int) -> None:
    if pt.modulus % modulus:
        need = _lcm(pt.modulus, modulus)
        raise RefinePointError(
            f"refine point {pt}: modulus {modulus} does not divide {pt.modulus}", need
        )


def point_contains(pt: UltrafilterSpec, s: DefinableSet) -> bool:
    """Whether ``s`` belongs to the ultrafilter of ``pt``."""
    if isinstance(pt, Principal):
        return s.member(pt.n)
    _check_modulus(pt, s.modulus)
    return s.rule(pt.sign, pt.residue)


# -- filters -------------------------------------------------------------


@dataclass(frozen=True)
class FilterBase:
    base: tuple
    core: DefinableSet  # intersection of the base

    def contains(self, s: DefinableSet) -> bool:
        return self.core.issubset(s)


def _intersection(sets: Iterable[DefinableSet]) -> DefinableSet:
    out = ALL
    for s in sets:
        out = out & s
    return out


def _empty_witness(sets: list[DefinableSet]) -> list[int]:
    """Indices of a minimal subfamily with empty intersection."""
    idx = list(range(len(sets)))
    for i in list(idx):
        trial = [j for j in idx if j != i]
        if trial and _intersection(sets[j] for j in trial).is_empty():
            idx = trial
    return idx


def filter_from_base(sets: list[DefinableSet]) -> FilterBase:
    sets = list(sets)
    if not sets:
        raise ValidationError("filter base must be nonempty")
    core = _intersection(sets)
    if core.is_empty():
        w = _empty_witness(sets)
        raise ValidationError(
            f"not a filter base: the intersection of base sets {w} is empty"
        )
    return FilterBase(tuple(sets), core)


def filter_contains(f: FilterBase, s: DefinableSet) -> bool:
    return f.contains(s)


# -- traces --------------------------------------------------------------


@dataclass(frozen=True)
class TraceResult:
    """Outcome of reconstructing a point from finitely many decisions.

    ``completions`` lists the coarsest points consistent with the trace;
    ``point`` is set when that list has exactly one entry."""

    decisions: tuple
    core: DefinableSet
    modulus: int
    completions: tuple

    @property
    def point(self) -> UltrafilterSpec | None:
        return self.completions[0] if len(self.completions) == 1 else None

    def admits(self, pt: UltrafilterSpec) -> bool:
        if isinstance(pt, Principal):
            return self.core.member(pt.n)
        for c in self.completions:
            if isinstance(c, Direction) and pt.refines(c):
                return True
        return False


def point_from_trace(decisions: list[tuple[DefinableSet, bool]]) -> TraceResult:
    decisions = tuple((s, bool(b)) for s, b in decisions)
    chosen = [s if b else ~s for s, b in decisions]
    core = _intersection(chosen)
    if core.is_empty():
        w = _empty_witness(chosen)
        raise InconsistentTraceError(
            f"inconsistent decisions: selected sets {w} have empty intersection", witness=w
        )
    m = 1
    for s, _ in decisions:
        m = _lcm(m, s.modulus)
    if core.is_finite():
        completions = tuple(Principal(n) for n in core.elements())
    else:
        completions = tuple(
            Direction(sign, m, k)
            for sign in (1, -1)
            for k in range(m)
            if core.rule(sign, k)
        )
    return TraceResult(decisions, core, m, completions)


def trace_of(pt: UltrafilterSpec, family: Iterable[DefinableSet]) -> list[tuple[DefinableSet, bool]]:
    """The ``(S, S in pt)`` decisions of ``pt`` on ``family`` (auto-extending)."""
    out = []
    for s in family:
        out.append((s, point_contains(auto_extend(pt, s.modulus), s)))
    return out


# -- limits --------------------------------------------------------------


def _term_limit(t, sign: int) -> GaussianRational:
    if t.rate < 1 or not t.p or poly.deg(t.p) < poly.deg(t.q):
        return ZERO
    return t.coeff * Fraction(poly.lead(t.p), poly.lead(t.q))


def limit_at(phi: SymbolicSequence, pt: UltrafilterSpec, auto: bool = False) -> GaussianRational:
    """Value of the continuous extension of ``phi`` at ``pt``."""
    if isinstance(pt, Principal):
        return phi.eval(pt.n)
    m = phi.modulus
    if auto:
        pt = auto_extend(pt, m)
    _check_modulus(pt, m)
    acc = ZERO
    for c, s in phi.steps:
        if s.rule(pt.sign, pt.residue):
            acc = acc + c
    for t in phi.tails:
        if not t.is_zero and t.support.rule(pt.sign, pt.residue):
            acc = acc + _term_limit(t, pt.sign)
    return acc


# -- axiom harness -------------------------------------------------------


@dataclass
class AxiomReport:
    axiom: str
    samples: int
    passed: int
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self):
        out = {"axiom": self.axiom, "samples": self.samples, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _membership(target) -> tuple[Callable[[DefinableSet], bool], bool, DefinableSet | None]:
    if isinstance(target, FilterBase):
        return target.contains, False, target.core
    if isinstance(target, (Principal, Direction)):
        def contains(s):
            return point_contains(auto_extend(target, s.modulus), s)
        return contains, True, None
    if callable(target):
        return target, True, None
    raise TypeError(f"unsupported axiom target {type(target).__name__}")


def check_filter_axioms(target, samples: int = 1000, seed: int = 0, ultra: bool | None = None) -> list[AxiomReport]:
    """Randomized check of closure under intersections and supersets, of
    excluding the empty set, and for points of the ``S`` / complement
    dichotomy.

    ``target`` is a :class:`FilterBase`, a point, or a membership callable."""
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    contains, is_ultra, core = _membership(target)
    if ultra is not None:
        is_ultra = ultra
    rng = random.Random(seed)

    def draw():
        s = random_set(rng)
        if core is not None and rng.random() < 0.5:
            s = s | core
        return s

    def cx(**sets):
        return {k: v.to_dict() for k, v in sets.items()}

    reports = []
    r = AxiomReport("empty-set-excluded", 1, 0)
    if contains(DefinableSet.finite([])):
        r.counterexample = cx(S=DefinableSet.finite([]))
    else:
        r.passed = 1
    reports.append(r)

    r = AxiomReport("intersection", samples, 0)
    for _ in range(samples):
        s, t = draw(), draw()
        if contains(s) and contains(t) and not contains(s & t):
            r.counterexample = cx(S=s, T=t)
            break
        r.passed += 1
    reports.append(r)

    r = AxiomReport("superset", samples, 0)
    for _ in range(samples):
        s = draw()
        t = s | random_set(rng)
        if contains(s) and not contains(t):
            r.counterexample = cx(S=s, T=t)
            break
        r.passed += 1
    reports.append(r)

    if is_ultra:
        r = AxiomReport("dichotomy", samples, 0)
        for _ in range(samples):
            s = random_set(rng)
            if contains(s) == contains(~s):
                r.counterexample = cx(S=s)
                break
            r.passed += 1
        reports.append(r)
    return reports
