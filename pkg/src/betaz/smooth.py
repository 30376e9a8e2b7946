"""Smoothness at points of the compactification and the function-space ladder.

For a representable sequence the germ on a residue cell is a constant plus
rate components.  Subtracting the limit leaves the components; rapid ones
(rate < 1) are killed by every power ``n^d``, while a rate-1 component
``~ L n^-k`` makes ``n^k (phi - limit)`` tend to ``L != 0``.  Smoothness at a
direction point is therefore "no rate-1 component on the cell", and global
smoothness quantifies over the finitely many cells.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .filters import Direction, Principal, UltrafilterSpec, auto_extend, point_contains
from .sampling import random_bounded, random_schwartz, random_smooth
from .seqalg.bounds import cell_points_from
from .seqalg.gaussian import ONE, ZERO, GaussianRational, frac_str
from .seqalg.sequence import Germ, SymbolicSequence
from .setalg import DefinableSet

DEFAULT_DMAX = 5
_SAMPLE_SCALES = (10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000)


def _gr_str(x: GaussianRational) -> str:
    return str(x)


@dataclass(frozen=True)
class SmoothnessVerdict:
    """``smooth`` plus, when false, a witness of the failure.

    ``degree`` is the least ``d`` for which ``n^d (phi(n) - value)`` does not
    tend to zero along ``point``; it tends to ``limit_value`` there.
    ``samples`` are cell points where ``|n^D (phi(n) - value)| >= 1`` holds
    exactly, with ``D = sample_degree >= degree``; ``trend`` lists exact
    values at ``degree`` itself."""

    smooth: bool
    point: UltrafilterSpec | None = None
    reference: GaussianRational | None = None
    degree: int | None = None
    kind: str | None = None
    limit_value: GaussianRational | None = None
    sample_degree: int | None = None
    samples: tuple = ()
    trend: tuple = ()

    def verify(self, phi: SymbolicSequence) -> bool:
        """Re-evaluate every sample exactly."""
        if self.smooth:
            return True
        for n, v in self.samples:
            w = (phi.eval(n) - self.reference) * (Fraction(n) ** self.sample_degree)
            if w != v or w.abs2() < 1:
                return False
        for n, v in self.trend:
            if (phi.eval(n) - self.reference) * (Fraction(n) ** self.degree) != v:
                return False
        return len(self.samples) >= 3

    def to_dict(self) -> dict:
        if self.smooth:
            out = {"smooth": True}
            if self.point is not None:
                out["point"] = self.point.to_dict()
            return out
        return {
            "smooth": False,
            "point": self.point.to_dict(),
            "reference": _gr_str(self.reference),
            "degree": self.degree,
            "kind": f"{self.kind}({self.limit_value})" if self.kind == "nonzero-limit" else self.kind,
            "limit_value": _gr_str(self.limit_value),
            "sample_degree": self.sample_degree,
            "samples": [{"n": n, "value": _gr_str(v)} for n, v in self.samples],
            "trend": [{"n": n, "value": _gr_str(v)} for n, v in self.trend],
        }


def _witness(nf, g: Germ, pt: Direction, reference) -> SmoothnessVerdict:
    limit = g.const
    ref = limit if reference is None else GaussianRational.coerce(reference)
    offset = limit - ref
    slow = [c for c in g.comps if c.rate == 1]
    if not offset.is_zero():
        degree, value = 0, offset
    elif slow:
        degree = min(-c.excess for c in slow)
        value = ZERO
        for c in slow:
            if -c.excess == degree:
                value = value + c.as_gaussian(c.leading_ratio())
    else:
        return SmoothnessVerdict(True, point=pt, reference=ref)

    start = nf.threshold + 1
    cands = []
    for scale in _SAMPLE_SCALES:
        n = cell_points_from(pt.sign, pt.residue, pt.modulus, max(scale, start))
        if n not in cands:
            cands.append(n)

    def delta(n):
        return nf.eval(n) - ref

    deltas = {n: delta(n) for n in cands}
    trend = tuple((n, deltas[n] * Fraction(n) ** degree) for n in cands[:6:2])
    samples = ()
    for D in range(degree, degree + 64):
        hits = []
        for n in cands:
            v = deltas[n] * Fraction(n) ** D
            if v.abs2() >= 1:
                hits.append((n, v))
        if len(hits) >= 3:
            samples = tuple(hits[:3])
            break
    return SmoothnessVerdict(
        False,
        point=pt,
        reference=ref,
        degree=degree,
        kind="nonzero-limit",
        limit_value=value,
        sample_degree=D,
        samples=samples,
        trend=trend,
    )


def smooth_at(phi: SymbolicSequence, pt: UltrafilterSpec, reference=None) -> SmoothnessVerdict:
    """Decide the vanishing of ``n^d (phi(n) - phi(pt))`` for all ``d`` along
    ``pt``.  ``reference`` replaces ``phi(pt)`` when given (used to test a
    claimed limit value)."""
    if isinstance(pt, Principal):
        ref = phi.eval(pt.n) if reference is None else GaussianRational.coerce(reference)
        if ref != phi.eval(pt.n):
            raise ValidationError("a principal point has no freedom in its value")
        return SmoothnessVerdict(True, point=pt, reference=ref)
    nf = phi.normalize()
    pt = auto_extend(pt, nf.modulus)
    g = nf.germ(pt.sign, pt.residue)
    return _witness(nf, g, pt, reference)


def is_smooth(phi: SymbolicSequence) -> SmoothnessVerdict:
    """Smoothness at every point; principal points are automatic, so only the
    two direction points of each residue cell need checking."""
    nf = phi.normalize()
    m = nf.modulus
    for (s, k), g in nf.cells():
        if g.has_slow_part:
            return _witness(nf, g, Direction(s, m, k), None)
    return SmoothnessVerdict(True)


# -- hierarchy -----------------------------------------------------------

_LATTICE = (
    ("cc", "schwartz"),
    ("schwartz", "c0"),
    ("cc", "lc"),
    ("schwartz", "lc_plus_schwartz"),
    ("lc", "lc_plus_schwartz"),
    ("lc_plus_schwartz", "smooth"),
    ("smooth", "linf"),
    ("c0", "linf"),
)


@dataclass(frozen=True)
class HierarchyReport:
    cc: bool
    schwartz: bool
    c0: bool
    lc: bool
    lc_plus_schwartz: bool
    smooth: bool
    linf: bool
    witness: SmoothnessVerdict | None = field(default=None, compare=False)

    def consistent(self) -> bool:
        return all(not getattr(self, a) or getattr(self, b) for a, b in _LATTICE)

    def flags(self) -> dict:
        return {
            k: getattr(self, k)
            for k in ("cc", "schwartz", "c0", "lc", "lc_plus_schwartz", "smooth", "linf")
        }

    def to_dict(self) -> dict:
        out = self.flags()
        out["consistent"] = self.consistent()
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def classify(phi: SymbolicSequence) -> HierarchyReport:
    nf = phi.normalize()
    finite_steps = all(s.is_finite() for _, s in nf.steps)
    rapid = all(t.rate < 1 for t in nf.tails)
    verdict = is_smooth(nf)
    rep = HierarchyReport(
        cc=finite_steps and not nf.tails,
        schwartz=finite_steps and rapid,
        c0=all(g.const.is_zero() for _, g in nf.cells()),
        lc=not nf.tails,
        lc_plus_schwartz=rapid,
        smooth=verdict.smooth,
        linf=True,
        witness=None if verdict.smooth else verdict,
    )
    if not rep.consistent():
        raise AssertionError(f"inconsistent hierarchy flags {rep.flags()}")
    return rep


# -- the U_n construction ------------------------------------------------


@dataclass(frozen=True)
class ChainCertificate:
    terms: tuple  # ((Fraction c_q, DefinableSet S_q), ...)
    c0: Fraction
    chain: tuple  # U_1 ⊋ U_2 ⊋ ...
    witnesses: tuple  # ((d, n, q, |n^d (c_q - c0)|), ...)
    direction: Direction
    step_function: SymbolicSequence
    verdict: SmoothnessVerdict

    def to_dict(self) -> dict:
        return {
            "c0": frac_str(self.c0),
            "chain": [u.to_dict() for u in self.chain],
            "chain_strictly_decreasing": True,
            "witnesses": [
                {"d": d, "n": n, "q": q, "value": frac_str(v), "lower_bound": str(n ** (d - 1))}
                for d, n, q, v in self.witnesses
            ],
            "direction": self.direction.to_dict(),
            "verdict": self.verdict.to_dict(),
        }


def prop26_certificate(spec, c0=0, d_max: int = DEFAULT_DMAX) -> ChainCertificate:
    """Build the decreasing chain ``U_n`` for a finite family of disjoint
    infinite supports ``S_q`` with constants ``c_q -> c0``, and exhibit for
    each ``d in 2..d_max`` an integer with ``|n^d (c_q - c0)| >= n^(d-1) >= 1``."""
    c0 = Fraction(c0)
    terms = []
    for c, s in spec:
        if isinstance(c, GaussianRational):
            if not c.is_real():
                raise ValidationError("constants must be rational")
            c = c.re
        terms.append((Fraction(c), s))
    if not terms:
        raise ValidationError("spec must be nonempty")
    if d_max < 2:
        raise ValidationError("d_max must be at least 2")
    for i, (c, s) in enumerate(terms, 1):
        if s.is_finite():
            raise ValidationError(f"S_{i} must be infinite")
        if c == c0:
            raise ValidationError(f"c_{i} equals c0")
    consts = [c for c, _ in terms]
    if len(set(consts)) != len(consts):
        raise ValidationError("constants must be distinct")
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if not (terms[i][1] & terms[j][1]).is_empty():
                raise ValidationError(f"S_{i + 1} and S_{j + 1} are not disjoint")
    gaps = [abs(c - c0) for c in consts]
    if any(b > a for a, b in zip(gaps, gaps[1:])):
        raise ValidationError("|c_q - c0| must be nonincreasing in list order")

    pieces = [s & DefinableSet.at_least(math.ceil(1 / gap)) for (_, s), gap in zip(terms, gaps)]
    chain = []
    for n in range(len(terms)):
        u = DefinableSet.finite([])
        for piece in pieces[n:]:
            u = u | piece
        chain.append(u)
    for a, b in zip(chain, chain[1:]):
        if not b.issubset(a) or a == b:
            raise AssertionError("U_n chain is not strictly decreasing")
    if any(u.is_empty() for u in chain):
        raise AssertionError("empty U_n")

    witnesses = []
    for d in range(2, d_max + 1):
        u = chain[min(d + 1, len(chain)) - 1]
        n = u.first_at_or_beyond(1, 1)
        q = next(i for i, piece in enumerate(pieces, 1) if piece.member(n))
        gap = gaps[q - 1]
        value = Fraction(n) ** d * gap
        assert n * gap >= 1 and value >= n ** (d - 1) >= 1
        witnesses.append((d, n, q, value))

    last = chain[-1]
    k = min(last.residues_pos)
    direction = Direction(1, last.modulus, k)
    assert point_contains(direction, last)
    step = SymbolicSequence(tuple((c, s) for c, s in terms)).normalize()
    verdict = smooth_at(step, direction, reference=c0)
    if verdict.smooth:
        raise AssertionError("certificate direction does not violate the smoothness limit")
    return ChainCertificate(
        tuple(terms), c0, tuple(chain), tuple(witnesses), direction, step, verdict
    )


# -- ideal structure -----------------------------------------------------


@dataclass
class StructureReport:
    kind: str
    samples: int
    passed: int
    checks: list = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None and all(c["ok"] for c in self.checks)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "samples": self.samples, "passed": self.passed, "ok": self.ok}
        if self.checks:
            out["checks"] = self.checks
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def structure_checks(kind: str, samples: int = 1000, seed: int = 0) -> StructureReport:
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    rng = random.Random(seed)
    if kind == "schwartz_ideal":
        rep = StructureReport(kind, samples, 0)
        for i in range(samples):
            psi = random_schwartz(rng)
            phi = random_smooth(rng) if i % 2 == 0 else random_bounded(rng)
            if not classify(psi).schwartz:
                raise AssertionError("generator produced a non-Schwartz sequence")
            prod = phi * psi
            if not classify(prod).schwartz:
                rep.counterexample = {"phi": phi.to_dict(), "psi": psi.to_dict()}
                break
            rep.passed += 1
        return rep
    if kind == "unital_not_ideal":
        one = SymbolicSequence.constant(ONE)
        psi = SymbolicSequence.rational((1,), (1, 0, 1))
        prod = one * psi
        c_one, c_psi, c_prod = classify(one), classify(psi), classify(prod)
        checks = [
            {"claim": "1 is in the step algebra", "ok": c_one.lc},
            {"claim": "1/(n^2+1) is bounded", "ok": c_psi.linf},
            {"claim": "1/(n^2+1) is not in the step algebra", "ok": not c_psi.lc},
            {"claim": "1 * 1/(n^2+1) = 1/(n^2+1)", "ok": prod.equals(psi)},
            {"claim": "product leaves the step algebra", "ok": not c_prod.lc},
            {"claim": "1 is smooth", "ok": c_one.smooth},
            {"claim": "product is not smooth", "ok": not c_prod.smooth},
        ]
        rep = StructureReport(kind, len(checks), sum(c["ok"] for c in checks), checks)
        return rep
    raise ValidationError(f"unknown structure check {kind!r}")
