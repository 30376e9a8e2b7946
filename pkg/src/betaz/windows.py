"""Finite numeric windows ``[-N, N]`` of sequences.

Windows are diagnostics.  A profile that looks like it decays says nothing
certain about points at infinity; the exact modules decide those questions.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, ValidationError
from .seqalg.sequence import SymbolicSequence

ZERO_CUTOFF = 1e-6
JITTER = 1.10


@dataclass(frozen=True)
class NumericSource:
    """A sequence given by a vectorized float formula ``fn(ns) -> values``."""

    name: str
    params: dict = field(default_factory=dict)
    fn: Callable[[np.ndarray], np.ndarray] = field(default=None, compare=False, repr=False)
    builtin: bool = True


def inv_n2_plus_1() -> NumericSource:
    return NumericSource("inv_n2_plus_1", {}, lambda ns: 1.0 / (ns.astype(float) ** 2 + 1.0))


def exp_i_schwartz(psi: SymbolicSequence, scale: float = 1.0) -> NumericSource:
    """``n -> exp(i * scale * psi(n))`` for a real Schwartz sequence ``psi``."""
    from .smooth import classify

    if not psi.is_real():
        raise DomainError("exp_i_schwartz needs a real-valued sequence")
    if not classify(psi).schwartz:
        raise DomainError("exp_i_schwartz needs a Schwartz sequence")

    def fn(ns):
        vals = np.array([float(psi.eval(int(n)).re) for n in ns])
        return np.exp(1j * scale * vals)

    return NumericSource("exp_i_schwartz", {"psi": str(psi), "scale": scale}, fn)


@dataclass(frozen=True)
class WindowSequence:
    N: int
    values: np.ndarray = field(compare=False)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (2 * self.N + 1,):
            raise ValidationError(f"window of half-width {self.N} needs {2 * self.N + 1} values")
        if not np.all(np.isfinite(vals)):
            raise DomainError("window values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def ns(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def __getitem__(self, n: int) -> complex:
        if not -self.N <= n <= self.N:
            raise IndexError(n)
        return complex(self.values[n + self.N])

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "provenance": self.provenance,
            "values": [
                {"n": int(n), "re": float(v.real), "im": float(v.imag)}
                for n, v in zip(self.ns, self.values)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value_re", "value_im"])
        for n, v in zip(self.ns, self.values):
            w.writerow([int(n), repr(float(v.real)), repr(float(v.imag))])
        return buf.getvalue()


def window_eval(source, N: int) -> WindowSequence:
    if not isinstance(N, int) or N < 1:
        raise ValidationError(f"window half-width must be a positive integer, got {N!r}")
    ns = np.arange(-N, N + 1)
    if isinstance(source, SymbolicSequence):
        # exact values rounded once, so the window is correctly rounded
        vals = [complex(float(v.re), float(v.im)) for v in source.eval_window(-N, N)]
        return WindowSequence(N, np.array(vals), {"kind": "sampled-from-symbolic", "expr": str(source)})
    if isinstance(source, NumericSource):
        vals = np.asarray(source.fn(ns), dtype=complex)
        if source.builtin:
            prov = {"kind": "builtin", "name": source.name, "params": source.params}
        else:
            prov = {"kind": "external", "expr": source.name}
        return WindowSequence(N, vals, prov)
    raise ValidationError(f"cannot evaluate a window of {type(source).__name__}")


@dataclass(frozen=True)
class Profile:
    d: int
    sign: int
    modulus: int
    residue: int
    candidate_limit: complex
    ns: np.ndarray = field(compare=False)
    values: np.ndarray = field(compare=False)
    trend: str = "bounded"

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "direction": "+inf" if self.sign > 0 else "-inf",
            "modulus": self.modulus,
            "residue": self.residue,
            "candidate_limit": {"re": self.candidate_limit.real, "im": self.candidate_limit.imag},
            "trend": self.trend,
            "approaching": float(self.values[-1]) if len(self.values) else None,
            "caveat": "finite window; diagnostic only",
            "profile": [{"n": int(n), "value": float(v)} for n, v in zip(self.ns, self.values)],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in zip(self.ns, self.values):
            w.writerow([int(n), repr(float(v))])
        return buf.getvalue()


def classify_trend(values: np.ndarray) -> str:
    if len(values) < 4:
        return "bounded"
    q = len(values) // 4
    first, last = values[:q], values[-q:]
    if np.all(last < ZERO_CUTOFF) and np.all(last[1:] <= JITTER * last[:-1] + 1e-300):
        return "decreasing-to-zero"
    # a saturating increase (n^2/(n^2+1)) is bounded, not growing
    if last.min() > first.max() and last.max() > JITTER * first.max():
        return "growing"
    return "bounded"


def empirical_profile(
    w: WindowSequence,
    sign: int,
    d: int,
    candidate_limit: complex = 0,
    modulus: int = 1,
    residue: int = 0,
) -> Profile:
    """``|n^d (w[n] - candidate_limit)|`` along one direction of the window,
    ordered by increasing ``|n|``."""
    if d < 0:
        raise ValidationError("d must be nonnegative")
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    if modulus < 1 or not 0 <= residue < modulus:
        raise ValidationError(f"residue {residue} out of range for modulus {modulus}")
    ns = w.ns
    keep = (np.sign(ns) == sign) & (ns % modulus == residue)
    ns = ns[keep]
    if sign < 0:
        ns = ns[::-1]
    vals = w.values[ns + w.N]
    prof = np.abs(ns.astype(float)) ** d * np.abs(vals - complex(candidate_limit))
    return Profile(d, sign, modulus, residue, complex(candidate_limit), ns, prof, classify_trend(prof))


def empirical_seminorm(w: WindowSequence, d: int) -> float:
    if d < 0:
        raise ValidationError("d must be nonnegative")
    return float(np.max(np.abs(w.ns.astype(float)) ** d * np.abs(w.values)))
