"""Lowering of checked ASTs to domain values."""

from __future__ import annotations

import numpy as np

from ..errors import DslError, ValidationError
from ..filters import Direction, Principal
from ..seqalg.gaussian import GaussianRational
from ..seqalg.sequence import SymbolicSequence, TailTerm
from ..setalg import ALL, EMPTY, DefinableSet
from ..windows import NumericSource
from . import syntax as A


def _err(node, message, kind="type"):
    sp = node.span
    line, col = (sp.line, sp.col) if sp is not None else (1, 1)
    return DslError(message, line, col, kind=kind)


def lower_set(node) -> DefinableSet:
    if isinstance(node, A.SetMod):
        return DefinableSet.periodic(node.modulus, set(node.residues))
    if isinstance(node, A.SetFinite):
        return DefinableSet.finite(node.elements)
    if isinstance(node, A.SetInterval):
        return DefinableSet.interval(node.lo, node.hi)
    if isinstance(node, A.SetHalf):
        b = node.bound
        return {
            ">=": lambda: DefinableSet.at_least(b),
            ">": lambda: DefinableSet.at_least(b + 1),
            "<=": lambda: DefinableSet.at_most(b),
            "<": lambda: DefinableSet.at_most(b - 1),
        }[node.op]()
    if isinstance(node, A.SetConst):
        return EMPTY if node.name == "empty" else ALL
    if isinstance(node, A.SetComplement):
        return ~lower_set(node.operand)
    if isinstance(node, A.SetBinary):
        a, b = lower_set(node.left), lower_set(node.right)
        return {"|": a | b, "&": a & b, "\\": a - b}[node.op]
    raise _err(node, f"expected a set, found {type(node).__name__}")


def lower_seq(node) -> SymbolicSequence:
    """Exact lowering; numeric-only nodes are a sort error here."""
    if isinstance(node, A.NUMERIC_ONLY):
        raise _err(node, "numeric-only term; use it with `window eval`")
    if isinstance(node, A.SET_NODES):
        raise _err(node, "set used as a sequence; wrap it in ind(...)")
    if isinstance(node, A.Num):
        return SymbolicSequence.constant(node.value)
    if isinstance(node, A.Ind):
        return SymbolicSequence.indicator(lower_set(node.set))
    if isinstance(node, A.Rat):
        try:
            return SymbolicSequence((), (TailTerm(ALL, node.p, node.q, node.rate),)).normalize()
        except ValidationError as e:
            raise _err(node, str(e), kind="value") from None
    if isinstance(node, A.Geo):
        return SymbolicSequence.geometric(node.rate)
    if isinstance(node, A.Conj):
        return lower_seq(node.operand).conjugate()
    if isinstance(node, A.Neg):
        return -lower_seq(node.operand)
    if isinstance(node, A.On):
        return lower_seq(node.operand).restrict(lower_set(node.set))
    if isinstance(node, A.SeqBinary):
        a, b = lower_seq(node.left), lower_seq(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    raise _err(node, f"expected a sequence, found {type(node).__name__}")


def _numeric(node, ns: np.ndarray) -> np.ndarray:
    if not A.is_numeric_only(node):
        seq = lower_seq(node)
        vals = seq.eval_window(int(ns[0]), int(ns[-1]))
        return np.array([complex(float(v.re), float(v.im)) for v in vals])
    if isinstance(node, A.VarN):
        return ns.astype(complex)
    if isinstance(node, A.Pi):
        return np.full(len(ns), np.pi, dtype=complex)
    if isinstance(node, A.Func):
        return {"exp": np.exp, "sin": np.sin, "cos": np.cos}[node.name](_numeric(node.arg, ns))
    if isinstance(node, A.Conj):
        return np.conj(_numeric(node.operand, ns))
    if isinstance(node, A.Neg):
        return -_numeric(node.operand, ns)
    if isinstance(node, A.On):
        s = lower_set(node.set)
        mask = np.array([s.member(int(n)) for n in ns])
        return np.where(mask, _numeric(node.operand, ns), 0)
    if isinstance(node, A.SeqBinary):
        a, b = _numeric(node.left, ns), _numeric(node.right, ns)
        return {"+": a + b, "-": a - b, "*": a * b}[node.op]
    raise _err(node, f"cannot evaluate {type(node).__name__} numerically")


def lower_numeric(node) -> NumericSource:
    """Float lowering for window evaluation (exact parts rounded once)."""
    if isinstance(node, A.SET_NODES):
        raise _err(node, "set used as a sequence; wrap it in ind(...)")
    # surface sort errors before any window is requested
    _numeric(node, np.arange(-1, 2))
    return NumericSource(A.pretty(node), {}, lambda ns: _numeric(node, ns), builtin=False)


def lower_point(node):
    if isinstance(node, A.PointPrincipal):
        return Principal(node.n)
    if isinstance(node, A.PointDirection):
        return Direction(node.sign, node.modulus, node.residue)
    raise _err(node, f"expected a point, found {type(node).__name__}")


def lower(node):
    if isinstance(node, A.SET_NODES):
        return lower_set(node)
    if isinstance(node, (A.PointPrincipal, A.PointDirection)):
        return lower_point(node)
    return lower_seq(node)


def parse_set(text: str) -> DefinableSet:
    return lower_set(A.parse(text, "set"))


def parse_seq(text: str) -> SymbolicSequence:
    return lower_seq(A.parse(text, "seq"))


def parse_point(text: str):
    return lower_point(A.parse(text, "point"))


def parse_scalar(text: str) -> GaussianRational:
    """A constant sequence expression such as ``1/2 + 3/4 i``."""
    seq = parse_seq(text).normalize()
    if seq.tails or not (seq.is_zero() or seq.modulus == 1 and seq.threshold == 0):
        raise DslError("expected a constant", 1, 1, kind="type")
    return seq.eval(0)
