"""Lexer, AST, recursive-descent parser and printer for the expression DSL.

Three grammars share one lexer::

    set   := and (('|' | '\\') and)*
    and   := unary ('&' unary)*
    unary := '~' unary | 'mod' M '==' r | 'mod' M 'in' '{' r, ... '}'
           | '{' a, ... '}' | '[' a '..' b ']' | 'n' ('>='|'<='|'>'|'<') a
           | 'Z' | 'all' | 'empty' | '(' set ')'

    seq   := on (('+' | '-') on)*
    on    := mul ['on' set]
    mul   := neg ('*' neg)*
    neg   := '-' neg | atom
    atom  := a['/'b] ['i'] | 'i' | 'ind(' set ')' | 'rat(' poly ';' poly [';' rate] ')'
           | 'geo(' rate ')' | 'conj(' seq ')' | '(' seq ')'
           | 'exp(' seq ')' | 'sin(' seq ')' | 'cos(' seq ')' | 'n' | 'pi'

    point := 'n' '=' a | ('+' | '-') 'inf' ['mod' M '==' r]

``exp``, ``sin``, ``cos``, ``n`` and ``pi`` are numeric-only: they lower to
float windows, never to exact sequences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DslError
from ..seqalg import poly as P
from ..seqalg.gaussian import GaussianRational, frac_str

# -- lexing --------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\.\.|==|>=|<=|[<>=+\-*/^|&~\\(){}\[\],;])"
)


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int
    col: int


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | op | eof
    text: str
    span: Span


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            line, col = _position(text, pos)
            raise DslError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup != "ws":
            line, col = _position(text, pos)
            out.append(Token(m.lastgroup, m.group(), Span(pos, m.end(), line, col)))
        pos = m.end()
    line, col = _position(text, len(text))
    out.append(Token("eof", "", Span(len(text), len(text), line, col)))
    return out


# -- AST -----------------------------------------------------------------


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SetMod:
    modulus: int
    residues: tuple
    form: str  # "eq" | "in"
    span: Span = _span()


@dataclass(frozen=True)
class SetFinite:
    elements: tuple
    span: Span = _span()


@dataclass(frozen=True)
class SetInterval:
    lo: int
    hi: int
    span: Span = _span()


@dataclass(frozen=True)
class SetHalf:
    op: str
    bound: int
    span: Span = _span()


@dataclass(frozen=True)
class SetConst:
    name: str  # Z | all | empty
    span: Span = _span()


@dataclass(frozen=True)
class SetComplement:
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class SetBinary:
    op: str  # | & \
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Num:
    value: GaussianRational
    span: Span = _span()


@dataclass(frozen=True)
class Ind:
    set: object
    span: Span = _span()


@dataclass(frozen=True)
class Rat:
    p: tuple
    q: tuple
    rate: Fraction = Fraction(1)
    span: Span = _span()


@dataclass(frozen=True)
class Geo:
    rate: Fraction
    span: Span = _span()


@dataclass(frozen=True)
class Conj:
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class Neg:
    operand: object
    span: Span = _span()


@dataclass(frozen=True)
class On:
    operand: object
    set: object
    span: Span = _span()


@dataclass(frozen=True)
class SeqBinary:
    op: str  # + - *
    left: object
    right: object
    span: Span = _span()


@dataclass(frozen=True)
class Func:
    name: str  # exp | sin | cos
    arg: object
    span: Span = _span()


@dataclass(frozen=True)
class VarN:
    span: Span = _span()


@dataclass(frozen=True)
class Pi:
    span: Span = _span()


@dataclass(frozen=True)
class PointPrincipal:
    n: int
    span: Span = _span()


@dataclass(frozen=True)
class PointDirection:
    sign: int
    modulus: int = 1
    residue: int = 0
    explicit: bool = False
    span: Span = _span()


SET_NODES = (SetMod, SetFinite, SetInterval, SetHalf, SetConst, SetComplement, SetBinary)
NUMERIC_ONLY = (Func, VarN, Pi)

_SEQ_WORDS = {"ind", "rat", "geo", "conj", "exp", "sin", "cos", "pi", "i"}
_SET_WORDS = {"mod", "Z", "all", "empty"}
_FUNCS = ("exp", "sin", "cos")


def walk(node):
    yield node
    for name in ("operand", "left", "right", "set", "arg"):
        child = getattr(node, name, None)
        if child is not None and hasattr(child, "span"):
            yield from walk(child)


def is_numeric_only(node) -> bool:
    return any(isinstance(x, NUMERIC_ONLY) for x in walk(node))


# -- parsing -------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind in ("op", "ident") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def fail(self, expected, tok=None, kind="syntax", message=None):
        tok = tok or self.tok
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        exp = tuple(expected) if not isinstance(expected, str) else (expected,)
        msg = message or f"expected {' or '.join(exp)}, found {found}"
        raise DslError(msg, tok.span.line, tok.span.col, kind=kind, expected=exp)

    def expect(self, text) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def span_from(self, start: Token) -> Span:
        prev = self.toks[self.i - 1] if self.i > 0 else start
        return Span(start.span.start, prev.span.end, start.span.line, start.span.col)

    def end(self):
        if self.tok.kind != "eof":
            self.fail("end of input")

    # integers and rationals

    def integer(self) -> int:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        if self.tok.kind != "num":
            self.fail("integer")
        v = int(self.advance().text)
        return -v if neg else v

    def natural(self, what="integer") -> int:
        if self.tok.kind != "num":
            self.fail(what)
        return int(self.advance().text)

    def rational(self) -> Fraction:
        start = self.tok
        v = Fraction(self.integer())
        if self.at("/"):
            self.advance()
            d = self.natural("denominator")
            if d == 0:
                self.fail("nonzero denominator", start, kind="value", message="zero denominator")
            v /= d
        return v

    # sets

    def set_expr(self):
        start = self.tok
        left = self.set_and()
        while self.at("|", "\\"):
            op = self.advance().text
            right = self.set_and()
            left = SetBinary(op, left, right, self.span_from(start))
        return left

    def set_and(self):
        start = self.tok
        left = self.set_unary()
        while self.at("&"):
            self.advance()
            right = self.set_unary()
            left = SetBinary("&", left, right, self.span_from(start))
        return left

    def set_unary(self):
        start = self.tok
        if self.at("~"):
            self.advance()
            return SetComplement(self.set_unary(), self.span_from(start))
        return self.set_atom()

    def set_atom(self):
        start = self.tok
        t = self.tok
        if self.at("("):
            self.advance()
            inner = self.set_expr()
            self.expect(")")
            return inner
        if self.at("mod"):
            self.advance()
            m = self.natural("modulus")
            if m < 1:
                self.fail("positive modulus", start, kind="value", message="modulus must be positive")
            if self.at("=="):
                self.advance()
                r_tok = self.tok
                r = self.integer()
                self._check_residue(r, m, r_tok)
                return SetMod(m, (r,), "eq", self.span_from(start))
            if self.at("in"):
                self.advance()
                self.expect("{")
                rs = []
                if not self.at("}"):
                    while True:
                        r_tok = self.tok
                        r = self.integer()
                        self._check_residue(r, m, r_tok)
                        rs.append(r)
                        if not self.at(","):
                            break
                        self.advance()
                self.expect("}")
                return SetMod(m, tuple(rs), "in", self.span_from(start))
            self.fail(("'=='", "'in'"))
        if self.at("{"):
            self.advance()
            els = []
            if not self.at("}"):
                while True:
                    els.append(self.integer())
                    if not self.at(","):
                        break
                    self.advance()
            self.expect("}")
            return SetFinite(tuple(els), self.span_from(start))
        if self.at("["):
            self.advance()
            a = self.integer()
            self.expect("..")
            b = self.integer()
            self.expect("]")
            return SetInterval(a, b, self.span_from(start))
        if self.at("n"):
            self.advance()
            if not self.at(">=", "<=", ">", "<"):
                self.fail(("'>='", "'<='", "'>'", "'<'"))
            op = self.advance().text
            return SetHalf(op, self.integer(), self.span_from(start))
        if self.at("Z", "all", "empty"):
            return SetConst(self.advance().text, self.span_from(start))
        if t.kind == "num" or (t.kind == "ident" and t.text in _SEQ_WORDS):
            self.fail(
                "set expression",
                kind="type",
                message=f"expected a set expression, found sequence term {t.text!r}",
            )
        self.fail(("set expression",))

    def _check_residue(self, r, m, tok):
        if not 0 <= r < m:
            self.fail(
                "residue", tok, kind="value", message=f"residue {r} out of range for modulus {m}"
            )

    # polynomials in n

    def poly(self) -> tuple:
        coeffs: dict[int, int] = {}
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        elif self.at("+"):
            self.advance()
        while True:
            c, k = self.monomial()
            coeffs[k] = coeffs.get(k, 0) + sign * c
            if self.at("+", "-"):
                sign = 1 if self.advance().text == "+" else -1
                continue
            break
        top = max(coeffs)
        return P.trim(tuple(coeffs.get(k, 0) for k in range(top + 1)))

    def monomial(self) -> tuple[int, int]:
        c = 1
        have_c = False
        if self.tok.kind == "num":
            c = int(self.advance().text)
            have_c = True
            if self.at("*"):
                self.advance()
                if not self.at("n"):
                    self.fail("'n'")
        if self.at("n"):
            self.advance()
            k = 1
            if self.at("^"):
                self.advance()
                k = self.natural("exponent")
            return c, k
        if not have_c:
            self.fail(("integer", "'n'"))
        return c, 0

    # sequences

    def seq_expr(self):
        start = self.tok
        left = self.seq_on()
        while self.at("+", "-"):
            op = self.advance().text
            right = self.seq_on()
            left = SeqBinary(op, left, right, self.span_from(start))
        return left

    def seq_on(self):
        start = self.tok
        body = self.seq_mul()
        if self.at("on"):
            self.advance()
            s = self.set_expr()
            return On(body, s, self.span_from(start))
        return body

    def seq_mul(self):
        start = self.tok
        left = self.seq_neg()
        while self.at("*"):
            self.advance()
            right = self.seq_neg()
            left = SeqBinary("*", left, right, self.span_from(start))
        return left

    def seq_neg(self):
        start = self.tok
        if self.at("-"):
            self.advance()
            return Neg(self.seq_neg(), self.span_from(start))
        return self.seq_atom()

    def _call_open(self):
        self.advance()
        self.expect("(")

    def seq_atom(self):
        start = self.tok
        t = self.tok
        if t.kind == "num":
            v = Fraction(int(self.advance().text))
            if self.at("/"):
                self.advance()
                d = self.natural("denominator")
                if d == 0:
                    self.fail("nonzero denominator", kind="value", message="zero denominator")
                v /= d
            if self.at("i"):
                self.advance()
                return Num(GaussianRational(0, v), self.span_from(start))
            return Num(GaussianRational(v), self.span_from(start))
        if self.at("i"):
            self.advance()
            return Num(GaussianRational(0, 1), self.span_from(start))
        if self.at("("):
            self.advance()
            inner = self.seq_expr()
            self.expect(")")
            return inner
        if self.at("ind"):
            self._call_open()
            s = self.set_expr()
            self.expect(")")
            return Ind(s, self.span_from(start))
        if self.at("rat"):
            self._call_open()
            p = self.poly()
            self.expect(";")
            q = self.poly()
            rate = Fraction(1)
            if self.at(";"):
                self.advance()
                r_tok = self.tok
                rate = self.rational()
                self._check_rate(rate, r_tok)
            self.expect(")")
            if not q:
                self.fail("nonzero denominator", start, kind="value", message="denominator polynomial is zero")
            return Rat(p, q, rate, self.span_from(start))
        if self.at("geo"):
            self._call_open()
            r_tok = self.tok
            rate = self.rational()
            self._check_rate(rate, r_tok)
            self.expect(")")
            return Geo(rate, self.span_from(start))
        if self.at("conj"):
            self._call_open()
            inner = self.seq_expr()
            self.expect(")")
            return Conj(inner, self.span_from(start))
        if t.kind == "ident" and t.text in _FUNCS:
            self._call_open()
            inner = self.seq_expr()
            self.expect(")")
            return Func(t.text, inner, self.span_from(start))
        if self.at("n"):
            self.advance()
            return VarN(self.span_from(start))
        if self.at("pi"):
            self.advance()
            return Pi(self.span_from(start))
        if (t.kind == "ident" and t.text in _SET_WORDS) or self.at("{", "[", "~"):
            self.fail(
                "sequence expression",
                kind="type",
                message=f"expected a sequence, found set syntax {t.text!r}; wrap sets in ind(...)",
            )
        self.fail(("sequence expression",))

    def _check_rate(self, rate, tok):
        if not 0 < rate <= 1:
            self.fail("rate", tok, kind="value", message="rate must be in (0,1]")

    # points

    def point(self):
        start = self.tok
        if self.at("n"):
            self.advance()
            self.expect("=")
            return PointPrincipal(self.integer(), self.span_from(start))
        if self.at("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            if not self.at("inf"):
                self.fail("'inf'")
            self.advance()
            if self.at("mod"):
                self.advance()
                m_tok = self.tok
                m = self.natural("modulus")
                if m < 1:
                    self.fail("positive modulus", m_tok, kind="value", message="modulus must be positive")
                self.expect("==")
                r_tok = self.tok
                r = self.integer()
                self._check_residue(r, m, r_tok)
                return PointDirection(sign, m, r, True, self.span_from(start))
            return PointDirection(sign, 1, 0, False, self.span_from(start))
        self.fail(("'n='", "'+inf'", "'-inf'"))


GRAMMARS = ("set", "seq", "point")


def parse(text: str, grammar: str = "seq"):
    if grammar not in GRAMMARS:
        raise ValueError(f"unknown grammar {grammar!r}")
    p = _Parser(text)
    node = {"set": p.set_expr, "seq": p.seq_expr, "point": p.point}[grammar]()
    p.end()
    return node


# -- printing ------------------------------------------------------------

_SET_PREC = {"|": 1, "\\": 1, "&": 2}
_SEQ_PREC = {"+": 1, "-": 1, "*": 3}


def _set_prec(node) -> int:
    if isinstance(node, SetBinary):
        return _SET_PREC[node.op]
    if isinstance(node, SetComplement):
        return 3
    return 4


def _seq_prec(node) -> int:
    if isinstance(node, SeqBinary):
        return _SEQ_PREC[node.op]
    if isinstance(node, On):
        return 2
    if isinstance(node, Neg):
        return 4
    return 5


def _wrap(s: str, yes: bool) -> str:
    return f"({s})" if yes else s


def _frac(x: Fraction) -> str:
    return frac_str(x)


def pretty(node) -> str:
    """Canonical source text; ``parse(pretty(a))`` equals ``a``."""
    if isinstance(node, SetMod):
        if node.form == "eq":
            return f"mod {node.modulus} == {node.residues[0]}"
        return f"mod {node.modulus} in {{{', '.join(map(str, node.residues))}}}"
    if isinstance(node, SetFinite):
        return "{" + ", ".join(map(str, node.elements)) + "}"
    if isinstance(node, SetInterval):
        return f"[{node.lo}..{node.hi}]"
    if isinstance(node, SetHalf):
        return f"n {node.op} {node.bound}"
    if isinstance(node, SetConst):
        return node.name
    if isinstance(node, SetComplement):
        return "~" + _wrap(pretty(node.operand), _set_prec(node.operand) < 3)
    if isinstance(node, SetBinary):
        me = _SET_PREC[node.op]
        left = _wrap(pretty(node.left), _set_prec(node.left) < me)
        right = _wrap(pretty(node.right), _set_prec(node.right) <= me)
        return f"{left} {node.op} {right}"
    if isinstance(node, Num):
        v = node.value
        if v.im == 0:
            return _frac(v.re)
        im = "i" if v.im == 1 else f"{_frac(v.im)} i"
        return im if v.re == 0 else f"({_frac(v.re)} + {im})"
    if isinstance(node, Ind):
        return f"ind({pretty(node.set)})"
    if isinstance(node, Rat):
        body = f"{P.to_str(node.p)} ; {P.to_str(node.q)}"
        if node.rate != 1:
            body += f" ; {_frac(node.rate)}"
        return f"rat({body})"
    if isinstance(node, Geo):
        return f"geo({_frac(node.rate)})"
    if isinstance(node, Conj):
        return f"conj({pretty(node.operand)})"
    if isinstance(node, Func):
        return f"{node.name}({pretty(node.arg)})"
    if isinstance(node, VarN):
        return "n"
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Neg):
        return "-" + _wrap(pretty(node.operand), _seq_prec(node.operand) < 4)
    if isinstance(node, On):
        return f"{_wrap(pretty(node.operand), _seq_prec(node.operand) < 3)} on {pretty(node.set)}"
    if isinstance(node, SeqBinary):
        me = _SEQ_PREC[node.op]
        left = _wrap(pretty(node.left), _seq_prec(node.left) < me)
        right = _wrap(pretty(node.right), _seq_prec(node.right) <= me)
        return f"{left} {node.op} {right}"
    if isinstance(node, PointPrincipal):
        return f"n={node.n}"
    if isinstance(node, PointDirection):
        s = "+inf" if node.sign > 0 else "-inf"
        return f"{s} mod {node.modulus} == {node.residue}" if node.explicit else s
    raise TypeError(f"not an AST node: {type(node).__name__}")
