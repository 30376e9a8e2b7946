"""Expression corpus and a formatting fuzzer shared by the frontend tests and
the acceptance run."""

import random

import numpy as np

from betaz.frontend import syntax
from betaz.frontend.lower import lower, lower_numeric

SETS = [
    "mod 2 == 0",
    "(mod 2 == 0) & (mod 3 == 0)",
    "mod 6 in {1, 5}",
    "{1, 4, 9}",
    "{}",
    "[-3..7]",
    "n >= 0",
    "n < -4",
    "n <= 10 & n > 2",
    "Z",
    "all",
    "empty",
    "~(mod 2 == 0)",
    "~~{0}",
    "mod 2 == 0 | mod 3 == 0",
    "mod 2 == 0 \\ {0, 2, 4}",
    "~mod 4 == 1 & n >= 0",
    "(mod 4 == 1 | mod 4 == 3) & ~[0..100]",
    "~(n >= 0 | {-1}) | mod 5 in {0, 2}",
    "(mod 3 == 1 \\ n > 9) \\ mod 2 == 1",
    "mod 12 in {0, 3, 4, 8, 9} & ~{3, 4}",
    "{-7, 7} | [-2..2] | n >= 50",
]

SEQS = [
    "1/2",
    "3/4 i",
    "1/2 + 3/4 i",
    "-i",
    "ind(mod 2 == 0)",
    "ind(mod 2 == 0) + rat(1 ; n^2+1)",
    "rat(1 ; n^2+1)",
    "rat(n ; n^3+2)",
    "rat(n^2 ; n^2+1)",
    "rat(2n^3 - n ; n^4+1 ; 1/2)",
    "rat(n+1 ; n^2+n+1)",
    "geo(1/2)",
    "geo(1)",
    "geo(2/3) * ind(n >= 0)",
    "conj(3/4 i * ind({1, 2}))",
    "-ind(mod 3 == 1)",
    "--geo(1/3)",
    "geo(1/2) on mod 2 == 0",
    "geo(1/2) + rat(1 ; n^2+1) on n >= 0",
    "(geo(1/2) + rat(1 ; n^2+1)) on n >= 0",
    "2 * ind(mod 2 == 0) - 3 * ind({8})",
    "ind(mod 2 == 0) * ind(mod 3 == 0)",
    "5/3 - geo(1/4) * (1 - ind([0..3]))",
    "-(1/2 + i) * conj(geo(3/4))",
    "ind(~{0}) * rat(n ; n^3+2)",
    "3 * ind({3}) + 5 * ind({8}) + 2 * ind(mod 2 == 0)",
    "conj(conj(i * geo(1/2)))",
    "rat(1 ; 2n^2+1 ; 3/4) - rat(1 ; 2n^2+1 ; 3/4)",
    "ind(mod 4 in {0, 1}) on n < 0",
    "(1 - geo(1/2)) * ind(n >= 1)",
    "exp(i * pi * geo(1/2))",
    "sin(n) * geo(1/2)",
    "cos(pi * n) + 1",
    "exp(-1/100 * n * n)",
]

POINTS = [
    "n=5",
    "n = -12",
    "+inf",
    "-inf",
    "+inf mod 2 == 0",
    "-inf mod 6 == 5",
    "+inf mod 32 == 16",
    "-inf mod 1 == 0",
]

CORPUS = [(t, "set") for t in SETS] + [(t, "seq") for t in SEQS] + [(t, "point") for t in POINTS]

_SPACES = ["", " ", "  ", "\t", "\n", " \n  "]
_PAREN_OK = (syntax.SET_NODES, syntax.Num, syntax.Ind, syntax.Rat, syntax.Geo, syntax.Conj,
             syntax.Neg, syntax.On, syntax.SeqBinary, syntax.Func, syntax.VarN, syntax.Pi)


def _glued(a, b):
    # "2n" must not become "2 n" inside a polynomial monomial, nor may
    # two words run together
    return a.kind in ("num", "ident") and b.kind in ("num", "ident")


def fuzz(text: str, grammar: str, rng: random.Random) -> str:
    """Re-emit ``text`` with random extra parentheses around AST nodes and
    random whitespace between tokens."""
    tree = syntax.parse(text, grammar)
    opens, closes = {}, {}
    if grammar != "point":
        for node in syntax.walk(tree):
            if isinstance(node, _PAREN_OK) and rng.random() < 0.3:
                k = rng.randint(1, 2)
                opens[node.span.start] = opens.get(node.span.start, 0) + k
                closes[node.span.end] = closes.get(node.span.end, 0) + k
    out, prev = [], None
    for tok in syntax.tokenize(text):
        if tok.kind == "eof":
            break
        if prev is not None:
            gap = text[prev.span.end : tok.span.start]
            if gap:
                out.append(rng.choice(_SPACES[1:]))
            elif not _glued(prev, tok):
                out.append(rng.choice(_SPACES))
        out.append("(" * opens.get(tok.span.start, 0) + tok.text + ")" * closes.get(tok.span.end, 0))
        prev = tok
    return "".join(out)


def lowered(text: str, grammar: str):
    """A comparable value for ``text``: domain objects, or a numeric window."""
    node = syntax.parse(text, grammar)
    if grammar == "seq" and syntax.is_numeric_only(node):
        from betaz.windows import window_eval

        return window_eval(lower_numeric(node), 30).values
    return lower(node)


def same_value(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return bool(np.allclose(a, b, rtol=1e-12, atol=1e-15))
    if hasattr(a, "equals"):
        return a.equals(b)
    return a == b
