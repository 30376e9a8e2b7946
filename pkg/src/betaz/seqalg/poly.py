"""Dense univariate polynomials over Q as tuples, lowest degree first."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

Poly = tuple


def trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def deg(p: Poly) -> int:
    """Degree; the zero polynomial has degree -1."""
    return len(p) - 1


def lead(p: Poly):
    return p[-1]


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def scale(p: Poly, c) -> Poly:
    return trim(c * a for a in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def shift(p: Poly, k: int) -> Poly:
    """Multiply by ``n**k``."""
    return trim((0,) * k + tuple(p)) if p else ()


def evaluate(p: Poly, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def derivative(p: Poly) -> Poly:
    return trim(i * a for i, a in enumerate(p) if i)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(a) for a in trim(p)]
    out = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    lq = Fraction(q[-1])
    while len(r) >= len(q) and r:
        c = r[-1] / lq
        k = len(r) - len(q)
        out[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = list(trim(r))
    return trim(out), trim(r)


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    if not a:
        return ()
    return tuple(Fraction(c) / Fraction(a[-1]) for c in a)


def primitive(p: Poly) -> tuple[Fraction, tuple]:
    """Split ``p`` as ``content * prim`` with ``prim`` an integer polynomial
    of content 1 and positive leading coefficient."""
    p = trim(p)
    if not p:
        return Fraction(0), ()
    fr = [Fraction(a) for a in p]
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    g = reduce(math.gcd, (abs(a) for a in ints))
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(a // g for a in ints)


def cauchy_bound(p: Poly) -> Fraction:
    """Every real root lies strictly inside ``(-B, B)``."""
    p = trim(p)
    if len(p) <= 1:
        return Fraction(0)
    lc = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(a)) / lc for a in p[:-1])


def has_integer_root(p: Poly) -> bool:
    """Whether an integer polynomial vanishes somewhere on Z (rational root test)."""
    p = trim(p)
    if not p:
        return True
    if p[0] == 0:
        return True
    if len(p) == 1:
        return False
    a0 = abs(int(p[0]))
    bound = cauchy_bound(p)
    d = 1
    while d * d <= a0:
        if a0 % d == 0:
            for c in (d, a0 // d):
                if c < bound and (evaluate(p, c) == 0 or evaluate(p, -c) == 0):
                    return True
        d += 1
    return False


def to_str(p: Poly, var: str = "n") -> str:
    """Human form such as ``2n^3 - n + 5``."""
    p = trim(p)
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        a = p[k]
        if a == 0:
            continue
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            coef = "" if mag == 1 else str(mag)
            body = coef + var + (f"^{k}" if k > 1 else "")
        if not parts:
            parts.append(("-" if a < 0 else "") + body)
        else:
            parts.append(("- " if a < 0 else "+ ") + body)
    return " ".join(parts)


def taylor_shift(p: Poly, c) -> Poly:
    """Coefficients of ``p(x + c)``."""
    a = list(p)
    n = len(a)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] += c * a[j + 1]
    return trim(a)


def _no_roots_from(p: Poly, c) -> bool:
    s = taylor_shift(p, c)
    if not s or s[0] == 0:
        return False
    return all(a >= 0 for a in s) or all(a <= 0 for a in s)


def root_bound(p: Poly) -> int:
    """Integer ``N >= 0`` such that ``p`` has no real root ``x`` with ``|x| >= N``.

    Uses Descartes' rule on Taylor shifts, which is far tighter than the
    Cauchy bound when coefficients are unbalanced."""
    p = trim(p)
    if len(p) <= 1:
        return 0
    # root locations are unchanged by scaling; integer shifts are much cheaper
    den = reduce(math.lcm, (Fraction(a).denominator for a in p), 1)
    p = tuple(int(Fraction(a) * den) for a in p)
    neg = trim(a * (-1) ** i for i, a in enumerate(p))
    out = 0
    for q in (p, neg):
        hi = 1
        while not _no_roots_from(q, hi):
            hi *= 2
        lo = hi // 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if _no_roots_from(q, mid):
                hi = mid
            else:
                lo = mid
        out = max(out, hi)
    return out
