"""Exact complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from ..errors import ValidationError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a rational literal: {x!r}") from None
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """``re + im*i`` with both parts :class:`fractions.Fraction`."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x)

    # arithmetic
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        den = o.abs2()
        if den == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({frac_str(self.re)!r}, {frac_str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return frac_str(self.re)
        im = frac_str(abs(self.im))
        im = "i" if im == "1" else f"{im} i"
        if self.re == 0:
            return ("-" if self.im < 0 else "") + im
        return f"{frac_str(self.re)} {'-' if self.im < 0 else '+'} {im}"

    _PARSE = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*i)?\s*$")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"a/b"``, ``"a/b + c/d i"`` or ``"-i"`` style literals."""
        t = text.strip()
        if t in ("i", "+i"):
            return cls(0, 1)
        if t == "-i":
            return cls(0, -1)
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)\s*i", t)
        if m:
            return cls(0, _frac(m.group(1)))
        m = cls._PARSE.match(t)
        if not m or not t:
            raise ValidationError(f"not a Gaussian rational: {text!r}")
        re_part = _frac(m.group(1)) if m.group(1) else Fraction(0)
        im_part = Fraction(0)
        if m.group(2):
            im_part = _frac(m.group(3)) if m.group(3) else Fraction(1)
            if m.group(2) == "-":
                im_part = -im_part
        return cls(re_part, im_part)

    def to_dict(self) -> dict:
        return {"re": frac_dict(self.re), "im": frac_dict(self.im)}

    @classmethod
    def from_dict(cls, data) -> "GaussianRational":
        return cls(frac_from_dict(data["re"]), frac_from_dict(data["im"]))


def frac_dict(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def frac_from_dict(data) -> Fraction:
    if isinstance(data, str):
        return _frac(data)
    try:
        return Fraction(int(data["num"]), int(data["den"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(f"malformed rational object: {data!r}") from None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
