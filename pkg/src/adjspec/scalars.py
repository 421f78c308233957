"""
Scalar fields used throughout the package.

Two families are supported:

* exact: :class:`GaussianRational`, a + b*i with ``fractions.Fraction`` parts
* approximate: Python ``complex`` (stored as ``complex128`` inside arrays)

Matrices over the exact field are numpy arrays of dtype ``object`` holding
``GaussianRational`` entries; approximate matrices are ``complex128`` arrays.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, ParseError


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-10
    rel_eps: float = 1e-10

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


class GaussianRational:
    """Exact complex number with rational real and imaginary parts.

    >>> GaussianRational(1, 2) + GaussianRational(1, 3)
    GaussianRational('5/6')
    >>> I = GaussianRational(0, 1)
    >>> I * I == -1
    True
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, str):
            v = parse_exact(re)
            self.re, self.im = v.re, v.im
            return
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass Fraction or str")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # coercion -----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)):
            return GaussianRational._raw(Fraction(other), Fraction(0))
        return None

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational._raw(self.re * o.re, Fraction(0))
        return GaussianRational._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("exact division by zero")
        if not o.im:
            return GaussianRational._raw(self.re / o.re, self.im / o.re)
        norm = o.re * o.re + o.im * o.im
        return GaussianRational._raw(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (exact)."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        if not self.im:
            return abs(float(self.re))
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __str__(self):
        return format_exact(self)

    def __repr__(self):
        return f"GaussianRational('{format_exact(self)}')"


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))

ExactScalar = GaussianRational


# text encoding -----------------------------------------------------------

_NUM = r"(?:\d+/\d+|\d+(?:\.\d*)?|\.\d+)"
_REAL_RE = re.compile(rf"^([+-]?{_NUM})$")
_IMAG_RE = re.compile(rf"^([+-]?)({_NUM})?\*?i$")
_CPLX_RE = re.compile(rf"^([+-]?{_NUM})([+-])({_NUM})?\*?i$")


def _frac(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc
    return f


def parse_exact(text: str) -> GaussianRational:
    """Parse ``"p/q"``, ``"p/q+r/si"``, ``"r/si"`` (``i`` alone means ``1i``)."""
    s = str(text).replace(" ", "")
    m = _REAL_RE.match(s)
    if m:
        return GaussianRational._raw(_frac(m.group(1)), Fraction(0))
    m = _IMAG_RE.match(s)
    if m:
        im = _frac(m.group(2)) if m.group(2) else Fraction(1)
        return GaussianRational._raw(Fraction(0), -im if m.group(1) == "-" else im)
    m = _CPLX_RE.match(s)
    if m:
        im = _frac(m.group(3)) if m.group(3) else Fraction(1)
        return GaussianRational._raw(_frac(m.group(1)), -im if m.group(2) == "-" else im)
    raise ParseError(f"cannot parse exact scalar {text!r}")


def format_exact(x: GaussianRational) -> str:
    x = as_exact(x)
    if not x.im:
        return str(x.re)
    im = f"{abs(x.im)}i"
    if not x.re:
        return im if x.im > 0 else "-" + im
    return f"{x.re}{'+' if x.im > 0 else '-'}{im}"


def parse_approx(obj) -> complex:
    """Decode ``{"re": .., "im": ..}``, a bare number, or a Python complex literal."""
    if isinstance(obj, dict):
        try:
            return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad approximate scalar {obj!r}") from exc
    if isinstance(obj, bool):
        raise ParseError(f"bad approximate scalar {obj!r}")
    if isinstance(obj, (int, float, complex)):
        return complex(obj)
    if isinstance(obj, str):
        try:
            return complex(obj.replace(" ", "").replace("i", "j"))
        except ValueError:
            return complex(parse_exact(obj))
    raise ParseError(f"bad approximate scalar {obj!r}")


def format_approx(x) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def encode(x):
    """JSON-ready encoding of a scalar of either family."""
    if isinstance(x, GaussianRational):
        return format_exact(x)
    return format_approx(x)


# helpers -----------------------------------------------------------------

def as_exact(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational._raw(Fraction(x), Fraction(0))
    if isinstance(x, str):
        return parse_exact(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def as_approx(x) -> complex:
    return complex(x)


def is_exact_scalar(x) -> bool:
    return isinstance(x, (GaussianRational, int, Rational))


def is_zero(a, tol: Tolerance = DEFAULT_TOL, scale: float = 0.0) -> bool:
    """Exact zero test, or ``|a| <= abs_eps + rel_eps*scale`` for approximate values."""
    if isinstance(a, (GaussianRational, int, Rational)):
        return not a
    return abs(a) <= tol.abs_eps + tol.rel_eps * scale


def div(a, b, tol: Tolerance = DEFAULT_TOL):
    """Division that refuses (near-)zero denominators."""
    if is_exact_scalar(b):
        if not b:
            raise DivisionByZero("exact division by zero")
        return as_exact(a) / b
    if abs(b) <= tol.abs_eps:
        raise DivisionByZero(f"|denominator| = {abs(b):.3g} <= {tol.abs_eps:g}")
    return a / b
