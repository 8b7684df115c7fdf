"""Exact arithmetic over Q and real quadratic fields Q(sqrt(d)).

Rationals are plain :class:`fractions.Fraction` values.  Numbers of the form
``a + b*sqrt(d)`` are :class:`QuadraticNumber`.  Arithmetic is closed inside one
field; comparison works across fields by a finite squaring argument, so e.g.
``(5 - sqrt(5))/2 < sqrt(5/2)`` is decided without floating point.
"""
from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational
from typing import Union

from .errors import DivisionByZero, MixedRadicandArithmetic, ParseError

__all__ = [
    "QuadraticNumber",
    "Exact",
    "as_fraction",
    "canonical",
    "format_exact",
    "parse_exact",
    "qn_arith",
    "qn_compare",
    "sign",
    "sqrt_exact",
    "squarefree_decompose",
    "to_decimal",
]


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    s, d = 1, 1
    p = 2
    # after stripping primes up to the cube root at most two prime factors remain
    while p * p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        s *= r
    else:
        d *= n
    return s, d


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _sign_ab(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for square-free ``d`` (``d == 0`` allowed)."""
    if b == 0 or d == 0:
        return _sgn(a)
    sa, sb = _sgn(a), _sgn(b)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    # opposite signs: the larger square wins; equality is impossible for d non-square
    return sa if a * a > b * b * d else sb


class QuadraticNumber:
    """Immutable ``a + b*sqrt(d)`` with rational ``a, b`` and square-free ``d >= 0``.

    The representation is canonical: ``d == 0`` exactly when ``b == 0``, and
    square factors are pulled out of the radicand.  Equal values therefore have
    equal ``(a, b, d)`` triples, across fields as well.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a, b = Fraction(a), Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be nonnegative")
        s, d = squarefree_decompose(d)
        b *= s
        if d == 1:
            a, b, d = a + b, Fraction(0), 0
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    def __reduce__(self):
        return (QuadraticNumber, (self.a, self.b, self.d))

    @property
    def radicand(self) -> int:
        return self.d

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        return _sign_ab(self.a, self.b, self.d)

    # -- coercion -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return QuadraticNumber(Fraction(x))
        return None

    def _field(self, other: QuadraticNumber) -> int:
        if self.d == other.d or other.d == 0:
            return self.d
        if self.d == 0:
            return other.d
        raise MixedRadicandArithmetic(
            f"cannot combine sqrt({self.d}) and sqrt({other.d}) arithmetically"
        )

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a - o.a, self.b - o.b, self._field(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        n = o.norm()
        if n == 0:
            raise DivisionByZero("division by zero")
        num = self * o.conjugate()
        return QuadraticNumber(num.a / n, num.b / n, d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadraticNumber(1) / (self ** -k)
        out = QuadraticNumber(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -----------------------------------------------------
    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return qn_compare(self, o)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.d) == (o.a, o.b, o.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self):
        return self.b != 0 or self.a != 0

    def __float__(self):
        return float(to_decimal(self, 30))

    def __repr__(self):
        return f"QuadraticNumber({format_exact(self)!r})"

    def __str__(self):
        return format_exact(self)


Exact = Union[Fraction, QuadraticNumber]


def qn_compare(x, y) -> int:
    """Exact sign of ``x - y`` for numbers in possibly different quadratic fields.

    Same field: one sign evaluation.  Mixed fields: write the difference as
    ``u - w`` with ``u`` in the first field and ``w = c*sqrt(e)``; when ``u`` and
    ``w`` share a sign, compare ``u**2`` (first field) against ``w**2`` (rational).
    """
    x = QuadraticNumber._coerce(x)
    y = QuadraticNumber._coerce(y)
    if x.d == y.d or x.d == 0 or y.d == 0:
        return (x - y).sign()
    u = QuadraticNumber(x.a - y.a, x.b, x.d)
    su = u.sign()
    sw = _sgn(y.b)
    if su != sw:
        return 1 if su > sw else -1
    if su == 0:
        return 0
    t = _sign_ab(u.a * u.a + u.b * u.b * u.d - y.b * y.b * y.d, 2 * u.a * u.b, u.d)
    return su * t


def qn_arith(x, y, op: str):
    """Dispatch ``op`` in ``{'add', 'sub', 'mul', 'div'}`` on two quadratic numbers."""
    x = QuadraticNumber._coerce(x)
    y = QuadraticNumber._coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sign(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return _sgn(x)


def canonical(x) -> Exact:
    """Demote rational quadratic numbers to ``Fraction``; idempotent."""
    if isinstance(x, QuadraticNumber):
        return x.a if x.b == 0 else x
    return Fraction(x)


def as_fraction(x) -> Fraction:
    x = canonical(x)
    if not isinstance(x, Fraction):
        raise TypeError(f"{format_exact(x)} is irrational")
    return x


def sqrt_exact(q) -> Exact:
    """Square root of a nonnegative rational, exact."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    # sqrt(p/r) = sqrt(p*r)/r
    return canonical(QuadraticNumber(0, Fraction(1, q.denominator), q.numerator * q.denominator))


def to_decimal(x, digits: int = 30) -> Decimal:
    """Decimal approximation with ``digits`` significant digits (presentation only)."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        if isinstance(x, QuadraticNumber):
            a, b, d = x.a, x.b, x.d
        else:
            a, b, d = Fraction(x), Fraction(0), 0
        val = Decimal(a.numerator) / Decimal(a.denominator)
        if b:
            val += Decimal(b.numerator) / Decimal(b.denominator) * Decimal(d).sqrt()
        ctx.prec = digits
        return +val


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_exact(x) -> str:
    """Render as ``a + b*sqrt(d)`` with reduced fractions; rationals as ``p/q``."""
    x = canonical(x)
    if isinstance(x, Fraction):
        return _fmt_rat(x)
    a, b, d = x.a, x.b, x.d
    mag = abs(b)
    rad = f"sqrt({d})" if mag == 1 else f"{_fmt_rat(mag)}*sqrt({d})"
    if a == 0:
        return rad if b > 0 else f"-{rad}"
    return f"{_fmt_rat(a)} {'+' if b > 0 else '-'} {rad}"


_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*sqrt\((\d+)\))?|sqrt\((\d+)\))")


def parse_exact(text: str) -> Exact:
    """Inverse of :func:`format_exact`."""
    if re.search(r"[\d)]\s+[\d(s]", str(text)):
        raise ParseError(f"cannot parse exact number {text!r}")
    s = re.sub(r"\s+", "", str(text))
    if not s:
        raise ParseError("empty number")
    pos = 0
    total = QuadraticNumber(0)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise ParseError(f"cannot parse exact number {text!r}")
        sgn = -1 if m.group(1) == "-" else 1
        try:
            if m.group(4) is not None:
                term = QuadraticNumber(0, 1, int(m.group(4)))
            elif m.group(3) is not None:
                term = QuadraticNumber(0, Fraction(m.group(2)), int(m.group(3)))
            else:
                term = QuadraticNumber(Fraction(m.group(2)))
            total = total + sgn * term
        except (ZeroDivisionError, MixedRadicandArithmetic) as exc:
            raise ParseError(f"cannot parse exact number {text!r}: {exc}") from exc
        pos = m.end()
    return canonical(total)
