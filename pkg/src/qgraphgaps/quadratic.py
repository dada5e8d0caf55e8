"""Exact arithmetic in Q(sqrt(D)).

Edge-length ratios such as the golden mean or the members of the
``[0; t, t, 1, 1, ...]`` family are quadratic irrationals.  Keeping them in
exact form lets floors, ceilings and order comparisons be decided without
rounding, which is what the continued-fraction and best-approximation code
relies on.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import InputError

__all__ = ["QuadraticSurd", "parse_number", "golden_mean"]


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, r) with d = s**2 * r and r squarefree."""
    s, r = 1, d
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    return s, r


def _sign_of(x: Fraction, y: Fraction, d: int) -> int:
    # sign of x + y*sqrt(d), d >= 2 squarefree
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    lhs, rhs = x * x, y * y * d
    if lhs > rhs:
        return sx
    return sy  # lhs == rhs is impossible for irrational sqrt(d)


class QuadraticSurd:
    """The number ``x + y*sqrt(d)`` with rational x, y and squarefree d.

    Rationals are represented with ``y == 0`` and ``d == 0``.  Instances are
    immutable and hashable; arithmetic between surds requires equal ``d``.
    """

    __slots__ = ("x", "y", "d")

    def __init__(self, x=0, y=0, d: int = 0):
        x, y = Fraction(x), Fraction(y)
        d = int(d)
        if d < 0:
            raise InputError(f"negative radicand {d} is not supported")
        if y != 0 and d > 0:
            s, d = _squarefree_split(d)
            y *= s
            if d == 1:
                x, y, d = x + y, Fraction(0), 0
        if y == 0 or d == 0:
            y, d = Fraction(0), 0
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    # -- construction ---------------------------------------------------
    @classmethod
    def from_parts(cls, a: int, b: int, d: int, c: int) -> "QuadraticSurd":
        """Build ``(a + b*sqrt(d)) / c``."""
        if c == 0:
            raise InputError("denominator C must be nonzero")
        return cls(Fraction(a, c), Fraction(b, c), d)

    @classmethod
    def parse(cls, text: str) -> "QuadraticSurd":
        """Parse ``"(A+B*sqrt(D))/C"`` and the obvious abbreviations.

        Accepted forms include ``"(1+sqrt(5))/2"``, ``"sqrt(2)"``,
        ``"(35+1*sqrt(5))/122"``, ``"3/7"`` and plain integers or decimals.
        """
        return parse_number(text, allow_float=False)

    # -- predicates / conversions --------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def parts(self) -> tuple[int, int, int, int]:
        """Integers (A, B, D, C) with value (A + B*sqrt(D))/C and C > 0."""
        c = math.lcm(self.x.denominator, self.y.denominator)
        return int(self.x * c), int(self.y * c), self.d, c

    def to_spec(self) -> str:
        a, b, d, c = self.parts()
        if b == 0:
            return f"{a}/{c}" if c != 1 else f"{a}"
        sign = "+" if b >= 0 else "-"
        return f"({a}{sign}{abs(b)}*sqrt({d}))/{c}"

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.x

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.x, -self.y, self.d)

    def sign(self) -> int:
        if self.is_rational:
            return (self.x > 0) - (self.x < 0)
        return _sign_of(self.x, self.y, self.d)

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            v = mpmath.mpf(self.x.numerator) / self.x.denominator
            if self.y:
                v += mpmath.mpf(self.y.numerator) / self.y.denominator * mpmath.sqrt(self.d)
            return +v

    def to_iv(self):
        """Interval enclosure in the current :mod:`mpmath.iv` precision."""
        from mpmath import iv

        v = iv.mpf(self.x.numerator) / self.x.denominator
        if self.y:
            v += iv.mpf(self.y.numerator) / self.y.denominator * iv.sqrt(self.d)
        return v

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.x)
        return float(self.to_mpf(30 + self._digits()))

    def _digits(self) -> int:
        n = max(abs(self.x.numerator), self.x.denominator,
                abs(self.y.numerator), self.y.denominator, 1)
        return 2 * len(str(n))

    def __floor__(self) -> int:
        if self.is_rational:
            return math.floor(self.x)
        n = int(mpmath.floor(self.to_mpf(30 + self._digits())))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def __ceil__(self) -> int:
        return -math.floor(-self)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if self.d and other.d and self.d != other.d:
                raise ValueError(
                    f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticSurd(Fraction(other))
        return NotImplemented

    def _d(self, other: "QuadraticSurd") -> int:
        return self.d or other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.x + o.x, self.y + o.y, self._d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.x, -self.y, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._d(o)
        return QuadraticSurd(self.x * o.x + self.y * o.y * d,
                             self.x * o.y + self.y * o.x, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.reciprocal()
        out = QuadraticSurd(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def reciprocal(self) -> "QuadraticSurd":
        norm = self.x * self.x - self.y * self.y * self.d
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticSurd(self.x / norm, -self.y / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.reciprocal()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons ----------------------------------------------------
    def _cmp(self, other) -> int:
        if isinstance(other, float):
            other = Fraction(other)
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadraticSurd with {type(other)!r}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __repr__(self):
        return f"QuadraticSurd({self.to_spec()!r})"

    def __str__(self):
        return self.to_spec()


_SURD_RE = re.compile(
    r"""^\(?
        (?P<A>[+-]?\d+)?
        (?:(?P<sgn>[+-])?(?:(?P<B>\d+)\*?)?sqrt\((?P<D>\d+)\))?
        \)?
        (?:/(?P<C>[+-]?\d+))?$""",
    re.VERBOSE,
)


def parse_number(text: str, allow_float: bool = True):
    """Parse a rational or quadratic-surd literal.

    Returns a :class:`~fractions.Fraction` for rationals (``"3/2"``,
    ``"0.25"``, ``"7"``) and a :class:`QuadraticSurd` when a ``sqrt`` term
    with a non-square radicand is present.
    """
    s = re.sub(r"\s+", "", str(text))
    if not s:
        raise InputError("empty number literal")
    if "sqrt" not in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse number {text!r}: {exc}") from None
    m = _SURD_RE.match(s)
    if s.count("(") != s.count(")"):
        raise InputError(f"unbalanced parentheses in {text!r}")
    if m and m.group("A") and m.group("C") and not s.startswith("("):
        raise InputError(f"ambiguous literal {text!r}; write '(A+B*sqrt(D))/C'")
    if not m or m.group("D") is None:
        raise InputError(
            f"cannot parse quadratic literal {text!r}; expected '(A+B*sqrt(D))/C'")
    a = int(m.group("A") or 0)
    if m.group("A") is not None and m.group("sgn") is None:
        raise InputError(f"missing sign before sqrt term in {text!r}")
    b = int(m.group("B") or 1)
    if m.group("sgn") == "-":
        b = -b
    d = int(m.group("D"))
    c = int(m.group("C") or 1)
    if c == 0:
        raise InputError(f"zero denominator in {text!r}")
    q = QuadraticSurd.from_parts(a, b, d, c)
    return q.x if q.is_rational else q


def golden_mean() -> QuadraticSurd:
    """phi = (1 + sqrt(5)) / 2."""
    return QuadraticSurd.from_parts(1, 1, 5, 2)
