"""Certified real enclosures.

:class:`RealInterval` holds either exact rationals (convergent straddles) or
floats that were rounded outward from an :mod:`mpmath.iv` computation.
Transcendental quantities (pi, tan, sqrt) are evaluated with ``mpmath.iv``
and converted with :func:`from_iv`, so the float endpoints always bracket
the true value.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction

import mpmath
from mpmath import iv

__all__ = ["RealInterval", "from_iv", "to_iv", "down", "up", "fmt_real", "iv_frac", "imin", "iv_precision"]


def down(x) -> float:
    """Largest float <= x for an mpf or Fraction x."""
    if isinstance(x, Fraction):
        f = float(x)
        return math.nextafter(f, -math.inf) if Fraction(f) > x else f
    f = float(x)
    if math.isinf(f):
        return f
    return math.nextafter(f, -math.inf) if mpmath.mpf(f) > x else f


def up(x) -> float:
    """Smallest float >= x for an mpf or Fraction x."""
    if isinstance(x, Fraction):
        f = float(x)
        return math.nextafter(f, math.inf) if Fraction(f) < x else f
    f = float(x)
    if math.isinf(f):
        return f
    return math.nextafter(f, math.inf) if mpmath.mpf(f) < x else f


def iv_frac(q) -> "iv.mpf":
    """Tight interval around a Fraction/int/float."""
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] known to contain some real quantity.

    ``certified`` is False when one of the endpoints comes from a heuristic
    rather than a proof (e.g. a truncated expansion with no tail bound).
    """

    lo: float | Fraction
    hi: float | Fraction
    certified: bool = True

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RealInterval":
        return cls(x, x)

    @property
    def width(self) -> float:
        return float(Fraction(self.hi) - Fraction(self.lo))

    @property
    def mid(self) -> float:
        return float((Fraction(self.lo) + Fraction(self.hi)) / 2)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def certainly_lt(self, x) -> bool:
        return self.hi < x

    def certainly_gt(self, x) -> bool:
        return self.lo > x

    def scale(self, c: float) -> "RealInterval":
        """Multiply by a positive float, rounding outward."""
        return from_iv(to_iv(self) * iv_frac(c), self.certified)

    def floats(self) -> tuple[float, float]:
        return down(Fraction(self.lo)), up(Fraction(self.hi))

    def to_dict(self) -> dict:
        lo, hi = self.floats()
        return {"lo": lo, "hi": hi, "certified": self.certified}

    def __str__(self):
        return f"[{fmt_real(self.lo, 'down')}, {fmt_real(self.hi, 'up')}]"


def from_iv(v, certified: bool = True) -> RealInterval:
    """Outward-rounded float interval from an ``mpmath.iv`` value."""
    return RealInterval(down(v.a), up(v.b), certified)


def to_iv(r: RealInterval):
    lo, hi = iv_frac(r.lo), iv_frac(r.hi)
    return iv.mpf([lo.a, hi.b])


def imin(*xs: RealInterval) -> RealInterval:
    """Enclosure of the minimum of several enclosed quantities."""
    lo = min(Fraction(x.lo) for x in xs)
    hi = min(Fraction(x.hi) for x in xs)
    return RealInterval(down(lo), up(hi), all(x.certified for x in xs))


def fmt_real(x, rounding: str | None = None, digits: int = 12) -> str:
    """Format with ``digits`` significant digits.

    With ``rounding='down'``/``'up'`` the printed decimal is rounded toward
    -inf/+inf so that a printed enclosure still contains the true value.
    """
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if rounding is None:
        return f"{float(x):.{digits}g}"
    q = Fraction(x)
    if q == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_FLOOR if rounding == "down" else ROUND_CEILING
        d = Decimal(q.numerator) / Decimal(q.denominator)
    s = f"{d:.{digits}g}" if abs(d) < Decimal(10) ** digits else str(d)
    return s


@contextmanager
def iv_precision(dps: int):
    """Temporarily raise the working precision of :mod:`mpmath.iv`."""
    old = iv.dps
    iv.dps = max(old, dps)
    try:
        yield
    finally:
        iv.dps = old
