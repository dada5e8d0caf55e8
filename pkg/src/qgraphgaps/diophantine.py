"""Continued fractions, best approximations and Markov-type constants.

Numbers enter either as exact rationals, as exact quadratic surds
(:class:`~qgraphgaps.quadratic.QuadraticSurd`) or as rational enclosures.
Everything that claims to be certified is computed from exact integer
recurrences; floats only appear at the very end, rounded outward.

Weights
-------
For a fraction p/q on the lower side of theta the *weight* is
``q*(q*theta - p)``; on the upper side it is ``q*(p - q*theta)``.
The one-sided constant ``upsilon(theta)`` is the liminf of lower-side
weights, ``markov(theta)`` the liminf of both sides.  For the n-th
convergent the weight is ``1 / (theta_{n+1} + q_{n-1}/q_n)`` where
``theta_{n+1}`` is the complete quotient, which makes the liminf of a
periodic expansion computable exactly from one period.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EnclosureTooWideError, InputError, RationalThetaError, DomainError
from .intervals import RealInterval, down, up
from .quadratic import QuadraticSurd, parse_number

__all__ = [
    "ContinuedFraction",
    "BestApprox",
    "cf_expand",
    "convergents",
    "evaluate",
    "best_approx_below",
    "best_approx_above",
    "upsilon",
    "markov",
    "one_sided_constant",
    "dirichlet_simultaneous",
    "theta_family",
    "as_cf",
    "exact_value",
    "golden_cf",
]

BELOW, ABOVE = "below", "above"


# ---------------------------------------------------------------------------
# ContinuedFraction
# ---------------------------------------------------------------------------

def _primitive_period(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0; preperiod..., (period...)]``.

    An empty period with ``truncated=False`` is a rational.  A nonempty
    period is a quadratic irrational.  ``truncated=True`` marks a certified
    prefix of an irrational whose remaining quotients are unknown.
    Instances are put in canonical form on construction: primitive period,
    preperiod not ending in a copy of the period's last term, and finite
    expansions ending in a quotient >= 2.
    """

    a0: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    truncated: bool = False

    def __post_init__(self):
        pre = tuple(int(c) for c in self.preperiod)
        per = tuple(int(c) for c in self.period)
        if any(c < 1 for c in pre + per):
            raise InputError(f"partial quotients must be >= 1, got {pre + per}")
        if self.truncated and per:
            raise InputError("a truncated expansion cannot carry a period")
        a0 = int(self.a0)
        if per:
            per = _primitive_period(per)
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = (per[-1],) + per[:-1]
        elif not self.truncated and pre and pre[-1] == 1:
            if len(pre) == 1:
                a0, pre = a0 + 1, ()
            else:
                pre = pre[:-2] + (pre[-2] + 1,)
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    # -- structure ------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.period and not self.truncated

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    @property
    def n_terms(self) -> float:
        """Number of available quotients (inf for periodic expansions)."""
        if self.period:
            return math.inf
        return 1 + len(self.preperiod)

    def term(self, i: int) -> int:
        if i == 0:
            return self.a0
        k = len(self.preperiod)
        if i <= k:
            return self.preperiod[i - 1]
        if not self.period:
            raise IndexError(f"{self} has only {k + 1} quotients")
        return self.period[(i - k - 1) % len(self.period)]

    def terms(self, n: int) -> list[int]:
        """First ``n`` partial quotients (fewer if the expansion ends)."""
        n = int(min(n, self.n_terms))
        return [self.term(i) for i in range(n)]

    def complete_quotient(self, i: int) -> "ContinuedFraction":
        """``[c_i; c_{i+1}, ...]`` as its own expansion."""
        if i == 0:
            return self
        k = len(self.preperiod)
        if i <= k:
            return ContinuedFraction(self.preperiod[i - 1], self.preperiod[i:],
                                     self.period, self.truncated)
        if not self.period:
            raise IndexError(f"{self} has only {k + 1} quotients")
        j = (i - k - 1) % len(self.period)
        per = self.period
        return ContinuedFraction(per[j], (), per[j + 1:] + per[:j + 1])

    def reciprocal(self) -> "ContinuedFraction":
        """Expansion of 1/x for x > 0."""
        if self.a0 < 0 or (self.a0 == 0 and self.n_terms == 1):
            raise DomainError(f"reciprocal needs a positive number, got {self}")
        if self.a0 > 0:
            return ContinuedFraction(0, (self.a0,) + self.preperiod, self.period,
                                     self.truncated)
        return self.complete_quotient(1)

    # -- values -----------------------------------------------------------
    def value(self):
        """Exact value: Fraction for rationals, QuadraticSurd for periodic."""
        if self.truncated:
            raise EnclosureTooWideError(f"{self} is only known to {self.n_terms} terms")
        hp, hq = _recurrence([self.a0, *self.preperiod])
        if not self.period:
            return Fraction(hp[-1], hq[-1])
        # purely periodic tail y solves q*y^2 + (q' - p)*y - p' = 0
        pp, pq = _recurrence(list(self.period))
        p, p1 = pp[-1], (pp[-2] if len(pp) > 1 else 1)
        q, q1 = pq[-1], (pq[-2] if len(pq) > 1 else 0)
        disc = (q1 - p) ** 2 + 4 * q * p1
        y = QuadraticSurd.from_parts(p - q1, 1, disc, 2 * q)
        P, P1 = hp[-1], (hp[-2] if len(hp) > 1 else 1)
        Q, Q1 = hq[-1], (hq[-2] if len(hq) > 1 else 0)
        return (P * y + P1) / (Q * y + Q1)

    def __float__(self):
        if self.truncated:
            return _float_trunc(self)
        return float(self.value())

    # -- text -----------------------------------------------------------
    def __str__(self):
        rest = [str(c) for c in self.preperiod]
        if self.period:
            rest.append("(" + ",".join(str(c) for c in self.period) + ")")
        if self.truncated:
            rest.append("...")
        if not rest:
            return f"[{self.a0}]"
        return f"[{self.a0};" + ",".join(rest) + "]"

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        """Parse ``"[a0;a1,a2,(p1,p2)]"``; a trailing ``...`` marks truncation."""
        s = re.sub(r"\s+", "", text)
        m = re.fullmatch(r"\[([+-]?\d+)(?:;(.*))?\]", s)
        if not m:
            raise InputError(f"cannot parse continued fraction {text!r}")
        a0 = int(m.group(1))
        body = m.group(2) or ""
        truncated = False
        if body.endswith("..."):
            truncated = True
            body = body[:-3].rstrip(",")
        period: tuple[int, ...] = ()
        pm = re.search(r",?\(([\d,]+)\)$", body)
        if pm:
            period = tuple(int(c) for c in pm.group(1).split(","))
            body = body[: pm.start()]
        try:
            pre = tuple(int(c) for c in body.split(",")) if body else ()
        except ValueError:
            raise InputError(f"cannot parse continued fraction {text!r}") from None
        return cls(a0, pre, period, truncated)


def _float_trunc(cf: ContinuedFraction) -> float:
    p, q = _recurrence(cf.terms(cf.n_terms))
    return p[-1] / q[-1]


def golden_cf() -> ContinuedFraction:
    return ContinuedFraction(1, (), (1,))


# ---------------------------------------------------------------------------
# Expansion
# ---------------------------------------------------------------------------

def _recurrence(terms: Sequence[int]) -> tuple[list[int], list[int]]:
    """Numerators and denominators p_0.., q_0.. of consecutive convergents."""
    ps, qs = [], []
    p1, p2, q1, q2 = 1, 0, 0, 1
    for a in terms:
        p1, p2 = a * p1 + p2, p1
        q1, q2 = a * q1 + q2, q1
        ps.append(p1)
        qs.append(q1)
    return ps, qs


def _expand_rational(x: Fraction) -> list[int]:
    out = []
    num, den = x.numerator, x.denominator
    while den:
        a, r = divmod(num, den)
        out.append(a)
        num, den = den, r
    return out


def _expand_quadratic(v: QuadraticSurd, max_terms: int) -> ContinuedFraction:
    a, b, d, c = v.parts()
    if b < 0:
        a, b, c = -a, -b, -c
    n = b * b * d
    p, q, n = a * abs(c), c * abs(c), n * c * c
    s = math.isqrt(n)
    terms: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    while len(terms) < max_terms:
        state = (p, q)
        if state in seen:
            start = seen[state]
            if start == 0:
                # purely periodic, a0 included: [a0; (a1, ..., a_{n-1}, a0)]
                return ContinuedFraction(terms[0], (), tuple(terms[1:]) + (terms[0],))
            return ContinuedFraction(terms[0], tuple(terms[1:start]), tuple(terms[start:]))
        seen[state] = len(terms)
        if q > 0:
            t = (p + s) // q
        else:
            t = -((p + s) // -q) - 1
        terms.append(t)
        p = t * q - p
        q = (n - p * p) // q
    return ContinuedFraction(terms[0], tuple(terms[1:]), (), truncated=True)


def _expand_enclosure(lo: Fraction, hi: Fraction, depth: int) -> ContinuedFraction:
    if lo > hi:
        lo, hi = hi, lo
    terms: list[int] = []
    while len(terms) < depth:
        a = math.floor(lo)
        if lo == hi:
            terms.append(a)
            if lo == a:
                return ContinuedFraction(terms[0], tuple(terms[1:]))
            lo = hi = 1 / (lo - a)
            continue
        if math.floor(hi) != a or lo == a:
            raise EnclosureTooWideError(
                f"enclosure [{float(lo)!r}, {float(hi)!r}] cannot certify "
                f"quotient {len(terms)} (have {terms})")
        terms.append(a)
        lo, hi = 1 / (hi - a), 1 / (lo - a)
    return ContinuedFraction(terms[0], tuple(terms[1:]), (), truncated=True)


def cf_expand(x, depth: int = 20) -> ContinuedFraction:
    """Continued-fraction expansion of ``x``.

    Parameters
    ----------
    x
        A rational (int, Fraction, float taken at its exact binary value),
        a :class:`QuadraticSurd` or its string spec ``"(A+B*sqrt(D))/C"``,
        or a rational enclosure given as :class:`RealInterval` or a
        ``(lo, hi)`` pair.
    depth
        Number of quotients wanted.  Rational and quadratic inputs are
        expanded exactly (the period of a quadratic irrational is detected,
        however long it is up to ``max(depth, 100000)`` quotients).  For an
        enclosure, exactly ``depth`` certified quotients are returned.

    Raises
    ------
    EnclosureTooWideError
        if the enclosure does not pin down ``depth`` quotients.
    """
    if depth < 1:
        raise InputError("depth must be a positive integer")
    if isinstance(x, str):
        x = parse_number(x)
    if isinstance(x, RealInterval):
        return _expand_enclosure(Fraction(x.lo), Fraction(x.hi), depth)
    if isinstance(x, tuple) and len(x) == 2:
        return _expand_enclosure(Fraction(x[0]), Fraction(x[1]), depth)
    if isinstance(x, QuadraticSurd):
        if x.is_rational:
            x = x.x
        else:
            return _expand_quadratic(x, max(depth, 100_000))
    if isinstance(x, ContinuedFraction):
        return x
    terms = _expand_rational(Fraction(x))
    if len(terms) > depth:
        return ContinuedFraction(terms[0], tuple(terms[1:depth]), (), truncated=True)
    return ContinuedFraction(terms[0], tuple(terms[1:]))


def as_cf(theta) -> ContinuedFraction:
    """Coerce a CF, surd, rational or spec string to a ContinuedFraction."""
    if isinstance(theta, ContinuedFraction):
        return theta
    if isinstance(theta, str) and theta.strip().startswith("["):
        return ContinuedFraction.parse(theta)
    return cf_expand(theta, depth=10_000)


def exact_value(theta):
    """Exact Fraction/QuadraticSurd for ``theta``; None if only an enclosure."""
    if isinstance(theta, (QuadraticSurd, Fraction, int)):
        return theta
    if isinstance(theta, str):
        theta = as_cf(theta)
    if isinstance(theta, ContinuedFraction):
        return None if theta.truncated else theta.value()
    return Fraction(theta)


def convergents(cf, n: int) -> list[Fraction]:
    """First ``n`` convergents p_k/q_k, in lowest terms."""
    cf = as_cf(cf)
    if n < 1:
        raise InputError("n must be positive")
    if cf.n_terms < n:
        raise InputError(f"{cf} has only {cf.n_terms} quotients, {n} convergents requested")
    ps, qs = _recurrence(cf.terms(n))
    return [Fraction(p, q) for p, q in zip(ps, qs)]


def evaluate(cf, eps: float) -> RealInterval:
    """Rational interval of width <= eps containing the value of ``cf``.

    The endpoints are two consecutive convergents (exact Fractions).  For a
    truncated expansion the last convergent and its mediant with the
    previous one bound the value.
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    cf = as_cf(cf)
    if cf.is_rational:
        v = cf.value()
        return RealInterval(v, v)
    eps = Fraction(eps)
    p1, p2, q1, q2 = 1, 0, 0, 1
    i = 0
    while True:
        if i >= cf.n_terms:
            lo = Fraction(p1, q1)
            med = Fraction(p1 + p2, q1 + q2)
            iv_ = RealInterval(min(lo, med), max(lo, med), certified=True)
            if Fraction(iv_.hi) - Fraction(iv_.lo) > eps:
                raise EnclosureTooWideError(
                    f"{cf} is known to {cf.n_terms} quotients only; cannot reach width {float(eps)}")
            return iv_
        a = cf.term(i)
        p1, p2 = a * p1 + p2, p1
        q1, q2 = a * q1 + q2, q1
        i += 1
        if q2 and Fraction(1, q1 * q2) <= eps and i >= 2:
            x, y = Fraction(p1, q1), Fraction(p2, q2)
            return RealInterval(min(x, y), max(x, y))


# ---------------------------------------------------------------------------
# Best approximations of the third kind
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BestApprox:
    """A best approximation of the third kind; weight = q*|q*theta - p|."""

    frac: Fraction
    side: str
    weight: float

    @property
    def p(self) -> int:
        return self.frac.numerator

    @property
    def q(self) -> int:
        return self.frac.denominator


class _Enclosed:
    """Floor/compare helper when theta is only known through an enclosure."""

    def __init__(self, lo: Fraction, hi: Fraction):
        self.lo, self.hi = lo, hi

    def floor_mul(self, q: int) -> int:
        a, b = math.floor(q * self.lo), math.floor(q * self.hi)
        if a != b:
            raise EnclosureTooWideError(f"cannot decide floor({q}*theta)")
        return a


def _best_approx(theta, qmax: int, side: str) -> list[BestApprox]:
    if qmax < 1:
        raise InputError("qmax must be >= 1")
    v = exact_value(theta)
    if v is None:
        return _best_approx_enclosed(as_cf(theta), qmax, side)
    if isinstance(v, (int, Fraction)) or (isinstance(v, QuadraticSurd) and v.is_rational):
        raise RationalThetaError(f"theta = {v} is rational: weights reach 0")
    out: list[BestApprox] = []
    best = None
    for q in range(1, qmax + 1):
        qv = q * v
        if side == BELOW:
            p = math.floor(qv)
            w = q * (qv - p)
        else:
            p = math.ceil(qv)
            w = q * (p - qv)
        if best is not None and w == best:
            raise DomainError(f"tie of weights at q={q}; impossible for irrational theta")
        if best is None or w < best:
            best = w
            out.append(BestApprox(Fraction(p, q), side, float(w)))
    return out


def _best_approx_enclosed(cf: ContinuedFraction, qmax: int, side: str) -> list[BestApprox]:
    rng = evaluate(cf, Fraction(1, 10 ** 6 * qmax * qmax)) if cf.n_terms > 2 else None
    if rng is None:
        raise EnclosureTooWideError(f"{cf} too short for best approximations")
    lo, hi = Fraction(rng.lo), Fraction(rng.hi)
    enc = _Enclosed(lo, hi)
    out: list[BestApprox] = []
    best_hi = None
    for q in range(1, qmax + 1):
        fl = enc.floor_mul(q)
        if side == BELOW:
            p = fl
            wlo, whi = q * (q * lo - p), q * (q * hi - p)
        else:
            p = fl + 1
            wlo, whi = q * (p - q * hi), q * (p - q * lo)
        if best_hi is None or whi < best_lo:
            best_lo, best_hi = wlo, whi
            out.append(BestApprox(Fraction(p, q), side, float((wlo + whi) / 2)))
        elif wlo < best_hi:
            raise EnclosureTooWideError(f"cannot order weights at q={q}")
    return out


def best_approx_below(theta, qmax: int) -> list[BestApprox]:
    """Best approximations of the third kind from below, denominators <= qmax.

    ``p/q < theta`` qualifies when ``q*(q*theta - p)`` is strictly smaller
    than the same quantity for every other lower fraction with denominator
    at most q.  Found by scanning every q (for fixed q only
    ``p = floor(q*theta)`` can compete), so the result is the brute-force
    definition evaluated exactly.
    """
    return _best_approx(theta, qmax, BELOW)


def best_approx_above(theta, qmax: int) -> list[BestApprox]:
    """Mirror of :func:`best_approx_below` with ``q*(p - q*theta)``."""
    return _best_approx(theta, qmax, ABOVE)


# ---------------------------------------------------------------------------
# One-sided constants and tail bounds
# ---------------------------------------------------------------------------

_CQ_EPS = Fraction(1, 10 ** 40)


class WeightProfile:
    """Certified bounds on approximation weights of a periodic expansion.

    Convergent n lies below theta for even n and above for odd n.  Every
    reduced fraction with weight < 1 is a convergent or an intermediate
    fraction, and the weight of an intermediate fraction is a concave
    function of its position between the two neighbouring same-side
    convergents, so convergent weights (plus the level-0 intermediates
    ``(1 + j*a0)/j``) control every bound below.
    """

    def __init__(self, cf: ContinuedFraction, window: int = 80):
        if not cf.is_periodic:
            raise DomainError(f"{cf} is not a periodic expansion")
        self.cf = cf
        self.K = len(cf.preperiod)
        self.P = len(cf.period)
        self.L = self.P * max(2, -(-window // self.P))
        self.n0 = self.K + self.L
        self._cq: dict[ContinuedFraction, tuple[Fraction, Fraction]] = {}
        self._p: list[int] = []
        self._q: list[int] = []
        self._extend(self.n0 + 2 * self.P + 4)

    def _extend(self, n: int):
        while len(self._q) < n:
            i = len(self._q)
            a = self.cf.term(i)
            p1 = self._p[-1] if i >= 1 else 1
            p2 = self._p[-2] if i >= 2 else (1 if i == 1 else 0)
            q1 = self._q[-1] if i >= 1 else 0
            q2 = self._q[-2] if i >= 2 else (0 if i == 1 else 1)
            self._p.append(a * p1 + p2)
            self._q.append(a * q1 + q2)

    def q(self, n: int) -> int:
        if n < 0:
            return 0
        self._extend(n + 1)
        return self._q[n]

    def complete_quotient(self, i: int) -> tuple[Fraction, Fraction]:
        c = self.cf.complete_quotient(i)
        if c not in self._cq:
            r = evaluate(c, _CQ_EPS)
            self._cq[c] = (Fraction(r.lo), Fraction(r.hi))
        return self._cq[c]

    def conv_weight(self, n: int) -> tuple[Fraction, Fraction]:
        """Enclosure of q_n * |q_n*theta - p_n|."""
        r = Fraction(self.q(n - 1), self.q(n))
        tlo, thi = self.complete_quotient(n + 1)
        return 1 / (thi + r), 1 / (tlo + r)

    @staticmethod
    def side_of(n: int) -> str:
        return BELOW if n % 2 == 0 else ABOVE

    @cached_property
    def classes(self) -> list[tuple[int, str, Fraction, Fraction, Fraction]]:
        """Per residue class of n >= n0: (rep, side, w_tail_lo, w_lim_lo, w_lim_hi)."""
        mod = self.P if self.P % 2 == 0 else 2 * self.P
        out = []
        for n in range(self.n0, self.n0 + mod):
            back = [self.cf.term(n - i) for i in range(self.L)]
            ps, qs = _recurrence([0] + back)
            x, y = Fraction(ps[-1], qs[-1]), Fraction(ps[-2], qs[-2])
            rlo, rhi = min(x, y), max(x, y)
            tlo, thi = self.complete_quotient(n + 1)
            wlo = 1 / (thi + rhi)
            out.append((n, self.side_of(n), wlo, wlo, 1 / (tlo + rlo)))
        return out

    def liminf(self, side: str) -> RealInterval:
        cls = [c for c in self.classes if c[1] == side]
        lo = min(c[3] for c in cls)
        hi = min(c[4] for c in cls)
        return RealInterval(lo, hi)

    def _level0(self, jmin: int) -> list[Fraction]:
        # intermediates (1 + j*a0)/j, 1 <= j <= a1 - 1, upper side
        a1 = self.cf.term(1)
        js = sorted({j for j in (max(1, jmin), a1 - 1) if max(1, jmin) <= j <= a1 - 1})
        tlo, thi = self.complete_quotient(1)
        out = []
        for j in js:
            # j*(t - j)/t is increasing in t for j > 0
            out.append(j * (tlo - j) / tlo)
        return out

    def inf_all_lower(self, side: str) -> Fraction:
        """Lower bound on inf over q >= 1 of the side weight."""
        cands = [Fraction(1)]
        cands += [self.conv_weight(n)[0] for n in range(self.n0) if self.side_of(n) == side]
        cands += [c[2] for c in self.classes if c[1] == side]
        if side == ABOVE:
            cands += self._level0(1)
        return min(cands)

    def tail_lower(self, side: str, m: int) -> Fraction:
        """Lower bound on inf over q > m of the side weight."""
        cands = [Fraction(1), 4 * self.inf_all_lower(side)]
        start = 0 if side == BELOW else 1
        n = start
        while self.q(n + 2) <= m:
            n += 2
        # all same-side convergents from n on
        for k in range(n, max(n, self.n0), 2):
            cands.append(self.conv_weight(k)[0])
        cands += [c[2] for c in self.classes if c[1] == side]
        if side == ABOVE:
            cands += self._level0(m + 1)
        return min(cands)


def _profile(theta) -> WeightProfile:
    cf = as_cf(theta)
    if cf.is_rational:
        raise RationalThetaError(f"theta = {cf} is rational")
    if cf.truncated:
        raise DomainError(f"{cf} is not periodic")
    return WeightProfile(cf)


def _heuristic_constant(cf: ContinuedFraction, side: str, qmax: int | None) -> RealInterval:
    n = int(cf.n_terms)
    ps, qs = _recurrence(cf.terms(n))
    lo, hi = _trunc_bounds(cf)
    ws = []
    for k in range(n // 2, n - 1):
        if (k % 2 == 0) != (side == BELOW):
            continue
        if qmax is not None and qs[k] > qmax:
            break
        w = abs(qs[k] * ((lo + hi) / 2) * qs[k] - ps[k] * qs[k])
        ws.append(w)
    if not ws:
        raise EnclosureTooWideError(f"{cf} too short to estimate a one-sided constant")
    w = min(ws)
    return RealInterval(down(w), up(w), certified=False)


def _trunc_bounds(cf: ContinuedFraction) -> tuple[Fraction, Fraction]:
    ps, qs = _recurrence(cf.terms(int(cf.n_terms)))
    x = Fraction(ps[-1], qs[-1])
    y = Fraction(ps[-1] + (ps[-2] if len(ps) > 1 else 1), qs[-1] + (qs[-2] if len(qs) > 1 else 0))
    return min(x, y), max(x, y)


def one_sided_constant(theta, side: str = BELOW, qmax: int | None = None) -> RealInterval:
    """liminf of the ``side`` weights q*|q*theta - p| over fractions on that side.

    Exact (to ~1e-30) for periodic expansions.  For a truncated expansion
    the minimum over the later half of the available same-side convergents
    (denominators <= qmax) is returned with ``certified=False``.
    """
    cf = as_cf(theta)
    if cf.is_rational:
        raise RationalThetaError(f"theta = {cf} is rational")
    if cf.truncated:
        return _heuristic_constant(cf, side, qmax)
    return _profile(cf).liminf(side)


def upsilon(theta, qmax: int | None = None) -> RealInterval:
    """One-sided Markov constant: liminf of q*(q*theta - p) over p/q < theta.

    ``qmax`` only matters for truncated expansions; periodic ones are
    resolved from a single period.
    """
    return one_sided_constant(theta, BELOW, qmax)


def markov(theta, qmax: int | None = None) -> RealInterval:
    """Markov constant mu(theta) = min(upsilon(theta), upsilon(1/theta))."""
    cf = as_cf(theta)
    if cf.is_rational:
        raise RationalThetaError(f"theta = {cf} is rational")
    if cf.a0 < 0 or (cf.a0 == 0 and not cf.preperiod and not cf.period):
        raise DomainError("markov needs theta > 0")
    u1 = upsilon(cf, qmax)
    u2 = upsilon(cf.reciprocal(), qmax)
    lo = min(Fraction(u1.lo), Fraction(u2.lo))
    hi = min(Fraction(u1.hi), Fraction(u2.hi))
    return RealInterval(lo, hi, u1.certified and u2.certified)


# ---------------------------------------------------------------------------
# Dirichlet
# ---------------------------------------------------------------------------

def _exact(a):
    if isinstance(a, QuadraticSurd):
        return a
    if isinstance(a, str):
        return parse_number(a)
    return Fraction(a)


def _within(e, bound: Fraction, d: int) -> bool:
    """Exact test of e**d <= bound for e >= 0."""
    diff = e ** d - bound
    return (diff.sign() if isinstance(diff, QuadraticSurd) else (diff > 0) - (diff < 0)) <= 0


def dirichlet_simultaneous(alphas: Sequence, n: int) -> tuple[list[int], int]:
    """Smallest q in [1, n] with |q*alpha_j - p_j| <= n^(-1/d) for every j.

    Floats are taken at their exact binary value, so the returned
    certificate satisfies the inequality exactly as stated.  Existence for
    every real n >= 1 follows from Minkowski's linear-forms theorem.
    """
    if n < 1:
        raise InputError("N must be >= 1")
    if len(alphas) < 1:
        raise InputError("need at least one alpha")
    ex = [_exact(a) for a in alphas]
    d = len(ex)
    bound = Fraction(1, n)
    for q in range(1, n + 1):
        ps = [math.floor(q * a + Fraction(1, 2)) for a in ex]
        if all(_within(abs(q * a - p), bound, d) for a, p in zip(ex, ps)):
            return ps, q
    raise DomainError("no Dirichlet certificate found; this contradicts the theorem")


# ---------------------------------------------------------------------------
# theta(t) family
# ---------------------------------------------------------------------------

def theta_family(t: int) -> tuple[QuadraticSurd, ContinuedFraction]:
    """(2t^3 - 2t^2 - 1 + sqrt 5) / (2(t^4 - t^3 + t^2 - t + 1)) = [0; t, t, 1, 1, ...]."""
    if int(t) != t or t < 3:
        raise DomainError(f"the family is defined for integers t >= 3, got {t}")
    t = int(t)
    value = QuadraticSurd.from_parts(2 * t ** 3 - 2 * t ** 2 - 1, 1, 5,
                                     2 * (t ** 4 - t ** 3 + t ** 2 - t + 1))
    cf = ContinuedFraction(0, (t, t), (1,))
    return value, cf
