"""Kronig-Penney model on the rectangular lattice.

The lattice has edges of lengths ``a`` and ``b`` meeting at degree-4
vertices with a delta coupling of strength ``alpha``.  A momentum k > 0 lies
in a gap exactly when

    tan(u_a) + tan(u_b) < |alpha| / (2k)     (alpha > 0)
    cot(u_a) + cot(u_b) < |alpha| / (2k)     (alpha < 0)

with ``u_l = k*l/2 - (pi/2)*floor(k*l/pi)`` in [0, pi/2).  The half-line is
cut into cells by the points n*pi/a and n*pi/b.  Inside a cell
``h(k) = 2k(tan u_a + tan u_b)`` is increasing and ``g(k) = 2k(cot u_a +
cot u_b)`` is decreasing, so every cell holds at most one gap, attached to
its left end (alpha > 0) or right end (alpha < 0).  Whether it is there is
decided by the one-sided value of h or g at that end, which is

    (2*pi*m/a) * tan((pi/2) * d_m)

with d_m the distance from m*b/a to the integer below (alpha > 0) or above
(alpha < 0), and the same with a and b swapped.  The thresholds below are
infima and liminfs of these values.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import iv

from . import kernels
from ._fallback import bracket as _bracket_arr
from .diophantine import ABOVE, BELOW, WeightProfile, as_cf
from .errors import (
    BoundaryUndecidedError,
    DomainError,
    InputError,
    RationalThetaError,
    ZeroCouplingError,
)
from .intervals import RealInterval, down, fmt_real, iv_frac, iv_precision, up
from .quadratic import QuadraticSurd, golden_mean

__all__ = [
    "LatticeParams",
    "GapInterval",
    "ThresholdReport",
    "bracket",
    "gap_condition",
    "scan_gaps",
    "gamma_plus",
    "gamma_minus",
    "finite_gap_bound",
    "classify",
    "A_sequence",
    "count_m_solutions",
    "predict_gap_count_golden",
    "kmax_policy",
    "fibonacci",
    "gaps_to_csv",
]

DEFAULT_M = 10_000
REGIMES = ("no-gaps", "finite-nonzero", "infinite", "boundary-undecided")


def fibonacci(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _exact_real(x):
    if isinstance(x, (int, Fraction, QuadraticSurd)):
        return x
    return None


@dataclass(frozen=True)
class LatticeParams:
    """Edge lengths a, b > 0 and coupling strength alpha.

    ``ratio`` optionally carries theta = a/b exactly (a Fraction or a
    QuadraticSurd).  Number-theoretic operations need it unless a and b
    are themselves exact; when given it must agree with a/b to 1e-12.
    """

    a: float
    b: float
    alpha: float
    ratio: Fraction | QuadraticSurd | None = None

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not v > 0:
                raise InputError(f"edge length {name} must be positive, got {v}")
        if not math.isfinite(float(self.alpha)):
            raise InputError(f"alpha must be finite, got {self.alpha}")
        if self.ratio is not None:
            r = float(self.ratio)
            if abs(r - float(self.a) / float(self.b)) > 1e-12 * r:
                raise InputError(
                    f"ratio {self.ratio} disagrees with a/b = {float(self.a) / float(self.b)!r}")

    @classmethod
    def golden(cls, alpha: float, a: float = 1.0) -> "LatticeParams":
        """Golden-mean lattice a = phi*b."""
        phi = golden_mean()
        return cls(a, a / float(phi), alpha, phi)

    @classmethod
    def from_ratio(cls, alpha: float, ratio, b: float = 1.0) -> "LatticeParams":
        """Lattice with a = ratio*b for an exact ratio."""
        return cls(float(ratio) * b, b, alpha, ratio)

    @property
    def theta(self):
        """a/b, exact when available."""
        t = self.exact_theta()
        return t if t is not None else float(self.a) / float(self.b)

    def exact_theta(self):
        if self.ratio is not None:
            return self.ratio
        a, b = _exact_real(self.a), _exact_real(self.b)
        if a is not None and b is not None:
            v = a / b
            return v.x if isinstance(v, QuadraticSurd) and v.is_rational else v
        return None

    def swapped(self) -> "LatticeParams":
        r = None if self.ratio is None else 1 / self.ratio
        return LatticeParams(self.b, self.a, self.alpha, r)

    def to_dict(self) -> dict:
        d = {"a": float(self.a), "b": float(self.b), "alpha": float(self.alpha)}
        if self.ratio is not None:
            d["ratio"] = str(self.ratio)
        return d


@dataclass(frozen=True)
class GapInterval:
    """Open momentum interval (k_lo, k_hi); the energy gap is (k_lo^2, k_hi^2).

    ``certified`` is False when the interval was cut at the scan bound or an
    endpoint decision could not be made reliably.  For alpha < 0 the lowest
    gap may start at k_lo = 0, in which case it continues into negative
    energies.
    """

    k_lo: float
    k_hi: float
    certified: bool = True

    @property
    def E_lo(self) -> float:
        return self.k_lo ** 2

    @property
    def E_hi(self) -> float:
        return self.k_hi ** 2

    @property
    def mid(self) -> float:
        return 0.5 * (self.k_lo + self.k_hi)

    def to_dict(self) -> dict:
        return {"k_lo": self.k_lo, "k_hi": self.k_hi, "E_lo": self.E_lo,
                "E_hi": self.E_hi, "certified": self.certified}


@dataclass(frozen=True)
class ThresholdReport:
    alpha: float
    gamma: RealInterval
    finite_bound: RealInterval
    regime: str
    notes: tuple[str, ...] = ()
    argmin: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "sign": "+" if self.alpha > 0 else "-",
            "gamma": self.gamma.to_dict(),
            "finite_bound": self.finite_bound.to_dict(),
            "regime": self.regime,
            "notes": list(self.notes),
            "argmin": dict(self.argmin),
        }


# ---------------------------------------------------------------------------
# Gap condition
# ---------------------------------------------------------------------------

def bracket(k: float, ell: float) -> float:
    """u = k*ell/2 - (pi/2)*floor(k*ell/pi), in [0, pi/2)."""
    if not k > 0 or not ell > 0:
        raise InputError("bracket needs k > 0 and ell > 0")
    return float(_bracket_arr(k, ell))


def _check_alpha(alpha: float):
    if alpha == 0:
        raise ZeroCouplingError()


def gap_condition(k: float, p: LatticeParams) -> tuple[bool, float]:
    """Whether k lies in a gap, and the margin |alpha|/(2k) - (tan or cot sum)."""
    if not k > 0:
        raise InputError(f"k must be positive, got {k}")
    _check_alpha(p.alpha)
    m = float(kernels.gap_margin(np.array([float(k)]), float(p.a), float(p.b),
                                 float(p.alpha))[0])
    return m > 0, m


def gap_margin(ks, p: LatticeParams) -> np.ndarray:
    """Vectorized margin on an array of momenta."""
    _check_alpha(p.alpha)
    ks = np.ascontiguousarray(ks, dtype=float)
    return kernels.gap_margin(ks, float(p.a), float(p.b), float(p.alpha))


# ---------------------------------------------------------------------------
# Scanning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Point:
    k: float
    na: int | None  # index n with k = n*pi/a, if of that type
    nb: int | None


def _singular_points(a: float, b: float, kmax: float) -> list[_Point]:
    pts: dict[int, list] = {}
    raw = []
    for ell, tag in ((a, 0), (b, 1)):
        n = 1
        while True:
            c = n * math.pi / ell
            raw.append((c, tag, n))
            if c > kmax:
                break
            n += 1
    raw.sort()
    out: list[_Point] = []
    for c, tag, n in raw:
        if out and abs(c - out[-1].k) <= 1e-12 * c:
            prev = out[-1]
            out[-1] = _Point(prev.k, n if tag == 0 else prev.na, n if tag == 1 else prev.nb)
        else:
            out.append(_Point(c, n if tag == 0 else None, n if tag == 1 else None))
    return out


def _edge_value(pt: _Point, na: int, nb: int, a, b, left: bool, positive: bool):
    """One-sided value of h (tan) or g (cot) at a cell boundary, with mpmath."""
    with mpmath.workdps(40):
        if pt.na is not None:
            c = pt.na * mpmath.pi / mpmath.mpf(a)
        else:
            c = pt.nb * mpmath.pi / mpmath.mpf(b)
        half = mpmath.pi / 2

        def u(ell, n_cell, n_pt):
            if n_pt is not None:
                # exact: (n_pt - n_cell) * pi/2 is 0 at the left end, pi/2 at the right end
                return mpmath.mpf(0) if left else half
            return c * mpmath.mpf(ell) / 2 - n_cell * half

        ua, ub = u(a, na, pt.na), u(b, nb, pt.nb)
        if positive:
            if not left:
                return mpmath.inf
            return 2 * c * (mpmath.tan(ua) + mpmath.tan(ub))
        if left:
            return mpmath.inf
        cot = lambda x: mpmath.mpf(0) if x == half else mpmath.cot(x)
        return 2 * c * (cot(ua) + cot(ub))


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    """Root of f with f(lo) > 0 > f(hi)."""
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_gaps(p: LatticeParams, kmax: float, tol: float = 1e-11) -> list[GapInterval]:
    """All gaps (k_lo, k_hi) with k_lo < kmax, in increasing order.

    The scan visits each cell between consecutive points of
    {n*pi/a} and {n*pi/b}, decides from the one-sided boundary value whether
    the cell contains a gap and locates the interior endpoint by bisection
    to within ``tol``.  A gap running past ``kmax`` is cut there and marked
    uncertified.  For alpha > 0 the interval below the bottom of the
    spectrum is not a gap and is not reported.
    """
    _check_alpha(p.alpha)
    if not kmax > 0 or not tol > 0:
        raise InputError("kmax and tol must be positive")
    a, b, alpha = float(p.a), float(p.b), float(p.alpha)
    positive = alpha > 0
    x = abs(alpha)
    pts = _singular_points(a, b, kmax)
    gaps: list[GapInterval] = []
    cells = [(None, pts[0])] + list(zip(pts[:-1], pts[1:]))
    for left, right in cells:
        c_l = 0.0 if left is None else left.k
        c_r = right.k
        if c_l >= kmax:
            break
        mid = 0.5 * (c_l + c_r)
        na, nb = int(mid * a // math.pi), int(mid * b // math.pi)

        def h(k, na=na, nb=nb):
            ua, ub = 0.5 * k * a - na * math.pi / 2, 0.5 * k * b - nb * math.pi / 2
            if positive:
                return x - 2 * k * (math.tan(ua) + math.tan(ub))
            return 2 * k * (1 / math.tan(ua) + 1 / math.tan(ub)) - x

        certified = True
        if positive:
            if left is None:
                continue
            val = _edge_value(left, na, nb, a, b, True, True)
            if not val < x:
                continue
            if abs(val - x) <= mpmath.mpf(10) ** -30 * x:
                certified = False
            k_lo = c_l
            # h > 0 just right of c_l, -> -inf at c_r
            k_hi = _bisect(h, c_l, c_r, tol)
        else:
            if left is None:
                g0 = 4 * (1 / a + 1 / b)
                if g0 < x:
                    k_lo = 0.0
                else:
                    k_lo = None
            else:
                k_lo = None
            val = _edge_value(right, na, nb, a, b, False, False)
            if not val < x:
                continue
            if abs(val - x) <= mpmath.mpf(10) ** -30 * x:
                certified = False
            k_hi = c_r
            if k_lo is None:
                # g - |alpha| > 0 just right of c_l, < 0 near c_r
                k_lo = _bisect(h, c_l, c_r, tol)
        if k_lo >= kmax:
            continue
        if k_hi > kmax:
            k_hi, certified = kmax, False
        gaps.append(GapInterval(float(k_lo), float(k_hi), certified))
    return gaps


def kmax_policy(n: int, a: float, b: float) -> float:
    """Scan bound for verifying a predicted count of n gaps."""
    return (fibonacci(2 * n + 2) + 1) * math.pi * max(1 / float(a), 1 / float(b))


# ---------------------------------------------------------------------------
# Thresholds
# ---------------------------------------------------------------------------

def _exact_theta(p: LatticeParams):
    t = p.exact_theta()
    if t is None:
        raise InputError(
            "thresholds need theta = a/b exactly: pass a rational or quadratic ratio")
    return t


def _is_rational(t) -> bool:
    return isinstance(t, (int, Fraction)) or (isinstance(t, QuadraticSurd) and t.is_rational)


def _etas(theta):
    return [(theta, "theta"), (1 / theta, "1/theta")]


def _scale_iv(p: LatticeParams, theta, label: str):
    """2*pi*sqrt(eta/(ab)), using sqrt(theta/(ab)) = theta/a and sqrt(1/(theta*ab)) = 1/a."""
    s = 2 * iv.pi / iv_frac(p.a)
    if label == "theta":
        s = s * _to_iv(theta)
    return s


def _to_iv(x):
    if isinstance(x, QuadraticSurd):
        return x.to_iv()
    return iv_frac(x)


def _term_iv(eta, m: int, scale, sign: int):
    me = m * eta
    d = me - math.floor(me) if sign > 0 else math.ceil(me) - me
    return scale * m * iv.tan(iv.pi / 2 * _to_iv(d))


def _screen(eta, scale_f: float, mmax: int, sign: int, ceiling: float) -> np.ndarray:
    """Indices m whose float term could lie at or below ``ceiling``."""
    vals, d = kernels.gamma_terms(float(eta), scale_f, mmax, sign)
    m = np.arange(1, mmax + 1, dtype=float)
    with np.errstate(divide="ignore"):
        rel = 8e-16 * m * max(float(eta), 1.0) * (1 / d + 1 / (1 - d)) + 1e-13
    lower = vals * (1 - np.minimum(rel, 1.0))
    return np.nonzero(lower <= ceiling)[0] + 1


def _gamma(p: LatticeParams, sign: int, M: int) -> tuple[RealInterval, dict]:
    if M < 1:
        raise InputError("M must be >= 1")
    theta = _exact_theta(p)
    if _is_rational(theta):
        raise RationalThetaError(
            f"theta = {theta} is rational: the infimum is 0 and every alpha != 0 gives infinitely many gaps")
    lo_all, hi_all, arg = None, None, {}
    with iv_precision(40):
        for eta, label in _etas(theta):
            scale = _scale_iv(p, theta, label)
            scale_f = float(scale.mid)
            vals, _ = kernels.gamma_terms(float(eta), scale_f, min(M, 64), sign)
            m0 = int(np.argmin(vals)) + 1
            first = _term_iv(eta, m0, scale, sign)
            lo, hi = first.a, first.b
            cands = _screen(eta, scale_f, M, sign, float(hi) * (1 + 1e-12))
            for m in cands:
                t = _term_iv(eta, int(m), scale, sign)
                lo = min(lo, t.a)
                if t.b < hi:
                    hi, m0 = t.b, int(m)
            # tail m > M: tan x >= x, and m*d_m >= w_tail
            prof = WeightProfile(as_cf(eta))
            w = prof.tail_lower(BELOW if sign > 0 else ABOVE, M)
            tail = scale * (iv.pi / 2) * iv_frac(w)
            lo = min(lo, tail.a)
            if hi_all is None or hi < hi_all:
                arg = {"eta": label, "m": m0}
            lo_all = lo if lo_all is None else min(lo_all, lo)
            hi_all = hi if hi_all is None else min(hi_all, hi)
    return RealInterval(down(lo_all), up(hi_all)), arg


def gamma_plus(p: LatticeParams, M: int = DEFAULT_M) -> RealInterval:
    """Enclosure of the no-gap threshold for alpha > 0.

    gamma_+ = min over eta in {theta, 1/theta} of
    inf_m 2*pi*m*sqrt(eta/(ab))*tan((pi/2)*(m*eta - floor(m*eta))).
    The upper end is the least term with m <= M (exact floors, interval
    tangents); the lower end also covers m > M through a certified lower
    bound on m*(m*eta - floor(m*eta)) from the periodic continued fraction.
    """
    return _gamma(p, +1, M)[0]


def gamma_minus(p: LatticeParams, M: int = DEFAULT_M) -> RealInterval:
    """As :func:`gamma_plus` with ceil(m*eta) - m*eta."""
    return _gamma(p, -1, M)[0]


def finite_gap_bound(p: LatticeParams, sign: int) -> RealInterval:
    """Liminf of the boundary values: above it there are infinitely many gaps.

    alpha > 0: pi^2 * min(upsilon(theta)/b, upsilon(1/theta)/a);
    alpha < 0: pi^2 * min(upsilon(theta)/a, upsilon(1/theta)/b).
    """
    theta = _exact_theta(p)
    if _is_rational(theta):
        return RealInterval(0.0, 0.0)
    with iv_precision(40):
        vals = []
        for eta, label in _etas(theta):
            prof = WeightProfile(as_cf(eta))
            lim = prof.liminf(BELOW if sign > 0 else ABOVE)
            s = _scale_iv(p, theta, label) * (iv.pi / 2)
            vals.append(s * iv.mpf([iv_frac(lim.lo).a, iv_frac(lim.hi).b]))
        lo = min(v.a for v in vals)
        hi = min(v.b for v in vals)
    return RealInterval(down(lo), up(hi))


def classify(p: LatticeParams, M: int = DEFAULT_M) -> ThresholdReport:
    """Regime of the gap count: no-gaps, finite-nonzero or infinite.

    |alpha| <= gamma gives no gaps; gamma < |alpha| < finite bound gives a
    nonzero finite number; |alpha| above the finite bound gives infinitely
    many.  All comparisons are made against certified enclosures and the
    answer is ``boundary-undecided`` when |alpha| falls inside one.
    """
    _check_alpha(p.alpha)
    theta = _exact_theta(p)
    alpha = float(p.alpha)
    if _is_rational(theta):
        z = RealInterval(0.0, 0.0)
        return ThresholdReport(alpha, z, z, "infinite",
                               (f"theta = {theta} is rational: gaps near every band edge family",))
    sign = 1 if alpha > 0 else -1
    gamma, arg = _gamma(p, sign, M)
    fb = finite_gap_bound(p, sign)
    x = Fraction(abs(alpha))
    notes = []
    if x <= Fraction(gamma.lo):
        regime = "no-gaps"
    elif x > Fraction(gamma.hi):
        if x < Fraction(fb.lo):
            regime = "finite-nonzero"
        elif x > Fraction(fb.hi):
            regime = "infinite"
        else:
            regime = "boundary-undecided"
            notes.append("|alpha| lies inside the finite-bound enclosure")
    else:
        regime = "boundary-undecided"
        notes.append("|alpha| lies inside the gamma enclosure")
    if not (gamma.certified and fb.certified):
        notes.append("enclosures are not certified")
    return ThresholdReport(alpha, gamma, fb, regime, tuple(notes), arg)


# ---------------------------------------------------------------------------
# Golden-mean lattice
# ---------------------------------------------------------------------------

def _a_iv(j: int, a):
    # 2*pi*F_{2j} * tan((pi/2) * phi^(-2j)) / a, phi^-1 = (sqrt5 - 1)/2
    inv_phi = (iv.sqrt(5) - 1) / 2
    return 2 * iv.pi * fibonacci(2 * j) * iv.tan(iv.pi / 2 * inv_phi ** (2 * j)) / iv_frac(a)


def A_sequence(j: int, a: float = 1.0) -> RealInterval:
    """Enclosure of A_j / a with A_j = 2*pi*F_{2j}*tan((pi/2)*phi^(-2j))."""
    if j < 1:
        raise InputError("j must be >= 1")
    with iv_precision(30 + j):
        return RealInterval(down(_a_iv(j, a).a), up(_a_iv(j, a).b))


def _golden_limit(a) -> RealInterval:
    with iv_precision(40):
        v = iv.pi ** 2 / iv.sqrt(5) / iv_frac(a)
        return RealInterval(down(v.a), up(v.b))


def count_m_solutions(alpha: float, a: float = 1.0, mmax: int = 100) -> list[int]:
    """All m <= mmax with (2*pi*m/a)*tan((pi/2)*(ceil(m*phi) - m*phi)) < |alpha|."""
    if not alpha < 0:
        raise DomainError("count_m_solutions is for alpha < 0")
    if mmax < 1:
        raise InputError("mmax must be >= 1")
    phi = golden_mean()
    x = abs(alpha)
    scale_f = 2 * math.pi / float(a)
    out = []
    vals, d = kernels.gamma_terms(float(phi), scale_f, mmax, -1)
    m = np.arange(1, mmax + 1, dtype=float)
    with np.errstate(divide="ignore"):
        rel = 8e-16 * m * 2 * (1 / d + 1 / (1 - d)) + 1e-13
    with iv_precision(40):
        scale = 2 * iv.pi / iv_frac(a)
        xi = iv_frac(x)
        for i in range(mmax):
            if vals[i] * (1 - min(rel[i], 1.0)) > x:
                continue
            t = _term_iv(phi, i + 1, scale, -1)
            if t.b < xi.a:
                out.append(i + 1)
            elif t.a < xi.b:
                raise BoundaryUndecidedError(f"term m={i + 1} equals |alpha| within precision")
    return out


def predict_gap_count_golden(alpha: float, a: float = 1.0) -> int | str:
    """N with A_N < |alpha| <= A_{N+1} (A_0 = 0), or 'infinite' beyond pi^2/(sqrt5 a)."""
    if not alpha < 0:
        raise DomainError(
            "predictions are for alpha < 0; for alpha > 0 the golden-mean lattice "
            "has either no gaps or infinitely many, use classify")
    x = Fraction(abs(alpha))
    lim = _golden_limit(a)
    if x > Fraction(lim.hi):
        return "infinite"
    if x >= Fraction(lim.lo):
        raise BoundaryUndecidedError("|alpha| is within rounding of pi^2/(sqrt5 a)")
    j = 1
    while True:
        A = A_sequence(j, a)
        if x <= Fraction(A.lo):
            return j - 1
        if x <= Fraction(A.hi):
            raise BoundaryUndecidedError(f"|alpha| is within rounding of A_{j}")
        j += 1


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

GAP_COLUMNS = ("k_lo", "k_hi", "E_lo", "E_hi", "certified")


def gaps_to_csv(gaps: list[GapInterval]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(GAP_COLUMNS)
    for g in gaps:
        w.writerow([fmt_real(g.k_lo), fmt_real(g.k_hi), fmt_real(g.E_lo),
                    fmt_real(g.E_hi), "true" if g.certified else "false"])
    return buf.getvalue()
