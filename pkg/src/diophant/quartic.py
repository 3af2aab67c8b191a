"""Rational points on quartic curves ``y^2 = a0 t^4 + a1 t^3 + a2 t^2 + a3 t + a4``.

New points come from one or two known ones by closed formulas. A monic
quartic also corresponds to a pair of quaternary forms whose pencil
determinant is the quartic up to the square factor 1/16 (the Gram matrix
halves cross terms), and the maps between common zeros of the pair and points
of the curve are provided.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .exact import as_rational, normalize_proj, sqrt_exact
from .quadform import QuadForm4

DEFAULT_ORBIT_CAP = 10000


class DegenerateDenominator(ZeroDivisionError):
    pass


class ZeroY(ValueError):
    pass


class EqualT(ValueError):
    pass


class SingularConfiguration(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class QuarticCurve:
    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a0 == 0:
            raise ValueError("leading coefficient a0 must be nonzero")

    @classmethod
    def monic(cls, a1, a2, a3, a4) -> "QuarticCurve":
        return cls(1, a1, a2, a3, a4)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "QuarticCurve":
        if len(coeffs) != 5:
            raise ValueError("a quartic needs five coefficients [a0..a4]")
        return cls(*coeffs)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return (self.a0, self.a1, self.a2, self.a3, self.a4)

    @property
    def is_monic(self) -> bool:
        return self.a0 == 1

    def rhs(self, t) -> Fraction:
        t = as_rational(t)
        return (((self.a0 * t + self.a1) * t + self.a2) * t + self.a3) * t + self.a4

    def contains(self, P: "QuarticPoint") -> bool:
        return P.y * P.y == self.rhs(P.t)

    def shift(self, m) -> "QuarticCurve":
        """The curve in ``s`` with ``t = s + m``."""
        m = as_rational(m)
        a0, a1, a2, a3, a4 = self.coeffs
        return QuarticCurve(
            a0,
            4 * a0 * m + a1,
            6 * a0 * m**2 + 3 * a1 * m + a2,
            4 * a0 * m**3 + 3 * a1 * m**2 + 2 * a2 * m + a3,
            self.rhs(m),
        )

    def __str__(self):
        return f"y^2 = {self.a0}*t^4 + {self.a1}*t^3 + {self.a2}*t^2 + {self.a3}*t + {self.a4}"


@dataclass(frozen=True)
class QuarticPoint:
    t: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_rational(self.t))
        object.__setattr__(self, "y", as_rational(self.y))

    def negate(self) -> "QuarticPoint":
        return QuarticPoint(self.t, -self.y)

    @property
    def key(self) -> Tuple[Fraction, Fraction]:
        return (self.t, abs(self.y))


def _require_monic(C: QuarticCurve):
    if not C.is_monic:
        raise ValueError("the derivation formulas need a monic quartic; use reduce_general first")


def _check_on(C: QuarticCurve, P: QuarticPoint):
    if not C.contains(P):
        raise NotOnCurve(f"({P.t}, {P.y}) is not on {C}")


# ---------------------------------------------------------------------------
# new points from one or two known points
# ---------------------------------------------------------------------------

def derive_from_one(C: QuarticCurve, P1: QuarticPoint) -> QuarticPoint:
    """The tangent-type construction at a single point with ``y1 != 0``."""
    _require_monic(C)
    _check_on(C, P1)
    _, a1, a2, a3, a4 = C.coeffs
    t1, y1 = P1.t, P1.y
    if y1 == 0:
        raise ZeroY("y1 must be nonzero")
    G = 4 * t1**3 + 3 * a1 * t1**2 + 2 * a2 * t1 + a3
    guard = (4 * t1 + a1) * y1 + G
    if guard == 0:
        raise DegenerateDenominator("(4*t1 + a1)*y1 + 4*t1^3 + 3*a1*t1^2 + 2*a2*t1 + a3 = 0")
    den = 4 * y1 * guard
    t_num = (-4 * (2 * t1**2 + 2 * a1 * t1 + a2) * y1**2
             + 4 * (2 * t1**4 + a1 * t1**3 - a3 * t1 - 2 * a4) * y1
             + G**2)
    y_num = (64 * y1**6
             + (128 * t1**2 + 64 * a1 * t1 - 16 * a1**2 + 64 * a2) * y1**5
             + (320 * t1**4 + 320 * a1 * t1**3 + (96 * a1**2 + 64 * a2) * t1**2
                + 64 * (a1 * a2 - a3) * t1 - 16 * a1 * a3 + 16 * a2**2) * y1**4
             + 8 * G * (16 * t1**3 + 12 * a1 * t1**2 + 3 * a1**2 * t1 + a1 * a2 - 2 * a3) * y1**3
             - 2 * (4 * t1 + a1) * G**3 * y1
             - G**4)
    P = QuarticPoint(t_num / den, y_num / den**2)
    if not C.contains(P):  # pragma: no cover - the identity is proved symbolically in the tests
        raise ArithmeticError("derived point is not on the curve")
    return P


def derive_from_two(C: QuarticCurve, P1: QuarticPoint, P2: QuarticPoint) -> QuarticPoint:
    """The chord-type construction through two points with ``t1 != t2``."""
    _require_monic(C)
    _check_on(C, P1)
    _check_on(C, P2)
    _, a1, a2, a3, a4 = C.coeffs
    t1, y1, t2, y2 = P1.t, P1.y, P2.t, P2.y
    if t1 == t2:
        raise EqualT("t1 and t2 must differ")
    d = t1 - t2
    guard = 2 * y1 - 2 * y2 + a1 * d + 2 * t1**2 - 2 * t2**2
    if guard == 0:
        raise DegenerateDenominator("2*y1 - 2*y2 + a1*(t1 - t2) + 2*t1^2 - 2*t2^2 = 0")
    den = d * guard
    t_num = (-2 * y1 * y2 + 2 * d * (t2 * y1 - t1 * y2) + a1 * (t1 + t2) * t1 * t2
             + 2 * a2 * t1 * t2 + a3 * (t1 + t2) + 2 * a4 + 2 * (t1**2 - t1 * t2 + t2**2) * t1 * t2)
    L1 = t1**2 + 2 * t1 * t2 + 3 * t2**2 + a1 * t1 + 2 * a1 * t2 + a2
    L2 = 3 * t1**2 + 2 * t1 * t2 + t2**2 + 2 * a1 * t1 + a1 * t2 + a2
    dy = y1 - y2
    y_num = (-dy**4
             - d * ((4 * t1 + a1) * y1 - (4 * t2 + a1) * y2) * dy**2
             - d**3 * ((2 * t1 + 2 * t2 + a1) * (y1**2 - y2**2) - 4 * d * y1 * y2)
             + d**3 * ((4 * t1 + a1) * L1 * y1 - (4 * t2 + a1) * L2 * y2)
             + d**4 * L1 * L2)
    P = QuarticPoint(t_num / den, y_num / den**2)
    if not C.contains(P):  # pragma: no cover
        raise ArithmeticError("derived point is not on the curve")
    return P


def corollary_root(a, b, c, d, m=0) -> Fraction:
    """A ``t`` making ``(t - a)(t - b)(t^2 + c t + d) + m^2`` a rational square.

    This is the chord construction through ``(a, m)`` and ``(b, m)``.
    """
    a, b, c, d, m = (as_rational(x) for x in (a, b, c, d, m))
    if a == b:
        raise EqualT("a and b must differ")
    if a + b + c == 0:
        raise DegenerateDenominator("a + b + c = 0")
    return (a * b - d - 2 * m) / (a + b + c)


def corollary_curve(a, b, c, d, m=0) -> QuarticCurve:
    """The expanded quartic ``(t - a)(t - b)(t^2 + c t + d) + m^2``."""
    a, b, c, d, m = (as_rational(x) for x in (a, b, c, d, m))
    s, p = a + b, a * b
    # (t^2 - s t + p)(t^2 + c t + d)
    return QuarticCurve(1, c - s, d - s * c + p, p * c - s * d, p * d + m * m)


# ---------------------------------------------------------------------------
# the associated pair of quadratic forms
# ---------------------------------------------------------------------------

def _kappa(C: QuarticCurve) -> Fraction:
    _, a1, a2, a3, _ = C.coeffs
    return a1**3 - 4 * a1 * a2 + 4 * a3


@dataclass(frozen=True)
class AssociatedPair:
    curve: QuarticCurve
    Q1: QuadForm4
    Q2: QuadForm4
    c: Tuple[Fraction, Fraction, Fraction, Fraction]

    @property
    def kappa(self) -> Fraction:
        return _kappa(self.curve)


def build_associated_pair(C: QuarticCurve) -> AssociatedPair:
    """Forms ``Q1, Q2`` with ``16 det(Q1 + t*Q2) = t^4 + a1 t^3 + a2 t^2 + a3 t + a4`` (Gram matrices)."""
    _require_monic(C)
    _, a1, a2, a3, a4 = C.coeffs
    K = _kappa(C)
    if K == 0:
        raise SingularConfiguration("a1^3 - 4*a1*a2 + 4*a3 = 0; shift t first (see correspondence_shift)")
    c1 = (a1**2 - 4 * a2) / 16
    c2 = -K / 16
    c3 = -a1 / 2
    c4 = 4 * (a1**4 - 4 * a1**2 * a2 + 8 * a1 * a3 - 16 * a4) / K**2
    Q1 = QuadForm4.from_coeffs({"x1^2": 1, "x2^2": c1, "x2*x3": c2, "x2*x4": 1, "x3*x4": c3, "x4^2": c4})
    Q2 = QuadForm4.from_coeffs({"x1*x2": 1, "x3*x4": -1})
    return AssociatedPair(C, Q1, Q2, (c1, c2, c3, c4))


def correspondence_shift(C: QuarticCurve) -> Tuple[int, QuarticCurve]:
    """Smallest ``m >= 0`` for which the curve in ``s = t - m`` admits the associated pair."""
    _require_monic(C)
    m = 0
    while True:
        shifted = C.shift(m)
        if _kappa(shifted) != 0:
            return m, shifted
        m += 1


def phi_map(pair: AssociatedPair, alpha: Sequence) -> QuarticPoint:
    """Curve point attached to a common zero ``alpha`` with ``alpha4 != 0``."""
    al = [as_rational(x) for x in alpha]
    if al[3] == 0:
        raise ValueError("alpha4 must be nonzero")
    if pair.Q1.eval(al) != 0 or pair.Q2.eval(al) != 0:
        raise ValueError("alpha is not a common zero of the pair")
    a1 = pair.curve.a1
    K = pair.kappa
    # overall sign of t0 fixed so that phi inverts psi
    t0 = -(K * al[1] + 8 * a1 * al[3]) / (16 * al[3])
    y0 = K * (32 * al[0] * al[3] - K * al[1] ** 2 - 8 * a1 * al[1] * al[3]) / (256 * al[3] ** 2)
    P = QuarticPoint(t0, y0)
    if not pair.curve.contains(P):  # pragma: no cover
        raise ArithmeticError("phi produced a point off the curve")
    return P


def psi_map(pair: AssociatedPair, P: QuarticPoint) -> Tuple[int, int, int, int]:
    """Primitive common zero of the pair attached to the curve point ``P``."""
    _check_on(pair.curve, P)
    a1 = pair.curve.a1
    K = pair.kappa
    t1, y1 = P.t, P.y
    w = 2 * t1**2 + t1 * a1 + 2 * y1
    beta = (4 * K * w, -8 * K * (2 * t1 + a1), -32 * w * (2 * t1 + a1), K**2)
    return normalize_proj(beta)


# ---------------------------------------------------------------------------
# non-monic quartics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Monic model ``Y^2 = r^4 + c1 r^3 + c2 r^2 + c3 r + c4`` of a curve with a known point.

    ``t = t1 + 1/r`` and ``y = y1 * Y / r^2``.
    """

    original: QuarticCurve
    base: QuarticPoint
    monic: QuarticCurve

    def forward(self, P: QuarticPoint) -> QuarticPoint:
        _check_on(self.original, P)
        if P.t == self.base.t:
            raise ValueError("points with t = t1 have no finite image (r undefined)")
        r = 1 / (P.t - self.base.t)
        return QuarticPoint(r, P.y * r * r / self.base.y)

    def inverse(self, P: QuarticPoint) -> QuarticPoint:
        _check_on(self.monic, P)
        if P.t == 0:
            raise ValueError("r = 0 corresponds to no finite t")
        return QuarticPoint(self.base.t + 1 / P.t, self.base.y * P.y / (P.t * P.t))


def reduce_general(C: QuarticCurve, P1: QuarticPoint) -> Reduction:
    _check_on(C, P1)
    if P1.y == 0:
        raise ZeroY("the base point needs y1 != 0")
    b0, b1, b2, b3, b4 = C.shift(P1.t).coeffs
    y2 = P1.y ** 2
    monic = QuarticCurve(1, b3 / y2, b2 / y2, b1 / y2, b0 / y2)
    return Reduction(C, P1, monic)


# ---------------------------------------------------------------------------
# search and orbits
# ---------------------------------------------------------------------------

def _t_height(t: Fraction) -> int:
    return max(abs(t.numerator), t.denominator)


def _sort_key(P: QuarticPoint):
    return (_t_height(P.t), P.t, abs(P.y))


def search_points(C: QuarticCurve, height: int) -> List[QuarticPoint]:
    """Points with ``t = u/v`` in lowest terms, ``|u|, v <= height`` and ``y >= 0``."""
    out = []
    for v in range(1, height + 1):
        for u in range(-height, height + 1):
            if gcd(u, v) != 1:
                continue
            t = Fraction(u, v)
            y = sqrt_exact(C.rhs(t))
            if y is not None:
                out.append(QuarticPoint(t, abs(y)))
    return sorted(out, key=_sort_key)


def _orbit_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("DIOPHANT_MAX_ORBIT")
    return int(env) if env else DEFAULT_ORBIT_CAP


def grow_orbit(C: QuarticCurve, seeds: Iterable[QuarticPoint], depth: int,
               cap: Optional[int] = None) -> List[QuarticPoint]:
    """Close ``seeds`` under both derivations (all sign choices), ``depth`` rounds."""
    _require_monic(C)
    cap = _orbit_cap(cap)
    known = {}
    for P in seeds:
        _check_on(C, P)
        known.setdefault(P.key, QuarticPoint(P.t, abs(P.y)))
    for _ in range(depth):
        current = sorted(known.values(), key=_sort_key)
        signed = [Q for P in current for Q in ((P, P.negate()) if P.y else (P,))]
        fresh = []
        for P in signed:
            try:
                fresh.append(derive_from_one(C, P))
            except (ZeroY, DegenerateDenominator):
                pass
        for i, P in enumerate(signed):
            for Q in signed[i + 1:]:
                try:
                    fresh.append(derive_from_two(C, P, Q))
                except (EqualT, DegenerateDenominator):
                    pass
        grew = False
        for P in sorted(fresh, key=_sort_key):
            if len(known) >= cap:
                break
            if P.key not in known:
                known[P.key] = QuarticPoint(P.t, abs(P.y))
                grew = True
        if not grew or len(known) >= cap:
            break
    return sorted(known.values(), key=_sort_key)
