"""Finiteness certificates for quartic conditions ``eta^2 = F(u, v)``.

Only the easy case is handled: ``F`` has a rational root and the resulting
cubic model has a rational 2-torsion point. Descent via 2-isogeny then bounds
the rank; when the bound is zero, every rational point is torsion and the
torsion points are listed by the Nagell-Lutz conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .exact import FactorizationError, factorize, is_square, normalize_proj, sqrt_exact
from .poly import binary_roots, rational_roots

MAX_DEPTH = 12


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _is_padic_square_unit(u: int, p: int) -> bool:
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def _locally_soluble(coeffs: Sequence[int], p: int) -> bool:
    """False only if ``N^2 = F(M, e)`` provably has no nontrivial solution over ``Q_p``."""
    d = len(coeffs) - 1

    def F(M, e):
        return sum(c * M ** (d - i) * e ** i for i, c in enumerate(coeffs))

    stack = [(M, e, 1) for M in range(p) for e in range(p) if M % p or e % p]
    while stack:
        M, e, k = stack.pop()
        v = F(M, e)
        mod = p ** k
        if v % mod:
            val = _vp(v, p)
            need = val + (3 if p == 2 else 1)
            if need <= k:
                if val % 2 == 0 and _is_padic_square_unit(v // p ** val, p):
                    return True
                continue
        if k >= MAX_DEPTH:
            return True  # undecided at this precision: do not claim insolubility
        for i in range(p):
            for j in range(p):
                stack.append((M + mod * i, e + mod * j, k + 1))
    return False


def _really_soluble(b1: int, a: int, b2: int) -> bool:
    # b1 t^4 + a t^2 + b2 >= 0 somewhere on the projective line
    if b1 > 0 or b2 > 0:
        return True
    if b1 == 0 or b2 == 0:
        return True
    return a > 0 and a * a - 4 * b1 * b2 >= 0


def _has_small_point(b1: int, a: int, b2: int, height: int) -> bool:
    for M in range(0, height + 1):
        for e in range(0, height + 1):
            if (M or e) and gcd(M, e) == 1:
                val = b1 * M ** 4 + a * M * M * e * e + b2 * e ** 4
                if val >= 0 and is_square(val):
                    return True
    return False


def _squarefree_divisors(b: int) -> List[int]:
    fac, cof = factorize(abs(b))
    if cof != 1:
        raise FactorizationError(abs(b), cof)
    primes = sorted(fac)
    out = []
    for r in range(len(primes) + 1):
        for sub in combinations(primes, r):
            d = 1
            for q in sub:
                d *= q
            out.extend([d, -d])
    return sorted(out, key=lambda x: (abs(x), x < 0))


def _image_bounds(a: int, b: int, height: int) -> Tuple[int, int]:
    """Lower and upper bounds for the size of the descent image on ``y^2 = x^3 + a x^2 + b x``."""
    bad = set(factorize(abs(2 * b * (a * a - 4 * b)))[0])
    found = upper = 0
    for b1 in _squarefree_divisors(b):
        b2 = b // b1
        if _has_small_point(b1, a, b2, height):
            found += 1
            upper += 1
            continue
        if not _really_soluble(b1, a, b2):
            continue
        if all(_locally_soluble([b1, 0, a, 0, b2], p) for p in sorted(bad)):
            upper += 1
    return found, upper


@dataclass(frozen=True)
class RankBound:
    lower: int
    upper: int


def two_isogeny_rank_bound(a: int, b: int, height: int = 30) -> RankBound:
    """Bounds on the rank of ``y^2 = x^3 + a x^2 + b x`` from descent via 2-isogeny."""
    if b == 0 or a * a - 4 * b == 0:
        raise ValueError("singular cubic")
    lo1, up1 = _image_bounds(a, b, height)
    lo2, up2 = _image_bounds(-2 * a, a * a - 4 * b, height)

    def log2(n):
        return n.bit_length() - 1

    return RankBound(max(0, log2(lo1 * lo2) - 2), log2(up1 * up2) - 2)


def nagell_lutz_points(a: int, b: int, c: int) -> List[Tuple[int, int]]:
    """Affine integer points of ``y^2 = x^3 + a x^2 + b x + c`` with ``y = 0`` or ``y^2 | disc``."""
    disc = -4 * a ** 3 * c + a * a * b * b + 18 * a * b * c - 4 * b ** 3 - 27 * c * c
    fac, cof = factorize(abs(disc))
    if cof != 1:
        raise FactorizationError(abs(disc), cof)
    ys = [1]
    for q, e in fac.items():
        ys = [y * q ** k for y in ys for k in range(e // 2 + 1)]
    out = []
    for y in [0] + ys:
        for x, _ in rational_roots([Fraction(c - y * y), Fraction(b), Fraction(a), Fraction(1)]):
            if x.denominator == 1:
                out.append((int(x), y))
                if y:
                    out.append((int(x), -y))
    return sorted(set(out))


def _shift_root_to_infinity(coeffs: Sequence[Fraction], root: Tuple[int, int]):
    u0, v0 = root
    # extended gcd for u0*t - v0*s = 1
    g, x, y = _egcd(u0, v0)
    t, s = x, -y
    assert u0 * t - v0 * s == 1
    d = 4
    from .poly import MPoly, binary_coeffs

    U, V = MPoly.var("U"), MPoly.var("V")
    u, v = u0 * U + s * V, v0 * U + t * V
    F = sum((Fraction(cf) * u ** (d - i) * v ** i for i, cf in enumerate(coeffs)), MPoly())
    return binary_coeffs(F, "U", "V", degree=4), (u0, v0, s, t)


def _egcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def finite_curve_points(quartic: Sequence, height: int = 30) -> Optional[List[Tuple[int, int]]]:
    """All ``(u : v)`` with ``F(u, v)`` a rational square, if finiteness can be certified.

    Returns None when the method does not apply or the rank bound is not zero.
    """
    coeffs = [Fraction(c) for c in quartic]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    coeffs = [c * den * den for c in coeffs]
    roots = binary_roots(coeffs)
    if not roots:
        return None
    root = roots[0][0]
    G, (u0, v0, s, t) = _shift_root_to_infinity(coeffs, root)
    if G[0] != 0 or G[1] == 0:
        return None
    c1, c2, c3, c4 = (int(x) for x in G[1:])
    # (c1 eta)^2 = X^3 + c2 X^2 + c1 c3 X + c1^2 c4 with X = c1 x
    A, B, C = c2, c1 * c3, c1 * c1 * c4
    r_roots = [x for x, _ in rational_roots([Fraction(C), Fraction(B), Fraction(A), Fraction(1)])]
    if not r_roots:
        return None
    r = int(r_roots[0])
    a = 3 * r + A
    b = 3 * r * r + 2 * A * r + B
    try:
        bound = two_isogeny_rank_bound(a, b, height)
    except (FactorizationError, ValueError):
        return None
    if bound.upper != 0:
        return None
    pts = {normalize_proj((u0, v0))}
    for X1, _ in nagell_lutz_points(a, b, 0):
        x = Fraction(X1 + r, c1)
        pts.add(normalize_proj((u0 * x + s, v0 * x + t)))
    out = sorted(pts)
    for uv in out:  # pragma: no cover - guards the change of variables
        val = sum(c * uv[0] ** (4 - i) * uv[1] ** i for i, c in enumerate(coeffs))
        if sqrt_exact(val) is None:
            raise ArithmeticError("torsion point does not map back to the quartic")
    return out
