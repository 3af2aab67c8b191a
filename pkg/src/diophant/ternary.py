"""Diagonal ternary forms: Legendre's equation and the bridge to diagonal
quaternary forms with square discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd, isqrt, prod
from typing import Optional, Sequence, Tuple

from .exact import (
    as_rational,
    common_denominator,
    factorize,
    FactorizationError,
    is_square,
    normalize_proj,
    squarefree_split,
)


class LiftPrecondition(ValueError):
    """The witness does not meet the lift requirements."""


@dataclass(frozen=True)
class TernarySolution:
    """Primitive nonzero ``beta`` with ``sum(coeffs[i] * beta[i]**2) == 0``.

    ``perm`` records which quaternary coordinates were used (identity when the
    caller's ordering already worked).
    """

    beta: Tuple[int, int, int]
    coeffs: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    perm: Tuple[int, int, int, int] = (0, 1, 2, 3)

    def __post_init__(self):
        object.__setattr__(self, "beta", normalize_proj(self.beta))
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", tuple(as_rational(a) for a in self.coeffs))

    def residual(self, coeffs: Optional[Sequence] = None) -> Fraction:
        a = self.coeffs if coeffs is None else [as_rational(c) for c in coeffs]
        return sum((ai * b * b for ai, b in zip(a, self.beta)), Fraction(0))


# ---------------------------------------------------------------------------
# modular square roots
# ---------------------------------------------------------------------------

def _sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def sqrt_mod_squarefree(a: int, n: int) -> Optional[int]:
    """Some ``x`` with ``x*x = a (mod n)`` for square-free ``n > 0``, else None."""
    if n == 1:
        return 0
    factors, cof = factorize(n)
    if cof != 1:
        raise FactorizationError(n, cof)
    x, mod = 0, 1
    for p in factors:
        r = _sqrt_mod_prime(a, p)
        if r is None:
            return None
        # CRT merge of x (mod mod) with r (mod p)
        k = ((r - x) * pow(mod, -1, p)) % p
        x += mod * k
        mod *= p
    return x % n


# ---------------------------------------------------------------------------
# Legendre's equation
# ---------------------------------------------------------------------------

def _descent(A: int, B: int) -> Optional[Tuple[int, int, int]]:
    """Nontrivial integers with ``A x^2 + B y^2 = z^2`` (A, B nonzero, B square-free)."""
    if A == 1:
        return (1, 0, 1)
    if B == 1:
        return (0, 1, 1)
    if is_square(A):
        return (1, 0, isqrt(A))
    if is_square(B):
        return (0, 1, isqrt(B))
    if A < 0 and B < 0:
        return None
    if abs(A) > abs(B):
        sol = _descent(B, A)
        if sol is None:
            return None
        return (sol[1], sol[0], sol[2])
    n = abs(B)
    t = sqrt_mod_squarefree(A, n)
    if t is None:
        return None
    if t > n // 2:
        t -= n
    k = (t * t - A) // B
    s_part, f_part = squarefree_split(k)
    sub = _descent(A, s_part)
    if sub is None:
        return None
    X, Y, Z = sub
    return (t * X + Z, s_part * f_part * Y, t * Z + A * X)


def _normal_form(a: Sequence[int]):
    """Square-free, pairwise coprime coefficients plus per-variable multipliers.

    Returns ``(b, mult)`` with the property that if ``sum b[i] z[i]^2 = 0`` then
    ``y[i] = mult[i] * z[i]`` solves the input equation.
    """
    b = list(a)
    mult = [Fraction(1)] * 3
    for i in range(3):
        s, f = squarefree_split(b[i])
        b[i] = s
        mult[i] /= f
    g = gcd(gcd(b[0], b[1]), b[2])
    b = [x // g for x in b]
    changed = True
    while changed:
        changed = False
        for i, j in ((0, 1), (0, 2), (1, 2)):
            g = gcd(b[i], b[j])
            if g > 1:
                k = 3 - i - j
                b[i] //= g
                b[j] //= g
                b[k] *= g
                mult[k] *= g
                changed = True
    return b, mult


_SMALL_VECTORS = sorted(
    (v for v in product(range(4), range(-3, 4), range(-3, 4)) if any(v)),
    key=lambda v: (max(map(abs, v)), sum(x < 0 for x in v), [-x for x in v]),
)


def solve_legendre(a1, a2, a3) -> Optional[TernarySolution]:
    """Nontrivial primitive zero of ``a1 y1^2 + a2 y2^2 + a3 y3^2`` or None.

    The verdict is exact. Raises :class:`FactorizationError` when a
    coefficient is too large to factor by trial division.
    """
    a = [as_rational(x) for x in (a1, a2, a3)]
    if any(x == 0 for x in a):
        raise ValueError("solve_legendre needs nonzero coefficients")
    if all(x > 0 for x in a) or all(x < 0 for x in a):
        return None
    # tiny witnesses first so common cases print nicely
    for v in _SMALL_VECTORS:
        if any(v) and sum(ai * vi * vi for ai, vi in zip(a, v)) == 0:
            return TernarySolution(v, tuple(a))
    den = common_denominator(a)
    ints = [int(x * den) for x in a]
    b, mult = _normal_form(ints)
    A, B, c = -b[0] * b[2], -b[1] * b[2], b[2]
    sol = _descent(A, B)
    if sol is None:
        return None
    x, y, z = sol
    # A x^2 + B y^2 = z^2  =>  b0 x^2 + b1 y^2 + c (z/c)^2 = 0
    vec = [mult[0] * x, mult[1] * y, mult[2] * Fraction(z, c)]
    out = TernarySolution(tuple(normalize_proj(vec)), tuple(a))
    if out.residual() != 0:  # pragma: no cover - guards the algebra above
        raise ArithmeticError("Legendre descent produced an invalid witness")
    return out


def legendre_obstruction(a1, a2, a3) -> Optional[str]:
    """Human-readable reason the equation has no nontrivial zero (None if it has one)."""
    a = [as_rational(x) for x in (a1, a2, a3)]
    if all(x > 0 for x in a) or all(x < 0 for x in a):
        return "coefficients share a sign (definite form)"
    den = common_denominator(a)
    b, _ = _normal_form([int(x * den) for x in a])
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        n = abs(b[i])
        if n > 1 and sqrt_mod_squarefree(-b[j] * b[k], n) is None:
            return f"{-b[j] * b[k]} is not a square modulo {n} in normal form {tuple(b)}"
    return None


# ---------------------------------------------------------------------------
# quaternary <-> ternary bridge
# ---------------------------------------------------------------------------

def _beta_eq6(a, alpha, k):
    a1, a2, a3, a4 = a
    al1, al2, al3, al4 = alpha
    b1 = a2 * (k * al2 * al4 + a1 * a3 * al1 * al3)
    b2 = a1 * (k * al1 * al4 - a2 * a3 * al2 * al3)
    b3 = a1 * a2 * (a3 * al3 ** 2 + a4 * al4 ** 2)
    return b1, b2, b3


def lift_to_ternary(a: Sequence, alpha: Sequence, k, permute: bool = False) -> TernarySolution:
    """Zero of ``a1 y1^2 + a2 y2^2 + a3 y3^2`` from a zero ``alpha`` of the diagonal quaternary form.

    The lift only needs ``a3*alpha3^2 + a4*alpha4^2 != 0``. With
    ``permute=True`` other coordinate orders are tried when the given one
    fails; ``perm`` on the result says which coordinates play roles 1..4 and
    ``coeffs`` holds the matching ternary coefficients.
    """
    a = tuple(as_rational(x) for x in a)
    alpha = tuple(as_rational(x) for x in alpha)
    k = as_rational(k)
    if k * k != prod(a) or k == 0:
        raise LiftPrecondition("need a1*a2*a3*a4 = k^2 with k != 0")
    if all(x == 0 for x in alpha):
        raise LiftPrecondition("alpha must be nontrivial")
    if sum(ai * x * x for ai, x in zip(a, alpha)) != 0:
        raise LiftPrecondition("alpha is not a zero of the form")
    orders = [(0, 1, 2, 3)]
    if permute:
        rest = [p for p in permutations(range(4)) if p != (0, 1, 2, 3)]
        # prefer arrangements with two positive coefficients first
        rest.sort(key=lambda p: (not (a[p[0]] > 0 and a[p[1]] > 0), p))
        orders += rest
    for perm in orders:
        ap = tuple(a[i] for i in perm)
        alp = tuple(alpha[i] for i in perm)
        if ap[2] * alp[2] ** 2 + ap[3] * alp[3] ** 2 == 0:
            continue
        beta = _beta_eq6(ap, alp, k)
        sol = TernarySolution(normalize_proj(beta), ap[:3], perm)
        if sol.residual() != 0:  # pragma: no cover
            raise ArithmeticError("lift failed to produce a ternary zero")
        return sol
    raise LiftPrecondition("a3*alpha3^2 + a4*alpha4^2 = 0 for every admissible coordinate order")


def embed_to_quaternary(beta) -> Tuple[int, int, int, int]:
    """``(b1, b2, b3, 0)`` made primitive."""
    if isinstance(beta, TernarySolution):
        beta = beta.beta
    return normalize_proj(tuple(beta) + (0,))


def diagonal_isotropic_vector(a: Sequence) -> Optional[Tuple[int, ...]]:
    """A zero of the diagonal form ``sum a_i y_i^2`` in any number of variables, or None.

    None is a proof of anisotropy for up to three variables and for four
    with a square coefficient product (where the ternary sub-form decides);
    otherwise it only means no ternary sub-form was isotropic.
    """
    from .exact import sqrt_exact

    a = [as_rational(x) for x in a]
    n = len(a)
    for i, x in enumerate(a):
        if x == 0:
            return tuple(int(j == i) for j in range(n))
    if n == 1:
        return None
    if n == 2:
        r = sqrt_exact(-a[0] / a[1])
        if r is None:
            return None
        return normalize_proj((1, r))
    for idx in _triples(n):
        sol = solve_legendre(*(a[i] for i in idx))
        if sol is not None:
            v = [0] * n
            for i, b in zip(idx, sol.beta):
                v[i] = b
            return normalize_proj(v)
    return None


def _triples(n):
    from itertools import combinations

    return combinations(range(n), 3)
