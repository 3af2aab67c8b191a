"""Exact integer/rational helpers: square roots, square-free parts, factoring
by trial division, and canonical projective vectors.

Every number in the package is a :class:`fractions.Fraction` (aliased as
``Rational``) or a plain ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Optional, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]
ProjVec4 = Tuple[int, int, int, int]

#: default trial-division bound used by :func:`factorize`
FACTOR_BOUND = 10**6


class FactorizationError(ArithmeticError):
    """Trial division could not finish factoring an integer.

    ``partial`` carries whatever split was obtained so callers that only need
    a valid (not minimal) decomposition can still continue.
    """

    def __init__(self, n: int, cofactor: int, partial=None):
        super().__init__(f"could not factor cofactor {cofactor} of {n} within the trial-division bound")
        self.n = n
        self.cofactor = cofactor
        self.partial = partial


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction. Strings may be ``"p/q"`` (not necessarily reduced)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            d = int(den)
            if d == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Fraction(int(num), d)
        return Fraction(int(s))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q: Fraction) -> Union[int, str]:
    """JSON form of a rational: an int when integral, else ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def height(q: Fraction) -> int:
    q = Fraction(q)
    return max(abs(q.numerator), q.denominator)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def sqrt_exact(q: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q`` or ``None`` if there is none."""
    q = as_rational(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _is_probable_prime(n: int) -> bool:
    # Miller-Rabin with the first 13 prime bases: deterministic below 3.3e24.
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: Optional[int] = None) -> Tuple[dict, int]:
    """Factor ``|n|`` by trial division up to ``bound``.

    Returns ``(factors, cofactor)``; ``cofactor`` is 1 when the factorization
    is complete. A leftover cofactor that is prime (or a prime square) is
    absorbed into ``factors``.
    """
    bound = FACTOR_BOUND if bound is None else bound
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    factors: dict = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p <= bound and p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n == 1:
        return factors, 1
    if p * p > n or _is_probable_prime(n):
        factors[n] = factors.get(n, 0) + 1
        return factors, 1
    r = isqrt(n)
    if r * r == n and _is_probable_prime(r):
        factors[r] = factors.get(r, 0) + 2
        return factors, 1
    return factors, n


def squarefree_split(n: int, bound: Optional[int] = None) -> Tuple[int, int]:
    """Write ``n = s * f**2`` with ``s`` square-free (sign of ``n``) and ``f >= 1``.

    Raises :class:`FactorizationError` when trial division leaves an
    unresolved composite cofactor; ``err.partial`` then holds a valid but
    possibly non-square-free split.
    """
    if n == 0:
        raise ValueError("squarefree_split(0) is undefined")
    factors, cof = factorize(n, bound)
    s, f = (1 if n > 0 else -1), 1
    for p, e in factors.items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    if cof != 1:
        raise FactorizationError(n, cof, partial=(s * cof, f))
    return s, f


def divisors(n: int, bound: Optional[int] = None) -> list:
    """Sorted positive divisors of ``|n|`` (``n != 0``)."""
    factors, cof = factorize(n, bound)
    if cof != 1:
        raise FactorizationError(n, cof)
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def common_denominator(values: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def normalize_proj(v: Sequence[RationalLike]) -> Tuple[int, ...]:
    """Canonical primitive integer representative of the projective point ``v``.

    Denominators are cleared, the gcd removed, and the first nonzero
    coordinate made positive, so rational multiples share one image.
    """
    vals = [as_rational(x) for x in v]
    if all(x == 0 for x in vals):
        raise ValueError("the zero vector has no projective class")
    den = common_denominator(vals)
    ints = [int(x * den) for x in vals]
    g = reduce(gcd, ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x != 0) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def proj_key(pair: Sequence[int]) -> tuple:
    """Deterministic small-height-first ordering for primitive projective points."""
    return (max(abs(x) for x in pair), sum(abs(x) for x in pair)) + tuple(-x for x in pair)


def primitive_pairs(h: int):
    """Canonical primitive integer pairs of height exactly ``h`` in :func:`proj_key` order."""
    out = []
    for a in range(0, h + 1):
        for b in range(-h, h + 1):
            if max(a, abs(b)) != h or gcd(a, b) != 1:
                continue
            if a == 0 and b <= 0:
                continue
            out.append((a, b))
    out.sort(key=proj_key)
    return out
