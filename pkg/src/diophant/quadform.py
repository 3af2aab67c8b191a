"""Quaternary quadratic forms held as symmetric Gram matrices.

Convention: ``Q(x) = x^T A x``, so the Gram entry for ``c*x1*x2`` is
``c/2`` in both off-diagonal slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import as_rational, common_denominator, sqrt_exact
from .poly import BinaryQuartic, MPoly, binary_coeffs, det_generic

Matrix = Tuple[Tuple[Fraction, ...], ...]

VARS = ("x1", "x2", "x3", "x4")
_MONO_KEYS = [f"x{i + 1}^2" for i in range(4)] + [
    f"x{i + 1}*x{j + 1}" for i in range(4) for j in range(i + 1, 4)
]


def _freeze(rows) -> Matrix:
    return tuple(tuple(as_rational(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(A, B) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def transpose(A) -> Matrix:
    return tuple(tuple(col) for col in zip(*A))


def mat_vec(A, v) -> Tuple[Fraction, ...]:
    return tuple(sum((a * as_rational(x) for a, x in zip(row, v)), Fraction(0)) for row in A)


def det_bareiss(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free elimination on the integer-scaled matrix."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    rows = [[as_rational(x) for x in row] for row in M]
    scale = Fraction(1)
    ints = []
    for row in rows:
        d = common_denominator(row)
        scale /= d
        ints.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if ints[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if ints[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            ints[k], ints[swap] = ints[swap], ints[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                ints[i][j] = (ints[i][j] * ints[k][k] - ints[i][k] * ints[k][j]) // prev
        prev = ints[k][k]
    return sign * ints[n - 1][n - 1] * scale


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Tuple[Fraction, ...]:
    """Solve ``A x = b`` for square invertible ``A`` (Gauss-Jordan over Q)."""
    n = len(A)
    aug = [[as_rational(x) for x in row] + [as_rational(bi)] for row, bi in zip(A, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                c = aug[i][k]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[k])]
    return tuple(row[n] for row in aug)


def rank(M: Sequence[Sequence]) -> int:
    rows = [[as_rational(x) for x in row] for row in M]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def diagonalize_matrix(A: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], Matrix, int]:
    """Congruence-diagonalize a symmetric matrix: returns ``(diag, P, rank)`` with ``P^T A P = diag``.

    Symmetric completion of squares with pivoting. When no usable diagonal
    pivot remains but ``A[k][j] != 0``, the substitution ``x_k = u + v``,
    ``x_j = u - v`` manufactures one.
    """
    n = len(A)
    M = [[as_rational(x) for x in row] for row in A]
    T = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(i, k, c):
        # column i += c * column k, then the matching row operation
        for r in range(n):
            M[r][i] += c * M[r][k]
        for r in range(n):
            M[i][r] += c * M[k][r]
        for r in range(n):
            T[r][i] += c * T[r][k]

    def swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        M[i], M[j] = M[j], M[i]
        for row in T:
            row[i], row[j] = row[j], row[i]

    def scale(i, c):
        for r in range(n):
            M[r][i] *= c
        for r in range(n):
            M[i][r] *= c
        for r in range(n):
            T[r][i] *= c

    for k in range(n):
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is None:
                    continue
                # (x_k, x_j) -> (u + v, u - v): columns e_k + e_j and e_k - e_j
                col_op(k, j, Fraction(1))
                col_op(j, k, Fraction(-1, 2))
                scale(j, Fraction(-2))
        piv = M[k][k]
        for i in range(k + 1, n):
            if M[i][k] != 0:
                col_op(i, k, -M[i][k] / piv)
    diag = tuple(M[i][i] for i in range(n))
    return diag, _freeze(T), sum(1 for d in diag if d != 0)


@dataclass(frozen=True)
class DiagonalForm:
    """``P^T A P = diag(a)``; zero entries mark a rank drop."""

    diag: Tuple[Fraction, ...]
    P: Matrix
    rank: int

    @property
    def det_P(self) -> Fraction:
        return det_bareiss(self.P)


@dataclass(frozen=True)
class QuadForm4:
    gram: Matrix

    def __post_init__(self):
        g = _freeze(self.gram)
        if len(g) != 4 or any(len(row) != 4 for row in g):
            raise ValueError("a quaternary form needs a 4x4 Gram matrix")
        for i in range(4):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Mapping[str, object]) -> "QuadForm4":
        """From ``{"x1^2": r, "x1*x2": r, ...}``; missing monomials are zero."""
        G = [[Fraction(0)] * 4 for _ in range(4)]
        for key, val in coeffs.items():
            i, j = _parse_monomial(key)
            c = as_rational(val)
            if i == j:
                G[i][i] += c
            else:
                G[i][j] += c / 2
                G[j][i] += c / 2
        return cls(G)

    @classmethod
    def from_mpoly(cls, P: MPoly) -> "QuadForm4":
        extra = set(P.variables) - set(VARS)
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        coeffs: Dict[str, Fraction] = {}
        for mono, c in P.terms.items():
            exps = dict(mono)
            if sum(exps.values()) != 2:
                raise ValueError(f"{P} is not a quadratic form")
            names = sorted(exps, key=VARS.index)
            key = f"{names[0]}^2" if len(names) == 1 else f"{names[0]}*{names[1]}"
            coeffs[key] = c
        return cls.from_coeffs(coeffs)

    @classmethod
    def parse(cls, text: str) -> "QuadForm4":
        return cls.from_mpoly(MPoly.parse(text))

    @classmethod
    def diagonal(cls, a: Sequence) -> "QuadForm4":
        return cls([[as_rational(a[i]) if i == j else 0 for j in range(4)] for i in range(4)])

    # -- views --------------------------------------------------------------
    def coeffs(self) -> Dict[str, Fraction]:
        out = {}
        for key in _MONO_KEYS:
            i, j = _parse_monomial(key)
            c = self.gram[i][i] if i == j else 2 * self.gram[i][j]
            if c != 0:
                out[key] = c
        return out

    def as_mpoly(self, names: Sequence[str] = VARS) -> MPoly:
        X = [MPoly.var(v) for v in names]
        return sum(
            (self.gram[i][j] * X[i] * X[j] for i in range(4) for j in range(4) if self.gram[i][j]),
            MPoly(),
        )

    def __str__(self):
        return str(self.as_mpoly())

    def eval(self, v: Sequence) -> Fraction:
        v = [as_rational(x) for x in v]
        return sum((self.gram[i][j] * v[i] * v[j] for i in range(4) for j in range(4)), Fraction(0))

    __call__ = eval

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        """Polar form ``u^T A v`` (so ``Q(u + v) = Q(u) + 2B(u, v) + Q(v)``)."""
        u = [as_rational(x) for x in u]
        v = [as_rational(x) for x in v]
        return sum((self.gram[i][j] * u[i] * v[j] for i in range(4) for j in range(4)), Fraction(0))

    def substitute(self, forms: Sequence[MPoly]) -> MPoly:
        return self.as_mpoly().substitute(dict(zip(VARS, forms)))

    def det(self) -> Fraction:
        return det_bareiss(self.gram)

    def diagonalize(self) -> DiagonalForm:
        diag, P, r = diagonalize_matrix(self.gram)
        return DiagonalForm(diag=diag, P=P, rank=r)

    def transform(self, P: Sequence[Sequence]) -> "QuadForm4":
        """The form ``y -> Q(P y)``."""
        P = _freeze(P)
        return QuadForm4(mat_mul(mat_mul(transpose(P), self.gram), P))

    def __add__(self, other: "QuadForm4") -> "QuadForm4":
        return QuadForm4([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.gram, other.gram)])

    def scale(self, c) -> "QuadForm4":
        c = as_rational(c)
        return QuadForm4([[c * a for a in row] for row in self.gram])

    def combine(self, other: "QuadForm4", xi1, xi2) -> "QuadForm4":
        """``xi1*self + xi2*other``."""
        return self.scale(xi1) + other.scale(xi2)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.gram for x in row)


def _parse_monomial(key: str) -> Tuple[int, int]:
    k = key.replace(" ", "").replace("**", "^")
    if k.endswith("^2"):
        name = k[:-2]
        if name not in VARS:
            raise ValueError(f"bad monomial {key!r}")
        i = VARS.index(name)
        return i, i
    parts = k.split("*")
    if len(parts) != 2 or any(p not in VARS for p in parts):
        raise ValueError(f"bad monomial {key!r}")
    i, j = sorted(VARS.index(p) for p in parts)
    if i == j:
        return i, i
    return i, j


@dataclass(frozen=True)
class PencilForm:
    Q1: QuadForm4
    Q2: QuadForm4
    f: BinaryQuartic

    def member(self, xi1, xi2) -> QuadForm4:
        return self.Q1.combine(self.Q2, xi1, xi2)

    def value(self, xi1, xi2) -> Fraction:
        return self.f(xi1, xi2)

    def square_root_at(self, xi1, xi2) -> Optional[Fraction]:
        return sqrt_exact(self.f(xi1, xi2))


def pencil(Q1: QuadForm4, Q2: QuadForm4) -> PencilForm:
    """Symbolic determinant ``|xi1*A1 + xi2*A2|`` as a binary quartic."""
    u, v = MPoly.var("xi1"), MPoly.var("xi2")
    M = [[Q1.gram[i][j] * u + Q2.gram[i][j] * v for j in range(4)] for i in range(4)]
    d = det_generic(M)
    if not isinstance(d, MPoly):
        d = MPoly.const(d)
    return PencilForm(Q1, Q2, BinaryQuartic(*binary_coeffs(d, "xi1", "xi2", degree=4)))
