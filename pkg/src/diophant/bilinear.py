"""Bilinear parametrizations of quaternary quadratic forms with square determinant."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import permutations
from math import gcd, prod
from typing import Dict, Optional, Sequence, Tuple

from .exact import as_rational, common_denominator, factorize, normalize_proj, sqrt_exact
from .poly import MPoly
from .quadform import QuadForm4, mat_vec, rank, solve_linear
from .ternary import TernarySolution, diagonal_isotropic_vector, lift_to_ternary

p, q, r, s = (MPoly.var(v) for v in ("p", "q", "r", "s"))
m, n = MPoly.var("m"), MPoly.var("n")


class NonSquareDeterminant(ValueError):
    """The Gram determinant is zero or not a rational square."""

    def __init__(self, det: Fraction):
        super().__init__(f"determinant {det} is not a nonzero rational square; no bilinear solution exists")
        self.det = det


class InvalidSeed(ValueError):
    pass


def normalize_forms(forms: Sequence[MPoly]) -> Tuple[MPoly, ...]:
    """Scale four forms jointly to integer coefficients with content 1.

    The sign is fixed so the leading coefficient of the first nonzero form is positive.
    """
    coeffs = [c for F in forms for c in F.terms.values()]
    if not coeffs:
        return tuple(forms)
    den = common_denominator(coeffs)
    g = reduce(gcd, (int(c * den) for c in coeffs))
    factor = Fraction(den, abs(g))
    lead = next(F for F in forms if not F.is_zero()).leading_coefficient()
    if lead < 0:
        factor = -factor
    return tuple(F * factor for F in forms)


def _coeff_size(forms: Sequence[MPoly]) -> Fraction:
    return sum((abs(c) for F in forms for c in F.terms.values()), Fraction(0))


def balance_parameters(forms: Sequence[MPoly], max_rounds: int = 64) -> Tuple[MPoly, ...]:
    """Rescale ``q`` and ``s`` by rational factors to shrink the coefficients.

    The map ``(p, q, r, s) -> (p, c q, r, d s)`` is invertible, so the family
    of solutions is unchanged; smaller coefficients mean small solutions are
    reached with small parameters. Greedy descent over prime factors.
    """
    forms = normalize_forms(forms)
    best = _coeff_size(forms)
    for _ in range(max_rounds):
        primes = set()
        for F in forms:
            for c in F.terms.values():
                for part in (c.numerator, c.denominator):
                    primes.update(factorize(abs(part), bound=10**4)[0])
        moves = []
        for pr in sorted(primes):
            for eq, es in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)):
                moves.append((Fraction(pr) ** eq, Fraction(pr) ** es))
        improved = None
        for cq, cs in moves:
            cand = normalize_forms([F.substitute({"q": cq * q, "s": cs * s}) for F in forms])
            size = _coeff_size(cand)
            if size < best:
                best, improved = size, cand
        if improved is None:
            break
        forms = improved
    return tuple(forms)


def _is_bilinear(F: MPoly) -> bool:
    for mono in F.terms:
        d = dict(mono)
        if d.get("p", 0) + d.get("q", 0) > 1 or d.get("r", 0) + d.get("s", 0) > 1:
            return False
        if set(d) - {"p", "q", "r", "s"}:
            return False
    return True


@dataclass(frozen=True)
class BilinearSolution:
    """Four forms in ``(p, q, r, s)``, each of degree at most one in ``(p, q)`` and in ``(r, s)``."""

    forms: Tuple[MPoly, MPoly, MPoly, MPoly]
    source: Dict[str, object] = field(default_factory=dict, compare=False)

    def is_bilinear(self) -> bool:
        return all(_is_bilinear(F) for F in self.forms)

    def verify(self, Q: QuadForm4) -> bool:
        return Q.substitute(self.forms).is_zero()

    def normalized(self) -> "BilinearSolution":
        return BilinearSolution(normalize_forms(self.forms), self.source)

    def rename(self, bindings: Dict[str, object]) -> Tuple[MPoly, ...]:
        """Substitute into the parameters (e.g. ``{"r": m / 18, "s": n / 18}``)."""
        return tuple(F.substitute(bindings) for F in self.forms)

    def at(self, pv, qv, rv, sv) -> Tuple[Fraction, ...]:
        vals = {"p": pv, "q": qv, "r": rv, "s": sv}
        return tuple(F.evaluate(vals) for F in self.forms)

    def specialize(self, pv, qv) -> "LinearFamily":
        """Fix ``(p, q)``; the result is linear in ``(m, n) = (r, s)``."""
        forms = tuple(F.substitute({"p": pv, "q": qv, "r": m, "s": n}) for F in self.forms)
        return LinearFamily(forms)

    def __str__(self):
        return "\n".join(f"x{i + 1} = {F}" for i, F in enumerate(self.forms))


@dataclass(frozen=True)
class LinearFamily:
    """Four linear forms in ``(m, n)``."""

    forms: Tuple[MPoly, MPoly, MPoly, MPoly]

    def coefficient_matrix(self):
        return [[F.coeff({"m": 1}), F.coeff({"n": 1})] for F in self.forms]

    def rank(self) -> int:
        return rank(self.coefficient_matrix())

    def verify(self, Q: QuadForm4) -> bool:
        return Q.substitute(self.forms).is_zero()


# ---------------------------------------------------------------------------
# diagonal forms
# ---------------------------------------------------------------------------

def _check_square(a, k):
    if k == 0 or k * k != prod(a):
        raise ValueError("need a1*a2*a3*a4 = k^2 with k != 0")


def bilinear_from_quaternary_seed(a: Sequence, alpha: Sequence, k) -> BilinearSolution:
    """Bilinear solution of ``sum a_i x_i^2 = 0`` from a quaternary zero ``alpha``."""
    a1, a2, a3, a4 = (as_rational(x) for x in a)
    al1, al2, al3, al4 = (as_rational(x) for x in alpha)
    k = as_rational(k)
    _check_square((a1, a2, a3, a4), k)
    if a1 * al1**2 + a2 * al2**2 + a3 * al3**2 + a4 * al4**2 != 0:
        raise InvalidSeed("alpha is not a zero of the diagonal form")
    w = a3 * al3**2 + a4 * al4**2
    if w == 0:
        raise InvalidSeed("a3*alpha3^2 + a4*alpha4^2 = 0; permute coordinates or use a ternary seed")
    u = a1 * a3 * al1 * al3 + k * al2 * al4
    v = a2 * a3 * al2 * al3 - k * al1 * al4
    c = a1 * a2 * a4
    x1 = u * c * p * r - v * c * p * s - v * c * q * r - u * a2 * a2 * a4 * q * s
    x2 = v * a1 * a1 * a4 * p * r + u * c * p * s + u * c * q * r - v * c * q * s
    x3 = -c * w * (a1 * p * r + a2 * q * s)
    x4 = -a1 * a2 * k * w * (p * s - q * r)
    src = {"path": "quaternary", "diag": (a1, a2, a3, a4), "alpha": (al1, al2, al3, al4), "k": k}
    return BilinearSolution((x1, x2, x3, x4), src)


def bilinear_from_ternary_seed(a: Sequence, beta, k) -> BilinearSolution:
    """Bilinear solution of ``sum a_i x_i^2 = 0`` from a zero of ``a1 y1^2 + a2 y2^2 + a3 y3^2``."""
    a1, a2, a3, a4 = (as_rational(x) for x in a)
    if isinstance(beta, TernarySolution):
        beta = beta.beta
    b1, b2, b3 = (as_rational(x) for x in beta)
    k = as_rational(k)
    _check_square((a1, a2, a3, a4), k)
    if b3 == 0:
        raise InvalidSeed("beta3 must be nonzero")
    if a1 * b1**2 + a2 * b2**2 + a3 * b3**2 != 0:
        raise InvalidSeed("beta is not a zero of the ternary form")
    L = a1 * b1 * p + a2 * b2 * q
    M = -b2 * p + b1 * q
    x1 = a4 * L * r - a2 * a4 * M * s
    x2 = a1 * a4 * M * r + a4 * L * s
    x3 = -a4 * b3 * (a1 * p * r + a2 * q * s)
    x4 = k * b3 * (q * r - p * s)
    src = {"path": "ternary", "diag": (a1, a2, a3, a4), "beta": (b1, b2, b3), "k": k}
    return BilinearSolution((x1, x2, x3, x4), src)


# ---------------------------------------------------------------------------
# general forms
# ---------------------------------------------------------------------------

def find_seed(Q: QuadForm4) -> Optional[Tuple[int, int, int, int]]:
    """A primitive zero of ``Q`` via diagonalization and Legendre descent, or None.

    For a nonsingular form with square determinant, None proves ``Q`` anisotropic.
    """
    D = Q.diagonalize()
    y = diagonal_isotropic_vector(D.diag)
    if y is None:
        return None
    return normalize_proj(mat_vec(D.P, y))


def bilinear_general(Q: QuadForm4, seed: Optional[Sequence] = None, path: str = "auto") -> BilinearSolution:
    """Complete bilinear solution of ``Q = 0`` given one nontrivial zero.

    ``path`` is ``"auto"`` (quaternary seed when the lift condition allows,
    which it always does after some coordinate permutation), or forces
    ``"quaternary"`` / ``"ternary"``.
    """
    det = Q.det()
    k0 = sqrt_exact(det)
    if det == 0 or k0 is None:
        raise NonSquareDeterminant(det)
    if seed is None:
        seed = find_seed(Q)
        if seed is None:
            raise InvalidSeed("form has no nontrivial rational zero")
    seed = tuple(as_rational(x) for x in seed)
    if all(x == 0 for x in seed):
        raise InvalidSeed("seed must be nontrivial")
    if Q.eval(seed) != 0:
        raise InvalidSeed(f"seed {seed} is not a zero of the form")
    D = Q.diagonalize()
    a = D.diag
    y = solve_linear(D.P, seed)
    k = sqrt_exact(prod(a))
    if k is None:  # pragma: no cover - |P|^2 |A| = prod(a)
        raise ArithmeticError("diagonal product lost squareness")

    sol_y = None
    perm_used = None
    if path in ("auto", "quaternary"):
        for perm in [(0, 1, 2, 3)] + [pm for pm in permutations(range(4)) if pm != (0, 1, 2, 3)]:
            ap = [a[i] for i in perm]
            yp = [y[i] for i in perm]
            if ap[2] * yp[2] ** 2 + ap[3] * yp[3] ** 2 != 0:
                sol_y = bilinear_from_quaternary_seed(ap, yp, k)
                perm_used = perm
                break
    if sol_y is None and path in ("auto", "ternary"):
        tern = lift_to_ternary(a, y, k, permute=True)
        perm_used = tern.perm
        sol_y = bilinear_from_ternary_seed([a[i] for i in perm_used], tern, k)
    if sol_y is None:  # pragma: no cover - some permutation always satisfies the lift condition
        raise InvalidSeed("no coordinate order satisfies the lift condition")

    Y = [None] * 4
    for slot, idx in enumerate(perm_used):
        Y[idx] = sol_y.forms[slot]
    X = tuple(sum((D.P[i][j] * Y[j] for j in range(4) if D.P[i][j]), MPoly()) for i in range(4))
    src = dict(sol_y.source)
    src.update({"seed": normalize_proj(seed), "perm": perm_used, "P": D.P})
    out = BilinearSolution(balance_parameters(X), src)
    if not out.verify(Q):  # pragma: no cover
        raise ArithmeticError("bilinear solution failed verification")
    return out


def square_det_from_linear_family(Q: QuadForm4, fam) -> Fraction:
    """``sqrt(|A|)`` for a form admitting a two-parameter linear solution ``fam``."""
    if not isinstance(fam, LinearFamily):
        fam = LinearFamily(tuple(fam))
    for F in fam.forms:
        if set(F.variables) - {"m", "n"} or F.total_degree() > 1 or F.coeff({}) != 0:
            raise ValueError("family must consist of linear forms in (m, n)")
    if fam.rank() < 2:
        raise ValueError("family does not have two independent parameters")
    if not fam.verify(Q):
        raise ValueError("family does not solve the form")
    root = sqrt_exact(Q.det())
    if root is None or root == 0:  # pragma: no cover - excluded by the two-parameter property
        raise ArithmeticError("determinant is not a nonzero square despite a linear family")
    return root
