"""Common zeros of two quaternary quadratic forms.

The pencil determinant ``f(xi1, xi2) = |xi1*A1 + xi2*A2|`` is a binary
quartic; ``eta^2 = f`` must have a nontrivial solution whenever the pair
does. The solvers pick one pencil member, describe all its zeros, and cut
them down with the other form.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from fractions import Fraction
from itertools import product
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .descent import finite_curve_points
from .bilinear import BilinearSolution, bilinear_general, find_seed, normalize_forms
from .exact import (
    as_rational,
    common_denominator,
    normalize_proj,
    primitive_pairs,
    proj_key,
    sqrt_exact,
)
from .poly import (
    BinaryQuartic,
    MPoly,
    binary_coeffs,
    binary_divide,
    binary_gcd,
    binary_roots,
    rational_roots,
    square_decomposition,
    squarefree_decomposition,
    sturm_real_root_count,
)
from .quadform import QuadForm4, diagonalize_matrix, mat_vec, pencil, rank
from .ternary import diagonal_isotropic_vector, legendre_obstruction

CONGRUENCE_MODULI = (16, 9, 5, 7, 11, 13, 25, 27)

U, V = MPoly.var("u"), MPoly.var("v")
M_, N_ = MPoly.var("m"), MPoly.var("n")
XI, ETA = MPoly.var("xi"), MPoly.var("eta")


class NotARoot(ValueError):
    pass


class NotASquare(ValueError):
    pass


class AnisotropicMember(ValueError):
    """The chosen pencil member has no rational zero, so neither does the pair."""

    def __init__(self, xi, certificate: str):
        super().__init__(f"pencil member at xi={xi} has no rational zero: {certificate}")
        self.xi = xi
        self.certificate = certificate


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairVerdict:
    tag: str  # ProvedEmpty | WitnessFound | NotFoundUpTo
    witness: Optional[Tuple[int, int, Fraction]] = None
    bound: Optional[int] = None
    certificate: Optional[str] = None


@dataclass(frozen=True)
class ParamFamily:
    """Four homogeneous forms of equal degree in ``m, n`` (``l`` for a rare third parameter)."""

    forms: Tuple[MPoly, MPoly, MPoly, MPoly]

    @property
    def degree(self) -> int:
        return max(F.total_degree() for F in self.forms)

    @property
    def params(self) -> Tuple[str, ...]:
        names = set()
        for F in self.forms:
            names.update(F.variables)
        return tuple(sorted(names, key=lambda v: ("m", "n", "l").index(v) if v in "mnl" else 9))

    def at(self, **values) -> Tuple[Fraction, ...]:
        return tuple(F.evaluate(values) for F in self.forms)

    def verify(self, *forms: QuadForm4) -> bool:
        return all(Q.substitute(self.forms).is_zero() for Q in forms)

    def __str__(self):
        return ", ".join(str(F) for F in self.forms)


@dataclass(frozen=True)
class CurveCondition:
    """Solutions indexed by rational points of ``eta^2 = c0 xi^4 + ... + c4``.

    ``map`` sends ``(xi, eta)`` to a common zero; flipping the sign of
    ``eta`` gives the companion solution.
    """

    quartic: Tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    map: Tuple[MPoly, MPoly, MPoly, MPoly]
    note: str = ""

    def on_curve(self, xi, eta) -> bool:
        xi, eta = as_rational(xi), as_rational(eta)
        return eta * eta == sum(c * xi ** (4 - i) for i, c in enumerate(self.quartic))

    def point(self, xi, eta) -> Tuple[Fraction, ...]:
        vals = {"xi": as_rational(xi), "eta": as_rational(eta)}
        return tuple(F.evaluate(vals) for F in self.map)


@dataclass
class SolutionDescription:
    families: List[ParamFamily] = field(default_factory=list)
    points: List[Tuple[int, int, int, int]] = field(default_factory=list)
    curves: List[CurveCondition] = field(default_factory=list)
    status: str = "Complete"  # Complete | Partial | ProvedEmpty
    notes: List[str] = field(default_factory=list)
    certificate: Optional[str] = None

    @property
    def curve_condition(self) -> Optional[CurveCondition]:
        return self.curves[0] if self.curves else None

    def verify(self, Q1: QuadForm4, Q2: QuadForm4) -> bool:
        for fam in self.families:
            if not fam.verify(Q1, Q2):
                return False
        for pt in self.points:
            if Q1.eval(pt) != 0 or Q2.eval(pt) != 0:
                return False
        for cc in self.curves:
            Fq = sum((c * XI ** (4 - i) for i, c in enumerate(cc.quartic)), MPoly())
            for Q in (Q1, Q2):
                val = Q.substitute(cc.map)
                # val must vanish modulo eta^2 - quartic(xi)
                reduced = _reduce_eta(val, Fq)
                if not reduced.is_zero():
                    return False
        return True


def _reduce_eta(P: MPoly, Fq: MPoly) -> MPoly:
    """Replace ``eta^2`` by ``Fq(xi)`` until ``P`` is at most linear in ``eta``."""
    out = MPoly()
    for mono, c in P.terms.items():
        d = dict(mono)
        e = d.pop("eta", 0)
        term = MPoly({tuple(d.items()): c})
        out = out + term * Fq ** (e // 2) * (ETA if e % 2 else 1)
    return out


# ---------------------------------------------------------------------------
# the necessary condition
# ---------------------------------------------------------------------------

def _integral_coeffs(coeffs: Sequence[Fraction]) -> List[int]:
    den = common_denominator(coeffs)
    # multiply by den^2 so the square class of the form is unchanged
    return [int(c * den * den) for c in coeffs]


def _primitive_residues(M: int):
    primes = [p for p in range(2, M + 1) if M % p == 0 and all(p % d for d in range(2, p))]
    for a, b in product(range(M), repeat=2):
        if all(a % p or b % p for p in primes):
            yield a, b


def congruence_certificate(coeffs: Sequence, moduli: Sequence[int] = CONGRUENCE_MODULI) -> Optional[str]:
    """A modulus ``M`` such that ``F(a, b)`` is never a square mod ``M`` for primitive ``(a, b)``.

    ``coeffs`` are those of a binary form ``sum c_i X^(d-i) Y^i`` of even degree.
    Returns a certificate string or None.
    """
    ints = _integral_coeffs([as_rational(c) for c in coeffs])
    d = len(ints) - 1
    for M in moduli:
        squares = {x * x % M for x in range(M)}
        ok = True
        for a, b in _primitive_residues(M):
            val = sum(c * pow(a, d - i, M) * pow(b, i, M) for i, c in enumerate(ints)) % M
            if val in squares:
                ok = False
                break
        if ok:
            return f"form {ints} takes no square value mod {M} at primitive arguments"
    return None


def _no_real_sign_change(f_coeffs) -> bool:
    """True when the dehomogenized quartic has no real root of odd multiplicity."""
    d = len(f_coeffs) - 1
    asc = [Fraction(f_coeffs[d - k]) for k in range(d + 1)]
    while asc and asc[-1] == 0:
        asc.pop()
    _, parts = squarefree_decomposition(asc)
    for i, part in enumerate(parts, start=1):
        if i % 2 and sturm_real_root_count(part) > 0:
            return False
    return True


def _square_point_chunk(args):
    coeffs, h, nonzero = args
    F = BinaryQuartic(*coeffs)
    for pair in primitive_pairs(h):
        val = F(*pair)
        if val != 0 or not nonzero:
            r = sqrt_exact(val)
            if r is not None:
                return (pair[0], pair[1], r)
    return None


def search_square_values(F: BinaryQuartic, height: int, jobs: int = 1, nonzero: bool = False):
    """First primitive ``(a, b)`` in height order with ``F(a, b)`` a square (nonzero if asked)."""
    tasks = [(F.coeffs, h, nonzero) for h in range(1, height + 1)]
    if jobs > 1 and height > 8:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for res in ex.map(_square_point_chunk, tasks):
                if res is not None:
                    return res
        return None
    for t in tasks:
        res = _square_point_chunk(t)
        if res is not None:
            return res
    return None


def necessary_condition(Q1: QuadForm4, Q2: QuadForm4, height: int = 50, jobs: int = 1) -> PairVerdict:
    f = pencil(Q1, Q2).f
    if f.is_zero():
        return PairVerdict("WitnessFound", (1, 0, Fraction(0)), certificate="pencil determinant vanishes identically")
    fm = f.as_mpoly("u", "v")
    sd = square_decomposition(fm, "u", "v")
    free_const = sd.free.is_constant()
    S_roots = binary_roots(binary_coeffs(sd.square, "u", "v")) if not sd.square.is_constant() else []
    if free_const and not S_roots:
        if sd.const != 1:
            return PairVerdict(
                "ProvedEmpty",
                certificate=f"f = c*g^2 with c = {sd.const} (times a square) not a rational square "
                f"and g = {sd.square} without rational zeros",
            )
    roots = binary_roots(f.coeffs)
    if not roots and f.e0 < 0 and _no_real_sign_change(f.coeffs):
        return PairVerdict("ProvedEmpty", certificate="f is negative semidefinite and has no rational zero")
    if not roots:
        cert = congruence_certificate(f.coeffs)
        if cert is not None:
            return PairVerdict("ProvedEmpty", certificate=cert)
    if free_const and sd.const == 1:
        # f is a perfect square: every argument works; report the smallest with eta != 0
        found = search_square_values(f, max(height, 1), 1, nonzero=True)
        if found is not None:
            return PairVerdict("WitnessFound", found, bound=height, certificate="f is a perfect square")
    found = search_square_values(f, height, jobs)
    if found is not None:
        return PairVerdict("WitnessFound", found, bound=height)
    if roots:
        a, b = min((r for r, _ in roots), key=proj_key)
        return PairVerdict("WitnessFound", (a, b, Fraction(0)), bound=height)
    return PairVerdict("NotFoundUpTo", bound=height)


def pencil_roots(Q1: QuadForm4, Q2: QuadForm4):
    """Rational roots of the pencil determinant with multiplicities (high multiplicity first)."""
    f = pencil(Q1, Q2).f
    roots = binary_roots(f.coeffs)
    return sorted(roots, key=lambda it: (-it[1], proj_key(it[0])))


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _vec_forms(vec: Sequence) -> Tuple[MPoly, ...]:
    return tuple(x if isinstance(x, MPoly) else MPoly.const(x) for x in vec)


def _combine(coeff_vec_pairs):
    out = [MPoly(), MPoly(), MPoly(), MPoly()]
    for c, vec in coeff_vec_pairs:
        for i in range(4):
            out[i] = out[i] + c * vec[i]
    return tuple(out)


def _binary_points(a0, b0, c0):
    """Rational ``(lam : mu)`` with ``a0 lam^2 + b0 lam mu + c0 mu^2 = 0``."""
    if a0 == 0 and b0 == 0 and c0 == 0:
        return None
    return [r for r, _ in binary_roots([a0, b0, c0])]


def _finish_family(forms: Sequence[MPoly], u: str = "u", v: str = "v"):
    """Strip common binary factors and content; return ``("family", forms)``, ``("point", vec)`` or None."""
    forms = [F if isinstance(F, MPoly) else MPoly.const(F) for F in forms]
    if all(F.is_zero() for F in forms):
        return None
    if all(set(F.variables) <= {u, v} for F in forms):
        g = binary_gcd(forms, u, v)
        if not g.is_constant():
            forms = [binary_divide(F, g, u, v) for F in forms]
    if all(F.is_constant() for F in forms):
        return ("point", normalize_proj([F.constant_value() for F in forms]))
    forms = normalize_forms(forms)
    if all(F.total_degree() <= 1 for F in forms):
        # a linear family: rescaling each parameter separately is harmless
        for name in (u, v):
            col = [F.coeff({name: 1}) for F in forms if F.coeff({name: 1})]
            if col:
                g = reduce(gcd, (int(c) for c in col))
                forms = [F.substitute({name: MPoly.var(name) * Fraction(1, g)}) for F in forms]
    return ("family", tuple(F.substitute({u: M_, v: N_}) for F in forms))


def _minors_vanish_roots(fam: ParamFamily, pt) -> bool:
    names = fam.params
    pt = [as_rational(x) for x in pt]
    if len(names) != 2:
        return False
    a, b = names
    minors = []
    for i in range(4):
        for j in range(i + 1, 4):
            Mij = fam.forms[i] * pt[j] - fam.forms[j] * pt[i]
            if not Mij.is_zero():
                minors.append(Mij)
    if not minors:
        return True
    g = binary_gcd(minors, a, b)
    if g.is_constant():
        return False
    for (r0, r1), _ in binary_roots(binary_coeffs(g, a, b)):
        val = fam.at(**{a: r0, b: r1})
        if any(x != 0 for x in val):
            return True
    return False


def family_contains(fam: ParamFamily, pt) -> bool:
    """Whether the projective point ``pt`` is a value of the family at rational parameters."""
    if len(fam.params) == 1:
        name = fam.params[0]
        val = fam.at(**{name: 1})
        return normalize_proj(val) == normalize_proj(pt) if any(val) else False
    if len(fam.params) == 2:
        return _minors_vanish_roots(fam, pt)
    # three-parameter linear family: membership is a rank test
    names = fam.params
    cols = [[F.coeff({nm: 1}) for F in fam.forms] for nm in names]
    return rank([list(c) for c in cols]) == rank([list(c) for c in cols] + [list(as_rational(x) for x in pt)])


def conic_parametrization(G: Sequence[Sequence], z0: Sequence, u: str = "u", v: str = "v") -> Tuple[MPoly, MPoly, MPoly]:
    """Quadratic forms in ``(u, v)`` covering every zero of the nondegenerate ternary form ``G``.

    Lines through the known zero ``z0`` are cut by ``d = u e_i + v e_j``;
    the base point is then moved so that ``(u : v) = (1 : 0)`` gives ``z0``.
    """
    G = [[as_rational(x) for x in row] for row in G]
    z0 = [as_rational(x) for x in z0]

    def build(base, pair):
        i, j = pair
        d = [MPoly(), MPoly(), MPoly()]
        d[i] = d[i] + MPoly.var(u)
        d[j] = d[j] + MPoly.var(v)
        Cd = sum((G[a][b] * d[a] * d[b] for a in range(3) for b in range(3) if G[a][b]), MPoly())
        Bzd = sum((G[a][b] * base[a] * d[b] for a in range(3) for b in range(3) if G[a][b] and base[a]), MPoly())
        return tuple(-Cd * base[k] + 2 * Bzd * d[k] for k in range(3))

    pairs = [((0, 1), 2), ((0, 2), 1), ((1, 2), 0)]
    pair = next(pr for pr, k in pairs if z0[k] != 0)
    z = build(z0, pair)
    z1 = [F.evaluate({u: 1, v: 0}) for F in z]
    k = 3 - sum(pair)
    if any(z1) and normalize_proj(z1) != normalize_proj(z0) and z1[k] != 0:
        z = build(z1, pair)
    return z


def _ternary_zero(G: Sequence[Sequence]):
    diag, P, _ = diagonalize_matrix(G)
    y = diagonal_isotropic_vector(diag)
    if y is None:
        return None
    return normalize_proj(mat_vec(P, y))


# ---------------------------------------------------------------------------
# the resolver for  a lam^2 + b lam mu + c mu^2 = 0  over binary forms
# ---------------------------------------------------------------------------

def _resolve(Qo: QuadForm4, Xl, Xm, extra_forms: Sequence[QuadForm4], search_height: int,
             dehom_label: str) -> SolutionDescription:
    """All zeros of ``Qo`` of the shape ``lam*Xl(u, v) + mu*Xm(u, v)``.

    ``Xl`` and ``Xm`` are 4-tuples of binary forms in ``u, v`` (constants allowed).
    """
    Xl, Xm = _vec_forms(Xl), _vec_forms(Xm)
    G = Qo.gram
    a = sum((G[i][j] * Xl[i] * Xl[j] for i in range(4) for j in range(4) if G[i][j]), MPoly())
    b = 2 * sum((G[i][j] * Xl[i] * Xm[j] for i in range(4) for j in range(4) if G[i][j]), MPoly())
    c = sum((G[i][j] * Xm[i] * Xm[j] for i in range(4) for j in range(4) if G[i][j]), MPoly())
    desc = SolutionDescription()
    fams: List[Tuple[MPoly, ...]] = []
    pts: List[Tuple[int, ...]] = []

    def add(res):
        if res is None:
            return
        kind, obj = res
        (fams if kind == "family" else pts).append(obj)

    if a.is_zero() and b.is_zero() and c.is_zero():
        desc.status = "Partial"
        desc.notes.append("every vector of the member's zero set solves the pair; multi-parameter family")
        add(_finish_family(Xl))
        add(_finish_family(Xm))
        return desc

    g = binary_gcd([a, b, c], "u", "v")
    special = set()
    if not g.is_constant():
        for (r0, r1), _ in binary_roots(binary_coeffs(g, "u", "v")):
            vals = {"u": r0, "v": r1}
            xl = [F.evaluate(vals) for F in Xl]
            xm = [F.evaluate(vals) for F in Xm]
            add(_finish_family([xl[i] * M_ + xm[i] * N_ for i in range(4)], "m", "n"))
        a, b, c = (binary_divide(P, g, "u", "v") for P in (a, b, c))

    D = b * b - 4 * a * c
    for P in (a, c):
        if not P.is_zero() and not P.is_constant():
            special.update(r for r, _ in binary_roots(binary_coeffs(P, "u", "v")))

    if a.is_zero() and c.is_zero():
        add(_finish_family(Xl))
        add(_finish_family(Xm))
    elif D.is_zero():
        # double root everywhere
        if not c.is_zero():
            add(_finish_family(_combine([(2 * c, Xl), (-b, Xm)])))
        else:
            add(_finish_family(_combine([(-b, Xl), (2 * a, Xm)])))
    else:
        use_c = not c.is_zero() and (a.is_zero() or c.total_degree() <= a.total_degree())

        def family_for(W):
            if use_c:
                return _combine([(2 * c, Xl), (-b + W, Xm)])
            return _combine([(-b + W, Xl), (2 * a, Xm)])

        if D.is_constant():
            r = sqrt_exact(D.constant_value())
            if r is not None:
                add(_finish_family(family_for(MPoly.const(r))))
                add(_finish_family(family_for(MPoly.const(-r))))
        else:
            sd = square_decomposition(D, "u", "v")
            S, F, k0 = sd.square, sd.free, sd.const
            for P in (S, F):
                if not P.is_constant():
                    special.update(r for r, _ in binary_roots(binary_coeffs(P, "u", "v")))
            degF = F.total_degree()
            if degF == 0:
                if k0 == 1:
                    add(_finish_family(family_for(S)))
                    add(_finish_family(family_for(-S)))
            elif degF == 2:
                f0, f1, f2 = binary_coeffs(F, "u", "v")
                Gc = [[k0 * f0, k0 * f1 / 2, 0], [k0 * f1 / 2, k0 * f2, 0], [0, 0, -1]]
                z0 = _ternary_zero(Gc)
                if z0 is not None:
                    zu, zv, zw = conic_parametrization(Gc, z0, "s", "t")
                    binds = {"u": zu, "v": zv}
                    forms = [P.substitute(binds) for P in family_for(S * MPoly.var("w"))]
                    forms = [P.substitute({"w": zw}) for P in forms]
                    add(_finish_family(forms, "s", "t"))
                else:
                    desc.notes.append(f"conic w^2 = {k0}*({F}) has no rational point")
            else:
                # genuine quartic condition
                s0 = S.constant_value()
                quart = tuple(k0 * x for x in binary_coeffs(F, "u", "v"))
                binds = {"u": XI, "v": MPoly.const(1)}
                mp = tuple(P.substitute(binds) for P in family_for(s0 * ETA))
                mp = normalize_forms(mp)
                desc.curves.append(CurveCondition(quart, mp, note=f"xi = {dehom_label}"))
                cert = congruence_certificate(quart)
                if cert is not None:
                    desc.certificate = cert
                    desc.notes.append("quartic condition refuted by congruences")
                    desc.curves.pop()
                elif (finite := finite_curve_points(quart)) is not None:
                    desc.curves.pop()
                    desc.notes.append("quartic condition has rank 0 (2-isogeny descent); its points are torsion")
                    special.update(finite)
                else:
                    # small-height search for concrete points
                    Fq = BinaryQuartic(*quart)
                    for h in range(1, search_height + 1):
                        for pair in primitive_pairs(h):
                            if Fq(*pair) != 0 and sqrt_exact(Fq(*pair)) is not None:
                                special.add(pair)

    # isolated points at special parameters
    a_full = a * g
    b_full = b * g
    c_full = c * g
    for rho in sorted(special, key=proj_key):
        vals = {"u": rho[0], "v": rho[1]}
        a0, b0, c0 = (P.evaluate(vals) for P in (a_full, b_full, c_full))
        sols = _binary_points(a0, b0, c0)
        if not sols:
            continue
        xl = [F.evaluate(vals) for F in Xl]
        xm = [F.evaluate(vals) for F in Xm]
        for lam, mu in sols:
            vec = [lam * xl[i] + mu * xm[i] for i in range(4)]
            if any(vec):
                pts.append(normalize_proj(vec))

    return _assemble(desc, fams, pts, [Qo] + list(extra_forms))


def _assemble(desc: SolutionDescription, fams, pts, check_forms) -> SolutionDescription:
    seen = set()
    for forms in fams:
        fam = ParamFamily(tuple(forms))
        key = tuple(forms)
        if key in seen:
            continue
        seen.add(key)
        if not fam.verify(*check_forms):  # pragma: no cover - soundness guard
            raise ArithmeticError(f"family {fam} failed verification")
        desc.families.append(fam)
    out_pts = []
    for pt in sorted(set(pts), key=lambda v: (max(abs(x) for x in v), v)):
        if any(Q.eval(pt) != 0 for Q in check_forms):  # pragma: no cover
            raise ArithmeticError(f"point {pt} failed verification")
        if any(family_contains(f, pt) for f in desc.families):
            continue
        out_pts.append(pt)
    desc.points.extend(out_pts)
    if desc.curves:
        desc.status = "Partial"
    elif not desc.families and not desc.points and desc.status != "Partial":
        desc.status = "ProvedEmpty"
        if desc.certificate is None and desc.notes:
            desc.certificate = f"{desc.notes[0]}; its complete solution has no common zero with the pair"
    return desc


# ---------------------------------------------------------------------------
# zeros of a form restricted to a constant subspace
# ---------------------------------------------------------------------------

def _zeros_in_span(Qo: QuadForm4, basis: Sequence[Sequence[Fraction]]):
    """Components ``(kind, obj)`` of the zero set of ``Qo`` on ``span(basis)`` (at most 3 vectors)."""
    d = len(basis)
    G = Qo.gram
    Gs = [[sum(basis[i][x] * G[x][y] * basis[j][y] for x in range(4) for y in range(4)) for j in range(d)]
          for i in range(d)]
    diag, P, _ = diagonalize_matrix(Gs)
    vecs = [tuple(sum(P[k][i] * basis[k][x] for k in range(d)) for x in range(4)) for i in range(d)]
    nz = [i for i in range(d) if diag[i] != 0]
    ker = [i for i in range(d) if diag[i] == 0]
    params = [M_, N_, MPoly.var("l")]
    out = []

    def span_of(vs):
        if not vs:
            return
        if len(vs) == 1:
            if any(vs[0]):
                out.append(("point", normalize_proj(vs[0])))
            return
        forms = [sum((params[k] * vs[k][x] for k in range(len(vs))), MPoly()) for x in range(4)]
        out.append(("family", normalize_forms(forms)))

    if not nz:
        span_of(vecs)
        return out
    iso = diagonal_isotropic_vector([diag[i] for i in nz])
    if iso is None:
        span_of([vecs[i] for i in ker])
        return out
    if len(nz) == 2:
        w1 = iso
        w2 = (iso[0], -iso[1])
        for w in ([w1] if w1 == normalize_proj(w2) else [w1, w2]):
            v = tuple(w[0] * vecs[nz[0]][x] + w[1] * vecs[nz[1]][x] for x in range(4))
            span_of([v] + [vecs[i] for i in ker])
        return out
    # three nonzero coefficients: a conic
    Gd = [[diag[nz[i]] if i == j else 0 for j in range(3)] for i in range(3)]
    zu = conic_parametrization(Gd, iso, "m", "n")
    forms = [sum((zu[k] * vecs[nz[k]][x] for k in range(3)), MPoly()) for x in range(4)]
    res = _finish_family(forms, "m", "n")
    if res is not None:
        out.append(res)
    return out


# ---------------------------------------------------------------------------
# route 1: a degenerate pencil member
# ---------------------------------------------------------------------------

def solve_via_degenerate(Q1: QuadForm4, Q2: QuadForm4, root: Sequence[int],
                         search_height: int = 30) -> SolutionDescription:
    xi1, xi2 = (as_rational(x) for x in root)
    if (xi1, xi2) == (0, 0):
        raise NotARoot("root must be a nonzero pair")
    R = Q1.combine(Q2, xi1, xi2)
    if R.det() != 0:
        raise NotARoot(f"f{tuple(root)} != 0")
    Qo = Q1 if xi2 != 0 else Q2
    checks = [Q1, Q2]
    D = R.diagonalize()
    a = D.diag
    Pcols = [tuple(D.P[x][i] for x in range(4)) for i in range(4)]
    nz = [i for i in range(4) if a[i] != 0]
    ker = [i for i in range(4) if a[i] == 0]
    desc = SolutionDescription()
    desc.notes.append(f"pencil member {xi1}*Q1 + {xi2}*Q2 has rank {len(nz)}")
    if not nz:
        desc.status = "Partial"
        desc.notes.append("the forms are proportional; the pair reduces to a single equation")
        return desc
    iso = diagonal_isotropic_vector([a[i] for i in nz])
    comps = []
    if iso is None:
        comps.extend(_zeros_in_span(Qo, [Pcols[i] for i in ker]))
    elif len(nz) == 2:
        w1, w2 = iso, (iso[0], -iso[1])
        for w in ([w1] if w1 == normalize_proj(w2) else [w1, w2]):
            v = tuple(w[0] * Pcols[nz[0]][x] + w[1] * Pcols[nz[1]][x] for x in range(4))
            comps.extend(_zeros_in_span(Qo, [v] + [Pcols[i] for i in ker]))
    else:
        # rank three and isotropic: a cone over a conic with vertex P e_k
        Gd = [[a[nz[i]] if i == j else 0 for j in range(3)] for i in range(3)]
        zu = conic_parametrization(Gd, iso, "u", "v")
        Xl = tuple(sum((zu[k] * Pcols[nz[k]][x] for k in range(3)), MPoly()) for x in range(4))
        Xm = Pcols[ker[0]]
        sub = _resolve(Qo, Xl, Xm, [Q1, Q2], search_height, "u/v on the conic parameter")
        sub.notes = desc.notes + sub.notes
        return sub
    fams = [obj for kind, obj in comps if kind == "family"]
    pts = [obj for kind, obj in comps if kind == "point"]
    return _assemble(desc, fams, pts, checks)


# ---------------------------------------------------------------------------
# route 2: a pencil member with square determinant
# ---------------------------------------------------------------------------

def solve_via_square_pencil(Q1: QuadForm4, Q2: QuadForm4, xi: Sequence[int],
                            bilinear: Optional[BilinearSolution] = None,
                            search_height: int = 30) -> SolutionDescription:
    """Cut the bilinear solution of the member ``xi1*Q1 + xi2*Q2`` by the other form.

    ``bilinear`` may be supplied (it must solve the member); otherwise one is
    built from a Legendre seed.
    """
    xi1, xi2 = (as_rational(x) for x in xi)
    R = Q1.combine(Q2, xi1, xi2)
    det = R.det()
    if det == 0 or sqrt_exact(det) is None:
        raise NotASquare(f"f{tuple(xi)} = {det} is not a nonzero square")
    if bilinear is None:
        seed = find_seed(R)
        if seed is None:
            Dg = R.diagonalize()
            cert = legendre_obstruction(*Dg.diag[:3]) or "no rational zero"
            raise AnisotropicMember(tuple(xi), cert)
        bilinear = bilinear_general(R, seed)
    elif not bilinear.verify(R):
        raise ValueError("supplied bilinear solution does not solve the pencil member")
    Qo = Q1 if xi2 != 0 else Q2
    to_uv = {"p": U, "q": V}
    Xl = tuple(F.coefficient("r", 1).coefficient("s", 0).substitute(to_uv) for F in bilinear.forms)
    Xm = tuple(F.coefficient("s", 1).coefficient("r", 0).substitute(to_uv) for F in bilinear.forms)
    desc = _resolve(Qo, Xl, Xm, [Q1, Q2], search_height, "p/q")
    desc.notes.insert(0, f"pencil member {xi1}*Q1 + {xi2}*Q2 has square determinant {det}")
    return desc


def discriminant_quartic(Qo: QuadForm4, bilinear: BilinearSolution) -> MPoly:
    """``B^2 - 4AC`` in ``(p, q)`` for ``Qo`` restricted to ``x = m*X_r(p, q) + n*X_s(p, q)``."""
    Xl = [F.coefficient("r", 1).coefficient("s", 0) for F in bilinear.forms]
    Xm = [F.coefficient("s", 1).coefficient("r", 0) for F in bilinear.forms]
    G = Qo.gram
    A = sum((G[i][j] * Xl[i] * Xl[j] for i in range(4) for j in range(4) if G[i][j]), MPoly())
    B = 2 * sum((G[i][j] * Xl[i] * Xm[j] for i in range(4) for j in range(4) if G[i][j]), MPoly())
    C = sum((G[i][j] * Xm[i] * Xm[j] for i in range(4) for j in range(4) if G[i][j]), MPoly())
    return B * B - 4 * A * C


# ---------------------------------------------------------------------------
# the two-solution construction
# ---------------------------------------------------------------------------

def two_solution_pencil_point(Q1: QuadForm4, Q2: QuadForm4, s1: Sequence, s2: Sequence):
    """``(xi, eta)`` with ``eta^2 = f(xi)`` built from two distinct common zeros."""
    s1 = [as_rational(x) for x in s1]
    s2 = [as_rational(x) for x in s2]
    if normalize_proj(s1) == normalize_proj(s2):
        raise ValueError("the two solutions must be distinct projective points")
    for s in (s1, s2):
        if Q1.eval(s) != 0 or Q2.eval(s) != 0:
            raise ValueError(f"{tuple(s)} is not a common zero")
    h1 = 2 * Q1.bilinear(s1, s2)
    h2 = 2 * Q2.bilinear(s1, s2)
    f = pencil(Q1, Q2).f
    if h1 == 0 and h2 == 0:
        xi = (1, 0)
    elif h1 == 0:
        xi = (1, 0)
    elif h2 == 0:
        xi = (0, 1)
    else:
        xi = normalize_proj((-h2, h1))
    eta = sqrt_exact(f(*xi))
    if eta is None:  # pragma: no cover - excluded by the linear-family argument
        raise ArithmeticError("pencil value is not a square at the constructed point")
    return tuple(xi), eta


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

@dataclass
class PairReport:
    verdict: PairVerdict
    description: Optional[SolutionDescription]
    route: str
    choice: Optional[Tuple[int, int]] = None


def solve_pair(Q1: QuadForm4, Q2: QuadForm4, height: int = 50, xi: Optional[Sequence[int]] = None,
               jobs: int = 1, search_height: int = 30) -> PairReport:
    verdict = necessary_condition(Q1, Q2, height, jobs)
    if verdict.tag == "ProvedEmpty":
        desc = SolutionDescription(status="ProvedEmpty", certificate=verdict.certificate)
        return PairReport(verdict, desc, "certificate")
    f = pencil(Q1, Q2).f
    if f.is_zero():
        desc = SolutionDescription(status="Partial", notes=["the forms are proportional"])
        return PairReport(verdict, desc, "proportional")
    roots = pencil_roots(Q1, Q2)
    if xi is not None:
        xi = tuple(int(x) for x in xi)
        if f(*xi) == 0:
            return PairReport(verdict, solve_via_degenerate(Q1, Q2, xi, search_height), "degenerate", xi)
        return _square_route(Q1, Q2, verdict, xi, search_height)
    if roots:
        # lower-rank members split further; among equals prefer small height
        ordered = sorted((r for r, _ in roots), key=lambda r: (Q1.combine(Q2, *r).diagonalize().rank, proj_key(r)))
        first = None
        for choice in ordered:
            desc = solve_via_degenerate(Q1, Q2, choice, search_height)
            if desc.status != "Partial":
                return PairReport(verdict, desc, "degenerate", choice)
            first = first or PairReport(verdict, desc, "degenerate", choice)
        return first
    if verdict.tag != "WitnessFound":
        return PairReport(verdict, None, "undecided")
    choice = tuple(verdict.witness[:2])
    return _square_route(Q1, Q2, verdict, choice, search_height)


def _square_route(Q1, Q2, verdict, choice, search_height):
    try:
        desc = solve_via_square_pencil(Q1, Q2, choice, search_height=search_height)
    except AnisotropicMember as err:
        desc = SolutionDescription(status="ProvedEmpty", certificate=f"pencil member anisotropic: {err.certificate}")
    return PairReport(verdict, desc, "square-pencil", tuple(choice))


def points_at_parameter(Qo: QuadForm4, bilinear: BilinearSolution, pv, qv) -> List[Tuple[int, ...]]:
    """Zeros of ``Qo`` on the linear family obtained by fixing ``(p, q)`` in a bilinear solution."""
    fam = bilinear.specialize(pv, qv)
    Xm = [F.coeff({"m": 1}) for F in fam.forms]
    Xn = [F.coeff({"n": 1}) for F in fam.forms]
    a0 = Qo.eval(Xm)
    b0 = 2 * Qo.bilinear(Xm, Xn)
    c0 = Qo.eval(Xn)
    sols = _binary_points(a0, b0, c0)
    if sols is None:
        raise ValueError("the whole line lies on both forms")
    out = []
    for lam, mu in sols:
        vec = [lam * Xm[i] + mu * Xn[i] for i in range(4)]
        if any(vec):
            out.append(normalize_proj(vec))
    return out
