"""Sparse multivariate polynomials over Q plus binary-form utilities.

Terms are stored as ``{monomial: Fraction}`` where a monomial is a sorted
tuple of ``(variable, exponent)`` pairs, so two equal polynomials are
structurally equal and identity testing is a dictionary comparison.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact import FactorizationError, as_rational, common_denominator, divisors, proj_key

Monomial = Tuple[Tuple[str, int], ...]

#: printing / ordering alphabet; any other identifier sorts after these
VAR_ORDER = (
    "x1", "x2", "x3", "x4", "p", "q", "r", "s", "m", "n",
    "xi1", "xi2", "t", "xi", "eta", "u", "v", "w",
)
_VAR_INDEX = {name: i for i, name in enumerate(VAR_ORDER)}


def var_key(name: str):
    return (_VAR_INDEX.get(name, len(VAR_ORDER)), name)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda it: var_key(it[0])))


def _coerce(x) -> "MPoly":
    if isinstance(x, MPoly):
        return x
    return MPoly.const(x)


class MPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = as_rational(c)
            if c == 0:
                continue
            key = tuple(sorted(((v, e) for v, e in mono if e), key=lambda it: var_key(it[0])))
            clean[key] = clean.get(key, Fraction(0)) + c
            if clean[key] == 0:
                del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "MPoly":
        obj = cls.__new__(cls)
        obj._terms = {k: c for k, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "MPoly":
        c = as_rational(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        return parse_poly(text)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def variables(self) -> Tuple[str, ...]:
        names = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(names, key=var_key))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e for _, e in mono) for mono in self._terms)

    def degree_in(self, names: Iterable[str]) -> int:
        names = set(names)
        if not self._terms:
            return -1
        return max(sum(e for v, e in mono if v in names) for mono in self._terms)

    def is_constant(self) -> bool:
        return all(mono == () for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def coeff(self, mono: Mapping[str, int]) -> Fraction:
        key = tuple(sorted(((v, e) for v, e in mono.items() if e), key=lambda it: var_key(it[0])))
        return self._terms.get(key, Fraction(0))

    def coefficient(self, name: str, exp: int) -> "MPoly":
        """Coefficient of ``name**exp`` as a polynomial in the other variables."""
        out: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            if d.get(name, 0) != exp:
                continue
            d.pop(name, None)
            key = tuple(sorted(d.items(), key=lambda it: var_key(it[0])))
            out[key] = out.get(key, Fraction(0)) + c
        return MPoly._raw(out)

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` integral and primitive."""
        if not self._terms:
            return Fraction(0)
        cs = list(self._terms.values())
        den = common_denominator(cs)
        g = reduce(gcd, (int(c * den) for c in cs))
        return Fraction(abs(g), den)

    def primitive(self) -> "MPoly":
        if not self._terms:
            return self
        return self * (1 / self.content())

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[self.sorted_monomials()[0]]

    def sorted_monomials(self) -> List[Monomial]:
        names = self.variables

        def key(mono):
            d = dict(mono)
            return (-sum(d.values()),) + tuple(-d.get(v, 0) for v in names)

        return sorted(self._terms, key=key)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rational(other)
            return MPoly._raw({m: v * c for m, v in self._terms.items()})
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = _mono_mul(m1, m2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            other = other.constant_value()
        return self * (1 / as_rational(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result, base = MPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._terms == other._terms
        try:
            return self._terms == MPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -------------------------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "MPoly":
        """Compose: replace each bound variable by a polynomial or rational."""
        binds = {k: _coerce(v) for k, v in bindings.items()}
        cache: Dict[Tuple[str, int], MPoly] = {}

        def power(v, e):
            if (v, e) not in cache:
                cache[(v, e)] = binds[v] ** e
            return cache[(v, e)]

        result: Dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            kept = tuple((v, e) for v, e in mono if v not in binds)
            term = MPoly._raw({kept: c})
            for v, e in mono:
                if v in binds:
                    term = term * power(v, e)
            for m, tc in term._terms.items():
                result[m] = result.get(m, Fraction(0)) + tc
        return MPoly._raw(result)

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        out = self.substitute(values)
        return out.constant_value()

    def __call__(self, **values):
        return self.substitute(values)

    # -- text ---------------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono in self.sorted_monomials():
            c = self._terms[mono]
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def is_identically_zero(P: MPoly) -> bool:
    return P.is_zero()


def substitute(P: MPoly, bindings: Mapping[str, object]) -> MPoly:
    return P.substitute(bindings)


def variables(*names: str) -> Tuple[MPoly, ...]:
    return tuple(MPoly.var(n) for n in names)


def parse_poly(text: str) -> MPoly:
    """Parse ``"2*p*m + 18*q*n - x1^2/3"``-style text (``^`` or ``**`` for powers)."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ValueError(f"non-integer literal {node.value!r} in {text!r}")
            return MPoly.const(node.value)
        if isinstance(node, ast.Name):
            return MPoly.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ValueError("division only by nonzero constants")
                return left / right
            if isinstance(node.op, ast.Pow):
                if not right.is_constant():
                    raise ValueError("exponent must be a constant")
                e = right.constant_value()
                if e.denominator != 1 or e < 0:
                    raise ValueError("exponent must be a nonnegative integer")
                return left ** int(e)
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)


def det_generic(mat: Sequence[Sequence]):
    """Leibniz determinant over any commutative ring (used for symbolic pencils)."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        if isinstance(mat[0][j], MPoly):
            if mat[0][j].is_zero():
                continue
        elif mat[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * det_generic(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return 0 if total is None else total


# ---------------------------------------------------------------------------
# univariate helpers; a polynomial is a list of Fractions, index = power
# ---------------------------------------------------------------------------

def _trim(f: List[Fraction]) -> List[Fraction]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _udeg(f) -> int:
    return len(_trim(f)) - 1


def _umul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def _udivmod(f, g):
    f, g = _trim(f), _trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    r = list(f)
    lead = g[-1]
    while len(r) >= len(g) and r:
        shift = len(r) - len(g)
        c = r[-1] / lead
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] -= c * b
        r = _trim(r)
    return _trim(q), r


def _umonic(f):
    f = _trim(f)
    if not f:
        return f
    return [c / f[-1] for c in f]


def _ugcd(f, g):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _udivmod(f, g)[1]
    return _umonic(f)


def _uderiv(f):
    return _trim([i * c for i, c in enumerate(f)][1:])


def _ueval(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def squarefree_decomposition(f: Sequence[Fraction]) -> Tuple[Fraction, List[List[Fraction]]]:
    """Yun's algorithm: ``f = lc * prod(s[i] ** (i + 1))`` with monic, coprime, square-free s[i]."""
    f = _trim([Fraction(c) for c in f])
    if not f:
        raise ValueError("zero polynomial")
    lc = f[-1]
    f = _umonic(f)
    if len(f) == 1:
        return lc, []
    parts = []
    a = _ugcd(f, _uderiv(f))
    b = _udivmod(f, a)[0]
    c = _udivmod(_uderiv(f), a)[0]
    d = _trim([ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_uderiv(b), len(b)))])
    while _udeg(b) > 0:
        a = _ugcd(b, d)
        parts.append(a)
        b = _udivmod(b, a)[0]
        c = _udivmod(d, a)[0]
        d = _trim([ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_uderiv(b), len(b)))])
    while parts and parts[-1] == [Fraction(1)]:
        parts.pop()
    return lc, parts


def _pad(f, n):
    return list(f) + [Fraction(0)] * (n - len(f))


def sturm_real_root_count(f: Sequence[Fraction]) -> int:
    """Number of distinct real roots of ``f`` (nonzero)."""
    f = _trim([Fraction(c) for c in f])
    if _udeg(f) <= 0:
        return 0
    seq = [f, _uderiv(f)]
    while True:
        r = _udivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    def sgn(x):
        return (x > 0) - (x < 0)

    at_pos = [sgn(p[-1]) for p in seq]
    at_neg = [sgn(p[-1]) * (-1 if _udeg(p) % 2 else 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


def _sturm_sequence(f):
    seq = [f, _uderiv(f)]
    while True:
        r = _udivmod(seq[-2], seq[-1])[1]
        if not r:
            return seq
        seq.append([-c for c in r])


def _sign_changes_at(seq, x) -> int:
    signs = [v for v in (_ueval(p, x) for p in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _rational_roots_by_isolation(f: Sequence[Fraction]) -> List[Fraction]:
    """Rational roots without factoring the coefficients.

    A rational root of a primitive integer polynomial with leading
    coefficient ``A`` has ``A*x`` integral, so each real root is bisected
    until its interval is shorter than ``1/|A|`` and the one candidate tested.
    """
    g = _umonic(f)
    g = _udivmod(g, _ugcd(g, _uderiv(g)))[0]  # distinct roots only
    ints = _integer_coeffs(g)
    A = abs(ints[-1])
    seq = _sturm_sequence(g)
    bound = 1 + max(abs(Fraction(c, ints[-1])) for c in ints[:-1])
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        count = _sign_changes_at(seq, lo) - _sign_changes_at(seq, hi)
        if count == 0:
            continue
        if count > 1 or (hi - lo) * A >= 1:
            mid = (lo + hi) / 2
            stack.extend([(lo, mid), (mid, hi)])
            continue
        # exactly one root in (lo, hi] and at most one integer in (A*lo, A*hi]
        N = (hi * A).numerator // (hi * A).denominator
        if N > lo * A:
            x = Fraction(N, A)
            if _ueval(g, x) == 0:
                out.append(x)
    return out


def _integer_coeffs(f: Sequence[Fraction]) -> List[int]:
    den = common_denominator(f)
    ints = [int(c * den) for c in f]
    g = reduce(gcd, ints) or 1
    return [x // g for x in ints]


def rational_roots(f: Sequence[Fraction]) -> List[Tuple[Fraction, int]]:
    """Rational roots of a nonzero univariate polynomial with multiplicities."""
    f = _trim([Fraction(c) for c in f])
    if not f:
        raise ValueError("zero polynomial has every root")
    roots: List[Tuple[Fraction, int]] = []
    k = 0
    while f and f[0] == 0:
        f = f[1:]
        k += 1
    if k:
        roots.append((Fraction(0), k))
    if _udeg(f) <= 0:
        return roots
    ints = _integer_coeffs(f)
    try:
        cands = set()
        for p in divisors(ints[0]):
            for q in divisors(ints[-1]):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
    except FactorizationError:
        cands = set(_rational_roots_by_isolation(f))
    for x in sorted(cands, key=lambda z: (abs(z.numerator) + z.denominator, z)):
        if _udeg(f) <= 0:
            break
        mult = 0
        while _udeg(f) > 0 and _ueval(f, x) == 0:
            f = _udivmod(f, [-x, Fraction(1)])[0]
            mult += 1
        if mult:
            roots.append((x, mult))
    return roots


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

def binary_coeffs(P: MPoly, u: str, v: str, degree: Optional[int] = None) -> List[Fraction]:
    """Coefficients ``[c0, ..., cd]`` with ``P = sum c_i u^(d-i) v^i``."""
    if P.is_zero():
        return [Fraction(0)] * ((degree or 0) + 1)
    extra = set(P.variables) - {u, v}
    if extra:
        raise ValueError(f"{P} involves variables {sorted(extra)} besides {u}, {v}")
    d = P.total_degree() if degree is None else degree
    out = [Fraction(0)] * (d + 1)
    for mono, c in P.terms.items():
        exps = dict(mono)
        if exps.get(u, 0) + exps.get(v, 0) != d:
            raise ValueError(f"{P} is not homogeneous of degree {d} in ({u}, {v})")
        out[exps.get(v, 0)] += c
    return out


def binary_form(coeffs: Sequence, u: str, v: str) -> MPoly:
    d = len(coeffs) - 1
    U, V = MPoly.var(u), MPoly.var(v)
    return sum((as_rational(c) * U ** (d - i) * V ** i for i, c in enumerate(coeffs)), MPoly())


def _dehom(coeffs: Sequence[Fraction]) -> Tuple[List[Fraction], int]:
    """``F(x, 1)`` as an ascending list plus the multiplicity of the root (1:0)."""
    d = len(coeffs) - 1
    f = _trim([Fraction(coeffs[d - k]) for k in range(d + 1)])
    return f, d - _udeg(f)


def _rehom(f: Sequence[Fraction], inf_mult: int) -> List[Fraction]:
    f = _trim(f)
    deg = len(f) - 1
    d = deg + inf_mult
    out = [Fraction(0)] * (d + 1)
    for k, c in enumerate(f):
        out[d - k] = c
    return out


def binary_roots(coeffs: Sequence) -> List[Tuple[Tuple[int, int], int]]:
    """Rational projective roots ``((a, b), multiplicity)`` of a binary form.

    ``coeffs[i]`` multiplies ``X^(d-i) Y^i``; a root ``(a:b)`` is a primitive
    pair with first nonzero entry positive. Ordered small-height first.
    """
    coeffs = [as_rational(c) for c in coeffs]
    if all(c == 0 for c in coeffs):
        raise ValueError("the zero form vanishes everywhere")
    f, inf_mult = _dehom(coeffs)
    out = []
    if inf_mult:
        out.append(((1, 0), inf_mult))
    for x, mult in rational_roots(f):
        a, b = x.numerator, x.denominator
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        out.append(((a, b), mult))
    out.sort(key=lambda it: proj_key(it[0]))
    return out


def binary_gcd(forms: Sequence[MPoly], u: str, v: str) -> MPoly:
    """Greatest common divisor of binary forms, primitive with positive leading coefficient."""
    nonzero = [F for F in forms if not F.is_zero()]
    if not nonzero:
        return MPoly()
    g = None
    inf = None
    for F in nonzero:
        f, k = _dehom(binary_coeffs(F, u, v))
        g = f if g is None else _ugcd(g, f)
        inf = k if inf is None else min(inf, k)
    G = binary_form(_rehom(_umonic(g), inf), u, v)
    G = G.primitive()
    if G.leading_coefficient() < 0:
        G = -G
    return G


def binary_divide(F: MPoly, G: MPoly, u: str, v: str) -> MPoly:
    """Exact quotient ``F / G`` of binary forms (raises if not exact)."""
    if F.is_zero():
        return F
    f, kf = _dehom(binary_coeffs(F, u, v))
    g, kg = _dehom(binary_coeffs(G, u, v))
    q, r = _udivmod(f, g)
    if r or kf < kg:
        raise ArithmeticError(f"{G} does not divide {F}")
    return binary_form(_rehom(q, kf - kg), u, v)


@dataclass(frozen=True)
class SquareDecomposition:
    """``D = const * square**2 * free`` for a binary form ``D``.

    ``const`` is a square-free integer, ``free`` a primitive integral form
    without repeated factors (first nonzero coefficient positive).
    """

    const: int
    square: MPoly
    free: MPoly


def square_decomposition(D: MPoly, u: str, v: str) -> SquareDecomposition:
    from .exact import squarefree_split

    coeffs = binary_coeffs(D, u, v)
    f, inf = _dehom(coeffs)
    lc, parts = squarefree_decomposition(f)
    sq = [Fraction(1)]
    fr = [Fraction(1)]
    for i, s in enumerate(parts, start=1):
        for _ in range(i // 2):
            sq = _umul(sq, s)
        if i % 2:
            fr = _umul(fr, s)
    S = binary_form(_rehom(sq, inf // 2), u, v)
    F = binary_form(_rehom(fr, inf % 2), u, v)
    content = F.content()
    F = F / content
    if F.leading_coefficient() < 0:
        F, content = -F, -content
    k = lc * content
    num_den = k.numerator * k.denominator
    s0, f0 = squarefree_split(num_den)
    S = S * Fraction(f0, k.denominator)
    return SquareDecomposition(const=s0, square=S, free=F)


# ---------------------------------------------------------------------------
# binary quartics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryQuartic:
    """``e0 X^4 + e1 X^3 Y + e2 X^2 Y^2 + e3 X Y^3 + e4 Y^4``."""

    e0: Fraction
    e1: Fraction
    e2: Fraction
    e3: Fraction
    e4: Fraction

    def __post_init__(self):
        for name in ("e0", "e1", "e2", "e3", "e4"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "BinaryQuartic":
        if len(coeffs) != 5:
            raise ValueError("a binary quartic has five coefficients")
        return cls(*coeffs)

    @classmethod
    def from_mpoly(cls, P: MPoly, u: str = "xi1", v: str = "xi2") -> "BinaryQuartic":
        return cls(*binary_coeffs(P, u, v, degree=4))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return (self.e0, self.e1, self.e2, self.e3, self.e4)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, x1, x2) -> Fraction:
        x1, x2 = as_rational(x1), as_rational(x2)
        return sum(c * x1 ** (4 - i) * x2 ** i for i, c in enumerate(self.coeffs))

    def as_mpoly(self, u: str = "xi1", v: str = "xi2") -> MPoly:
        return binary_form(self.coeffs, u, v)

    def __mul__(self, k):
        return BinaryQuartic(*(c * as_rational(k) for c in self.coeffs))

    __rmul__ = __mul__

    def __str__(self):
        return str(self.as_mpoly())


def proj_rational_roots(F: BinaryQuartic, with_multiplicity: bool = False):
    """Rational projective roots of a nonzero binary quartic.

    Returns primitive pairs ``(xi1, xi2)`` ordered small-height first, or
    ``((xi1, xi2), multiplicity)`` tuples when ``with_multiplicity``.
    """
    if F.is_zero():
        raise ValueError("proj_rational_roots: zero form")
    roots = binary_roots(F.coeffs)
    if with_multiplicity:
        return roots
    return [r for r, _ in roots]
