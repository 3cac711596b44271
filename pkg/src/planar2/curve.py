"""The curves F_{t,a}, H_{t,a}, G_{t,a} over binary fields and their singular points.

Polynomials are sparse maps from exponent tuples to field integers of a
:class:`FieldCtx`.  The same class serves the affine curves in (X, Y), the
chart G in (X, Z) and the homogeneous H in (X, Y, Z).

Singular points are located algebraically: every affine singular point (u, v)
of the numerator of F has both coordinates among the roots of a univariate
polynomial of degree l - 1, and the points at infinity are the l-th roots of
unity.  Roots are computed exactly over an extension F_{2^M} of F_{2^n} that is
large enough to contain all of them whenever M <= 24; the report says whether
that was achieved.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DivisionNotExact, GuardError, PropertyMismatch
from .gf2 import MAX_DEGREE, FieldCtx, binomial_parity, ctx_new, ilcm
from .planar import FuncTable, a_set, is_planar

MAX_EXPONENT = 1 << 16
MAX_POINT_SCAN_N = 12


# ---------- sparse multivariate polynomials


class Poly:
    """Sparse polynomial over a binary field in ``nvars`` variables."""

    __slots__ = ("ctx", "nvars", "terms")
    names = ("X", "Y", "Z")

    def __init__(self, ctx: FieldCtx, nvars: int, terms: dict | None = None):
        self.ctx = ctx
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent tuple {e}")
            c = ctx.check(int(c))
            if c:
                clean[e] = clean.get(e, 0) ^ c
        self.terms = {e: c for e, c in clean.items() if c}

    def _new(self, terms: dict) -> "Poly":
        p = object.__new__(Poly)
        p.ctx, p.nvars = self.ctx, self.nvars
        p.terms = {e: c for e, c in terms.items() if c}
        return p

    # -- constructors

    @classmethod
    def var(cls, ctx: FieldCtx, nvars: int, i: int) -> "Poly":
        return cls(ctx, nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def const(cls, ctx: FieldCtx, nvars: int, c: int) -> "Poly":
        return cls(ctx, nvars, {(0,) * nvars: c})

    def zero(self) -> "Poly":
        return self._new({})

    # -- basic queries

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(self.names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(self.ctx.format(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{self.ctx.format(c)}*{mono}")
        return " + ".join(parts)

    # -- arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx or other.nvars != self.nvars:
                raise ValueError("polynomials over different rings")
            return other
        return Poly.const(self.ctx, self.nvars, int(other))

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) ^ c
        return self._new(out)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def scale(self, c: int) -> "Poly":
        mul = self.ctx.mul
        return self._new({e: mul(v, c) for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(int(other))
        other = self._coerce(other)
        mul = self.ctx.mul
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) ^ mul(c1, c2)
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.ctx, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base.square()
        return result

    def square(self) -> "Poly":
        """Frobenius on coefficients and doubling of exponents (characteristic 2)."""
        sqr = self.ctx.sqr
        return self._new({tuple(2 * v for v in e): sqr(c) for e, c in self.terms.items()})

    # -- evaluation and calculus

    def eval(self, *point: int) -> int:
        if len(point) != self.nvars:
            raise ValueError("wrong number of coordinates")
        pw = self.ctx.pow
        mul = self.ctx.mul
        acc = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = mul(v, pw(x, k))
            acc ^= v
        return acc

    def partial(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i] & 1:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c
        return self._new(out)

    def translate(self, offsets: Sequence[int]) -> "Poly":
        """p(x_1 + o_1, ..., x_r + o_r)."""
        if len(offsets) != self.nvars:
            raise ValueError("wrong number of offsets")
        mul, pw = self.ctx.mul, self.ctx.pow

        @functools.lru_cache(maxsize=None)
        def expand(i: int, k: int) -> tuple:
            o = offsets[i]
            if o == 0:
                return ((k, 1),)
            return tuple((r, pw(o, k - r)) for r in range(k + 1) if binomial_parity(k, r))

        out: dict = {}
        for e, c in self.terms.items():
            for combo in itertools.product(*(expand(i, k) for i, k in enumerate(e))):
                v = c
                for _, w in combo:
                    v = mul(v, w)
                key = tuple(r for r, _ in combo)
                out[key] = out.get(key, 0) ^ v
        return self._new(out)

    def homogeneous_parts(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: self._new(t) for d, t in sorted(parts.items())}

    def homogeneous_part(self, d: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def substitute(self, i: int, value: int) -> "Poly":
        """Set variable i to a constant; the variable stays in the tuple with exponent 0."""
        mul, pw = self.ctx.mul, self.ctx.pow
        out: dict = {}
        for e, c in self.terms.items():
            d = list(e)
            d[i] = 0
            key = tuple(d)
            out[key] = out.get(key, 0) ^ mul(c, pw(value, e[i]))
        return self._new(out)

    def drop_var(self, i: int) -> "Poly":
        """Remove a variable that does not occur."""
        if any(e[i] for e in self.terms):
            raise ValueError(f"variable {i} occurs")
        p = Poly(self.ctx, self.nvars - 1)
        p.terms = {e[:i] + e[i + 1:]: c for e, c in self.terms.items()}
        return p

    def swap(self, i: int, j: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            d = list(e)
            d[i], d[j] = d[j], d[i]
            out[tuple(d)] = c
        return self._new(out)

    def map_coeffs(self, fn: Callable[[int], int], ctx: FieldCtx) -> "Poly":
        p = Poly(ctx, self.nvars)
        p.terms = {e: fn(c) for e, c in self.terms.items() if fn(c)}
        return p

    # -- division

    def divide_exact(self, divisor: "Poly") -> "Poly":
        """Quotient q with q * divisor == self; raises DivisionNotExact otherwise."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lt = max(divisor.terms)
        lc_inv = self.ctx.inv(divisor.terms[lt])
        mul = self.ctx.mul
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            top = max(rem)
            shift = tuple(a - b for a, b in zip(top, lt))
            if min(shift) < 0:
                raise DivisionNotExact(f"leading term {top} not divisible by {lt}")
            c = mul(rem[top], lc_inv)
            quot[shift] = c
            for e, v in divisor.terms.items():
                key = tuple(a + b for a, b in zip(e, shift))
                r = rem.get(key, 0) ^ mul(v, c)
                if r:
                    rem[key] = r
                else:
                    rem.pop(key, None)
        q = self._new(quot)
        if q * divisor != self:
            raise AssertionError("exact division round trip failed")
        return q


BivarPoly = Poly


class HomogPoly3(Poly):
    """Homogeneous polynomial in X, Y, Z."""

    __slots__ = ()

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        super().__init__(ctx, 3, terms)
        if not self.is_homogeneous():
            raise ValueError("terms are not all of the same degree")

    @classmethod
    def of(cls, p: Poly) -> "HomogPoly3":
        return cls(p.ctx, p.terms)


def _xy(ctx: FieldCtx) -> tuple[Poly, Poly]:
    return Poly.var(ctx, 2, 0), Poly.var(ctx, 2, 1)


# ---------- univariate polynomials (lists, constant term first)


def _u_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _u_add(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] ^= c
    for i, c in enumerate(q):
        out[i] ^= c
    return _u_trim(out)


def _u_mul(ctx, p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] ^= ctx.mul(a, b)
    return _u_trim(out)


def _u_divmod(ctx, p, d):
    d = _u_trim(list(d))
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(p)
    _u_trim(r)
    inv = ctx.inv(d[-1])
    q = [0] * max(len(r) - len(d) + 1, 0)
    while len(r) >= len(d):
        c = ctx.mul(r[-1], inv)
        s = len(r) - len(d)
        q[s] = c
        for i, b in enumerate(d):
            r[s + i] ^= ctx.mul(b, c)
        _u_trim(r)
    return _u_trim(q), r


def _u_monic(ctx, p):
    if not p:
        return p
    inv = ctx.inv(p[-1])
    return [ctx.mul(c, inv) for c in p]


def _u_gcd(ctx, p, q):
    p, q = _u_trim(list(p)), _u_trim(list(q))
    while q:
        p, q = q, _u_divmod(ctx, p, q)[1]
    return _u_monic(ctx, p)


def _u_deriv(p):
    return _u_trim([p[i] if i & 1 else 0 for i in range(1, len(p))])


def _u_square_mod(ctx, p, m):
    sq = [0] * (2 * len(p))
    for i, c in enumerate(p):
        sq[2 * i] = ctx.sqr(c)
    return _u_divmod(ctx, _u_trim(sq), m)[1]


def _u_frob_power_x(ctx, m, squarings: int):
    """X^(2^squarings) mod m."""
    h = _u_divmod(ctx, [0, 1], m)[1]
    for _ in range(squarings):
        h = _u_square_mod(ctx, h, m)
    return h


def _u_sqrt(ctx, p):
    """Square root of a polynomial with only even exponents."""
    if any(p[i] for i in range(1, len(p), 2)):
        raise ValueError("not a square")
    return [ctx.frobenius(p[i], -1) for i in range(0, len(p), 2)]


def _u_radical(ctx, p):
    """Product of the distinct monic irreducible factors of p."""
    p = _u_monic(ctx, _u_trim(list(p)))
    if len(p) <= 2:
        return p
    dp = _u_deriv(p)
    if not dp:
        return _u_radical(ctx, _u_sqrt(ctx, p))
    g = _u_gcd(ctx, p, dp)
    if len(g) == 1:
        return p
    w = _u_divmod(ctx, p, g)[0]
    rest = _u_radical(ctx, g)
    common = _u_gcd(ctx, w, rest)
    return _u_monic(ctx, _u_divmod(ctx, _u_mul(ctx, w, rest), common)[0])


def factor_degrees(ctx: FieldCtx, p: list[int]) -> list[int]:
    """Degrees of the distinct irreducible factors of p over ctx (distinct-degree factorisation)."""
    f = _u_radical(ctx, p)
    degrees = []
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _u_frob_power_x(ctx, f, ctx.n * d)
        g = _u_gcd(ctx, f, _u_add(h, [0, 1]))
        if len(g) > 1:
            degrees += [d] * ((len(g) - 1) // d)
            f = _u_divmod(ctx, f, g)[0]
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def poly_roots(ctx: FieldCtx, p: list[int]) -> list[int]:
    """Distinct roots of p in the field of ctx, ascending."""
    p = _u_trim(list(p))
    if not p:
        raise ValueError("every element is a root of the zero polynomial")
    if len(p) == 1:
        return []
    roots = []
    if p[0] == 0:
        roots.append(0)
        while p and p[0] == 0:
            p = p[1:]
    xq = _u_frob_power_x(ctx, p, ctx.n)
    g = _u_gcd(ctx, p, _u_add(xq, [0, 1]))
    roots += _split_linear(ctx, g)
    return sorted(set(roots))


def _split_linear(ctx, g):
    """Roots of a monic squarefree g that splits into linear factors."""
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [g[0]]
    for i in range(ctx.n):
        delta = ctx.exp(i)
        t = _u_divmod(ctx, [0, delta], g)[1]
        acc = list(t)
        for _ in range(ctx.n - 1):
            t = _u_square_mod(ctx, t, g)
            acc = _u_add(acc, t)
        h = _u_gcd(ctx, g, acc)
        if 1 < len(h) < len(g):
            return _split_linear(ctx, h) + _split_linear(ctx, _u_divmod(ctx, g, h)[0])
    raise AssertionError("trace splitting failed on a split squarefree polynomial")


# ---------- subfield embeddings


@functools.lru_cache(maxsize=None)
def _embedding_powers(n: int, M: int) -> tuple[int, ...]:
    if M % n:
        raise ValueError(f"F_2^{n} is not a subfield of F_2^{M}")
    small, big = ctx_new(n), ctx_new(M)
    modulus_poly = [(small.modulus >> i) & 1 for i in range(n + 1)]
    r = poly_roots(big, modulus_poly)[0]
    return tuple(big.pow(r, i) for i in range(n))


def embed(n: int, M: int, a: int) -> int:
    """Image of a in F_{2^n} inside F_{2^M} under the fixed embedding (smallest root of the modulus)."""
    if n == M:
        return a
    out = 0
    for i, p in enumerate(_embedding_powers(n, M)):
        if (a >> i) & 1:
            out ^= p
    return out


def multiplicative_order_of_two(l: int) -> int:
    if l % 2 == 0:
        raise ValueError("l must be odd")
    if l == 1:
        return 1
    k, v = 1, 2 % l
    while v != 1:
        v = (2 * v) % l
        k += 1
    return k


# ---------- the curves


def _check_t(t: int) -> None:
    if t < 3:
        raise ValueError("t must be at least 3")
    if t > MAX_EXPONENT:
        raise GuardError(f"t limited to {MAX_EXPONENT}")


def _one_plus_power_terms(t: int):
    """Exponents j < t with C(t, j) odd: (X + 1)^t + X^t = sum of X^j over these."""
    return [j for j in range(t) if binomial_parity(t, j)]


def build_numerator_F(ctx: FieldCtx, t: int, a: int) -> Poly:
    """(X+1)^t + (Y+1)^t + X^t + Y^t + a(X+Y)."""
    _check_t(t)
    terms: dict = {}
    for j in _one_plus_power_terms(t):
        for e in ((j, 0), (0, j)):
            terms[e] = terms.get(e, 0) ^ 1
    for e in ((1, 0), (0, 1)):
        terms[e] = terms.get(e, 0) ^ a
    return Poly(ctx, 2, terms)


def build_F(ctx: FieldCtx, t: int, a: int) -> Poly:
    X, Y = _xy(ctx)
    F = build_numerator_F(ctx, t, a).divide_exact(X + Y)
    if F.degree() > t - 2:
        raise AssertionError("F has degree above t - 2")
    return F


def two_adic_part(t: int) -> int:
    """The power of two 2^j exactly dividing t."""
    return t & -t


def build_numerator_H(ctx: FieldCtx, t: int, a: int) -> Poly:
    """(X+Z)^t + (Y+Z)^t + X^t + Y^t + a(X+Y)Z^(t-1)."""
    _check_t(t)
    terms: dict = {}
    for j in _one_plus_power_terms(t):
        for e in ((j, 0, t - j), (0, j, t - j)):
            terms[e] = terms.get(e, 0) ^ 1
    for e in ((1, 0, t - 1), (0, 1, t - 1)):
        terms[e] = terms.get(e, 0) ^ a
    return Poly(ctx, 3, terms)


def build_H(ctx: FieldCtx, t: int, a: int) -> HomogPoly3:
    """Numerator of H divided by Z^(2^j) (X + Y) where 2^j exactly divides t."""
    _check_t(t)
    if t & (t - 1) == 0:
        raise ValueError("t is a power of two; the curve degenerates")
    e = two_adic_part(t)
    den = Poly(ctx, 3, {(1, 0, e): 1, (0, 1, e): 1})
    H = HomogPoly3.of(build_numerator_H(ctx, t, a).divide_exact(den))
    if H.degree() != t - 1 - e:
        raise AssertionError(f"H has degree {H.degree()}, expected {t - 1 - e}")
    if H.swap(0, 1) != H:
        raise AssertionError("H is not symmetric in X and Y")
    if H.substitute(2, 1).drop_var(2) != build_F(ctx, t, a):
        raise AssertionError("H(X, Y, 1) differs from F")
    return H


def build_numerator_G(ctx: FieldCtx, t: int, a: int) -> Poly:
    """H-numerator at Y = 1, as a polynomial in (X, Z)."""
    return build_numerator_H(ctx, t, a).substitute(1, 1).drop_var(1)


def build_G(ctx: FieldCtx, t: int, a: int) -> Poly:
    return build_H(ctx, t, a).substitute(1, 1).drop_var(1)


def decompose_exponent(t: int) -> tuple[int, int]:
    """(k, l) with t = 2^k * l + 1 and l odd; t must be odd and at least 3."""
    if t < 3 or t % 2 == 0:
        raise ValueError("t must be odd and at least 3")
    m = t - 1
    k = (m & -m).bit_length() - 1
    return k, m >> k


# ---------- multiplicities and tangent cones


def multiplicity_at(p: Poly, point: Sequence[int]) -> int:
    if not p:
        raise ValueError("the zero polynomial has no multiplicity")
    return min(p.translate(point).homogeneous_parts())


def tangent_cone_at(p: Poly, point: Sequence[int]) -> Poly:
    parts = p.translate(point).homogeneous_parts()
    return parts[min(parts)]


def _parts(p: Poly, point: Sequence[int]) -> dict[int, Poly]:
    return p.translate(point).homogeneous_parts()


# ---------- binary forms


def _form_univariate(form: Poly) -> tuple[list[int], int]:
    """Dehomogenise a binary form at the second variable: (coefficients in the first, power of the second)."""
    d = form.degree()
    e = min(ex[1] for ex in form.terms)
    coeffs = [0] * (d - e + 1)
    for ex, c in form.terms.items():
        coeffs[ex[0]] = c
    return _u_trim(coeffs), e


def binary_form_gcd(f: Poly, g: Poly) -> Poly:
    if not f:
        return g
    if not g:
        return f
    uf, ef = _form_univariate(f)
    ug, eg = _form_univariate(g)
    h = _u_gcd(f.ctx, uf, ug)
    e = min(ef, eg)
    deg = len(h) - 1
    return Poly(f.ctx, 2, {(i, deg - i + e): c for i, c in enumerate(h) if c})


def binary_form_squarefree(form: Poly) -> bool:
    """No repeated linear factor over the algebraic closure."""
    if not form:
        return False
    if not form.is_homogeneous():
        raise ValueError("not a binary form")
    h, e = _form_univariate(form)
    if e > 1:
        return False
    return len(_u_gcd(form.ctx, h, _u_deriv(h))) == 1


@dataclass
class ConeCheck:
    squarefree: bool
    gcd_first: bool   # gcd(form, d/d first) involves only the second variable
    gcd_second: bool  # gcd(form, d/d second) involves only the first variable

    @property
    def ok(self) -> bool:
        return self.squarefree and self.gcd_first and self.gcd_second


def cone_checks(form: Poly) -> ConeCheck:
    """Squarefreeness of a binary form by two routes that must agree for odd degree >= 3."""
    if not form:
        return ConeCheck(False, False, False)
    sq = binary_form_squarefree(form)
    g1 = binary_form_gcd(form, form.partial(0))
    g2 = binary_form_gcd(form, form.partial(1))
    first = g1.degree_in(0) == 0
    second = g2.degree_in(1) == 0
    d = form.degree()
    if d % 2 == 1 and d >= 3 and sq != (first and second):
        raise PropertyMismatch(f"squarefree test and partial-derivative gcds disagree on {form}")
    return ConeCheck(sq, first, second)


# ---------- singular points


@dataclass(frozen=True)
class ProjPoint:
    u: int
    v: int
    w: int

    def __post_init__(self):
        if self.w not in (0, 1):
            raise ValueError("w must be 0 or 1")
        if self.w == 0 and (self.u, self.v) != (1, 0) and self.v != 1:
            raise ValueError("points at infinity are normalised to (u, 1, 0) or (1, 0, 0)")


@dataclass
class InfinityPoint:
    point: ProjPoint
    m_num: int
    m_curve: int
    type: str | None
    tangent_cone: Poly
    cone: ConeCheck
    recurrence_ok: bool

    @property
    def cone_squarefree(self) -> bool:
        return self.cone.ok


@dataclass
class AffinePoint:
    point: ProjPoint
    diag: bool
    m_num: int
    m_curve: int
    tangent_cone: Poly
    cone: ConeCheck
    recurrence_ok: bool

    @property
    def cone_squarefree(self) -> bool:
        return self.cone.ok


@dataclass
class SingularReport:
    t: int
    k: int
    l: int
    n: int
    a: int
    M: int
    M_infinity: int
    search_complete: bool
    infinity: list[InfinityPoint] = field(default_factory=list)
    affine: list[AffinePoint] = field(default_factory=list)

    @property
    def infinity_max(self) -> int:
        return self.l

    @property
    def affine_max(self) -> int:
        return (self.l - 1) * (self.l - 2) // 2

    def offdiag_classes(self) -> int:
        """Off-diagonal affine singular points up to the swap (u, v) <-> (v, u)."""
        return len({frozenset((p.point.u, p.point.v)) for p in self.affine if not p.diag})

    def within_bounds(self) -> bool:
        return len(self.infinity) <= self.infinity_max and self.offdiag_classes() <= self.affine_max

    def to_json(self) -> dict:
        Fn, Fa, Fi = ctx_new(self.n), ctx_new(self.M), ctx_new(self.M_infinity)
        return {
            "t": self.t,
            "k": self.k,
            "l": self.l,
            "a": Fn.format(self.a),
            "field": {"n": self.n, "M": self.M, "M_infinity": self.M_infinity},
            "infinity": [
                {"u": Fi.format(p.point.u), "mG": p.m_curve, "mGt": p.m_num, "type": p.type,
                 "cone_squarefree": p.cone_squarefree}
                for p in self.infinity
            ],
            "affine": [
                {"u": Fa.format(p.point.u), "v": Fa.format(p.point.v), "diag": p.diag,
                 "m_curve": p.m_curve, "m_num": p.m_num, "cone_squarefree": p.cone_squarefree}
                for p in self.affine
            ],
            "bounds": {"infinity_max": self.infinity_max, "affine_max": self.affine_max},
            "offdiag_classes": self.offdiag_classes(),
            "within_bounds": self.within_bounds(),
            "infinity_types_ok": verify_table4(self.t, self.a, self),
            "affine_multiplicities_ok": verify_affine_multiplicities(self),
            "search_complete_up_to": self.M,
            "search_complete": self.search_complete,
        }


def affine_candidate_poly(ctx: FieldCtx, t: int, a: int) -> list[int]:
    """(w+1)^l + w^l + a^(2^-k) over the field of a; its roots are the coordinates of affine singular points."""
    k, l = decompose_exponent(t)
    s = ctx.frobenius(a, -k)
    p = [binomial_parity(l, i) for i in range(l)]
    p[0] ^= s
    return _u_trim(p)


def required_affine_degree(n: int, t: int, a: int) -> int:
    """Smallest M with every root of the candidate polynomial in F_{2^M} (a multiple of n)."""
    ctx = ctx_new(n)
    p = affine_candidate_poly(ctx, t, a)
    if not p:
        raise ValueError("candidate polynomial vanishes identically: the singular locus is not finite")
    return n * ilcm(factor_degrees(ctx, p) or [1])


def required_infinity_degree(n: int, t: int) -> int:
    _, l = decompose_exponent(t)
    return ilcm([n, multiplicative_order_of_two(l)])


def _choose_degree(n: int, needed: int, M: int | None) -> tuple[int, bool]:
    if M is None:
        if needed <= MAX_DEGREE:
            return needed, True
        M = (MAX_DEGREE // n) * n
    if not n <= M <= MAX_DEGREE:
        raise GuardError(f"extension degree {M} outside {n}..{MAX_DEGREE}")
    if M % n:
        raise ValueError(f"extension degree {M} is not a multiple of n = {n}")
    return M, M % needed == 0


def affine_singular_points(t: int, a: int, n: int, M: int | None = None) -> tuple[list[tuple[int, int]], int, bool]:
    """Singular points (u, v) of the numerator of F_{t,a} over F_{2^M}.

    Returns (points, M, complete) with coordinates in ctx_new(M); ``complete``
    means every singular point over the algebraic closure is in the list.
    """
    M, complete = _choose_degree(n, required_affine_degree(n, t, a), M)
    big = ctx_new(M)
    _, l = decompose_exponent(t)
    p = [embed(n, M, c) for c in affine_candidate_poly(ctx_new(n), t, a)]
    roots = poly_roots(big, p)
    lp = {r: big.pow(r, l) for r in roots}
    points = sorted((u, v) for u in roots for v in roots if lp[u] == lp[v])
    return points, M, complete


def infinity_singular_points(t: int, n: int, M: int | None = None) -> tuple[list[int], int, bool]:
    """The u with (u, 1, 0) singular on the numerator of H: the l-th roots of unity in F_{2^M}."""
    _, l = decompose_exponent(t)
    M, complete = _choose_degree(n, required_infinity_degree(n, t), M)
    big = ctx_new(M)
    g = math.gcd(l, big.order - 1)
    step = (big.order - 1) // g
    return sorted(big.exp(step * i) for i in range(g)), M, complete


def _expected_type(u: int, k: int, m_num: int, m_curve: int) -> str | None:
    e = 1 << k
    if u == 1:
        return "A" if (m_num, m_curve) == (e + 1, e - 1) else None
    if (m_num, m_curve) == (e + 1, e):
        return "B"
    if (m_num, m_curve) == (e, e - 1):
        return "C"
    return None


def _infinity_point(ctx, Gt, G, u, k) -> InfinityPoint:
    if Gt.eval(u, 0) or Gt.partial(0).eval(u, 0) or Gt.partial(1).eval(u, 0):
        raise PropertyMismatch(f"({ctx.format(u)}, 1, 0) is not singular on the numerator")
    pt_parts = _parts(Gt, (u, 0))
    g_parts = _parts(G, (u, 0))
    X, Z = _xy(ctx)
    zero = X.zero()
    rec = all(
        pt_parts.get(i, zero) == X * Z * g_parts.get(i - 2, zero) + (Z * g_parts.get(i - 1, zero)).scale(u ^ 1)
        for i in range(Gt.degree() + 1)
    )
    m_num, m_curve = min(pt_parts), min(g_parts)
    form = pt_parts.get((1 << k) + 1, zero)
    return InfinityPoint(ProjPoint(u, 1, 0), m_num, m_curve, _expected_type(u, k, m_num, m_curve),
                         g_parts[m_curve], cone_checks(form), rec)


def _affine_point(ctx, Ft, F, u, v, k) -> AffinePoint:
    if Ft.eval(u, v) or Ft.partial(0).eval(u, v) or Ft.partial(1).eval(u, v):
        raise PropertyMismatch(f"({ctx.format(u)}, {ctx.format(v)}) is not singular on the numerator")
    ft_parts = _parts(Ft, (u, v))
    f_parts = _parts(F, (u, v))
    X, Y = _xy(ctx)
    zero = X.zero()
    rec = all(
        ft_parts.get(i, zero) == (X + Y) * f_parts.get(i - 1, zero) + f_parts.get(i, zero).scale(u ^ v)
        for i in range(Ft.degree() + 1)
    )
    form = ft_parts.get((1 << k) + 1, zero)
    m_curve = min(f_parts)
    return AffinePoint(ProjPoint(u, v, 1), u == v, min(ft_parts), m_curve, f_parts[m_curve],
                       cone_checks(form), rec)


def singular_points(t: int, a: int, n: int, M: int | None = None) -> SingularReport:
    """Singular points of the numerators of H_{t,a} (at infinity) and F_{t,a} (affine).

    ``a`` is an element of F_{2^n}.  With M = None the extension degrees are
    chosen so that the search is complete whenever that fits in F_{2^24}.
    """
    k, l = decompose_exponent(t)
    if a == 0:
        raise ValueError("a must be nonzero")
    ctx_new(n).check(a)
    aff, Ma, ok_a = affine_singular_points(t, a, n, M)
    inf, Mi, ok_i = infinity_singular_points(t, n, M)
    report = SingularReport(t, k, l, n, a, Ma, Mi, ok_a and ok_i)

    ci = ctx_new(Mi)
    Gt = build_numerator_G(ci, t, embed(n, Mi, a))
    X, Z = _xy(ci)
    G = Gt.divide_exact(Z * (X + 1))
    report.infinity = [_infinity_point(ci, Gt, G, u, k) for u in inf]

    if aff:
        ca = ctx_new(Ma)
        Ft = build_numerator_F(ca, t, embed(n, Ma, a))
        F = build_F(ca, t, embed(n, Ma, a))
        report.affine = [_affine_point(ca, Ft, F, u, v, k) for u, v in aff]
    return report


def verify_table4(t: int, a: int, report: SingularReport) -> bool:
    """Every point at infinity has an allowed multiplicity pair: type A at (1, 1, 0), else B or C."""
    return not infinity_type_mismatches(report)


def infinity_type_mismatches(report: SingularReport) -> list[InfinityPoint]:
    return [p for p in report.infinity if p.type is None or not p.recurrence_ok]


def verify_affine_multiplicities(report: SingularReport) -> bool:
    e = 1 << report.k
    return all(
        p.m_num == e and p.m_curve == (e - 1 if p.diag else e) and p.recurrence_ok
        for p in report.affine
    )


def cone_squarefree_check(t: int, a: int, n: int, point: ProjPoint, M: int) -> bool:
    """Squarefreeness of the degree-(2^k + 1) part of the numerator at a singular point over F_{2^M}."""
    k, _ = decompose_exponent(t)
    ctx = ctx_new(M)
    ab = embed(n, M, a)
    if point.w == 0:
        num, at = build_numerator_G(ctx, t, ab), (point.u, 0)
    else:
        num, at = build_numerator_F(ctx, t, ab), (point.u, point.v)
    if num.eval(*at) or num.partial(0).eval(*at) or num.partial(1).eval(*at):
        raise ValueError("point is not singular")
    form = _parts(num, at).get((1 << k) + 1)
    return form is not None and cone_checks(form).ok


def b_conditions_hold(t: int, ctx: FieldCtx, u: int, v: int) -> bool:
    k, _ = decompose_exponent(t)
    e1 = t - (1 << k)
    e2 = e1 - 1
    pw = ctx.pow
    return pw(u ^ 1, e1) != pw(u, e1) and pw(u ^ 1, e2) != pw(u, e2) and pw(v ^ 1, e2) != pw(v, e2)


@dataclass
class BSet:
    elements: list[int]
    complete: bool
    M_max: int


def b_set(n: int, t: int, c: int = 1, M: int | None = None) -> BSet:
    """The a in A_n whose affine singular points all pass the three inequations.

    Membership is certified for singular points over F_{2^M}; ``complete``
    says whether that covers the algebraic closure for every a.
    """
    ctx = ctx_new(n)
    out, complete, m_max = [], True, n
    for a in a_set(ctx, t, c):
        pts, Ma, ok = affine_singular_points(t, a, n, M)
        complete &= ok
        m_max = max(m_max, Ma)
        big = ctx_new(Ma)
        if all(b_conditions_hold(t, big, u, v) for u, v in pts):
            out.append(a)
    return BSet(out, complete, m_max)


# ---------- rational points and planarity


def offdiag_counts(t: int, c: int, n: int) -> dict[int, int]:
    """For each a in A_n, the number of (u, v) in F_{2^n}^2, u != v, on the numerator of F_{t,a}."""
    if n > MAX_POINT_SCAN_N:
        raise GuardError(f"point scan limited to n <= {MAX_POINT_SCAN_N}")
    ctx = ctx_new(n)
    x = np.arange(ctx.order, dtype=np.int64)
    g = ctx.pow_vec(x ^ 1, t) ^ ctx.pow_vec(x, t)
    out = {}
    for a in a_set(ctx, t, c):
        h = g ^ ctx.mul_vec(x, np.full_like(x, a))
        m = np.bincount(h, minlength=ctx.order)
        out[a] = int(np.sum(m * (m - 1)))
    return out


count_points_offdiag = offdiag_counts


def planar_curve_crosscheck(t: int, c: int, n: int) -> bool:
    """is_planar(c x^t) agrees with: no a in A_n has off-diagonal points."""
    ctx = ctx_new(n)
    planar = is_planar(FuncTable.monomial(ctx, t, c), first_failure_only=True).planar
    no_points = all(v == 0 for v in offdiag_counts(t, c, n).values())
    return planar == no_points


def weil_lower_bound(d: int, q: int) -> float:
    return q + 1 - (d - 1) * (d - 2) * math.sqrt(q) - d


@dataclass
class SpecialFactor:
    a: int
    b: int
    factor: Poly
    quotient: Poly
    F: Poly


def special_factor_l1(k: int, n: int, c: int = 1) -> SpecialFactor:
    """For t = 2^k + 1: a != 1 in A_n and b != 0 with a + 1 = b^(2^k - 1), so X + Y + b divides F_{t,a}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    ctx = ctx_new(n)
    t = (1 << k) + 1
    e = (1 << k) - 1
    powers: dict[int, int] = {}
    for b in range(1, ctx.order):
        powers.setdefault(ctx.pow(b, e), b)
    for a in a_set(ctx, t, c):
        if a == 1 or (a ^ 1) not in powers:
            continue
        b = powers[a ^ 1]
        F = build_F(ctx, t, a)
        X, Y = _xy(ctx)
        if F != (X + Y) ** e + (a ^ 1):
            raise PropertyMismatch("F_{t,a} is not (X+Y)^(2^k-1) + a + 1")
        factor = X + Y + b
        q = F.divide_exact(factor)
        return SpecialFactor(a, b, factor, q, F)
    raise ValueError(f"no a != 1 in A_{n} with a + 1 a (2^{k}-1)-th power")
