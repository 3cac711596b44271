"""The Galois ring GR(4, n) = Z4[X]/(h), with h the Hensel lift of the field modulus.

Ring elements are stored as a single integer code ``lo | (hi << n)`` built from
two bit planes: the coefficient of X^i is ``lo_i + 2*hi_i``.  With this layout
addition mod 4 is three bitwise operations, reduction mod 2 is ``lo`` and the
ideal 2R is exactly the codes with ``lo == 0``.  All arithmetic helpers accept
Python ints or numpy integer arrays interchangeably.

The Teichmueller set Gamma = {0} u {beta^i} is enumerated in the order
``gamma[0] = 0, gamma[i + 1] = beta^i``; every table indexed by "position x"
in this package uses that order.
"""

from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatch
from .gf2 import FieldCtx, ctx_new


def graeffe_lift(modulus: int) -> list[int]:
    """Coefficients (mod 4, constant first) of the monic h with h(X^2) = +-f(X)f(-X)."""
    n = modulus.bit_length() - 1
    f = [(modulus >> i) & 1 for i in range(n + 1)]
    even = f[0::2]
    odd = f[1::2]

    def square(p):
        out = [0] * (2 * len(p) - 1) if p else []
        for i, a in enumerate(p):
            for j, b in enumerate(p):
                out[i + j] += a * b
        return out

    e2 = square(even)
    o2 = [0] + square(odd)
    h = [0] * (n + 1)
    for i, c in enumerate(e2):
        h[i] += c
    for i, c in enumerate(o2):
        h[i] -= c
    sign = -1 if h[n] % 4 == 3 else 1
    h = [(sign * c) % 4 for c in h[: n + 1]]
    if h[n] != 1:
        raise AssertionError("Graeffe lift is not monic")
    return h


class RingCtx:
    """GR(4, n) built over a field context.

    Immutable once constructed.  The Teichmueller tables (and the
    code -> exponent index) are built eagerly; they have 2^n entries.
    """

    def __init__(self, field_ctx: FieldCtx):
        self.field_ctx = field_ctx
        n = self.n = field_ctx.n
        self.size = 4 ** n
        self._mask = (1 << n) - 1
        self.lifted_modulus = graeffe_lift(field_ctx.modulus)
        # X^n = -(h - X^n); store c * X^n for c = 0..3 as codes
        low = [(-c) % 4 for c in self.lifted_modulus[:n]]
        g1 = self.from_coeffs(low)
        self._xn = (0, g1, self.add(g1, g1), self.neg(g1))
        self.one = 1
        self.X = self.from_coeffs([0, 1] + [0] * (n - 2)) if n > 1 else self._xn[1]

        if self.pow(self.X, 1 << n) != self.X:
            raise AssertionError("X is not a Teichmueller element for this lift")
        self.beta = self._teichmuller_of(field_ctx.alpha)
        q1 = (1 << n) - 1
        gamma = [0]
        y = 1
        for _ in range(q1):
            gamma.append(y)
            y = self.mul(y, self.beta)
        if y != 1 or len(set(gamma)) != 1 << n:
            raise AssertionError("beta does not have order 2^n - 1")
        self.gamma = np.array(gamma, dtype=np.int64)
        self._gamma_list = gamma
        self._gamma_index = {code: i for i, code in enumerate(gamma)}
        # Teichmueller element with a given residue mod 2
        by_residue = np.zeros(1 << n, dtype=np.int64)
        by_residue[self.gamma & self._mask] = self.gamma
        self.teich_by_residue = by_residue
        self._teich_list = by_residue.tolist()
        self.frob_images = [self.pow(self.X, 2 * j) for j in range(n)]
        self.trace_basis = [self._trace_slow(self.pow(self.X, j)) for j in range(n)]

    def __repr__(self) -> str:
        return f"RingCtx(n={self.n}, lifted={self.lifted_modulus})"

    # -- codes and coefficient vectors

    def from_coeffs(self, coeffs) -> int:
        lo = hi = 0
        for i, c in enumerate(coeffs):
            c %= 4
            lo |= (c & 1) << i
            hi |= (c >> 1) << i
        return lo | (hi << self.n)

    def coeffs(self, code: int) -> list[int]:
        lo, hi = code & self._mask, code >> self.n
        return [((lo >> i) & 1) + 2 * ((hi >> i) & 1) for i in range(self.n)]

    def coeff_matrix(self, codes) -> np.ndarray:
        """Rows of Z4 coefficient vectors for an array of codes."""
        codes = np.asarray(codes, dtype=np.int64)
        i = np.arange(self.n, dtype=np.int64)
        lo = (codes[..., None] & self._mask) >> i & 1
        hi = (codes[..., None] >> self.n) >> i & 1
        return (lo + 2 * hi).astype(np.int64)

    def all_codes(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def scalar(self, c: int) -> int:
        return self.from_coeffs([c] + [0] * (self.n - 1))

    def lo(self, code):
        return code & self._mask

    def hi(self, code):
        return code >> self.n

    def is_unit(self, code) -> bool:
        return (code & self._mask) != 0

    def format(self, code: int) -> str:
        return ",".join(str(c) for c in self.coeffs(code))

    def parse(self, text: str) -> int:
        vals = [int(v) for v in text.split(",")]
        if len(vals) != self.n or any(not 0 <= v <= 3 for v in vals):
            raise ValueError(f"expected {self.n} residues in 0..3, got {text!r}")
        return self.from_coeffs(vals)

    # -- arithmetic (ints or numpy arrays)

    def add(self, a, b):
        n, m = self.n, self._mask
        la, ha = a & m, a >> n
        lb, hb = b & m, b >> n
        return (la ^ lb) | ((ha ^ hb ^ (la & lb)) << n)

    def neg(self, a):
        lo = a & self._mask
        return lo | (((a >> self.n) ^ lo) << self.n)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def times2(self, a):
        return (a & self._mask) << self.n

    def mul_by_x(self, a):
        n, m = self.n, self._mask
        lo, hi = (a & m) << 1, (a >> n) << 1
        top_lo, top_hi = (lo >> n) & 1, (hi >> n) & 1
        shifted = (lo & m) | ((hi & m) << n)
        g1, g2 = self._xn[1], self._xn[2]
        # add top_lo * g1 + top_hi * 2*g1 using masks (works for arrays)
        shifted = self.add(shifted, g1 & -top_lo)
        return self.add(shifted, g2 & -top_hi)

    def mul(self, a, b):
        n, m = self.n, self._mask
        blo, bhi = b & m, b >> n
        acc = a
        out = a * 0
        for i in range(n):
            bit_lo = (blo >> i) & 1
            bit_hi = (bhi >> i) & 1
            out = self.add(out, acc & -bit_lo)
            out = self.add(out, self.times2(acc) & -bit_hi)
            if i + 1 < n:
                acc = self.mul_by_x(acc)
        return out

    def scale(self, a, c: int):
        c %= 4
        if c == 0:
            return a * 0
        if c == 1:
            return a
        if c == 2:
            return self.times2(a)
        return self.neg(a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent in ring")
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    # -- Teichmueller set

    def _teichmuller_of(self, residue: int) -> int:
        # (a + 2b)^2 = a^2, so y^(2^n) is the Teichmueller part of any lift y
        return self.pow(residue, 1 << self.n)

    def in_gamma(self, x: int) -> bool:
        return x in self._gamma_index

    def _require_gamma(self, x: int) -> int:
        try:
            return self._gamma_index[x]
        except (KeyError, TypeError):
            raise ValueError(f"{self.format(x)} is not in the Teichmueller set") from None

    def gamma_exponent(self, x: int) -> int | None:
        """i with x = beta^i, or None for x = 0."""
        idx = self._require_gamma(x)
        return None if idx == 0 else idx - 1

    def teich(self, residue: int) -> int:
        """The Teichmueller element reducing to the given field element."""
        return self._teich_list[residue]

    def teich_sqrt(self, x: int) -> int:
        idx = self._require_gamma(x)
        if idx == 0:
            return 0
        q1 = (1 << self.n) - 1
        return self._gamma_list[1 + ((idx - 1) << (self.n - 1)) % q1]

    def oplus(self, x: int, y: int) -> int:
        self._require_gamma(x)
        self._require_gamma(y)
        xy = self.mul(x, y)
        return self.add(self.add(x, y), self.times2(self.teich_sqrt(xy)))

    def decompose(self, y: int) -> tuple[int, int]:
        a = self._teich_list[y & self._mask]
        rest = self.sub(y, a)
        if rest & self._mask:
            raise AssertionError("y - a is not in 2R")
        b = self._teich_list[rest >> self.n]
        return a, b

    def gamma_to_field(self, x: int) -> int:
        idx = self._require_gamma(x)
        if idx == 0:
            return 0
        return self.field_ctx.exp(idx - 1)

    def field_to_gamma(self, a: int) -> int:
        self.field_ctx.check(a)
        if a == 0:
            return 0
        return self._gamma_list[1 + self.field_ctx.log(a)]

    # -- Frobenius and trace

    def frobenius(self, y):
        """Ring automorphism with X -> X^2 (squaring on Gamma)."""
        out = y * 0
        lo, hi = y & self._mask, y >> self.n
        for j, img in enumerate(self.frob_images):
            out = self.add(out, img & -((lo >> j) & 1))
            out = self.add(out, self.times2(img) & -((hi >> j) & 1))
        return out

    def _trace_slow(self, y: int) -> int:
        s, z = 0, y
        for _ in range(self.n):
            s = self.add(s, z)
            z = self.frobenius(z)
        coeffs = self.coeffs(s)
        if any(coeffs[1:]):
            raise AssertionError("trace is not in Z4")
        return coeffs[0]

    def trace_T(self, y):
        """Absolute trace R_n -> Z4, as a Z4-linear form on coefficient vectors."""
        if isinstance(y, (int, np.integer)):
            return sum(c * t for c, t in zip(self.coeffs(int(y)), self.trace_basis)) % 4
        mat = self.coeff_matrix(y)
        return (mat @ np.array(self.trace_basis, dtype=np.int64)) % 4

    def trace_slow(self, y: int) -> int:
        """Trace computed as sum of Frobenius iterates (independent of the linear form)."""
        return self._trace_slow(y)

    def trace_form_matrix(self, codes) -> np.ndarray:
        """V[j, x] = T(X^j * codes[x]); then T(a * y_x) = (coeffs(a) @ V) mod 4."""
        codes = np.asarray(codes, dtype=np.int64)
        rows = []
        y = codes.copy()
        for j in range(self.n):
            rows.append(self.trace_T(y))
            y = self.mul_by_x(y)
        return np.array(rows, dtype=np.int64).reshape(self.n, len(codes))

    # -- serialisation

    def dump(self) -> dict:
        digest = hashlib.sha256(json.dumps(self._gamma_list).encode()).hexdigest()
        return {
            "n": self.n,
            "field_modulus": f"{self.field_ctx.modulus:#x}",
            "lifted_modulus": self.lifted_modulus,
            "beta": self.format(self.beta),
            "gamma_checksum": digest,
        }

    def element(self, code: int) -> "RingElement":
        if not 0 <= code < self.size:
            raise ValueError("code out of range")
        return RingElement(self, code)


@functools.lru_cache(maxsize=None)
def ring_ctx_new(field_ctx: FieldCtx) -> RingCtx:
    return RingCtx(field_ctx)


def ring_ctx_for(n: int) -> RingCtx:
    return ring_ctx_new(ctx_new(n))


@dataclass(frozen=True)
class RingElement:
    ctx: RingCtx
    code: int

    def _c(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ctx is not self.ctx:
                raise ContextMismatch("ring elements from different contexts")
            return other.code
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._c(other)
        return o if o is NotImplemented else RingElement(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._c(other)
        return o if o is NotImplemented else RingElement(self.ctx, self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._c(other)
        return o if o is NotImplemented else RingElement(self.ctx, self.ctx.sub(o, self.code))

    def __neg__(self):
        return RingElement(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._c(other)
        return o if o is NotImplemented else RingElement(self.ctx, self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return RingElement(self.ctx, self.ctx.pow(self.code, e))

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.coeffs(self.code)

    def __repr__(self) -> str:
        return self.ctx.format(self.code)
