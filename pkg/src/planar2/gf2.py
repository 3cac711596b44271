"""Arithmetic in the binary fields F_{2^n}, 1 <= n <= 24.

Elements are n-bit integers; bit i is the coefficient of X^i in the polynomial
basis defined by the context modulus.  A :class:`FieldCtx` does the arithmetic
on raw integers (the fast path used by the enumeration code), and
:class:`FieldElement` wraps an integer with its context for interactive use.

The modulus for each degree comes from the shipped table ``data/moduli.txt`` so
every table produced by this package is bit-exact reproducible.
"""

from __future__ import annotations

import functools
import hashlib
import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

import numpy as np

from .errors import ContextMismatch, GuardError

MAX_DEGREE = 24
EAGER_LOG_DEGREE = 20
_LIST_TABLE_DEGREE = 16


# ---------- polynomials over F_2 packed into integers


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed F_2[X] polynomials."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, polymod(a, b)
    return a


def is_irreducible(m: int) -> bool:
    """Ben-Or test: gcd(X^(2^i) - X, m) = 1 for all i <= deg(m)/2."""
    n = m.bit_length() - 1
    if n < 1:
        return False
    x = 2
    power = x
    for _ in range(n // 2):
        power = polymod(clmul(power, power), m)
        if polygcd(m, power ^ x) != 1:
            return False
    return True


def _prime_factors(k: int) -> list[int]:
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


def binomial_parity(m: int, k: int) -> int:
    """Parity of C(m, k): odd exactly when every binary digit of k is at most that of m."""
    if m < 0 or k < 0:
        raise ValueError("binomial_parity takes nonnegative integers")
    return 1 if k & ~m == 0 else 0


# ---------- modulus table


@functools.lru_cache(maxsize=None)
def _moduli_text() -> str:
    return resources.files("planar2").joinpath("data/moduli.txt").read_text(encoding="utf-8")


@functools.lru_cache(maxsize=None)
def moduli_table() -> dict[int, int]:
    table = {}
    for line in _moduli_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = dict(part.split("=", 1) for part in line.split())
        table[int(fields["n"])] = int(fields["modulus"], 16)
    return table


def moduli_checksum() -> str:
    return hashlib.sha256(_moduli_text().encode("utf-8")).hexdigest()


# ---------- field context


class FieldCtx:
    """The field F_2[X]/(modulus) together with a fixed multiplicative generator.

    Immutable after construction.  Discrete-log tables are built eagerly for
    n <= 20 and on first vectorised use above that.
    """

    def __init__(self, modulus: int):
        n = modulus.bit_length() - 1
        if not 1 <= n <= MAX_DEGREE:
            raise GuardError(f"extension degree {n} outside 1..{MAX_DEGREE}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is not irreducible over F_2")
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self.mask = self.order - 1
        self._exp = None
        self._log = None
        self._exp_list = None
        self._log_list = None
        self.alpha = self._find_generator()
        if n <= EAGER_LOG_DEGREE:
            self._build_logs()

    @classmethod
    def from_modulus(cls, modulus: int) -> "FieldCtx":
        return cls(modulus)

    def __repr__(self) -> str:
        return f"FieldCtx(n={self.n}, modulus={self.modulus:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("FieldCtx", self.modulus))

    # -- construction helpers

    def _find_generator(self) -> int:
        q1 = self.order - 1
        if q1 == 1:
            return 1
        cofactors = [q1 // p for p in _prime_factors(q1)]
        for g in range(2, self.order):
            if all(self._pow_slow(g, e) != 1 for e in cofactors):
                return g
        raise AssertionError("no generator found")  # unreachable for a field

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = polymod(clmul(r, a), self.modulus)
            a = polymod(clmul(a, a), self.modulus)
            e >>= 1
        return r

    def _mul_scalar_vec(self, arr: np.ndarray, s: int) -> np.ndarray:
        acc = np.zeros_like(arr)
        i = 0
        while s >> i:
            if (s >> i) & 1:
                acc ^= arr << i
            i += 1
        for deg in range(2 * self.n - 2, self.n - 1, -1):
            hit = (acc >> deg) & 1
            acc ^= hit * (self.modulus << (deg - self.n))
        return acc

    def _build_logs(self) -> None:
        q1 = self.order - 1
        exp = np.empty(q1, dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < q1:
            step = min(filled, q1 - filled)
            exp[filled:filled + step] = self._mul_scalar_vec(exp[:step], self._pow_slow(self.alpha, filled))
            filled += step
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(q1, dtype=np.int64)
        if np.any(log[1:] < 0):
            raise AssertionError("alpha does not generate the multiplicative group")
        self._exp = exp
        self._log = log
        if self.n <= _LIST_TABLE_DEGREE:
            self._exp_list = exp.tolist()
            self._log_list = log.tolist()

    @property
    def exp_table(self) -> np.ndarray:
        if self._exp is None:
            self._build_logs()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        if self._log is None:
            self._build_logs()
        return self._log

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        """Full q x q product table (n <= 10 only)."""
        if self.n > 10:
            raise GuardError("multiplication table only for n <= 10")
        q = self.order
        a = np.arange(q, dtype=np.int64)
        return np.stack([self.mul_vec(a, b) for b in range(q)], axis=1)

    # -- scalar arithmetic on raw integers

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a:#x} is not a reduced element of F_2^{self.n}")
        return a

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log_list is not None:
            return self._exp_list[(self._log_list[a] + self._log_list[b]) % (self.order - 1)]
        return polymod(clmul(a, b), self.modulus)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in F_2^n")
        if self._log_list is not None:
            return self._exp_list[(-self._log_list[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        e %= self.order - 1
        if self._log_list is not None:
            return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]
        return self._pow_slow(a, e)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(2^i); negative i applies the inverse automorphism."""
        i %= self.n
        for _ in range(i):
            a = self.mul(a, a)
        return a

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self._log_list is not None:
            return self._log_list[a]
        return int(self.log_table[a])

    def exp(self, i: int) -> int:
        i %= self.order - 1
        if self._exp_list is not None:
            return self._exp_list[i]
        return self.pow(self.alpha, i)

    # -- subfields and traces

    def in_subfield(self, a: int, m: int) -> bool:
        if self.n % m:
            return False
        return self.frobenius(a, m) == a

    def trace_abs(self, a: int, m: int | None = None) -> int:
        """Absolute trace Tr_m(a) = a + a^2 + ... + a^(2^(m-1)) of a in F_{2^m}."""
        m = self.n if m is None else m
        if m < 1 or self.n % m:
            raise ValueError(f"subfield degree {m} does not divide {self.n}")
        if not self.in_subfield(a, m):
            raise ValueError(f"{a:#x} does not lie in the subfield F_2^{m}")
        s, y = 0, a
        for _ in range(m):
            s ^= y
            y = self.mul(y, y)
        if s not in (0, 1):
            raise AssertionError("trace left the prime field")
        return s

    def subfield_elements(self, m: int) -> list[int]:
        """All a with a^(2^m) = a, ascending."""
        if m < 1 or self.n % m:
            raise ValueError(f"subfield degree {m} does not divide {self.n}")
        if m == self.n:
            return list(range(self.order))
        step = (self.order - 1) // ((1 << m) - 1)
        elems = {0} | {self.exp(step * i) for i in range((1 << m) - 1)}
        return sorted(elems)

    def elements(self) -> range:
        return range(self.order)

    def nonzero_by_power(self) -> list[int]:
        """alpha^0, alpha^1, ..., alpha^(q-2)."""
        return [self.exp(i) for i in range(self.order - 1)]

    # -- vectorised arithmetic

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        log, exp = self.log_table, self.exp_table
        la, lb = log[a], log[b]
        out = exp[(la + lb) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        log, exp = self.log_table, self.exp_table
        if e == 0:
            return np.ones_like(a)
        out = exp[(log[a] * (e % (self.order - 1))) % (self.order - 1)]
        if e < 0:
            if np.any(a == 0):
                raise ZeroDivisionError("negative power of zero")
            return out
        return np.where(a == 0, 0, out)

    # -- text format

    def format(self, a: int) -> str:
        return f"{a:#x}"

    def parse(self, text: str) -> int:
        return self.check(int(text, 16))

    def element(self, a: int | str) -> "FieldElement":
        if isinstance(a, str):
            a = self.parse(a)
        return FieldElement(self, self.check(a))


@functools.lru_cache(maxsize=None)
def ctx_new(n: int) -> FieldCtx:
    """Field context for F_{2^n} using the shipped modulus table."""
    if not 1 <= n <= MAX_DEGREE:
        raise GuardError(f"extension degree {n} outside 1..{MAX_DEGREE}")
    return FieldCtx(moduli_table()[n])


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    bits: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch("field elements from different contexts")
            return other.bits
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.bits ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul(self.bits, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.div(self.bits, b))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.bits, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.bits))

    def trace(self, m: int | None = None) -> int:
        return self.ctx.trace_abs(self.bits, m)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __int__(self) -> int:
        return self.bits

    def __repr__(self) -> str:
        return f"{self.bits:#x}"

    __str__ = __repr__


def ilcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
