"""Planarity and APN predicates, the planar-monomial search and the sets A_n.

A function F_{2^n} -> F_{2^n} is planar when x -> f(x+e) + f(x) + e*x is a
permutation for every nonzero e, and APN when x -> f(x+e) + f(x) is 2-to-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import GuardError
from .gf2 import FieldCtx, ctx_new

EXHAUSTIVE_MAX_N = 7


@dataclass
class FuncTable:
    """A function on F_{2^n} stored as the dense table of its 2^n values."""

    ctx: FieldCtx
    values: np.ndarray
    descriptor: tuple[int, int] | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        if self.values.shape != (self.ctx.order,):
            raise ValueError(f"table must have exactly {self.ctx.order} entries")
        if np.any((self.values < 0) | (self.values >= self.ctx.order)):
            raise ValueError("table entries out of field range")
        if self.descriptor is not None:
            t, c = self.descriptor
            if not np.array_equal(self.values, _monomial_values(self.ctx, t, c)):
                raise ValueError("table does not match its monomial descriptor")

    @classmethod
    def monomial(cls, ctx: FieldCtx, t: int, c: int) -> "FuncTable":
        return cls(ctx, _monomial_values(ctx, t, c), (t, c))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "FuncTable":
        return cls(ctx, np.zeros(ctx.order, dtype=np.int64))

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    @property
    def n(self) -> int:
        return self.ctx.n

    def describe(self) -> str:
        if self.descriptor is None:
            return "table"
        t, c = self.descriptor
        return f"{t},{c:#x}"

    # -- file format

    def dumps(self) -> str:
        lines = [f"planar2 n={self.ctx.n} modulus={self.ctx.modulus:#x}"]
        lines += [f"{int(v):#x}" for v in self.values]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "FuncTable":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("planar2 "):
            raise ValueError("missing 'planar2 n=<n> modulus=0x<hex>' header")
        header = dict(part.split("=", 1) for part in lines[0].split()[1:])
        n = int(header["n"])
        modulus = int(header["modulus"], 16)
        ctx = ctx_new(n)
        if ctx.modulus != modulus:
            ctx = FieldCtx(modulus)
        body = lines[1:]
        if len(body) != ctx.order:
            raise ValueError(f"expected {ctx.order} values, found {len(body)}")
        return cls(ctx, np.array([int(v, 16) for v in body], dtype=np.int64))

    @classmethod
    def load(cls, path) -> "FuncTable":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def _monomial_values(ctx: FieldCtx, t: int, c: int) -> np.ndarray:
    x = np.arange(ctx.order, dtype=np.int64)
    return ctx.mul_vec(ctx.pow_vec(x, t), np.full_like(x, c))


@dataclass
class PlanarityReport:
    planar: bool
    witnesses: dict[int, tuple[int, int]] = field(default_factory=dict)


def _linear_term(ctx: FieldCtx, eps: int) -> np.ndarray:
    x = np.arange(ctx.order, dtype=np.int64)
    return ctx.mul_vec(x, np.full_like(x, eps))


def delta_map(f: FuncTable, eps: int) -> np.ndarray:
    """Table of x -> f(x + eps) + f(x) + eps*x."""
    if eps == 0:
        raise ValueError("eps must be nonzero")
    x = np.arange(f.ctx.order, dtype=np.int64)
    return f.values[x ^ eps] ^ f.values ^ _linear_term(f.ctx, eps)


def derivative(f: FuncTable, eps: int) -> np.ndarray:
    """Table of x -> f(x + eps) + f(x)."""
    if eps == 0:
        raise ValueError("eps must be nonzero")
    x = np.arange(f.ctx.order, dtype=np.int64)
    return f.values[x ^ eps] ^ f.values


def _collision(values: np.ndarray) -> tuple[int, int] | None:
    order = np.argsort(values, kind="stable")
    s = values[order]
    dup = np.nonzero(s[1:] == s[:-1])[0]
    if len(dup) == 0:
        return None
    i = dup[0]
    a, b = sorted((int(order[i]), int(order[i + 1])))
    return a, b


def is_planar(f: FuncTable, *, first_failure_only: bool = False) -> PlanarityReport:
    report = PlanarityReport(True)
    for eps in range(1, f.ctx.order):
        hit = _collision(delta_map(f, eps))
        if hit is not None:
            report.planar = False
            report.witnesses[eps] = hit
            if first_failure_only:
                break
    return report


def is_planar_classical(f: FuncTable) -> bool:
    """The odd-characteristic definition (x -> f(x+e) - f(x) a permutation); never true here."""
    return all(_collision(derivative(f, eps)) is None for eps in range(1, f.ctx.order))


def is_apn(f: FuncTable) -> bool:
    for eps in range(1, f.ctx.order):
        counts = np.bincount(derivative(f, eps), minlength=f.ctx.order)
        if np.any((counts != 0) & (counts != 2)):
            return False
    return True


def _monomial_planar(ctx: FieldCtx, powers: np.ndarray, c: int, lin: list[np.ndarray]) -> bool:
    vals = ctx.mul_vec(powers, np.full_like(powers, c))
    x = np.arange(ctx.order, dtype=np.int64)
    for eps in range(1, ctx.order):
        d = vals[x ^ eps] ^ vals ^ lin[eps]
        if len(np.unique(d)) != ctx.order:
            return False
    return True


def _search_exponent(n: int, t: int, cs: list[int] | None = None) -> list[int]:
    ctx = ctx_new(n)
    x = np.arange(ctx.order, dtype=np.int64)
    powers = ctx.pow_vec(x, t)
    lin = [None] + [_linear_term(ctx, eps) for eps in range(1, ctx.order)]
    candidates = ctx.nonzero_by_power() if cs is None else cs
    found = [c for c in candidates if _monomial_planar(ctx, powers, c, lin)]
    return sorted(found, key=ctx.log)


def search_planar_monomials(n: int, *, exponents=None, sample: int | None = None,
                            seed: int = 0, jobs: int = 1) -> list[tuple[int, list[int]]]:
    """For each exponent t in 1..2^n-2, the coefficients c with c*x^t planar.

    Coefficients are listed in generator-power order.  Exhaustive for
    n <= 7; larger n requires ``sample`` (that many random c per t), and the
    result is then not exhaustive.
    """
    ctx = ctx_new(n)
    ts = list(range(1, ctx.order - 1)) if exponents is None else list(exponents)
    for t in ts:
        if not 1 <= t <= ctx.order - 2:
            raise ValueError(f"exponent {t} outside 1..{ctx.order - 2}")
    cs = None
    if n > EXHAUSTIVE_MAX_N:
        if sample is None:
            raise GuardError(f"exhaustive search limited to n <= {EXHAUSTIVE_MAX_N}; pass sample=")
        rng = np.random.default_rng(seed)
        cs = sorted(int(v) for v in rng.choice(np.arange(1, ctx.order), size=min(sample, ctx.order - 1),
                                                replace=False))
    if jobs > 1 and len(ts) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(_search_exponent, [n] * len(ts), ts, [cs] * len(ts)))
    else:
        found = [_search_exponent(n, t, cs) for t in ts]
    return sorted(zip(ts, found))


def a_set(ctx: FieldCtx, t: int, c: int) -> list[int]:
    """A_n = {eps^(2-t)/c : eps nonzero}, ascending."""
    if c == 0:
        raise ValueError("c must be nonzero")
    cinv = ctx.inv(c)
    return sorted({ctx.mul(ctx.pow(e, 2 - t), cinv) for e in range(1, ctx.order)})


def a_set_size(n: int, t: int) -> int:
    q1 = (1 << n) - 1
    return q1 // math.gcd(q1, t - 2)


def is_power_of_two(t: int) -> bool:
    return t > 0 and t & (t - 1) == 0


def coprime_filter_check(n: int, t: int) -> bool:
    """Exhaustive check of: gcd(t-2, 2^n-1) = 1 and planar c*x^t for some c  =>  t a power of 2."""
    if is_power_of_two(t) or math.gcd(t - 2, (1 << n) - 1) != 1:
        return True
    return not _search_exponent(n, t)


def exponent_family(n: int, t: int) -> str:
    """Which conjectured family (if any) an exponent belongs to at degree n."""
    if is_power_of_two(t):
        return "power-of-2"
    if n % 2 == 0 and t == (1 << (n // 2)) + 1:
        return "2^k+1-family"
    if n % 6 == 0:
        k = n // 3
        if t == (1 << k) * ((1 << k) + 1) % ((1 << n) - 1):
            return "2^k(2^k+1)-family"
    return "unexplained"
