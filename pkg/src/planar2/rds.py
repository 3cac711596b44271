"""Relative difference sets D = {x + 2 sqrt(f(x))} in GR(4, n) and their character sums.

Everything here is exact integer arithmetic; character values are powers of
the fourth root of unity w and sums are Gaussian integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatch, GuardError
from .gr4 import RingCtx
from .planar import FuncTable

MAX_DIFFERENCE_N = 6


@dataclass(frozen=True)
class GaussianInt:
    """re + im*w with w^2 = -1."""

    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def times_w_power(self, b: int) -> "GaussianInt":
        z = self
        for _ in range(b % 4):
            z = GaussianInt(-z.im, z.re)
        return z

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    @classmethod
    def from_residue_counts(cls, counts) -> "GaussianInt":
        """Sum of w^r weighted by counts[r], r = 0..3."""
        c0, c1, c2, c3 = (int(v) for v in counts)
        return cls(c0 - c2, c1 - c3)


@dataclass
class DiffSet:
    ring_ctx: RingCtx
    codes: np.ndarray  # position x in Gamma order -> x + 2 sqrt(f(x))

    def __post_init__(self):
        n = self.ring_ctx.n
        if len(self.codes) != 1 << n:
            raise AssertionError("difference set must have 2^n elements")
        if len(set((self.codes & ((1 << n) - 1)).tolist())) != 1 << n:
            raise AssertionError("Teichmueller components are not distinct")

    @property
    def elements(self) -> set[int]:
        return set(self.codes.tolist())

    def __len__(self) -> int:
        return len(self.codes)


def transport(f: FuncTable, ring_ctx: RingCtx) -> list[int]:
    """f moved to Gamma through the fixed isomorphism, as a list indexed by Gamma position."""
    if f.ctx != ring_ctx.field_ctx:
        raise ContextMismatch("function and ring are over different fields")
    out = []
    for x in ring_ctx.gamma.tolist():
        fx = f(ring_ctx.gamma_to_field(x))
        out.append(ring_ctx.field_to_gamma(fx))
    return out


def diffset_codes(f: FuncTable, ring_ctx: RingCtx) -> np.ndarray:
    fg = transport(f, ring_ctx)
    codes = [ring_ctx.add(x, ring_ctx.times2(ring_ctx.teich_sqrt(fx)))
             for x, fx in zip(ring_ctx.gamma.tolist(), fg)]
    return np.array(codes, dtype=np.int64)


def build_diffset(f: FuncTable, ring_ctx: RingCtx) -> DiffSet:
    return DiffSet(ring_ctx, diffset_codes(f, ring_ctx))


@dataclass
class RDSReport:
    is_rds: bool
    difference_count: int
    unit_hits: dict[int, int]       # multiplicity -> how many units had it
    forbidden_hits: int             # nonzero differences landing in 2R


def verify_rds(D: DiffSet) -> RDSReport:
    """Brute force over the full multiset of nonzero differences d1 - d2."""
    R = D.ring_ctx
    if R.n > MAX_DIFFERENCE_N:
        raise GuardError(f"difference multiset only materialised for n <= {MAX_DIFFERENCE_N}")
    d = D.codes
    diffs = R.sub(d[:, None], d[None, :])
    off = ~np.eye(len(d), dtype=bool)
    diffs = diffs[off]
    counts = np.bincount(diffs, minlength=R.size)
    units = (np.arange(R.size) & ((1 << R.n) - 1)) != 0
    unit_counts = counts[units]
    hist = {int(k): int(v) for k, v in zip(*np.unique(unit_counts, return_counts=True))}
    forbidden = int(counts[~units].sum())
    ok = forbidden == 0 and bool(np.all(unit_counts == 1))
    return RDSReport(ok, int(len(diffs)), hist, forbidden)


def _residue_matrix(D: DiffSet, a_codes: np.ndarray) -> np.ndarray:
    R = D.ring_ctx
    V = R.trace_form_matrix(D.codes)
    A = R.coeff_matrix(a_codes)
    return (A @ V) % 4


def char_sums(D: DiffSet, a_codes=None, block: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """(re, im) arrays of S_a = sum_x w^T(a d_x) for the given a (default: all of R_n)."""
    R = D.ring_ctx
    if a_codes is None:
        a_codes = R.all_codes()
    a_codes = np.asarray(a_codes, dtype=np.int64)
    re = np.empty(len(a_codes), dtype=np.int64)
    im = np.empty(len(a_codes), dtype=np.int64)
    for start in range(0, len(a_codes), block):
        M = _residue_matrix(D, a_codes[start:start + block])
        counts = np.stack([(M == r).sum(axis=1) for r in range(4)])
        re[start:start + block] = counts[0] - counts[2]
        im[start:start + block] = counts[1] - counts[3]
    return re, im


def char_sum(D: DiffSet, a: int) -> GaussianInt:
    R = D.ring_ctx
    counts = [0, 0, 0, 0]
    for d in D.codes.tolist():
        counts[R.trace_T(R.mul(a, d))] += 1
    return GaussianInt.from_residue_counts(counts)


@dataclass
class ProfileReport:
    ok: bool
    failing_a: list[int]
    histogram: dict[str, int]


def char_profile_check(D: DiffSet) -> ProfileReport:
    """Check |S_a|^2 = 4^n (a = 0), 0 (a in 2R, a != 0), 2^n (a a unit) for all a."""
    R = D.ring_ctx
    n = R.n
    codes = R.all_codes()
    re, im = char_sums(D, codes)
    norm = re * re + im * im
    units = (codes & ((1 << n) - 1)) != 0
    expected = np.where(units, 1 << n, 0)
    expected[0] = 4 ** n
    bad = np.nonzero(norm != expected)[0]
    hist = {
        "4^n": int(np.sum(norm == 4 ** n)),
        "0": int(np.sum(norm == 0)),
        "2^n": int(np.sum(norm == (1 << n))),
    }
    other = len(norm) - sum(hist.values())
    if other:
        hist["other"] = int(other)
    return ProfileReport(len(bad) == 0, [int(codes[i]) for i in bad], hist)


def jacobi_decomposition_check(s: GaussianInt, n: int) -> str:
    """Confirm a Gaussian integer of norm 2^n has the only shape X^2 + Y^2 = 2^n allows."""
    if s.norm() != 1 << n:
        raise ValueError(f"|s|^2 = {s.norm()} is not 2^{n}")
    if n % 2:
        h = 1 << ((n - 1) // 2)
        if abs(s.re) == h and abs(s.im) == h:
            return "odd"
    else:
        h = 1 << (n // 2)
        if (abs(s.re), abs(s.im)) in ((h, 0), (0, h)):
            return "even"
    raise AssertionError(f"{s} has norm 2^{n} but not the two-square shape")


def rds_report(f: FuncTable, ring_ctx: RingCtx) -> dict:
    """JSON-ready summary used by the CLI."""
    from .planar import is_planar

    D = build_diffset(f, ring_ctx)
    planar = is_planar(f).planar
    profile = char_profile_check(D)
    out = {
        "n": ring_ctx.n,
        "f": f.describe(),
        "is_planar": planar,
        "char_profile_ok": profile.ok,
        "failing_a": [ring_ctx.format(a) for a in profile.failing_a],
        "profile_histogram": profile.histogram,
    }
    if ring_ctx.n <= MAX_DIFFERENCE_N:
        out["is_rds"] = verify_rds(D).is_rds
        out["planar_equiv"] = out["is_rds"] == profile.ok == planar
    else:
        out["is_rds"] = None
        out["planar_equiv"] = profile.ok == planar
    return out
