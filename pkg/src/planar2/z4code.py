"""The Z4 code C_f, its dual, Lee weights, the Gray map and the binary code D_f.

Positions of Z4 words are indexed by the Teichmueller set in ring-context
order.  The parity-check "matrix" of C_f has two rows over R_n; expanding the
second row into coordinates gives an (n+1) x 2^n matrix over Z4 whose row
module is (C_f)^perp.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterator

import numpy as np

from .errors import GuardError, NonFreeCodeError, PropertyMismatch
from .gr4 import RingCtx
from .planar import FuncTable
from .rds import diffset_codes

LEE = np.array([0, 1, 2, 1], dtype=np.int64)
# w^c for c = 0..3 has real part 1, 0, -1, 0
_RE_W = np.array([1, 0, -1, 0], dtype=np.int64)
GRAY = np.array([[0, 0], [0, 1], [1, 1], [1, 0]], dtype=np.uint8)

MAX_DUAL_N = 8
MAX_KERNEL_N = 32


@dataclass
class WeightDistribution:
    counts: dict[int, int]
    metric: str = "Lee"

    def __post_init__(self):
        self.counts = {int(k): int(v) for k, v in sorted(self.counts.items()) if v}

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    def min_nonzero(self) -> int:
        return min(w for w in self.counts if w > 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightDistribution):
            return self.metric == other.metric and self.counts == other.counts
        if isinstance(other, dict):
            return self.counts == {k: v for k, v in other.items() if v}
        return NotImplemented

    def to_csv(self) -> str:
        lines = ["weight,frequency"] + [f"{w},{c}" for w, c in self.counts.items()]
        return "\n".join(lines) + "\n"


def expected_dual_distribution(n: int) -> WeightDistribution:
    """Closed-form Lee weight distribution of (C_f)^perp for planar f."""
    q = 1 << n
    if n % 2:
        h = 1 << ((n - 1) // 2)
        counts = {0: 1, q - h: 2 * q * (q - 1), q: 4 * q - 2, q + h: 2 * q * (q - 1), 2 * q: 1}
    else:
        h = 1 << (n // 2)
        counts = {0: 1, q - h: q * (q - 1), q: 2 * q * (q + 1) - 2, q + h: q * (q - 1), 2 * q: 1}
    return WeightDistribution(counts)


# ---------- weights and the Gray map


def lee_weight(word) -> int:
    w = np.asarray(word, dtype=np.int64) % 4
    return int(LEE[w].sum())


def lee_weight_via_characters(word) -> int:
    """N - Re(sum_i w^(c_i)), evaluated exactly."""
    w = np.asarray(word, dtype=np.int64) % 4
    return int(len(w) - _RE_W[w].sum())


def gray_map(word) -> np.ndarray:
    w = np.asarray(word, dtype=np.int64) % 4
    return GRAY[w].reshape(*w.shape[:-1], 2 * w.shape[-1])


def lee_distance(u, v) -> int:
    return lee_weight(np.asarray(u) - np.asarray(v))


def hamming_distance(u, v) -> int:
    return int(np.count_nonzero(np.asarray(u) != np.asarray(v)))


# ---------- parity check and dual code


@dataclass
class ParityCheck:
    ring_ctx: RingCtx
    row2: np.ndarray  # ring codes d_x = x + 2 sqrt(f(x))

    @property
    def length(self) -> int:
        return len(self.row2)

    def rows(self) -> tuple[np.ndarray, np.ndarray]:
        return np.ones(self.length, dtype=np.int64), self.row2

    def z4_matrix(self) -> np.ndarray:
        """(n+1) x N matrix over Z4: the all-ones row, then the coordinates of row 2."""
        coords = self.ring_ctx.coeff_matrix(self.row2).T
        return np.vstack([np.ones((1, self.length), dtype=np.int64), coords]) % 4


def parity_check_Cf(f: FuncTable, ring_ctx: RingCtx) -> ParityCheck:
    return ParityCheck(ring_ctx, diffset_codes(f, ring_ctx))


def _dual_trace_rows(f: FuncTable, ring_ctx: RingCtx) -> np.ndarray:
    return ring_ctx.trace_form_matrix(diffset_codes(f, ring_ctx))


def dual_codewords(f: FuncTable, ring_ctx: RingCtx) -> Iterator[tuple[int, int, np.ndarray]]:
    """Yield (a, b, c_ab) for every a in R_n (ascending code) and b in Z4."""
    V = _dual_trace_rows(f, ring_ctx)
    for a in range(ring_ctx.size):
        base = (np.array(ring_ctx.coeffs(a), dtype=np.int64) @ V) % 4
        for b in range(4):
            yield a, b, (base + b) % 4


def dual_word_matrix(f: FuncTable, ring_ctx: RingCtx, a_codes=None) -> np.ndarray:
    """Rows T(a d_x) for the given a (b = 0 shift only)."""
    if a_codes is None:
        a_codes = ring_ctx.all_codes()
    V = _dual_trace_rows(f, ring_ctx)
    return (ring_ctx.coeff_matrix(a_codes) @ V) % 4


def dual_lee_distribution(f: FuncTable, ring_ctx: RingCtx, block: int = 2048) -> WeightDistribution:
    """Exact Lee weight histogram of all 4^(n+1) words c_ab."""
    if ring_ctx.n > MAX_DUAL_N:
        raise GuardError(f"dual enumeration limited to n <= {MAX_DUAL_N}")
    V = _dual_trace_rows(f, ring_ctx)
    hist: Counter = Counter()
    codes = ring_ctx.all_codes()
    for start in range(0, len(codes), block):
        base = (ring_ctx.coeff_matrix(codes[start:start + block]) @ V) % 4
        for b in range(4):
            weights = LEE[(base + b) % 4].sum(axis=1)
            hist.update(dict(zip(*np.unique(weights, return_counts=True))))
    return WeightDistribution(dict(hist))


def matches_table(dist: WeightDistribution, n: int) -> bool:
    return dist == expected_dual_distribution(n)


def swe_of_dual(f: FuncTable, ring_ctx: RingCtx) -> dict[tuple[int, int, int], int]:
    """Symmetrized weight enumerator of (C_f)^perp: (#0, #(+-1), #2) -> count."""
    if ring_ctx.n > MAX_DUAL_N:
        raise GuardError(f"dual enumeration limited to n <= {MAX_DUAL_N}")
    base = dual_word_matrix(f, ring_ctx)
    swe: Counter = Counter()
    for b in range(4):
        w = (base + b) % 4
        n0 = (w == 0).sum(axis=1)
        n2 = (w == 2).sum(axis=1)
        n1 = w.shape[1] - n0 - n2
        keys = np.stack([n0, n1, n2], axis=1)
        uniq, cnt = np.unique(keys, axis=0, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            swe[tuple(k)] += c
    return dict(swe)


def macwilliams_transform(swe: dict[tuple[int, int, int], int], code_size: int) -> dict[tuple[int, int, int], int]:
    """swe of the dual code: (1/|C|) * swe(W + 2X + Y, W - Y, W - 2X + Y).

    ``swe`` maps (i0, i1, i2) to the number of words with i0 zeros, i1 entries
    +-1 and i2 twos; ``code_size`` is the size of the code it enumerates.
    Returns the enumerator of the dual code with exact integer coefficients.
    """
    if not swe:
        raise ValueError("empty enumerator")
    N = sum(next(iter(swe)))
    if any(sum(k) != N for k in swe):
        raise ValueError("inconsistent word lengths in enumerator")
    if sum(swe.values()) != code_size:
        raise ValueError("enumerator counts do not sum to the code size")
    # polynomials in (X, Y) with W implicit; arrays indexed [deg X, deg Y]
    total = np.zeros((N + 1, N + 1), dtype=object)
    total[:] = 0
    for (i0, i1, i2), count in swe.items():
        p = _trinomial_power(i0, 2, 1, N)        # (W + 2X + Y)^i0
        p = _mul_binomial_y(p, i1, N)            # (W - Y)^i1
        p = _mul_poly(p, _trinomial_power(i2, -2, 1, N), N)  # (W - 2X + Y)^i2
        total += count * p
    out = {}
    for x in range(N + 1):
        for y in range(N + 1 - x):
            v = total[x, y]
            if v:
                if v % code_size:
                    raise PropertyMismatch("MacWilliams transform produced a non-integral count")
                out[(N - x - y, x, y)] = int(v // code_size)
    return out


def _trinomial_power(e: int, cx: int, cy: int, N: int) -> np.ndarray:
    p = np.zeros((N + 1, N + 1), dtype=object)
    p[:] = 0
    for x in range(e + 1):
        for y in range(e + 1 - x):
            p[x, y] = comb(e, x) * comb(e - x, y) * cx ** x * cy ** y
    return p


def _mul_binomial_y(p: np.ndarray, e: int, N: int) -> np.ndarray:
    out = np.zeros_like(p)
    out[:] = 0
    for y in range(e + 1):
        c = comb(e, y) * (-1) ** y
        if y == 0:
            out += c * p
        else:
            out[:, y:] += c * p[:, :-y]
    return out


def _mul_poly(p: np.ndarray, q: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros_like(p)
    out[:] = 0
    for x, y in zip(*np.nonzero(q != 0)):
        c = q[x, y]
        out[x:, y:] += c * p[:N + 1 - x, :N + 1 - y]
    return out


def lee_distribution_from_swe(swe: dict[tuple[int, int, int], int]) -> WeightDistribution:
    hist: Counter = Counter()
    for (_, i1, i2), c in swe.items():
        hist[i1 + 2 * i2] += c
    return WeightDistribution(dict(hist))


def code_distribution_via_macwilliams(f: FuncTable, ring_ctx: RingCtx) -> WeightDistribution:
    """Lee distribution of C_f from the dual enumerator (no enumeration of C_f)."""
    swe = swe_of_dual(f, ring_ctx)
    return lee_distribution_from_swe(macwilliams_transform(swe, 4 ** (ring_ctx.n + 1)))


# ---------- the code C_f itself


def kernel_generator_matrix(H: np.ndarray) -> np.ndarray:
    """Generator matrix of {c : H c = 0} over Z4, assuming the kernel is free.

    Elimination uses unit pivots only; rows left over that are nonzero but
    entirely even mean the row module has 2-torsion and the kernel is not free.
    """
    H = np.array(H, dtype=np.int64) % 4
    rows, N = H.shape
    if N > MAX_KERNEL_N:
        raise GuardError(f"dense Z4 elimination limited to length {MAX_KERNEL_N}")
    M = H.copy()
    pivots = []
    r = 0
    for _ in range(rows):
        units = np.argwhere(M[r:] % 2 == 1)
        if len(units) == 0:
            break
        i, j = units[0]
        i += r
        M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * M[r, j]) % 4  # units are self-inverse mod 4
        for k in range(rows):
            if k != r and M[k, j]:
                M[k] = (M[k] - M[k, j] * M[r]) % 4
        pivots.append(j)
        r += 1
    if np.any(M[r:]):
        raise NonFreeCodeError("parity-check rows have 2-torsion; kernel is not free")
    free = [j for j in range(N) if j not in pivots]
    G = np.zeros((len(free), N), dtype=np.int64)
    for g, j in enumerate(free):
        G[g, j] = 1
        for p, pc in enumerate(pivots):
            G[g, pc] = (-M[p, j]) % 4
    if np.any((G @ H.T) % 4):
        raise AssertionError("generator matrix is not orthogonal to the parity check")
    return G


@dataclass
class Z4Code:
    generator: np.ndarray
    length: int = field(init=False)

    def __post_init__(self):
        self.length = self.generator.shape[1]

    @property
    def rank(self) -> int:
        return self.generator.shape[0]

    @property
    def size(self) -> int:
        return 4 ** self.rank

    def codewords(self) -> np.ndarray:
        k = self.rank
        if k > 10:
            raise GuardError("codeword enumeration limited to rank <= 10")
        coeffs = np.array(list(itertools.product(range(4), repeat=k)), dtype=np.int64).reshape(-1, k)
        return (coeffs @ self.generator) % 4


def code_Cf(f: FuncTable, ring_ctx: RingCtx) -> Z4Code:
    H = parity_check_Cf(f, ring_ctx).z4_matrix()
    G = kernel_generator_matrix(H)
    N = H.shape[1]
    if G.shape[0] != N - ring_ctx.n - 1:
        raise NonFreeCodeError(f"C_f has rank {G.shape[0]}, expected {N - ring_ctx.n - 1}")
    return Z4Code(G)


def code_lee_distribution(f: FuncTable, ring_ctx: RingCtx) -> WeightDistribution:
    words = code_Cf(f, ring_ctx).codewords()
    return WeightDistribution(Counter(LEE[words].sum(axis=1).tolist()))


def min_lee_distance_Cf(f: FuncTable, ring_ctx: RingCtx, route: str | None = None) -> int:
    """Minimum Lee weight of a nonzero codeword of C_f.

    route "enumerate" lists all of C_f (n = 3); route "macwilliams" transforms
    the dual enumerator (odd n <= 7).  Default: enumerate when possible.
    """
    n = ring_ctx.n
    if route is None:
        route = "enumerate" if n <= 3 else "macwilliams"
    if route == "enumerate":
        if n > 3:
            raise GuardError("direct enumeration of C_f only for n <= 3")
        return code_lee_distribution(f, ring_ctx).min_nonzero()
    if route == "macwilliams":
        if n > 7:
            raise GuardError("MacWilliams route limited to n <= 7")
        return code_distribution_via_macwilliams(f, ring_ctx).min_nonzero()
    raise ValueError(f"unknown route {route!r}")


def min_pairwise_hamming(words: np.ndarray) -> int:
    words = np.asarray(words, dtype=np.uint8)
    best = words.shape[1]
    for i in range(len(words) - 1):
        d = np.count_nonzero(words[i + 1:] != words[i], axis=1)
        best = min(best, int(d.min()))
    return best


def gray_code_params(f: FuncTable, ring_ctx: RingCtx, puncture: int | None = None) -> tuple[int, int, int]:
    """(length, size, minimum distance) of gray(C_f), optionally punctured at one bit position."""
    if ring_ctx.n > 3:
        raise GuardError("gray image enumeration only for n <= 3")
    words = gray_map(code_Cf(f, ring_ctx).codewords())
    if puncture is not None:
        if not 0 <= puncture < words.shape[1]:
            raise ValueError("puncture position out of range")
        words = np.delete(words, puncture, axis=1)
    size = len({w.tobytes() for w in words})
    return words.shape[1], size, min_pairwise_hamming(words)


def punctured_gray_params(f: FuncTable, ring_ctx: RingCtx, position: int = 0) -> tuple[int, int, int]:
    return gray_code_params(f, ring_ctx, puncture=position)


# ---------- the binary code D_f


def binary_Df(f: FuncTable) -> np.ndarray:
    """2n x (2^n - 1) binary parity-check matrix with columns (alpha^i, f(alpha^i))."""
    ctx = f.ctx
    if f(0) != 0:
        raise ValueError("D_f requires f(0) = 0")
    n = ctx.n
    cols = []
    for x in ctx.nonzero_by_power():
        v = x | (f(x) << n)
        cols.append([(v >> i) & 1 for i in range(2 * n)])
    return np.array(cols, dtype=np.uint8).T


def _column_ints(H: np.ndarray) -> list[int]:
    weights = 1 << np.arange(H.shape[0], dtype=object)
    return [int(sum(int(b) * w for b, w in zip(col, weights))) for col in H.T]


def min_hamming_distance_Df(f: FuncTable, max_weight: int = 6) -> int:
    """Smallest number of parity-check columns summing to zero (meet in the middle)."""
    if f.ctx.n < 2 or f.ctx.n > 8:
        raise GuardError("D_f distance search supports 2 <= n <= 8")
    cols = _column_ints(binary_Df(f))
    if len(set(cols)) != len(cols) or 0 in cols:
        raise AssertionError("parity-check columns are not distinct and nonzero")
    idx = range(len(cols))
    sums: dict[int, dict[int, list[frozenset]]] = {}

    def subset_sums(k):
        if k not in sums:
            table: dict[int, list[frozenset]] = {}
            for comb_ in itertools.combinations(idx, k):
                s = 0
                for i in comb_:
                    s ^= cols[i]
                table.setdefault(s, []).append(frozenset(comb_))
            sums[k] = table
        return sums[k]

    for w in range(3, max_weight + 1):
        lo, hi = w // 2, w - w // 2
        left, right = subset_sums(lo), subset_sums(hi)
        for s, subsets in left.items():
            for other in right.get(s, ()):
                for sub in subsets:
                    if not sub & other and sub != other:
                        return w
    raise AssertionError(f"no codeword of weight <= {max_weight}")
