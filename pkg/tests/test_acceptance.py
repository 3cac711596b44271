"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``ACCEPTANCE <id> PASS|FAIL`` line (visible in a
plain ``pytest`` run) and then asserts the outcome, including its time budget.
"""

import math
import time

import numpy as np
import pytest

from planar2.curve import _xy, b_set, planar_curve_crosscheck, singular_points, special_factor_l1
from planar2.gf2 import binomial_parity, ctx_new
from planar2.gr4 import ring_ctx_for
from planar2.planar import FuncTable, is_apn, is_planar, is_power_of_two, search_planar_monomials
from planar2.rds import build_diffset, char_profile_check, verify_rds
from planar2.z4code import (code_distribution_via_macwilliams, code_lee_distribution,
                            dual_lee_distribution, expected_dual_distribution, gray_code_params,
                            min_hamming_distance_Df, min_lee_distance_Cf)


@pytest.fixture
def report(capsys):
    def emit(cid, title, ok, elapsed, budget, detail=""):
        ok = bool(ok) and elapsed < budget
        line = f"ACCEPTANCE {cid:>2} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s, budget {budget:g}s)"
        if detail:
            line += f"  {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def _dual(n, t=2, c=1):
    R = ring_ctx_for(n)
    return dual_lee_distribution(FuncTable.monomial(R.field_ctx, t, c), R)


def test_01_odd_table(report):
    t0 = time.perf_counter()
    ok3 = _dual(3) == {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}
    e3 = time.perf_counter() - t0
    ok5 = _dual(5) == {0: 1, 28: 1984, 32: 126, 36: 1984, 64: 1}
    e5 = time.perf_counter() - t0 - e3
    report(1, "dual Lee distribution, odd n = 3, 5", ok3 and ok5 and e3 < 1, e5, 30,
           f"n=3 took {e3:.3f}s")


def test_02_even_table(report):
    t0 = time.perf_counter()
    ok4 = _dual(4) == {0: 1, 12: 240, 16: 542, 20: 240, 32: 1}
    ok6 = _dual(6) == {0: 1, 56: 4032, 64: 8318, 72: 4032, 128: 1}
    report(2, "dual Lee distribution, even n = 4, 6", ok4 and ok6, time.perf_counter() - t0, 120)


@pytest.mark.xfail(strict=True, reason=(
    "unattainable at n = 4: c*x^12 with c outside F_4 is not planar, yet its dual has the planar "
    "Lee distribution (unit character sums 4+4i and 0 mix to the same multiset); n = 3 has no exceptions"))
def test_03_planar_iff_table(report):
    t0 = time.perf_counter()
    exceptions = []
    checked = 0
    for n in (3, 4):
        R = ring_ctx_for(n)
        F = R.field_ctx
        target = expected_dual_distribution(n)
        for t in range(F.order - 1):
            for c in range(1, F.order):
                f = FuncTable.monomial(F, t, c)
                match = dual_lee_distribution(f, R) == target
                checked += 1
                if match != is_planar(f, first_failure_only=True).planar:
                    exceptions.append((n, t, c))
    report(3, "table match iff planar, all monomials n = 3, 4", not exceptions,
           time.perf_counter() - t0, 600, f"{checked} functions, {len(exceptions)} exceptions "
           f"{sorted({(n, t) for n, t, _ in exceptions})}")


def test_04_min_lee(report):
    t0 = time.perf_counter()
    R = ring_ctx_for(3)
    F = R.field_ctx
    bad = []
    for t in range(F.order - 1):
        for c in range(1, F.order):
            f = FuncTable.monomial(F, t, c)
            d = min_lee_distance_Cf(f, R)
            want = 6 if is_planar(f).planar else 4
            if d != want:
                bad.append((t, c, d))
    report(4, "minimum Lee distance 6 / 4 at n = 3", not bad, time.perf_counter() - t0, 60,
           f"mismatches {bad}" if bad else "")


def test_05_gray_image(report):
    t0 = time.perf_counter()
    R = ring_ctx_for(3)
    f = FuncTable.zero(R.field_ctx)
    full = gray_code_params(f, R)
    punct = {gray_code_params(f, R, puncture=i) for i in range(16)}
    report(5, "gray image (16,256,6), punctured (15,256,5)",
           full == (16, 256, 6) and punct == {(15, 256, 5)}, time.perf_counter() - t0, 60)


def test_06_binary_df(report):
    t0 = time.perf_counter()
    F = ctx_new(4)
    cube, fifth = FuncTable.monomial(F, 3, 1), FuncTable.monomial(F, 5, 1)
    d3, d5 = min_hamming_distance_Df(cube), min_hamming_distance_Df(fifth)
    ok = is_apn(cube) and d3 == 5 and not is_apn(fifth) and d5 in (3, 4)
    report(6, "D_f distance: x^3 -> 5 (APN), x^5 -> 3 or 4", ok, time.perf_counter() - t0, 10,
           f"d(x^3)={d3} d(x^5)={d5}")


def test_07_monomial_search(report):
    t0 = time.perf_counter()
    r4 = dict(search_planar_monomials(4))
    ok = all(len(r4[t]) == 15 for t in (1, 2, 4, 8)) and 1 in r4[5]
    r6 = dict(search_planar_monomials(6))
    F6 = ctx_new(6)
    tr0 = [c for c in F6.subfield_elements(3) if c and F6.trace_abs(c, 3) == 0]
    ok &= bool(r6[20]) and set(tr0) <= set(r6[9])
    for n, res in ((4, r4), (6, r6)):
        q1 = (1 << n) - 1
        ok &= all(not cs or math.gcd(t - 2, q1) != 1 or is_power_of_two(t) for t, cs in res.items())
    report(7, "monomial search n = 4, 6 and the gcd filter", ok, time.perf_counter() - t0, 600)


def test_08_rds_equivalence(report):
    t0 = time.perf_counter()
    bad = 0
    total = 0

    def check(f, R):
        D = build_diffset(f, R)
        return verify_rds(D).is_rds == char_profile_check(D).ok == is_planar(f).planar

    R3 = ring_ctx_for(3)
    for t in range(R3.field_ctx.order - 1):
        for c in range(1, R3.field_ctx.order):
            total += 1
            bad += not check(FuncTable.monomial(R3.field_ctx, t, c), R3)
    rng = np.random.default_rng(2024)
    for n in (3, 4):
        R = ring_ctx_for(n)
        for _ in range(100):
            total += 1
            bad += not check(FuncTable(R.field_ctx, rng.integers(0, 1 << n, 1 << n)), R)
    report(8, "RDS = character profile = planar", bad == 0, time.perf_counter() - t0, 600,
           f"{total} functions, {bad} disagreements")


def test_09_teichmuller_field(report):
    t0 = time.perf_counter()
    ok = True
    for n in range(1, 5):
        R = ring_ctx_for(n)
        F = R.field_ctx
        G = R.gamma.tolist()
        idx = {x: i for i, x in enumerate(G)}
        A = np.array([[idx[R.oplus(x, y)] for y in G] for x in G])
        M = np.array([[idx[R.mul(x, y)] for y in G] for x in G])
        z, o = idx[0], idx[1]
        q = len(G)
        ok &= q == F.order and np.array_equal(A, A.T) and np.array_equal(M, M.T)
        for i in range(q):
            ok &= A[i, z] == i and M[i, o] == i and M[i, z] == z
            ok &= bool(np.any(A[i] == z)) and (i == z or bool(np.any(M[i] == o)))
            ok &= bool(np.all(A[A[i]] == A[i][A]))  # (x+y)+w vs x+(y+w), rows vectorised
            ok &= bool(np.all(M[M[i]] == M[i][M]))
            ok &= bool(np.all(M[i][A] == A[M[i]][:, M[i]]))
        for x in G:
            for y in G:
                ok &= R.gamma_to_field(R.oplus(x, y)) == R.gamma_to_field(x) ^ R.gamma_to_field(y)
                ok &= R.gamma_to_field(R.mul(x, y)) == F.mul(R.gamma_to_field(x), R.gamma_to_field(y))
    report(9, "Teichmuller set with oplus is a field, iso is a homomorphism", ok, time.perf_counter() - t0, 60)


@pytest.mark.parametrize("t,n", [(13, 6), (13, 8), (11, 6)])
def test_10_curve_suite(report, t, n):
    t0 = time.perf_counter()
    bs = b_set(n, t, 1)
    ok = bs.complete and bool(bs.elements)
    for a in bs.elements:
        rep = singular_points(t, a, n)
        j = rep.to_json()
        ok &= j["within_bounds"] and j["infinity_types_ok"] and j["affine_multiplicities_ok"] and j["search_complete"]
        ok &= all(p.cone.ok for p in rep.infinity + rep.affine)
        ctx = ctx_new(rep.M_infinity)
        ok &= all(ctx.pow(p.point.u, rep.l) == 1 for p in rep.infinity)
    report(10, f"curve suite (t, n) = ({t}, {n})", ok, time.perf_counter() - t0, 300,
           f"|B_n| = {len(bs.elements)}")


def test_11_special_factor(report):
    t0 = time.perf_counter()
    sf = special_factor_l1(2, 6)
    X, Y = _xy(ctx_new(6))
    ok = sf.a != 1 and sf.quotient * sf.factor == sf.F and sf.F == (X + Y) ** 3 + (sf.a ^ 1)
    report(11, "t = 5 factor X + Y + b at n = 6", ok, time.perf_counter() - t0, 1,
           f"a={sf.a:#x} b={sf.b:#x}")


def test_12_planarity_vs_curve(report):
    t0 = time.perf_counter()
    F = ctx_new(4)
    bad = [(t, c) for t in range(F.order - 1) for c in (1, F.alpha)
           if not planar_curve_crosscheck(t, c, 4)]
    report(12, "planar iff no off-diagonal points, n = 4", not bad, time.perf_counter() - t0, 300,
           f"mismatches {bad}" if bad else "")


def test_13_macwilliams(report):
    t0 = time.perf_counter()
    R = ring_ctx_for(3)
    F = R.field_ctx
    bad = [(t, c) for t in range(F.order - 1) for c in range(1, F.order)
           if code_distribution_via_macwilliams(FuncTable.monomial(F, t, c), R)
           != code_lee_distribution(FuncTable.monomial(F, t, c), R)]
    report(13, "MacWilliams route equals enumeration, n = 3", not bad, time.perf_counter() - t0, 300)


def test_14_lucas(report):
    t0 = time.perf_counter()
    ok = all(binomial_parity(m, k) == math.comb(m, k) % 2 for m in range(65) for k in range(m + 1))
    report(14, "binomial parity vs big integers, m <= 64", ok, time.perf_counter() - t0, 1)
