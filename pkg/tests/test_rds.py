from collections import Counter

import numpy as np
import pytest

from planar2.errors import ContextMismatch, GuardError
from planar2.gf2 import ctx_new
from planar2.gr4 import ring_ctx_for
from planar2.planar import FuncTable, is_planar
from planar2.rds import (GaussianInt, build_diffset, char_profile_check, char_sum, char_sums,
                         jacobi_decomposition_check, rds_report, verify_rds)


def rds_by_counter(R, codes):
    """Parameters checked with a plain Counter over all ordered pairs."""
    diffs = Counter(R.sub(x, y) for x in codes for y in codes if x != y)
    for y in range(1, R.size):
        want = 1 if R.is_unit(y) else 0
        if diffs.get(y, 0) != want:
            return False
    return True


def test_zero_function_gives_gamma():
    R = ring_ctx_for(3)
    D = build_diffset(FuncTable.zero(R.field_ctx), R)
    assert D.elements == set(R.gamma.tolist())


def test_identity_on_r1():
    R = ring_ctx_for(1)
    D = build_diffset(FuncTable.monomial(R.field_ctx, 1, 1), R)
    assert D.elements == {0, R.from_coeffs([3])}


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        build_diffset(FuncTable.zero(ctx_new(3)), ring_ctx_for(4))


def test_verify_examples():
    R3 = ring_ctx_for(3)
    rep = verify_rds(build_diffset(FuncTable.zero(R3.field_ctx), R3))
    assert rep.is_rds and rep.difference_count == 8 * 7
    R2 = ring_ctx_for(2)
    assert not verify_rds(build_diffset(FuncTable.monomial(R2.field_ctx, 3, 1), R2)).is_rds
    with pytest.raises(GuardError):
        verify_rds(build_diffset(FuncTable.zero(ctx_new(7)), ring_ctx_for(7)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_three_way_equivalence_on_monomials(n):
    R = ring_ctx_for(n)
    F = R.field_ctx
    for t in range(1, F.order - 1):
        for c in range(1, F.order):
            f = FuncTable.monomial(F, t, c)
            D = build_diffset(f, R)
            a = verify_rds(D).is_rds
            assert a == char_profile_check(D).ok == is_planar(f).planar


@pytest.mark.parametrize("n", [2, 3])
def test_verify_rds_matches_counter(n):
    R = ring_ctx_for(n)
    rng = np.random.default_rng(n)
    for _ in range(15):
        f = FuncTable(R.field_ctx, rng.integers(0, 1 << n, 1 << n))
        D = build_diffset(f, R)
        assert verify_rds(D).is_rds == rds_by_counter(R, D.codes.tolist())


def test_char_sum_examples():
    R = ring_ctx_for(3)
    D = build_diffset(FuncTable.zero(R.field_ctx), R)
    assert char_sum(D, 0) == GaussianInt(8, 0)
    for a in range(R.size):
        s = char_sum(D, a)
        if a == 0:
            continue
        if R.is_unit(a):
            assert s.norm() == 8
        else:
            assert s == GaussianInt(0, 0)


def test_vector_sums_match_scalar():
    R = ring_ctx_for(3)
    D = build_diffset(FuncTable.monomial(R.field_ctx, 3, 2), R)
    re, im = char_sums(D)
    for a in range(R.size):
        assert GaussianInt(int(re[a]), int(im[a])) == char_sum(D, a)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_parseval(n):
    R = ring_ctx_for(n)
    rng = np.random.default_rng(0)
    f = FuncTable(R.field_ctx, rng.integers(0, 1 << n, 1 << n))
    re, im = char_sums(build_diffset(f, R))
    assert int(np.sum(re * re + im * im)) == 8 ** n


def test_profile_reports_failures():
    R = ring_ctx_for(3)
    rep = char_profile_check(build_diffset(FuncTable.monomial(R.field_ctx, 3, 1), R))
    assert not rep.ok and rep.failing_a
    ok = char_profile_check(build_diffset(FuncTable.monomial(R.field_ctx, 2, 1), R))
    assert ok.ok and ok.histogram == {"4^n": 1, "0": 7, "2^n": 56}


def test_jacobi_shapes():
    assert jacobi_decomposition_check(GaussianInt(2, 2), 3) == "odd"
    assert jacobi_decomposition_check(GaussianInt(4, 0), 4) == "even"
    with pytest.raises(ValueError):
        jacobi_decomposition_check(GaussianInt(1, 2), 3)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_planar_sums_have_jacobi_shape(n):
    R = ring_ctx_for(n)
    D = build_diffset(FuncTable.monomial(R.field_ctx, 2, 1), R)
    codes = R.all_codes()
    units = codes[(codes & ((1 << n) - 1)) != 0]
    re, im = char_sums(D, units)
    expect = "odd" if n % 2 else "even"
    for x, y in zip(re.tolist(), im.tolist()):
        assert jacobi_decomposition_check(GaussianInt(x, y), n) == expect


def test_gaussian_arithmetic():
    z = GaussianInt(1, 2)
    assert z * z.conj() == GaussianInt(5, 0)
    assert z.times_w_power(1) == GaussianInt(-2, 1)
    assert z.times_w_power(4) == z
    assert GaussianInt.from_residue_counts([3, 1, 1, 0]) == GaussianInt(2, 1)


def test_report_json():
    R = ring_ctx_for(3)
    rep = rds_report(FuncTable.monomial(R.field_ctx, 2, 1), R)
    assert rep["planar_equiv"] and rep["is_rds"] and rep["failing_a"] == []
