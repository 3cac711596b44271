import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planar2.gf2 import ctx_new
from planar2.gr4 import graeffe_lift, ring_ctx_for


def z4_polymul_mod(a, b, h):
    """Schoolbook product of coefficient lists mod 4, reduced by the monic h."""
    n = len(h) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % 4
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for i in range(n + 1):
                prod[d - n + i] = (prod[d - n + i] - c * h[i]) % 4
    return prod[:n]


def test_lift_reduces_to_field_modulus():
    for n in range(1, 13):
        h = graeffe_lift(ctx_new(n).modulus)
        assert len(h) == n + 1 and h[-1] == 1
        bits = sum((c % 2) << i for i, c in enumerate(h))
        assert bits == ctx_new(n).modulus


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lift_divides_x_to_the_group_order_minus_one(n):
    h = graeffe_lift(ctx_new(n).modulus)
    q1 = (1 << n) - 1
    x = [0, 1] + [0] * (n - 2) if n > 1 else [(-h[0]) % 4]
    acc = [1] + [0] * (n - 1)
    for _ in range(q1):
        acc = z4_polymul_mod(acc, x, h)
    assert acc == [1] + [0] * (n - 1)


def test_frozen_lifts():
    assert graeffe_lift(ctx_new(3).modulus) == [3, 1, 2, 1]
    assert graeffe_lift(ctx_new(4).modulus) == [1, 3, 2, 0, 1]


def test_r1_is_z4():
    R = ring_ctx_for(1)
    assert R.size == 4
    assert sorted(R.gamma.tolist()) == [0, 1]
    assert R.trace_basis == [1]
    for y in range(4):
        assert R.trace_T(R.from_coeffs([y])) == y
    assert R.decompose(R.from_coeffs([3])) == (1, 1)


def test_small_gamma_sets():
    R2 = ring_ctx_for(2)
    assert len(R2.gamma) == 4 and R2.pow(R2.beta, 3) == 1
    R3 = ring_ctx_for(3)
    assert len(set(R3.gamma.tolist())) == 8
    for x in R3.gamma.tolist():
        assert R3.pow(x, 8) == x


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_multiplication_matches_schoolbook(n):
    R = ring_ctx_for(n)
    h = R.lifted_modulus
    rng = random.Random(n)
    for _ in range(300):
        a, b = rng.randrange(R.size), rng.randrange(R.size)
        assert R.coeffs(R.mul(a, b)) == z4_polymul_mod(R.coeffs(a), R.coeffs(b), h)
        assert R.coeffs(R.add(a, b)) == [(x + y) % 4 for x, y in zip(R.coeffs(a), R.coeffs(b))]


def test_vectorised_ops_match_scalar():
    R = ring_ctx_for(3)
    a = R.all_codes()
    b = (a * 7 + 3) % R.size
    assert R.mul(a, b).tolist() == [R.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert R.trace_T(a).tolist() == [R.trace_T(int(x)) for x in a]


def test_basic_ring_identities():
    R = ring_ctx_for(4)
    for x in range(0, R.size, 7):
        assert R.add(x, R.neg(x)) == 0
        assert R.times2(R.times2(x)) == 0
    q1 = 15
    assert R.mul(R.beta, R.pow(R.beta, q1 - 1)) == 1


def test_teich_sqrt_examples():
    R = ring_ctx_for(3)
    b = R.beta
    assert R.teich_sqrt(0) == 0 and R.teich_sqrt(1) == 1
    assert R.teich_sqrt(R.pow(b, 2)) == b
    assert R.teich_sqrt(R.pow(b, 5)) == R.pow(b, 6)
    with pytest.raises(ValueError):
        R.teich_sqrt(R.from_coeffs([2, 0, 0]))


@pytest.mark.parametrize("n", range(1, 9))
def test_teich_sqrt_squares_back(n):
    R = ring_ctx_for(n)
    for x in R.gamma.tolist():
        s = R.teich_sqrt(x)
        assert R.in_gamma(s) and R.mul(s, s) == x


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oplus_field_axioms_exhaustive(n):
    R = ring_ctx_for(n)
    G = R.gamma.tolist()
    idx = {x: i for i, x in enumerate(G)}
    q = len(G)
    A = np.array([[idx[R.oplus(x, y)] for y in G] for x in G])
    M = np.array([[idx[R.mul(x, y)] for y in G] for x in G])
    zero, one = idx[0], idx[1]
    assert np.array_equal(A, A.T) and np.array_equal(M, M.T)
    for i in range(q):
        assert A[i, zero] == i and A[i, i] == zero and M[i, one] == i
        if i != zero:
            assert one in M[i]
        for j in range(q):
            for k in range(q):
                assert A[A[i, j], k] == A[i, A[j, k]]
                assert M[M[i, j], k] == M[i, M[j, k]]
                assert M[i, A[j, k]] == A[M[i, j], M[i, k]]


@pytest.mark.parametrize("n", [5, 6, 8])
def test_oplus_field_axioms_sampled(n):
    R = ring_ctx_for(n)
    G = R.gamma.tolist()
    rng = random.Random(n)
    for _ in range(2000):
        x, y, z = (rng.choice(G) for _ in range(3))
        assert R.oplus(R.oplus(x, y), z) == R.oplus(x, R.oplus(y, z))
        assert R.mul(x, R.oplus(y, z)) == R.oplus(R.mul(x, y), R.mul(x, z))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_iso_is_a_field_isomorphism(n):
    R = ring_ctx_for(n)
    F = R.field_ctx
    G = R.gamma.tolist()
    assert R.gamma_to_field(0) == 0 and R.gamma_to_field(1) == 1
    assert R.gamma_to_field(R.beta) == F.alpha
    for x in G:
        assert R.field_to_gamma(R.gamma_to_field(x)) == x
        # equals reduction mod 2
        assert R.gamma_to_field(x) == x & F.mask
        for y in G:
            assert R.gamma_to_field(R.oplus(x, y)) == R.gamma_to_field(x) ^ R.gamma_to_field(y)
            assert R.gamma_to_field(R.mul(x, y)) == F.mul(R.gamma_to_field(x), R.gamma_to_field(y))


def test_oplus_n2_matches_field_sum():
    R = ring_ctx_for(2)
    F = R.field_ctx
    assert R.oplus(1, R.beta) == R.field_to_gamma(1 ^ F.alpha)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_decompose_round_trip(n):
    R = ring_ctx_for(n)
    G = R.gamma.tolist()
    for a in G:
        for b in G:
            assert R.decompose(R.add(a, R.times2(b))) == (a, b)
    assert R.decompose(0) == (0, 0)
    assert R.decompose(R.times2(R.beta)) == (0, R.beta)


def test_frobenius_and_trace():
    R = ring_ctx_for(3)
    assert R.trace_T(1) == 3
    for y in range(R.size):
        z = y
        for _ in range(3):
            z = R.frobenius(z)
        assert z == y
        assert R.trace_T(R.frobenius(y)) == R.trace_T(y)
        assert R.trace_T(y) == R.trace_slow(y)
    for x in R.gamma.tolist():
        assert R.frobenius(x) == R.mul(x, x)


@settings(max_examples=100)
@given(st.integers(0, 4 ** 5 - 1), st.integers(0, 4 ** 5 - 1))
def test_trace_additive_and_frobenius_multiplicative(a, b):
    R = ring_ctx_for(5)
    assert R.trace_T(R.add(a, b)) == (R.trace_T(a) + R.trace_T(b)) % 4
    assert R.frobenius(R.mul(a, b)) == R.mul(R.frobenius(a), R.frobenius(b))
    assert R.trace_T(a) == R.trace_slow(a)


def test_additive_characters_distinct():
    for n in (1, 2, 3):
        R = ring_ctx_for(n)
        codes = R.all_codes()
        tables = {tuple(R.trace_T(R.mul(codes, a)).tolist()) for a in range(R.size)}
        assert len(tables) == R.size


def test_dump_and_format():
    R = ring_ctx_for(3)
    d = R.dump()
    assert d["lifted_modulus"] == [3, 1, 2, 1] and d["field_modulus"] == "0xb"
    assert R.parse(R.format(123 % R.size)) == 123 % R.size
    with pytest.raises(ValueError):
        R.parse("4,0,0")


def test_ring_element_wrapper():
    R = ring_ctx_for(2)
    x = R.element(R.beta)
    assert (x * x * x).code == 1
    assert (x + x + x + x).code == 0
