import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ntrunc import exactla as la

primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_side=5):
    p = draw(primes)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def test_rref_identity():
    R, piv, r = la.rref(la.identity(2), 5)
    assert np.array_equal(R, la.identity(2)) and piv == [0, 1] and r == 2


def test_rref_zero():
    R, piv, r = la.rref(la.zeros(3, 2), 5)
    assert not R.any() and piv == [] and r == 0


def test_rref_rank_one_example():
    R, piv, r = la.rref([[1, 2], [2, 4]], 5)
    assert R.tolist() == [[1, 2], [0, 0]] and r == 1


def test_kernel_examples():
    assert la.kernel_basis(la.identity(3), 5).shape == (3, 0)
    assert np.array_equal(la.kernel_basis(la.zeros(2, 3), 5), la.identity(3))
    K = la.kernel_basis([[1, 2]], 5)
    assert K.shape == (2, 1)
    # unique up to scale: (3, 1)
    v = K[:, 0] * la.inverse([[K[1, 0]]], 5)[0, 0] % 5
    assert v.tolist() == [3, 1]


def test_solve_examples():
    B = np.array([[1, 2], [3, 4]])
    assert np.array_equal(la.solve_linear(la.identity(2), B, 5), B)
    assert la.solve_linear(la.zeros(2, 2), [[1], [0]], 5) is None
    assert la.solve_linear([[2]], [[3]], 5).tolist() == [[4]]


def test_subquotient_examples():
    full = la.subquotient(3, la.identity(3), la.zeros(3, 0), 5)
    assert full.dim == 3
    same = la.subquotient(2, [[1], [1]], [[2], [2]], 5)
    assert same.dim == 0
    sq = la.subquotient(2, la.identity(2), [[1], [0]], 2)
    assert sq.dim == 1
    # the class of e2 generates
    assert sq.proj @ np.array([0, 1]) % 2 != 0
    assert (sq.proj @ np.array([1, 0]) % 2 == 0).all()


def test_subquotient_empty_ambient():
    sq = la.subquotient(0, la.zeros(0, 0), la.zeros(0, 0), 3)
    assert sq.dim == 0


def test_subquotient_rejects_bad_inside():
    with pytest.raises(ValueError):
        la.subquotient(2, [[1], [0]], [[0], [1]], 5)


def test_subquotient_cosets_by_enumeration():
    # over F_2, count cosets of inside in sub directly
    p = 2
    rng = np.random.default_rng(7)
    for _ in range(20):
        sub = la.random_matrix(rng, 3, 2, p)
        inside = la.matmul(sub, la.random_matrix(rng, 2, 1, p), p)
        vecs = {tuple(la.matmul(sub, np.array(c).reshape(-1, 1), p)[:, 0])
                for c in itertools.product(range(p), repeat=2)}
        ins = {tuple(la.matmul(inside, np.array(c).reshape(-1, 1), p)[:, 0]) for c in range(p)}
        assert len(vecs) // len(ins) == p ** la.subquotient(3, sub, inside, p).dim


def test_check_prime():
    assert la.check_prime(7) == 7
    for bad in (1, 4, 9, 0, -3):
        with pytest.raises(ValueError):
            la.check_prime(bad)


def test_random_invertible(rng):
    for n in range(4):
        M = la.random_invertible(rng, n, 3)
        assert la.rank(M, 3) == n


@given(matrices())
def test_rank_nullity(mp):
    M, p = mp
    assert la.rank(M, p) + la.kernel_basis(M, p).shape[1] == M.shape[1]
    assert not la.matmul(M, la.kernel_basis(M, p), p).any()


@given(matrices())
def test_rref_idempotent(mp):
    M, p = mp
    R, piv, r = la.rref(M, p)
    R2, piv2, r2 = la.rref(R, p)
    assert np.array_equal(R, R2) and piv == piv2 and r == r2 == len(piv)


@given(matrices(), st.data())
def test_solve_agrees_with_rank(mp, data):
    M, p = mp
    vals = data.draw(st.lists(st.integers(0, p - 1), min_size=M.shape[0], max_size=M.shape[0]))
    b = np.array(vals, dtype=np.int64).reshape(-1, 1)
    x = la.solve_linear(M, b, p)
    solvable = la.rank(np.hstack([M, b]), p) == la.rank(M, p)
    assert (x is not None) == solvable
    if x is not None:
        assert np.array_equal(la.matmul(M, x, p), b % p)


@given(matrices())
def test_column_space_and_inverse(mp):
    M, p = mp
    C = la.column_space_basis(M, p)
    assert C.shape[1] == la.rank(M, p)
    if M.shape[0] == M.shape[1]:
        inv = la.inverse(M, p)
        assert (inv is not None) == (la.rank(M, p) == M.shape[0])
        if inv is not None:
            assert np.array_equal(la.matmul(M, inv, p), la.identity(M.shape[0]))


@given(matrices(), st.integers(0, 2**31))
def test_affine_samples_are_solutions(mp, seed):
    M, p = mp
    b = la.matmul(M, la.random_matrix(np.random.default_rng(seed), M.shape[1], 1, p), p)
    sol = la.solve_affine(M, b, p)
    assert sol is not None
    x = sol.sample(np.random.default_rng(seed), p)
    assert np.array_equal(la.matmul(M, x, p), b)


def test_matmul_large_prime_matches_python_ints(rng):
    p = 2147483647
    A = rng.integers(0, p, size=(3, 40), dtype=np.int64)
    B = rng.integers(0, p, size=(40, 2), dtype=np.int64)
    want = [[sum(int(A[i, k]) * int(B[k, j]) for k in range(40)) % p for j in range(2)] for i in range(3)]
    assert la.matmul(A, B, p).tolist() == want
