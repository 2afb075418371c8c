import itertools

import numpy as np
import pytest

from subprod import gf2


def test_kron_identity_factor():
    assert (gf2.kron([1], [1, 0, 1]) == [1, 0, 1]).all()


def test_kron_definition():
    assert (gf2.kron([1, 0], [1, 1]) == [1, 1, 0, 0]).all()


def test_kron_all_ones():
    assert (gf2.kron([1, 1, 1], [1, 1, 1]) == np.ones(9, dtype=np.uint8)).all()


def test_kron_associative_up_to_flattening():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.integers(0, 2, rng.integers(1, 5), dtype=np.uint8)
        b = rng.integers(0, 2, rng.integers(1, 5), dtype=np.uint8)
        c = rng.integers(0, 2, rng.integers(1, 5), dtype=np.uint8)
        assert (gf2.kron(gf2.kron(a, b), c) == gf2.kron(a, gf2.kron(b, c))).all()


def test_rank_identity():
    assert gf2.rank(np.eye(3, dtype=np.uint8)) == 3


def test_rank_zero():
    assert gf2.rank(np.zeros((2, 4), dtype=np.uint8)) == 0


def test_rank_dependent_rows():
    # third row equals the sum of the first two
    assert gf2.rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


def test_rank_invariant_under_row_permutation():
    rng = np.random.default_rng(1)
    for _ in range(20):
        M = rng.integers(0, 2, (5, 7), dtype=np.uint8)
        perm = rng.permutation(5)
        assert gf2.rank(M) == gf2.rank(M[perm])


def test_in_span_zero_vector():
    M = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    coeffs = gf2.span_coefficients(np.zeros(3, dtype=np.uint8), M)
    assert coeffs is not None and not coeffs.any()


def test_in_span_row_of_matrix():
    M = np.array([[1, 0, 1], [0, 1, 1]], dtype=np.uint8)
    coeffs = gf2.span_coefficients(M[0], M)
    assert (coeffs == [1, 0]).all()


def test_in_span_negative_case_exhaustive():
    M = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.uint8)
    v = np.array([1, 1, 1], dtype=np.uint8)
    assert not gf2.in_span(v, M)
    # exhaustive cross-check over all 4 combinations
    for a in itertools.product([0, 1], repeat=2):
        assert not np.array_equal(gf2.mat_mul(np.array([a], dtype=np.uint8), M)[0], v)


def test_span_coefficients_reproduce_vector():
    rng = np.random.default_rng(2)
    for _ in range(50):
        M = rng.integers(0, 2, (4, 6), dtype=np.uint8)
        v = gf2.mat_mul(rng.integers(0, 2, (1, 4), dtype=np.uint8), M)[0]
        coeffs = gf2.span_coefficients(v, M)
        assert coeffs is not None
        assert np.array_equal(gf2.mat_mul(coeffs[None, :], M)[0], v)


def test_in_span_dimension_mismatch():
    with pytest.raises(ValueError):
        gf2.in_span([1, 0], np.eye(3, dtype=np.uint8))


def test_nullspace_identity_is_empty():
    assert gf2.nullspace_basis(np.eye(4, dtype=np.uint8)).shape == (0, 4)


def test_nullspace_all_ones_row():
    ns = gf2.nullspace_basis([[1, 1]])
    assert ns.shape == (1, 2) and (ns[0] == [1, 1]).all()


def test_nullspace_of_small_code_generator():
    G = np.array([[1, 1, 1], [0, 1, 1]], dtype=np.uint8)
    ns = gf2.nullspace_basis(G)
    assert ns.shape == (1, 3)
    for cw in gf2.codebook(G):
        assert not gf2.mat_vec(ns, cw).any()


def test_nullspace_orthogonality_and_rank_sum():
    rng = np.random.default_rng(3)
    for _ in range(30):
        M = rng.integers(0, 2, (rng.integers(1, 6), rng.integers(2, 8)), dtype=np.uint8)
        ns = gf2.nullspace_basis(M)
        assert not gf2.mat_mul(M, ns.T).any()
        assert gf2.rank(ns) + gf2.rank(M) == M.shape[1]


def test_rref_pivots_deterministic():
    R, piv = gf2.rref([[0, 1, 1], [1, 1, 0]])
    assert piv == [0, 1]
    assert (R[:, piv] == np.eye(2, dtype=np.uint8)).all()


def test_inverse():
    rng = np.random.default_rng(4)
    found = 0
    while found < 10:
        M = rng.integers(0, 2, (4, 4), dtype=np.uint8)
        if gf2.rank(M) < 4:
            continue
        found += 1
        assert (gf2.mat_mul(M, gf2.inverse(M)) == np.eye(4, dtype=np.uint8)).all()


def test_codebook_lexicographic():
    G = np.array([[1, 1, 1], [0, 1, 1]], dtype=np.uint8)
    cb = gf2.codebook(G)
    assert cb.shape == (4, 3)
    assert (cb[0] == 0).all()
    assert (cb[1] == G[1]).all()  # message (0,1)
    assert (cb[2] == G[0]).all()  # message (1,0)
