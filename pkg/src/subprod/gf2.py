"""GF(2) vector/matrix algebra: Kronecker products, rank, span membership, nullspace.

Vectors and matrices are plain numpy arrays of dtype uint8 holding 0/1
entries.  All routines are pure functions on their inputs.
"""

import numpy as np


def as_bits(x) -> np.ndarray:
    """Coerce to a uint8 array and check every entry is 0 or 1."""
    a = np.asarray(x, dtype=np.uint8)
    if a.size and a.max() > 1:
        raise ValueError("entries must be 0 or 1")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product of two bit vectors: entry i*len(b)+j equals a_i*b_j."""
    a = as_bits(a)
    b = as_bits(b)
    return np.kron(a, b)


def mat_vec(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """M @ v over GF(2)."""
    # uint8 matmul wraps mod 256, which preserves parity
    return (np.asarray(M, dtype=np.uint8) @ np.asarray(v, dtype=np.uint8)) & 1


def mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A @ B over GF(2)."""
    return (np.asarray(A, dtype=np.uint8) @ np.asarray(B, dtype=np.uint8)) & 1


def rref(M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Pivoting is deterministic: leftmost nonzero column, lowest row index.
    Returns (R, pivot_columns) where R has the zero rows removed, so R has
    rank(M) rows and R[:, pivot_columns] is the identity.
    """
    A = as_bits(M).copy()
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(A[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] ^= A[r]
        pivots.append(c)
        r += 1
    return A[:r].copy(), pivots


def rank(M) -> int:
    """GF(2) row rank."""
    return rref(M)[0].shape[0]


def span_coefficients(v, M):
    """Coefficients a with a @ M == v over GF(2), or None if v is not in rowspace(M)."""
    M = as_bits(M)
    v = as_bits(v)
    if M.ndim != 2 or v.ndim != 1 or v.shape[0] != M.shape[1]:
        raise ValueError("dimension mismatch: v must have len == cols(M)")
    m, n = M.shape
    # Augment with identity to track row combinations through elimination.
    aug = np.concatenate([M.copy(), np.eye(m, dtype=np.uint8)], axis=1)
    r = 0
    piv_cols: list[int] = []
    for c in range(n):
        if r == m:
            break
        hits = np.nonzero(aug[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            aug[[r, p]] = aug[[p, r]]
        others = np.nonzero(aug[:, c])[0]
        others = others[others != r]
        if others.size:
            aug[others] ^= aug[r]
        piv_cols.append(c)
        r += 1
    coeffs = np.zeros(m, dtype=np.uint8)
    residual = v.copy()
    for row, c in enumerate(piv_cols):
        if residual[c]:
            residual ^= aug[row, :n]
            coeffs ^= aug[row, n:]
    if residual.any():
        return None
    return coeffs


def in_span(v, M) -> bool:
    """True iff v lies in the GF(2) rowspace of M."""
    return span_coefficients(v, M) is not None


def nullspace_basis(M) -> np.ndarray:
    """Basis (as rows) of {x : M @ x == 0} over GF(2).

    Row count is cols(M) - rank(M); a rank-deficient-free M yields an empty
    (0, cols) array.
    """
    M = as_bits(M)
    R, pivots = rref(M)
    n = M.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            basis[:, pivots] = R[:, free].T
    return basis


def inverse(M) -> np.ndarray:
    """Inverse of a square invertible GF(2) matrix."""
    M = as_bits(M)
    k = M.shape[0]
    if M.ndim != 2 or M.shape[1] != k:
        raise ValueError("expected a square matrix")
    aug = np.concatenate([M.copy(), np.eye(k, dtype=np.uint8)], axis=1)
    R, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise ValueError("matrix is singular over GF(2)")
    return R[:, k:].copy()


def all_messages(k: int) -> np.ndarray:
    """All 2^k binary k-tuples as rows, in lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint64)
    return ((np.arange(2**k, dtype=np.uint64)[:, None] >> shifts) & 1).astype(np.uint8)


def codebook(G) -> np.ndarray:
    """All codewords msg @ G as rows, messages in lexicographic order."""
    G = as_bits(G)
    return mat_mul(all_messages(G.shape[0]), G)
