"""Decoders for first-order codes: recursive ML, partial LLRs, max-log-MAP.

The length-n^m LLR vector is split into n^{m-1} blocks of n entries; block j
belongs to coordinate j of the order-1 code with m-1 factors.  The recursive
decoders walk this split once per subcode word, so the recursion over m is
evaluated as a batch of LLR vectors per level (identical outputs to the
plain recursion, one numpy pass per level).
"""

from dataclasses import dataclass

import numpy as np

from .construction import BaseCode


@dataclass
class MlResult:
    """ML codeword in bipolar form together with its correlation metric."""

    bipolar: np.ndarray
    metric: float

    @property
    def bits(self) -> np.ndarray:
        return (self.bipolar < 0).astype(np.uint8)


@dataclass
class PartialLlrs:
    """Per-coordinate best correlations under each bit hypothesis.

    lplus[i] (lminus[i]) is the largest codeword correlation among codewords
    whose bipolar value at coordinate i is +1 (-1).
    """

    lplus: np.ndarray
    lminus: np.ndarray


def brute_ml(codebook, llr) -> MlResult:
    """Exhaustive correlation maximization; ties go to the lowest codebook index."""
    B = np.asarray(codebook, dtype=np.uint8)
    if B.ndim != 2 or B.shape[0] == 0:
        raise ValueError("codebook must be a nonempty matrix of codewords")
    llr = np.asarray(llr, dtype=np.float64)
    bip = 1.0 - 2.0 * B.astype(np.float64)
    metrics = bip @ llr
    best = int(np.argmax(metrics))
    return MlResult(bipolar=bip[best].copy(), metric=float(metrics[best]))


def projected_llr(llr, a) -> np.ndarray:
    """Fold an n^t-length LLR vector against a subcode word a of length n."""
    a = np.asarray(a, dtype=np.uint8)
    llr = np.asarray(llr, dtype=np.float64)
    n = a.shape[0]
    if llr.size % n != 0:
        raise ValueError("LLR length must be a multiple of len(a)")
    ab = 1.0 - 2.0 * a.astype(np.float64)
    return llr.reshape(-1, n) @ ab


def _fast_ml_batch(base: BaseCode, m: int, L: np.ndarray):
    """Vectorized Algorithm-1 recursion over a batch of LLR vectors.

    Returns (metrics, bipolar codewords).  The subcode is scanned in
    lexicographic message order and ties keep the first maximum, matching
    the sequential recursion exactly.
    """
    n = base.n
    A = base.subcode_bipolar  # (2^(k-1), n)
    nsub = A.shape[0]
    B = L.shape[0]
    if m == 1:
        # Half-codebook trick: the complement of every codeword is a codeword,
        # so correlations against the subcode words determine everything.
        T = L @ A.T  # (B, nsub)
        absT = np.abs(T)
        best = np.argmax(absT, axis=1)
        t = T[np.arange(B), best]
        sign = np.where(t >= 0.0, 1.0, -1.0)
        return absT[np.arange(B), best], sign[:, None] * A[best]
    folded = L.reshape(B, -1, n) @ A.T  # (B, J, nsub)
    child = np.ascontiguousarray(np.swapaxes(folded, 1, 2)).reshape(B * nsub, -1)
    cmetrics, cwords = _fast_ml_batch(base, m - 1, child)
    cmetrics = cmetrics.reshape(B, nsub)
    best = np.argmax(cmetrics, axis=1)
    d = cwords.reshape(B, nsub, -1)[np.arange(B), best]  # (B, n^(m-1))
    ab = A[best]  # (B, n)
    return cmetrics[np.arange(B), best], (d[:, :, None] * ab[:, None, :]).reshape(B, -1)


def fast_ml(base: BaseCode, m: int, llr) -> MlResult:
    """ML decoding of the order-1 code with m factors by recursive folding."""
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape != (base.n**m,):
        raise ValueError(f"LLR vector must have length {base.n**m}")
    metrics, words = _fast_ml_batch(base, m, llr[None, :])
    return MlResult(bipolar=words[0], metric=float(metrics[0]))


def _codebook_partials(bip_codebook: np.ndarray, L: np.ndarray):
    """Brute-force partial LLRs over an explicit bipolar codebook, batched."""
    metrics = L @ bip_codebook.T  # (B, V)
    n = bip_codebook.shape[1]
    B = L.shape[0]
    lp = np.empty((B, n))
    lm = np.empty((B, n))
    for i in range(n):
        plus = bip_codebook[:, i] > 0
        lp[:, i] = metrics[:, plus].max(axis=1)
        lm[:, i] = metrics[:, ~plus].max(axis=1)
    return lp, lm


def _partials_batch(base: BaseCode, m: int, L: np.ndarray):
    """Vectorized Algorithm-2 recursion; returns (lplus, lminus) per batch row."""
    n = base.n
    if m == 1:
        return _codebook_partials(base.codewords_bipolar, L)
    A = base.subcode_bipolar
    bits = base.subcode_words  # (nsub, n)
    nsub = A.shape[0]
    B = L.shape[0]
    folded = L.reshape(B, -1, n) @ A.T  # (B, J, nsub)
    child = np.ascontiguousarray(np.swapaxes(folded, 1, 2)).reshape(B * nsub, -1)
    clp, clm = _partials_batch(base, m - 1, child)
    J = clp.shape[1]
    clp = clp.reshape(B, nsub, J)
    clm = clm.reshape(B, nsub, J)
    # select the child hypothesis matching the sign contributed by a_i
    zero = bits[None, :, None, :] == 0  # (1, nsub, 1, n)
    lp = np.where(zero, clp[:, :, :, None], clm[:, :, :, None]).max(axis=1)
    lm = np.where(zero, clm[:, :, :, None], clp[:, :, :, None]).max(axis=1)
    return lp.reshape(B, J * n), lm.reshape(B, J * n)


def partial_llrs(base: BaseCode, m: int, llr) -> PartialLlrs:
    """Partial LLRs L^{(+1)}, L^{(-1)} for every coordinate of the order-1 code."""
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape != (base.n**m,):
        raise ValueError(f"LLR vector must have length {base.n**m}")
    lp, lm = _partials_batch(base, m, llr[None, :])
    return PartialLlrs(lplus=lp[0], lminus=lm[0])


def max_log_map(base: BaseCode, m: int, llr) -> np.ndarray:
    """Soft outputs (L^{(+1)} - L^{(-1)}) / 2 for every coordinate."""
    p = partial_llrs(base, m, llr)
    return 0.5 * (p.lplus - p.lminus)


def max_log_map_batch(base: BaseCode, m: int, L: np.ndarray) -> np.ndarray:
    """Batched soft outputs; rows of L are independent LLR vectors."""
    L = np.asarray(L, dtype=np.float64)
    lp, lm = _partials_batch(base, m, L)
    return 0.5 * (lp - lm)


def codebook_max_log_map(codebook, L: np.ndarray) -> np.ndarray:
    """Brute-force soft outputs over an explicit codebook, batched over rows of L."""
    B = np.asarray(codebook, dtype=np.uint8)
    bip = 1.0 - 2.0 * B.astype(np.float64)
    L = np.asarray(L, dtype=np.float64)
    single = L.ndim == 1
    if single:
        L = L[None, :]
    lp, lm = _codebook_partials(bip, L)
    out = 0.5 * (lp - lm)
    return out[0] if single else out
