"""Local graph search over the minimum-weight-codeword adjacency graph.

Vertices are codewords; two are adjacent when their Hamming distance equals
the minimum distance, so every neighbor of c is c xor w for a minimum
weight codeword w.  The search greedily walks to the best unvisited
neighbor by correlation and returns the best codeword seen on the path,
optionally restricted to candidates whose systematic message passes a CRC.
"""

from dataclasses import dataclass

import numpy as np

from . import gf2
from .construction import SubproductCode


@dataclass(frozen=True)
class CrcSpec:
    """Generator polynomial bits (MSB first, leading term included) and payload length."""

    poly: tuple
    message_len: int

    def __post_init__(self):
        if len(self.poly) < 2 or self.poly[0] != 1:
            raise ValueError("polynomial must start with its leading 1 coefficient")
        if any(b not in (0, 1) for b in self.poly):
            raise ValueError("polynomial bits must be 0/1")
        if self.message_len < 1:
            raise ValueError("message length must be positive")

    @property
    def width(self) -> int:
        return len(self.poly) - 1


def crc_spec_from_string(text: str, message_len: int) -> CrcSpec:
    """Parse a polynomial given as hex (0x..) or binary digits, leading term included."""
    text = text.strip().lower()
    if text.startswith("0x"):
        value = int(text, 16)
        bits = tuple(int(b) for b in bin(value)[2:])
    elif set(text) <= {"0", "1"}:
        bits = tuple(int(b) for b in text)
    else:
        raise ValueError(f"cannot parse CRC polynomial {text!r}")
    return CrcSpec(poly=bits, message_len=message_len)


def crc_remainder(bits, poly) -> np.ndarray:
    """Remainder of MSB-first polynomial division, zero initial remainder."""
    poly = np.asarray(poly, dtype=np.uint8)
    w = len(poly) - 1
    reg = gf2.as_bits(bits).copy()
    if len(reg) < w:
        raise ValueError("input shorter than the CRC width")
    for i in range(len(reg) - w):
        if reg[i]:
            reg[i : i + w + 1] ^= poly
    return reg[len(reg) - w :]


def crc_append(msg, spec: CrcSpec) -> np.ndarray:
    """Append the w remainder bits of msg * x^w to the message."""
    msg = gf2.as_bits(msg)
    if msg.shape != (spec.message_len,):
        raise ValueError(f"message must have length {spec.message_len}")
    shifted = np.concatenate([msg, np.zeros(spec.width, dtype=np.uint8)])
    return np.concatenate([msg, crc_remainder(shifted, spec.poly)])


def crc_check(bits, spec: CrcSpec) -> bool:
    bits = gf2.as_bits(bits)
    if bits.shape != (spec.message_len + spec.width,):
        raise ValueError(f"expected {spec.message_len + spec.width} bits")
    return not crc_remainder(bits, spec.poly).any()


def _syndrome_matrix(spec: CrcSpec) -> np.ndarray:
    """Columns are remainders of the unit vectors, so syndrome = S @ bits mod 2."""
    L = spec.message_len + spec.width
    S = np.empty((spec.width, L), dtype=np.uint8)
    for p in range(L):
        e = np.zeros(L, dtype=np.uint8)
        e[p] = 1
        S[:, p] = crc_remainder(e, spec.poly)
    return S


@dataclass
class SearchConfig:
    path_len: int
    crc: CrcSpec | None = None

    def __post_init__(self):
        if self.path_len < 0:
            raise ValueError("path length must be >= 0")


@dataclass
class SearchResult:
    codeword: np.ndarray
    correlation: float
    passed_crc: bool | None  # None when no CRC is configured
    steps: int


def _search_tables(code: SubproductCode):
    """Cached per-code arrays: min-weight rows, their bipolar form and message keys."""
    if "lgs" not in code._cache:
        W = code.min_weight_codewords()
        if gf2.rank(W) != code.dim:
            raise ValueError("minimum weight codewords do not span the code; search graph is disconnected")
        code._cache["lgs"] = (W, 1.0 - 2.0 * W.astype(np.float64), W[:, code.info_set].copy())
    return code._cache["lgs"]


def neighbors(code: SubproductCode, c) -> np.ndarray:
    """All codewords at distance exactly dmin from c, as rows."""
    c = gf2.as_bits(c)
    if not code.contains(c):
        raise ValueError("input is not a codeword")
    W, _, _ = _search_tables(code)
    return c[None, :] ^ W


def search(code: SubproductCode, start, llr, cfg: SearchConfig) -> SearchResult:
    """Greedy walk of up to path_len steps; returns the best codeword on the path.

    Neighbors are ranked by correlation with the LLRs; ties keep the first
    word in minimum-weight enumeration order.  With a CRC configured the
    best candidate is chosen among path codewords whose systematic message
    checks out; if none does the unfiltered best is returned with
    passed_crc=False (a detected error).
    """
    start = gf2.as_bits(start)
    if not code.contains(start):
        raise ValueError("start is not a codeword")
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape != (code.N,):
        raise ValueError(f"LLR vector must have length {code.N}")
    W, Wb, Wmsg = _search_tables(code)

    current = start.copy()
    cmsg = code.extract_message(current)
    signed = (1.0 - 2.0 * current.astype(np.float64)) * llr
    corr = float(signed.sum())

    syn_matrix = _syndrome_matrix(cfg.crc) if cfg.crc is not None else None

    def crc_ok(msg_bits):
        return not (gf2.mat_vec(syn_matrix, msg_bits)).any()

    best_corr, best_cw = corr, current.copy()
    best_crc_corr, best_crc_cw = -np.inf, None
    if syn_matrix is not None and crc_ok(cmsg):
        best_crc_corr, best_crc_cw = corr, current.copy()

    visited = {cmsg.tobytes()}
    steps = 0
    for _ in range(cfg.path_len):
        scores = Wb @ signed
        chosen = -1
        for idx in np.argsort(-scores, kind="stable"):
            if (cmsg ^ Wmsg[idx]).tobytes() not in visited:
                chosen = int(idx)
                break
        if chosen < 0:
            break  # every neighbor already visited
        current ^= W[chosen]
        cmsg ^= Wmsg[chosen]
        signed *= Wb[chosen]
        corr = float(scores[chosen])
        visited.add(cmsg.tobytes())
        steps += 1
        if corr > best_corr:
            best_corr, best_cw = corr, current.copy()
        if syn_matrix is not None and corr > best_crc_corr and crc_ok(cmsg):
            best_crc_corr, best_crc_cw = corr, current.copy()

    if syn_matrix is None:
        return SearchResult(codeword=best_cw, correlation=best_corr, passed_crc=None, steps=steps)
    if best_crc_cw is None:
        return SearchResult(codeword=best_cw, correlation=best_corr, passed_crc=False, steps=steps)
    return SearchResult(codeword=best_crc_cw, correlation=best_crc_corr, passed_crc=True, steps=steps)
