"""Construction of base codes and recursive subproduct codes.

A base code is an [n, k, d] binary linear code containing the all-ones
word.  The order-r, m-factor subproduct code is generated by all Kronecker
products g_{j0} x ... x g_{j,m-1} over index tuples j of weight <= r, where
row 0 of the base generator is the all-ones word and rows 1..k-1 generate a
subcode that excludes it.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import gf2

# Refuse to materialize generator matrices beyond this length by default.
DEFAULT_MAX_LENGTH = 2**22

# Exhaustive codebook enumeration (distance, min-weight sets) is limited to
# dimensions where 2^dim codewords are cheap to scan.
MAX_EXHAUSTIVE_DIM = 20


@dataclass
class BaseCode:
    """An [n, k, d] seed code with distinguished all-ones row.

    G has row 0 equal to the all-ones vector; Gsub holds rows 1..k-1 and
    generates a (k-1)-dimensional subcode not containing the all-ones word.
    min_weight_words lists every codeword of weight d (exhaustive).
    """

    n: int
    k: int
    d: int
    G: np.ndarray
    Gsub: np.ndarray
    min_weight_words: np.ndarray

    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def codewords(self) -> np.ndarray:
        """Full 2^k x n codebook, messages in lexicographic order."""
        if "codebook" not in self._cache:
            self._cache["codebook"] = gf2.codebook(self.G)
        return self._cache["codebook"]

    @property
    def codewords_bipolar(self) -> np.ndarray:
        if "codebook_b" not in self._cache:
            self._cache["codebook_b"] = 1.0 - 2.0 * self.codewords.astype(np.float64)
        return self._cache["codebook_b"]

    @property
    def subcode_words(self) -> np.ndarray:
        """Codebook of the subcode, messages in lexicographic order."""
        if "sub" not in self._cache:
            self._cache["sub"] = gf2.codebook(self.Gsub)
        return self._cache["sub"]

    @property
    def subcode_bipolar(self) -> np.ndarray:
        if "sub_b" not in self._cache:
            self._cache["sub_b"] = 1.0 - 2.0 * self.subcode_words.astype(np.float64)
        return self._cache["sub_b"]


def _exhaustive_weight_stats(G: np.ndarray, chunk: int = 4096):
    """Scan all nonzero codewords of G: returns (min weight, matrix of min-weight words)."""
    k, n = G.shape
    if k > MAX_EXHAUSTIVE_DIM:
        raise ValueError(f"dimension {k} too large for exhaustive enumeration")
    best = n + 1
    words = []
    total = 2**k
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        msgs = ((idx[:, None] >> shifts) & 1).astype(np.uint8)
        cws = gf2.mat_mul(msgs, G)
        w = cws.sum(axis=1, dtype=np.int64)
        if start == 0:
            w[0] = n + 1  # skip the zero codeword
        lo = int(w.min())
        if lo < best:
            best = lo
            words = [cws[w == lo]]
        elif lo == best:
            words.append(cws[w == best])
    return best, np.concatenate(words, axis=0)


def build_base_code(Gany, max_k: int = MAX_EXHAUSTIVE_DIM) -> BaseCode:
    """Build a BaseCode from any full-rank generator matrix containing the all-ones word.

    The subcode basis is chosen by greedily extending {all-ones} with rows of
    the given generator; the resulting subproduct codebooks do not depend on
    this choice.
    """
    Gany = gf2.as_bits(Gany)
    if Gany.ndim != 2:
        raise ValueError("generator must be a 2-D matrix")
    k, n = Gany.shape
    if k < 2:
        raise ValueError("base code dimension must be at least 2")
    if k > max_k:
        raise ValueError(f"k={k} too large for exhaustive distance enumeration")
    if gf2.rank(Gany) != k:
        raise ValueError("generator rows are linearly dependent")
    ones = np.ones(n, dtype=np.uint8)
    if not gf2.in_span(ones, Gany):
        raise ValueError("the all-ones word is not in the code")
    basis = [ones]
    for row in Gany:
        if len(basis) == k:
            break
        if not gf2.in_span(row, np.array(basis, dtype=np.uint8)):
            basis.append(row.copy())
    G = np.array(basis, dtype=np.uint8)
    assert gf2.rank(G) == k
    Gsub = G[1:].copy()
    d, amin = _exhaustive_weight_stats(G)
    return BaseCode(n=n, k=k, d=d, G=G, Gsub=Gsub, min_weight_words=amin)


def base_code_from_text(text: str) -> BaseCode:
    """Parse a generator matrix given as lines of '0'/'1' characters."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if set(line) - {"0", "1"}:
            raise ValueError(f"invalid generator row: {line!r}")
        rows.append([int(ch) for ch in line])
    if not rows:
        raise ValueError("empty generator matrix")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("generator rows have inconsistent lengths")
    return build_base_code(np.array(rows, dtype=np.uint8))


@dataclass
class PlotkinParts:
    """The unique decomposition c = sum_i d_i x g_i of a subproduct codeword."""

    parts: list  # parts[0] in C^[r,m-1], parts[1..k-1] in C^[r-1,m-1]


class SubproductCode:
    """The order-r subproduct code with m factors over a given base code."""

    def __init__(self, base: BaseCode, r: int, m: int, Grm: np.ndarray):
        self.base = base
        self.r = r
        self.m = m
        self.N = base.n**m
        self.dim = dimension(base.k, r, m)
        self.dmin = base.d**r * base.n ** (m - r)
        self.alpha = (base.k - 1) / math.log2(base.n)
        self.Grm = Grm
        R, pivots = gf2.rref(Grm)
        if R.shape[0] != self.dim:
            raise AssertionError("generator rank does not match the closed-form dimension")
        self._Rsys = R
        self.info_set = np.array(pivots, dtype=np.int64)
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def rate(self) -> float:
        return self.dim / self.N

    @property
    def Hrm(self) -> np.ndarray:
        """Parity-check matrix (computed lazily; (N - dim) x N)."""
        if "H" not in self._cache:
            self._cache["H"] = gf2.nullspace_basis(self.Grm)
        return self._cache["H"]

    def __repr__(self):
        return f"SubproductCode([{self.N},{self.dim},{self.dmin}], base=[{self.n},{self.k},{self.base.d}], r={self.r}, m={self.m})"

    def encode(self, msg) -> np.ndarray:
        msg = gf2.as_bits(msg)
        if msg.shape != (self.dim,):
            raise ValueError(f"message must have length {self.dim}")
        return gf2.mat_mul(msg[None, :], self.Grm)[0]

    def encode_systematic(self, msg) -> np.ndarray:
        """Encode so that the codeword restricted to info_set equals msg."""
        msg = gf2.as_bits(msg)
        if msg.shape != (self.dim,):
            raise ValueError(f"message must have length {self.dim}")
        return gf2.mat_mul(msg[None, :], self._Rsys)[0]

    def extract_message(self, c) -> np.ndarray:
        c = gf2.as_bits(c)
        if c.shape != (self.N,):
            raise ValueError(f"codeword must have length {self.N}")
        return c[self.info_set].copy()

    def contains(self, v) -> bool:
        """Membership test via reduction against the RREF generator."""
        v = gf2.as_bits(v)
        if v.shape != (self.N,):
            raise ValueError(f"vector must have length {self.N}")
        residual = v.copy()
        for row, p in zip(self._Rsys, self.info_set):
            if residual[p]:
                residual ^= row
        return not residual.any()

    def contains_many(self, V) -> np.ndarray:
        """Vectorized membership test for rows of V."""
        V = gf2.as_bits(V)
        residual = V.copy()
        for row, p in zip(self._Rsys, self.info_set):
            mask = residual[:, p] == 1
            if mask.any():
                residual[mask] ^= row
        return ~residual.any(axis=1)

    def part_code(self, r: int, m: int) -> "SubproductCode":
        """The subproduct code over the same base with the given (r, m).

        Tuple weights cannot exceed the factor count, so orders beyond m
        collapse to the full product code.
        """
        return build_code(self.base, min(r, m), m)

    def plotkin_decompose(self, c) -> PlotkinParts:
        """Split a codeword into its unique parts d_i with c = sum_i d_i x g_i."""
        if self.m < 2:
            raise ValueError("decomposition requires m >= 2")
        c = gf2.as_bits(c)
        if not self.contains(c):
            raise ValueError("input fails the code parity check")
        k, n = self.k, self.n
        if "Ginv" not in self._cache:
            Rg, piv = gf2.rref(self.base.G)
            self._cache["Ginv"] = (gf2.inverse(self.base.G[:, piv]), np.array(piv))
        Ginv, piv = self._cache["Ginv"]
        blocks = c.reshape(-1, n)
        coeffs = gf2.mat_mul(blocks[:, piv], Ginv)  # one coefficient row per block
        return PlotkinParts(parts=[coeffs[:, i].copy() for i in range(k)])

    def plotkin_compose(self, parts: PlotkinParts) -> np.ndarray:
        """Inverse of plotkin_decompose: sum_i d_i x g_i."""
        if self.m < 2:
            raise ValueError("composition requires m >= 2")
        vecs = parts.parts if isinstance(parts, PlotkinParts) else list(parts)
        if len(vecs) != self.k:
            raise ValueError(f"expected {self.k} parts")
        upper = self.part_code(self.r, self.m - 1)
        lower = self.part_code(self.r - 1, self.m - 1) if self.r >= 1 else None
        out = np.zeros(self.N, dtype=np.uint8)
        for i, d in enumerate(vecs):
            d = gf2.as_bits(d)
            if d.shape != (self.N // self.n,):
                raise ValueError("part has wrong length")
            if i == 0:
                if not upper.contains(d):
                    raise ValueError("part 0 is not a codeword of the order-r factor code")
            elif lower is None:
                if d.any():
                    raise ValueError(f"part {i} must be zero for an order-0 code")
            elif not lower.contains(d):
                raise ValueError(f"part {i} is not a codeword of the order-(r-1) factor code")
            out ^= np.kron(d, self.base.G[i])
        return out

    def min_weight_codewords(self) -> np.ndarray:
        """Matrix of all minimum weight codewords (rows).

        Uses the tensor characterization when n != 2d; falls back to
        exhaustive enumeration for small codes (the characterization does not
        cover n == 2d).
        """
        if "amin" not in self._cache:
            if self.n != 2 * self.base.d:
                rows = enumerate_min_weight(self)
            else:
                wmin, rows = _exhaustive_weight_stats(self._Rsys)
                if wmin != self.dmin:
                    raise AssertionError("exhaustive minimum weight disagrees with the closed form")
            self._cache["amin"] = np.array(rows, dtype=np.uint8).reshape(-1, self.N)
        return self._cache["amin"]


def dimension(k: int, r: int, m: int) -> int:
    """Closed-form dimension: sum_{l=0}^{r} C(m,l) (k-1)^l."""
    return sum(math.comb(m, l) * (k - 1) ** l for l in range(r + 1))


def build_code(base: BaseCode, r: int, m: int, max_length: int = DEFAULT_MAX_LENGTH) -> SubproductCode:
    """Assemble the generator of the order-r code with m factors.

    Rows are the Kronecker products indexed by weight-l tuples in
    lexicographic order, stacked for l = 0..r; this fixed order makes the
    generator bit-reproducible.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 0 <= r <= m:
        raise ValueError(f"order r={r} must satisfy 0 <= r <= m={m}")
    if base.n**m > max_length:
        raise ValueError(f"code length {base.n**m} exceeds the limit {max_length}")
    key = (r, m)
    cached = base._cache.setdefault("codes", {})
    if key in cached:
        return cached[key]
    rows = []
    for j in itertools.product(range(base.k), repeat=m):
        w = sum(1 for t in j if t != 0)
        if w > r:
            continue
        rows.append((w, j))
    rows.sort(key=lambda t: (t[0], t[1]))  # stack B_0 .. B_r, lexicographic within each
    Grm = np.empty((len(rows), base.n**m), dtype=np.uint8)
    for out, (_, j) in zip(Grm, rows):
        v = base.G[j[0]]
        for t in j[1:]:
            v = np.kron(v, base.G[t])
        out[:] = v
    code = SubproductCode(base, r, m, Grm)
    cached[key] = code
    return code


def enumerate_min_weight(code: SubproductCode) -> np.ndarray:
    """All minimum weight codewords via the tensor characterization.

    Each word is a Kronecker product with base min-weight words on an
    r-subset of the factor positions and all-ones elsewhere; requires
    n != 2d.  Count: C(m,r) * |Amin|^r.
    """
    base = code.base
    if base.n == 2 * base.d:
        raise ValueError("minimum weight characterization requires n != 2d")
    amin = base.min_weight_words
    ones = np.ones(base.n, dtype=np.uint8)
    out = []
    for positions in itertools.combinations(range(code.m), code.r):
        pos = set(positions)
        for choice in itertools.product(range(len(amin)), repeat=code.r):
            it = iter(choice)
            v = None
            for t in range(code.m):
                factor = amin[next(it)] if t in pos else ones
                v = factor if v is None else np.kron(v, factor)
            out.append(v)
    expected = math.comb(code.m, code.r) * len(amin) ** code.r
    result = np.array(out, dtype=np.uint8).reshape(expected, code.N)
    return result


def rm_code(r: int, m: int) -> SubproductCode:
    """Reed-Muller code RM(r, m) as a subproduct code over the full space F_2^2."""
    G = np.array([[1, 1], [0, 1]], dtype=np.uint8)
    return build_code(_base_cached("rm", G), r, m)


def dual_berman_code(n: int, r: int, m: int) -> SubproductCode:
    """Dual Berman code over the full space F_2^n with standard-basis subcode rows."""
    if n < 2:
        raise ValueError("n must be >= 2")
    G = np.zeros((n, n), dtype=np.uint8)
    G[0] = 1
    for i in range(1, n):
        G[i, i - 1] = 1
    return build_code(_base_cached(("db", n), G), r, m)


HAMMING_7_4_GENERATOR = np.array(
    [
        [1, 0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ],
    dtype=np.uint8,
)


def hamming_code(r: int, m: int) -> SubproductCode:
    """Subproduct code over the [7,4,3] Hamming base."""
    return build_code(_base_cached("hamming", HAMMING_7_4_GENERATOR), r, m)


_BASE_REGISTRY: dict = {}


def _base_cached(key, G) -> BaseCode:
    if key not in _BASE_REGISTRY:
        _BASE_REGISTRY[key] = build_base_code(G)
    return _BASE_REGISTRY[key]
