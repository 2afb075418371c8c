"""Tuple indexing, puncturing patterns, and the order-reducing projection.

Coordinates of a length-n^m codeword are indexed by m-digit base-n tuples
(most significant digit first, 0-based linear indices).  Freezing the digits
at a position set to a fixed value punctures the codeword to n^{m-f}
coordinates; the GF(2) sum of two such punctured vectors with distinct
frozen values lands in the code of order r-1 with m-f factors.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import gf2


def to_tuple(i: int, n: int, m: int) -> tuple:
    """Digits of the base-n expansion of a linear index, most significant first."""
    if not 0 <= i < n**m:
        raise ValueError(f"index {i} out of range for n^m = {n**m}")
    digits = []
    for _ in range(m):
        digits.append(i % n)
        i //= n
    return tuple(reversed(digits))


def from_tuple(digits, n: int) -> int:
    """Inverse of to_tuple."""
    i = 0
    for d in digits:
        if not 0 <= d < n:
            raise ValueError(f"digit {d} out of range for base {n}")
        i = i * n + int(d)
    return i


def puncture_indices(n: int, m: int, positions, values) -> np.ndarray:
    """Linear indices of all tuples whose digits at `positions` equal `values`.

    Output is ordered by the remaining digits (kept in their original
    positional order), ascending; its length is n^{m-f}.
    """
    positions = tuple(positions)
    values = tuple(values)
    if len(positions) != len(values) or len(positions) == 0:
        raise ValueError("positions and values must be nonempty and equally long")
    if len(set(positions)) != len(positions) or not all(0 <= p < m for p in positions):
        raise ValueError("positions must be distinct and within range")
    if not all(0 <= v < n for v in values):
        raise ValueError("frozen digits must lie in [0, n)")
    rest = [p for p in range(m) if p not in set(positions)]
    weights = n ** (m - 1 - np.arange(m, dtype=np.int64))
    base = sum(int(v) * int(weights[p]) for p, v in zip(positions, values))
    idx = np.full(1, base, dtype=np.int64)
    for p in rest:  # ascending positions => lexicographic i' order
        idx = (idx[:, None] + np.arange(n, dtype=np.int64)[None, :] * int(weights[p])).ravel()
    return idx


@dataclass(frozen=True)
class ProjectionSpec:
    """A projection: frozen position set plus two distinct frozen values."""

    n: int
    m: int
    positions: tuple
    u: tuple
    utilde: tuple

    def __post_init__(self):
        if self.u == self.utilde:
            raise ValueError("the two frozen values must differ")

    @property
    def f(self) -> int:
        return len(self.positions)

    def index_pair(self) -> tuple[np.ndarray, np.ndarray]:
        """The two disjoint puncturing patterns, each ordered by i'."""
        return (
            puncture_indices(self.n, self.m, self.positions, self.u),
            puncture_indices(self.n, self.m, self.positions, self.utilde),
        )


def project(c, spec: ProjectionSpec) -> np.ndarray:
    """GF(2) sum of the two punctured subvectors selected by the spec."""
    c = gf2.as_bits(c)
    if c.shape != (spec.n**spec.m,):
        raise ValueError(f"input must have length {spec.n**spec.m}")
    idx, idx_t = spec.index_pair()
    return c[idx] ^ c[idx_t]


def all_specs(n: int, m: int, f: int):
    """All projection specs for a given f: position sets lexicographic, then value pairs."""
    for positions in itertools.combinations(range(m), f):
        for u, ut in itertools.combinations(itertools.product(range(n), repeat=f), 2):
            yield ProjectionSpec(n=n, m=m, positions=positions, u=u, utilde=ut)


def enumerate_projections(code, f: int) -> list:
    """All C(m,f)*C(n^f,2) projections applicable to an order-r code."""
    if not 1 <= f <= code.m - code.r + 1:
        raise ValueError(f"f={f} out of range (order {code.r} needs 1 <= f <= {code.m - code.r + 1})")
    return list(all_specs(code.n, code.m, f))
