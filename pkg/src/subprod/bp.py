"""Factor graph and weighted belief propagation for second-order codes.

The graph has four node families: code-bit variables V, degree-3 checks C
(one per f=1 projection and projected coordinate), hidden variables V_h
carrying the projected code bits, and generalized checks C_g that run
soft-in soft-out max-log-MAP decoding — one order-1 node per projection and,
when the base code is nontrivial (k < n), one base-code node per length-n
row of the m-fold product structure.
"""

from dataclasses import dataclass, field

import numpy as np

from .construction import SubproductCode
from .first_order import codebook_max_log_map, max_log_map_batch
from .projection import all_specs


@dataclass
class BpConfig:
    gamma: float = 0.1
    gamma_g: float = 0.1
    tmax: int = 10
    llr_clamp: float = 30.0
    check_rule: str = "exact"  # "exact" boxplus or "minsum"

    def __post_init__(self):
        if self.gamma <= 0 or self.gamma_g <= 0:
            raise ValueError("weights must be positive")
        if self.tmax < 1:
            raise ValueError("tmax must be >= 1")
        if self.llr_clamp <= 0:
            raise ValueError("llr_clamp must be positive")
        if self.check_rule not in ("exact", "minsum"):
            raise ValueError("check_rule must be 'exact' or 'minsum'")


@dataclass
class BpResult:
    hard_decision: np.ndarray
    is_codeword: bool
    iterations_used: int
    final_app: np.ndarray


@dataclass
class FactorGraph:
    """Adjacency of the BP factor graph, precomputed as index arrays."""

    code: SubproductCode
    specs: list
    idx0: np.ndarray  # (S, J) variable indices on the u side of each check
    idx1: np.ndarray  # (S, J) variable indices on the utilde side
    typec_idx: np.ndarray  # (T, n) variable indices per base-code check node

    _flat: dict = field(default_factory=dict, repr=False)

    @property
    def num_variables(self) -> int:
        return self.code.N

    @property
    def num_checks(self) -> int:
        return self.idx0.size

    @property
    def num_hidden(self) -> int:
        return self.idx0.size

    @property
    def num_generalized_first_order(self) -> int:
        return len(self.specs)

    @property
    def num_generalized_base(self) -> int:
        return self.typec_idx.shape[0]

    @property
    def check_side_edges(self) -> int:
        """Edges incident to V from C plus from base-code generalized checks."""
        return 2 * self.idx0.size + self.typec_idx.size

    def check_to_variable_flat(self) -> np.ndarray:
        if "c2v" not in self._flat:
            self._flat["c2v"] = np.concatenate([self.idx0.ravel(), self.idx1.ravel()])
        return self._flat["c2v"]


def build_graph(code: SubproductCode) -> FactorGraph:
    """Assemble the factor graph of an order-2 subproduct code."""
    if code.r != 2:
        raise ValueError("BP decoding is defined for order-2 codes")
    if code.m < 2:
        raise ValueError("need m >= 2")
    n, m = code.n, code.m
    specs = list(all_specs(n, m, 1))
    idx0 = np.empty((len(specs), n ** (m - 1)), dtype=np.int64)
    idx1 = np.empty_like(idx0)
    for s, spec in enumerate(specs):
        idx0[s], idx1[s] = spec.index_pair()
    if code.k < n:
        rows = []
        coords = np.arange(code.N, dtype=np.int64).reshape((n,) * m)
        for p in range(m):
            rows.append(np.moveaxis(coords, p, -1).reshape(-1, n))
        typec = np.concatenate(rows, axis=0)
    else:
        typec = np.empty((0, n), dtype=np.int64)
    return FactorGraph(code=code, specs=specs, idx0=idx0, idx1=idx1, typec_idx=typec)


def boxplus(a, b, clamp: float | None = None, rule: str = "exact"):
    """LLR-domain check combination 2 atanh(tanh(a/2) tanh(b/2)).

    Evaluated in the numerically stable sign-magnitude form; "minsum" keeps
    only the sign-magnitude term.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    out = np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
    if rule == "exact":
        out = out + np.log1p(np.exp(-np.abs(a + b))) - np.log1p(np.exp(-np.abs(a - b)))
    if clamp is not None:
        out = np.clip(out, -clamp, clamp)
    return out


def _variable_sums(graph: FactorGraph, c2v: np.ndarray, cg2v: np.ndarray):
    """Per-variable sums of incoming check and generalized-check messages."""
    N = graph.code.N
    sum_c = np.bincount(
        graph.check_to_variable_flat(),
        weights=np.concatenate([c2v[:, :, 0].ravel(), c2v[:, :, 1].ravel()]),
        minlength=N,
    )
    if cg2v.size:
        sum_g = np.bincount(graph.typec_idx.ravel(), weights=cg2v.ravel(), minlength=N)
    else:
        sum_g = np.zeros(N)
    return sum_c, sum_g


def decode(graph: FactorGraph, llr, cfg: BpConfig) -> BpResult:
    """Run weighted flooding BP; stops early once the hard decision is a codeword."""
    code = graph.code
    llr = np.asarray(llr, dtype=np.float64)
    if llr.shape != (code.N,):
        raise ValueError(f"LLR vector must have length {code.N}")
    base = code.base
    clamp = cfg.llr_clamp
    S, J = graph.idx0.shape
    c2v = np.zeros((S, J, 2))
    cg2v = np.zeros(graph.typec_idx.shape, dtype=np.float64)

    hard = (llr < 0).astype(np.uint8)
    app = llr.copy()
    iterations = 0
    for t in range(1, cfg.tmax + 1):
        iterations = t
        sum_c, sum_g = _variable_sums(graph, c2v, cg2v)
        field_v = llr + cfg.gamma * sum_c + cfg.gamma_g * sum_g
        # Step 1: extrinsic variable-to-check messages
        v2c = np.stack([field_v[graph.idx0], field_v[graph.idx1]], axis=2)
        v2c -= cfg.gamma * c2v
        np.clip(v2c, -clamp, clamp, out=v2c)
        if cg2v.size:
            v2g = field_v[graph.typec_idx] - cfg.gamma_g * cg2v
            np.clip(v2g, -clamp, clamp, out=v2g)
        # Step 2: checks combine their two variable messages for the hidden node
        c2vh = boxplus(v2c[:, :, 0], v2c[:, :, 1], clamp=clamp, rule=cfg.check_rule)
        # Steps 3-4: hidden nodes forward; order-1 generalized checks emit extrinsic soft outputs
        app_first = max_log_map_batch(base, code.m - 1, c2vh)
        vh2c = np.clip(app_first - c2vh, -clamp, clamp)
        if cg2v.size:
            app_base = codebook_max_log_map(base.codewords, v2g)
            cg2v = np.clip(app_base - v2g, -clamp, clamp)
        # Steps 5-6: checks combine the hidden message with the other variable message
        new0 = boxplus(v2c[:, :, 1], vh2c, clamp=clamp, rule=cfg.check_rule)
        new1 = boxplus(v2c[:, :, 0], vh2c, clamp=clamp, rule=cfg.check_rule)
        c2v = np.stack([new0, new1], axis=2)
        # Hard decision on the full weighted aggregate
        sum_c, sum_g = _variable_sums(graph, c2v, cg2v)
        app = np.clip(llr + cfg.gamma * sum_c + cfg.gamma_g * sum_g, -clamp, clamp)
        hard = (app < 0).astype(np.uint8)
        if code.contains(hard):
            return BpResult(hard_decision=hard, is_codeword=True, iterations_used=t, final_app=app)
    return BpResult(hard_decision=hard, is_codeword=bool(code.contains(hard)), iterations_used=iterations, final_app=app)
