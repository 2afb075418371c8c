"""Recursive subproduct codes: construction, decoding, and AWGN simulation."""

__version__ = "0.1.0"

from .construction import (
    BaseCode,
    SubproductCode,
    build_base_code,
    base_code_from_text,
    build_code,
    rm_code,
    dual_berman_code,
    hamming_code,
    enumerate_min_weight,
)
from .channel import ChannelConfig, modulate, transmit, channel_llr, trial_rng
from .first_order import brute_ml, fast_ml, projected_llr, partial_llrs, max_log_map
from .projection import ProjectionSpec, to_tuple, from_tuple, puncture_indices, project, enumerate_projections
from .bp import BpConfig, BpResult, FactorGraph, build_graph, boxplus, decode
from .lgs import CrcSpec, SearchConfig, SearchResult, crc_append, crc_check, neighbors, search
from .simulate import SweepConfig, CerRecord, run_sweep, ml_lower_bound_event, union_bound_cer, emit_results

__all__ = [
    "BaseCode",
    "SubproductCode",
    "build_base_code",
    "base_code_from_text",
    "build_code",
    "rm_code",
    "dual_berman_code",
    "hamming_code",
    "enumerate_min_weight",
    "ChannelConfig",
    "modulate",
    "transmit",
    "channel_llr",
    "trial_rng",
    "brute_ml",
    "fast_ml",
    "projected_llr",
    "partial_llrs",
    "max_log_map",
    "ProjectionSpec",
    "to_tuple",
    "from_tuple",
    "puncture_indices",
    "project",
    "enumerate_projections",
    "BpConfig",
    "BpResult",
    "FactorGraph",
    "build_graph",
    "boxplus",
    "decode",
    "CrcSpec",
    "SearchConfig",
    "SearchResult",
    "crc_append",
    "crc_check",
    "neighbors",
    "search",
    "SweepConfig",
    "CerRecord",
    "run_sweep",
    "ml_lower_bound_event",
    "union_bound_cer",
    "emit_results",
]
