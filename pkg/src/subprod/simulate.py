"""Monte-Carlo codeword error rate harness with an ML lower bound counter.

Each trial transmits a fresh random codeword (systematically encoded so the
message bits are recoverable for CRC filtering), decodes it with the
configured chain, and counts codeword errors.  Trials draw from
counter-based RNG streams keyed by (master seed, trial index), so results
do not depend on execution order.
"""

import hashlib
import json
import math
import time
from dataclasses import dataclass

import numpy as np

from . import bp as bp_mod
from . import lgs as lgs_mod
from .channel import ChannelConfig, channel_llr, modulate, transmit, trial_rng
from .construction import SubproductCode
from .first_order import fast_ml

CSV_HEADER = "ebn0_db,trials,errors,cer,ml_lb,seconds,config_hash"

DECODERS = ("fastml", "bp", "bp+lgs")


@dataclass
class SweepConfig:
    code: SubproductCode
    decoder: str
    ebn0_grid: list
    code_spec: str = ""
    bp: bp_mod.BpConfig | None = None
    search: lgs_mod.SearchConfig | None = None
    min_errors: int = 100
    max_trials: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}; choose from {DECODERS}")
        if not self.ebn0_grid:
            raise ValueError("Eb/N0 grid must be nonempty")
        if self.min_errors < 1:
            raise ValueError("min_errors must be >= 1")
        if self.max_trials < 1:
            raise ValueError("max_trials must be >= 1")
        if self.decoder == "fastml" and self.code.r != 1:
            raise ValueError("fastml applies to order-1 codes only")
        if self.decoder in ("bp", "bp+lgs"):
            if self.code.r != 2:
                raise ValueError("BP decoding applies to order-2 codes only")
            if self.bp is None:
                raise ValueError("BP decoder requires a BpConfig")
        if self.decoder == "bp+lgs" and self.search is None:
            raise ValueError("bp+lgs requires a SearchConfig")
        crc = self.search.crc if self.search is not None else None
        if crc is not None and crc.message_len + crc.width != self.code.dim:
            raise ValueError(
                f"CRC payload {crc.message_len} + width {crc.width} must equal the code dimension {self.code.dim}"
            )

    def hash(self) -> str:
        parts = [
            f"code={self.code_spec or repr(self.code)}",
            f"decoder={self.decoder}",
            f"ebn0={','.join(repr(float(e)) for e in self.ebn0_grid)}",
            f"min_errors={self.min_errors}",
            f"max_trials={self.max_trials}",
            f"seed={self.seed}",
        ]
        if self.bp is not None:
            parts.append(
                f"bp=gamma:{self.bp.gamma!r},gamma_g:{self.bp.gamma_g!r},tmax:{self.bp.tmax},"
                f"clamp:{self.bp.llr_clamp!r},rule:{self.bp.check_rule}"
            )
        if self.search is not None:
            crc = self.search.crc
            crc_txt = f"{''.join(map(str, crc.poly))}/{crc.message_len}" if crc else "none"
            parts.append(f"lgs=plgs:{self.search.path_len},crc:{crc_txt}")
        return hashlib.sha256("|".join(parts).encode()).hexdigest()[:12]


@dataclass
class CerRecord:
    ebn0_db: float
    trials: int
    errors: int
    ml_lb_events: int
    seconds: float
    config_hash: str

    @property
    def cer(self) -> float:
        return self.errors / self.trials

    @property
    def ml_lb(self) -> float:
        return self.ml_lb_events / self.trials


def ml_lower_bound_event(transmitted, decoded, llr) -> bool:
    """True iff the decoded word differs yet correlates at least as well.

    On such trials an ML decoder would also have erred (or tied), so the
    event rate lower-bounds the ML codeword error rate.
    """
    transmitted = np.asarray(transmitted, dtype=np.uint8)
    decoded = np.asarray(decoded, dtype=np.uint8)
    if np.array_equal(transmitted, decoded):
        return False
    llr = np.asarray(llr, dtype=np.float64)
    corr_tx = (1.0 - 2.0 * transmitted.astype(np.float64)) @ llr
    corr_rx = (1.0 - 2.0 * decoded.astype(np.float64)) @ llr
    return bool(corr_rx >= corr_tx)


def union_bound_cer(code: SubproductCode, ebn0_db: float) -> float:
    """Single-term union bound A_dmin * Q(sqrt(2 dmin R Eb/N0))."""
    base = code.base
    if base.n == 2 * base.d:
        raise ValueError("minimum weight count unavailable when n == 2d")
    a_min = math.comb(code.m, code.r) * len(base.min_weight_words) ** code.r
    arg = math.sqrt(2.0 * code.dmin * code.rate * 10.0 ** (ebn0_db / 10.0))
    return a_min * 0.5 * math.erfc(arg / math.sqrt(2.0))


def _decode_chain(cfg: SweepConfig, graph, llr) -> np.ndarray:
    code = cfg.code
    if cfg.decoder == "fastml":
        return fast_ml(code.base, code.m, llr).bits
    result = bp_mod.decode(graph, llr, cfg.bp)
    if cfg.decoder == "bp" or not result.is_codeword:
        # Without a valid BP codeword there is no start vertex for the search.
        return result.hard_decision
    return lgs_mod.search(code, result.hard_decision, llr, cfg.search).codeword


def run_point(cfg: SweepConfig, ebn0_db: float, graph=None) -> CerRecord:
    """Simulate one Eb/N0 point until min_errors errors or max_trials trials."""
    code = cfg.code
    crc = cfg.search.crc if cfg.search is not None else None
    payload = crc.message_len if crc is not None else code.dim
    # Eb/N0 is referred to the code rate dim/N; a CRC splits the message
    # into payload + check bits but does not change the channel.
    chan = ChannelConfig(ebn0_db=ebn0_db, rate=code.dim / code.N)
    start = time.perf_counter()
    trials = errors = events = 0
    while trials < cfg.max_trials and errors < cfg.min_errors:
        rng = trial_rng(cfg.seed, trials)
        msg = rng.integers(0, 2, size=payload, dtype=np.uint8)
        if crc is not None:
            msg = lgs_mod.crc_append(msg, crc)
        cw = code.encode_systematic(msg)
        y = transmit(modulate(cw), chan, rng)
        llr = channel_llr(y, chan)
        decoded = _decode_chain(cfg, graph, llr)
        trials += 1
        if not np.array_equal(decoded, cw):
            errors += 1
            if ml_lower_bound_event(cw, decoded, llr):
                events += 1
    return CerRecord(
        ebn0_db=float(ebn0_db),
        trials=trials,
        errors=errors,
        ml_lb_events=events,
        seconds=time.perf_counter() - start,
        config_hash=cfg.hash(),
    )


def run_sweep(cfg: SweepConfig) -> list:
    graph = bp_mod.build_graph(cfg.code) if cfg.decoder in ("bp", "bp+lgs") else None
    return [run_point(cfg, e, graph) for e in cfg.ebn0_grid]


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.ebn0_db!r},{r.trials},{r.errors},{r.cer!r},{r.ml_lb!r},{r.seconds!r},{r.config_hash}"
        )
    return "\n".join(lines) + "\n"


def records_to_json(records) -> str:
    payload = [
        {
            "ebn0_db": r.ebn0_db,
            "trials": r.trials,
            "errors": r.errors,
            "cer": r.cer,
            "ml_lb_events": r.ml_lb_events,
            "ml_lb": r.ml_lb,
            "seconds": r.seconds,
            "config_hash": r.config_hash,
        }
        for r in records
    ]
    return json.dumps(payload, indent=2) + "\n"


def records_from_json(text: str) -> list:
    return [
        CerRecord(
            ebn0_db=item["ebn0_db"],
            trials=item["trials"],
            errors=item["errors"],
            ml_lb_events=item["ml_lb_events"],
            seconds=item["seconds"],
            config_hash=item["config_hash"],
        )
        for item in json.loads(text)
    ]


def emit_results(records, path: str, fmt: str = "csv") -> None:
    if fmt == "csv":
        text = records_to_csv(records)
    elif fmt == "json":
        text = records_to_json(records)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    with open(path, "w") as fh:
        fh.write(text)
