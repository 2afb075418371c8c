"""BPSK over AWGN and channel LLRs.

Convention: bit 0 maps to +1, bit 1 to -1; a positive LLR favors bit 0.
sigma^2 = 1 / (2 R Eb/N0), i.e. energy per information bit accounts for the
code rate.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: float
    rate: float

    def __post_init__(self):
        if not 0.0 < self.rate <= 1.0:
            raise ValueError("rate must be in (0, 1]")

    @property
    def sigma(self) -> float:
        return float(np.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))))


def modulate(c) -> np.ndarray:
    """Bipolar representation: 0 -> +1, 1 -> -1."""
    c = np.asarray(c)
    return 1.0 - 2.0 * c.astype(np.float64)


def transmit(x, cfg: ChannelConfig, rng: np.random.Generator) -> np.ndarray:
    """Add white Gaussian noise of standard deviation cfg.sigma."""
    x = np.asarray(x, dtype=np.float64)
    return x + cfg.sigma * rng.standard_normal(x.shape)


def channel_llr(y, cfg: ChannelConfig) -> np.ndarray:
    """LLRs of BPSK observations: 2 y / sigma^2."""
    y = np.asarray(y, dtype=np.float64)
    return 2.0 * y / (cfg.sigma**2)


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Counter-based stream keyed by (master seed, trial index).

    Streams are independent of scheduling order, so parallel trial
    execution reproduces sequential results bit for bit.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=(master_seed, trial))))
