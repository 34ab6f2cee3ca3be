"""Real <-> field conversions: deterministic dataset rounding, stochastic
weight rounding, and the scale bookkeeping that makes decoded gradients
dequantizable.

Scales: dataset entries carry 2^lx, each weight quantization carries 2^lw,
and the decoded gradient carries 2^l with l = lx + r*(lx + lw).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import field
from .errors import OverflowRisk
from .field import FieldParams

# Stream tags for deriving independent Philox generators from one seed.
STREAM_DATASET_MASKS = 1
STREAM_WEIGHTS = 2
STREAM_WEIGHT_MASKS = 3
STREAM_STRAGGLER = 4
STREAM_DATA = 5
STREAM_MPC = 6


def stream_rng(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based generator for a (seed, stream...) key.

    Philox keeps parallel streams independent and lets every stochastic
    quantization be replayed from its recorded key.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *stream])))


@dataclass(frozen=True)
class QuantizationConfig:
    p: int = field.DEFAULT_PRIME
    l_x: int = 2
    l_w: int = 4
    r: int = 1

    def __post_init__(self):
        if self.l_x < 0 or self.l_w < 0:
            raise ValueError("scale exponents must be nonnegative")
        if self.r < 1:
            raise ValueError("polynomial degree r must be >= 1")

    @property
    def params(self) -> FieldParams:
        return FieldParams(self.p)

    @property
    def decode_exponent(self) -> int:
        """l = lx + r*(lx + lw), the scale of the decoded gradient."""
        return self.l_x + self.r * (self.l_x + self.l_w)


@dataclass
class QuantizedDataset:
    Xbar: np.ndarray          # m x d field matrix
    Xbar_int: np.ndarray      # same values as signed int64, scale 2^lx
    ytXbar: Optional[np.ndarray] = None  # real (d,) label term (dequantized Xbar)^T y

    @property
    def dequantized(self) -> np.ndarray:
        return self.Xbar_int.astype(np.float64) / 2.0 ** _cfg_lx(self)


def _cfg_lx(qd):  # recorded at quantization time
    return qd._l_x


@dataclass
class QuantizedWeights:
    Wbar: np.ndarray          # d x r field matrix, columns independent
    Wbar_int: np.ndarray      # signed int64 view, scale 2^lw
    seed_key: Optional[tuple] = None


def round_nearest(x):
    """Round half away from zero upward: floor(x) if frac < 0.5 else floor(x)+1."""
    f = np.floor(x)
    out = np.where(x - f < 0.5, f, f + 1).astype(np.int64)
    if np.isscalar(x):
        return int(out)
    return out


def round_stochastic(x, rng: np.random.Generator):
    """Unbiased randomized rounding: up with probability frac(x)."""
    arr = np.asarray(x, dtype=np.float64)
    f = np.floor(arr)
    up = rng.random(arr.shape) < (arr - f)
    out = (f + up).astype(np.int64)
    if np.isscalar(x):
        return int(out)
    return out


def quantize_dataset(X: np.ndarray, cfg: QuantizationConfig,
                     y: Optional[np.ndarray] = None) -> QuantizedDataset:
    """Entrywise phi(Round(2^lx * X)); optionally precomputes the label term.

    Raises OverflowRisk unless p >= 2^(lx+1) * max|X| + 1.
    """
    X = np.asarray(X, dtype=np.float64)
    max_abs = float(np.max(np.abs(X))) if X.size else 0.0
    if cfg.p < 2 ** (cfg.l_x + 1) * max_abs + 1:
        raise OverflowRisk(
            f"p = {cfg.p} < 2^(lx+1) * max|X| + 1 = {2 ** (cfg.l_x + 1) * max_abs + 1}"
        )
    xint = round_nearest(2.0**cfg.l_x * X)
    qd = QuantizedDataset(
        Xbar=field.embed_signed(xint, cfg.params),
        Xbar_int=xint,
    )
    qd._l_x = cfg.l_x
    if y is not None:
        deq = xint.astype(np.float64) / 2.0**cfg.l_x
        qd.ytXbar = deq.T @ np.asarray(y, dtype=np.float64)
    return qd


def quantize_weights(w: np.ndarray, cfg: QuantizationConfig,
                     rng: np.random.Generator,
                     seed_key: Optional[tuple] = None) -> QuantizedWeights:
    """r independent stochastic quantizations of w, one per column."""
    w = np.asarray(w, dtype=np.float64)
    params = cfg.params
    # +1 because stochastic rounding may round away from zero
    if np.any(np.abs(2.0**cfg.l_w * w) + 1 > params.half):
        raise OverflowRisk("2^lw * |w| + 1 exceeds (p-1)/2")
    scaled = 2.0**cfg.l_w * w
    cols = [round_stochastic(scaled, rng) for _ in range(cfg.r)]
    wint = np.stack(cols, axis=1)
    return QuantizedWeights(
        Wbar=field.embed_signed(wint, params),
        Wbar_int=wint,
        seed_key=seed_key,
    )


def dequantize_gradient(v: np.ndarray, cfg: QuantizationConfig) -> np.ndarray:
    """2^-l * phi^{-1}(entry) for the decoded gradient vector."""
    signed = field.unembed_signed(np.asarray(v, dtype=np.uint64), cfg.params)
    return signed.astype(np.float64) / 2.0**cfg.decode_exponent
