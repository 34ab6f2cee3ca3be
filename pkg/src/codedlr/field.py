"""Exact arithmetic in the prime field F_p with a signed two's-complement embedding.

Field matrices are plain numpy uint64 arrays whose entries are reduced
residues in [0, p).  p is kept below 2^32 so that a product of two reduced
elements fits in 64 unsigned bits before reduction; matrix products chunk
the inner dimension whenever the accumulated sum could wrap.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, OutOfRange, ZeroInverse

DEFAULT_PRIME = 15485863


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (n < 2^32)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldParams:
    """Prime modulus and derived constants."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not (3 <= self.p < 2**32):
            raise ValueError(f"p must satisfy 3 <= p < 2^32, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")

    @property
    def half(self) -> int:
        """Largest magnitude representable by the signed embedding, (p-1)/2."""
        return (self.p - 1) // 2

    @property
    def matmul_chunk(self) -> int:
        """Longest inner dimension whose uint64 dot product cannot wrap."""
        return (2**64 - 1) // ((self.p - 1) ** 2)


def add(a: int, b: int, params: FieldParams) -> int:
    """(a + b) mod p."""
    return (a + b) % params.p


def sub(a: int, b: int, params: FieldParams) -> int:
    """(a - b) mod p."""
    return (a - b) % params.p


def mul(a: int, b: int, params: FieldParams) -> int:
    """(a * b) mod p."""
    return (a * b) % params.p


def inv(a: int, params: FieldParams) -> int:
    """Multiplicative inverse via the extended Euclidean algorithm."""
    a = a % params.p
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    lo, hi = a, params.p
    x0, x1 = 1, 0
    while lo > 1:
        q = hi // lo
        x0, x1 = x1 - q * x0, x0
        lo, hi = hi - q * lo, lo
    return x0 % params.p


def embed_signed(x, params: FieldParams):
    """Map signed integers into [0, p): x if x >= 0 else p + x.

    Accepts an int or an integer ndarray; raises OutOfRange when any
    magnitude exceeds (p-1)/2.
    """
    arr = np.asarray(x, dtype=np.int64)
    if np.any(np.abs(arr) > params.half):
        raise OutOfRange(
            f"magnitude exceeds (p-1)/2 = {params.half} for p = {params.p}"
        )
    out = np.where(arr >= 0, arr, arr + params.p).astype(np.uint64)
    if np.isscalar(x) or arr.ndim == 0:
        return int(out)
    return out


def unembed_signed(v, params: FieldParams):
    """Inverse of embed_signed: v if v <= (p-1)/2 else v - p.

    Returns int for scalar input, int64 ndarray otherwise.
    """
    arr = np.asarray(v, dtype=np.uint64)
    out = arr.astype(np.int64)
    out = np.where(arr > params.half, out - params.p, out)
    if np.isscalar(v) or arr.ndim == 0:
        return int(out)
    return out


def as_field_matrix(x, params: FieldParams) -> np.ndarray:
    """Validate and convert to a reduced uint64 field matrix."""
    arr = np.asarray(x)
    if arr.dtype != np.uint64:
        arr = np.mod(np.asarray(arr, dtype=object), params.p).astype(np.uint64)
    elif np.any(arr >= params.p):
        arr = arr % np.uint64(params.p)
    return arr


def random_matrix(shape, params: FieldParams, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random field matrix."""
    return rng.integers(0, params.p, size=shape, dtype=np.uint64)


def matmul(a: np.ndarray, b: np.ndarray, params: FieldParams) -> np.ndarray:
    """Matrix product over F_p with overflow-safe uint64 accumulation."""
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    p = np.uint64(params.p)
    inner = a.shape[1]
    tally_mults(a.shape[0] * inner * b.shape[1])
    chunk = params.matmul_chunk
    if inner <= chunk:
        return (a @ b) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for start in range(0, inner, chunk):
        acc = (acc + a[:, start : start + chunk] @ b[start : start + chunk]) % p
    return acc


def elementwise_mul(a: np.ndarray, b: np.ndarray, params: FieldParams) -> np.ndarray:
    """Hadamard product over F_p."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    tally_mults(a.size)
    return (a * b) % np.uint64(params.p)


def scale(c: int, a: np.ndarray, params: FieldParams) -> np.ndarray:
    """Scalar times matrix over F_p."""
    tally_mults(a.size)
    return (np.uint64(c % params.p) * a) % np.uint64(params.p)


# ---------------------------------------------------------------------------
# Multiply counting, used by the bench tooling.  A counter is active only
# inside a count_mults() block and is tracked per thread, so concurrent
# workers tally independently.

_tally_state = threading.local()


class MultCounter:
    def __init__(self):
        self.total = 0


def tally_mults(n: int) -> None:
    counter = getattr(_tally_state, "counter", None)
    if counter is not None:
        counter.total += n


@contextmanager
def count_mults():
    """Count scalar field multiplications performed by the current thread."""
    prev = getattr(_tally_state, "counter", None)
    counter = MultCounter()
    _tally_state.counter = counter
    try:
        yield counter
    finally:
        _tally_state.counter = prev
