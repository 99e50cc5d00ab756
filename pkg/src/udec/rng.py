"""Deterministic 64-bit random streams (SplitMix64).

Every random draw in this package comes from the SplitMix64 generator so
that results are reproducible bit-for-bit across runs, platforms, and the
numba/numpy kernel backends.  The k-th output of a stream with seed ``s``
is ``finalize(s + (k+1)*GOLDEN) mod 2**64``, which makes the stream both
sequentially computable (one state add per step) and fully vectorizable.

Per-trial seeds for Monte Carlo runs are derived as
``trial_seed = mix64(master_seed, trial_index)``, i.e. the trial_index-th
output of the stream seeded with the master seed.
"""

from __future__ import annotations

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_MASK = (1 << 64) - 1

# uint64 copies for array code; numpy wraps unsigned arithmetic silently.
GOLDEN_U64 = np.uint64(GOLDEN)
MIX_A_U64 = np.uint64(_MIX_A)
MIX_B_U64 = np.uint64(_MIX_B)

#: 2**-53, scales a 53-bit integer into [0, 1).
UNIT = 2.0**-53


def finalize(z: int) -> int:
    """SplitMix64 output scrambler on plain Python ints."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK
    return z ^ (z >> 31)


def mix64(seed: int, index: int) -> int:
    """Deterministic derived seed: the index-th stream output of `seed`."""
    return finalize((seed + (index + 1) * GOLDEN) & _MASK)


def finalize_array(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= MIX_A_U64
    z ^= z >> np.uint64(27)
    z *= MIX_B_U64
    z ^= z >> np.uint64(31)
    return z


def trial_seeds(master_seed: int, trials: int) -> np.ndarray:
    """Vectorized ``mix64(master_seed, 0..trials-1)`` as a uint64 array."""
    idx = np.arange(1, trials + 1, dtype=np.uint64)
    base = np.uint64(master_seed & _MASK)
    return finalize_array(base + idx * GOLDEN_U64)


def uniform_matrix(seeds: np.ndarray, n: int) -> np.ndarray:
    """Row t = first n uniforms in [0,1) of the stream seeded seeds[t]."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    steps = np.arange(1, n + 1, dtype=np.uint64) * GOLDEN_U64
    z = finalize_array(seeds[:, None] + steps[None, :])
    return (z >> np.uint64(11)).astype(np.float64) * UNIT
