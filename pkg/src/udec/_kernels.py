"""Hot numeric kernels: a numba fast path with a pure-numpy fallback.

The backend is fixed once at import time from the ``UDEC_NUMBA``
environment variable:

* ``"0"`` / ``"false"`` -- force the numpy fallback,
* ``"1"`` / ``"true"``  -- require numba (ImportError when missing),
* unset / ``"auto"``    -- use numba when importable, fallback otherwise.

Both backends produce bit-identical sample paths and decode tables; the
power-iteration brackets agree to rounding.  ``bench/benchmark_backends.py``
times one against the other.
"""

from __future__ import annotations

import os

import numpy as np

from udec.rng import GOLDEN_U64, MIX_A_U64, MIX_B_U64, UNIT

__all__ = [
    "HAS_NUMBA",
    "USE_NUMBA",
    "backend",
    "sample_paths",
    "decode_table",
    "cw_power_iter",
    "warmup",
]


def _sample_paths_loops(cum_init, cum_rows, n, seeds):
    """Walk seeds.shape[0] Markov trajectories of length n.

    cum_init / cum_rows are inclusive cumulative distributions whose last
    positive entry is exactly 1.0; seeds is a uint64 vector, one SplitMix64
    stream per trajectory.  Returns an int32 (trials, n) symbol matrix.
    """
    trials = seeds.shape[0]
    m = cum_init.shape[0]
    paths = np.empty((trials, n), dtype=np.int32)
    for t in range(trials):
        s = seeds[t]
        for j in range(n):
            z = s + np.uint64(j + 1) * GOLDEN_U64
            z = (z ^ (z >> np.uint64(30))) * MIX_A_U64
            z = (z ^ (z >> np.uint64(27))) * MIX_B_U64
            z = z ^ (z >> np.uint64(31))
            u = np.float64(z >> np.uint64(11)) * UNIT
            if j == 0:
                row = cum_init
            else:
                row = cum_rows[paths[t, j - 1]]
            k = 0
            while k < m - 1 and u >= row[k]:
                k += 1
            paths[t, j] = k
    return paths


def _sample_paths_np(cum_init, cum_rows, n, seeds):
    trials = seeds.shape[0]
    m = cum_init.shape[0]
    paths = np.empty((trials, n), dtype=np.int32)
    if n == 0:
        return paths
    steps = np.arange(1, n + 1, dtype=np.uint64) * GOLDEN_U64
    z = seeds.astype(np.uint64)[:, None] + steps[None, :]
    z ^= z >> np.uint64(30)
    z *= MIX_A_U64
    z ^= z >> np.uint64(27)
    z *= MIX_B_U64
    z ^= z >> np.uint64(31)
    u = (z >> np.uint64(11)).astype(np.float64) * UNIT

    last = m - 1
    cur = np.minimum((u[:, 0:1] >= cum_init[None, :]).sum(axis=1), last)
    paths[:, 0] = cur
    for j in range(1, n):
        rows = cum_rows[cur]
        cur = np.minimum((u[:, j : j + 1] >= rows).sum(axis=1), last)
        paths[:, j] = cur
    return paths


def _decode_table_loops(digits, word_len, word_dig, allowed):
    """Forward viability table for parsing a digit string.

    Cell (off, u) is 1 when some producible parse of digits[:off] ends in
    symbol u (context m = start-of-string).  word_len/word_dig/allowed are
    indexed [context, symbol]; a transition consumes that context's word.
    """
    n_digits = digits.shape[0]
    m = word_len.shape[1]
    viable = np.zeros((n_digits + 1, m + 1), dtype=np.uint8)
    viable[0, m] = 1
    for off in range(n_digits):
        for u in range(m + 1):
            if viable[off, u] != 0:
                for y in range(m):
                    if allowed[u, y] != 0:
                        l = word_len[u, y]
                        if l > 0 and off + l <= n_digits:
                            ok = True
                            for p in range(l):
                                if digits[off + p] != word_dig[u, y, p]:
                                    ok = False
                                    break
                            if ok:
                                viable[off + l, y] = 1
    return viable


def _decode_table_np(digits, word_len, word_dig, allowed):
    n_digits = digits.shape[0]
    m = word_len.shape[1]
    viable = np.zeros((n_digits + 1, m + 1), dtype=np.uint8)
    viable[0, m] = 1
    # matches[u, y, off]: the (u, y) word equals digits[off : off+len]
    matches = np.zeros((m + 1, m, n_digits + 1), dtype=bool)
    for u in range(m + 1):
        for y in range(m):
            if not allowed[u, y]:
                continue
            l = int(word_len[u, y])
            if l <= 0 or l > n_digits:
                continue
            windows = np.lib.stride_tricks.sliding_window_view(digits, l)
            hit = (windows == word_dig[u, y, :l]).all(axis=1)
            matches[u, y, : n_digits - l + 1] = hit
    for off in range(n_digits):
        active = viable[off].astype(bool)
        if not active.any():
            continue
        fires = active[:, None] & matches[:, :, off]
        if not fires.any():
            continue
        us, ys = np.nonzero(fires)
        viable[off + word_len[us, ys], ys] = 1
    return viable


def _cw_power_iter_loops(matrix, tol, max_iter):
    """Bracket the Perron root of (matrix + I) by power iteration.

    matrix must be nonnegative and irreducible so the iterate stays
    strictly positive and the Collatz-Wielandt ratios
    min_i (Mx)_i/x_i <= rho(M) <= max_i (Mx)_i/x_i apply.  Starts from the
    all-ones vector, renormalizes in the max norm, and stops once the
    bracket width drops to tol.  Returns (lo, hi, iterations, converged)
    with lo/hi bracketing rho(matrix + I) = rho(matrix) + 1.
    """
    m = matrix.shape[0]
    x = np.ones(m, dtype=np.float64)
    y = np.empty(m, dtype=np.float64)
    lo = 0.0
    hi = np.inf
    for it in range(max_iter):
        for i in range(m):
            acc = x[i]
            for j in range(m):
                acc += matrix[i, j] * x[j]
            y[i] = acc
        lo = np.inf
        hi = 0.0
        ymax = 0.0
        for i in range(m):
            r = y[i] / x[i]
            if r < lo:
                lo = r
            if r > hi:
                hi = r
            if y[i] > ymax:
                ymax = y[i]
        if hi - lo <= tol:
            return lo, hi, it + 1, True
        for i in range(m):
            x[i] = y[i] / ymax
    return lo, hi, max_iter, False


def _cw_power_iter_np(matrix, tol, max_iter):
    x = np.ones(matrix.shape[0], dtype=np.float64)
    lo = 0.0
    hi = np.inf
    for it in range(max_iter):
        y = x + matrix @ x
        ratios = y / x
        lo = float(ratios.min())
        hi = float(ratios.max())
        if hi - lo <= tol:
            return lo, hi, it + 1, True
        x = y / y.max()
    return lo, hi, max_iter, False


def _resolve_backend() -> tuple[bool, bool]:
    flag = os.environ.get("UDEC_NUMBA", "auto").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False, False
    if flag in ("1", "true", "on", "yes"):
        return True, True
    return True, False


_wanted, _required = _resolve_backend()
HAS_NUMBA = False
if _wanted:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        if _required:
            raise ImportError(
                "UDEC_NUMBA=1 requires numba; install it or unset the flag"
            )

USE_NUMBA = _wanted and HAS_NUMBA

if USE_NUMBA:
    sample_paths = njit(cache=True)(_sample_paths_loops)
    decode_table = njit(cache=True)(_decode_table_loops)
    cw_power_iter = njit(cache=True)(_cw_power_iter_loops)
else:
    sample_paths = _sample_paths_np
    decode_table = _decode_table_np
    cw_power_iter = _cw_power_iter_np


def backend() -> str:
    """Name of the active kernel backend: "numba" or "numpy"."""
    return "numba" if USE_NUMBA else "numpy"


def warmup() -> None:
    """Trigger jit compilation so later calls are not billed for it."""
    cum = np.array([0.5, 1.0])
    rows = np.array([[0.5, 1.0], [0.5, 1.0]])
    seeds = np.array([1], dtype=np.uint64)
    sample_paths(cum, rows, 2, seeds)
    digits = np.array([0, 1], dtype=np.int8)
    wl = np.ones((3, 2), dtype=np.int64)
    wd = np.zeros((3, 2, 1), dtype=np.int8)
    wd[:, 1, 0] = 1
    allowed = np.ones((3, 2), dtype=np.uint8)
    decode_table(digits, wl, wd, allowed)
    cw_power_iter(np.array([[0.5]]), 1e-12, 100)
