"""Exhaustive exactly-one scan kernels.

The brute-force oracle enumerates every 0/1 assignment over E <= 25
elements (up to 2^25 = 33.5M) and checks each context bitmask for exactly
one set bit -- the one hot inner loop in the package.  Two interchangeable
backends:

* "numba": a compiled scalar loop using the power-of-two test
  ``x != 0 and x & (x-1) == 0``;
* "numpy": chunked vectorized scan using ``np.bitwise_count``.

Both return identical (count, first-witness) results.  Backend selection:
the KSGKS_KERNEL environment variable ("numba" or "numpy"); unset picks
numba when importable and falls back to numpy.  benchmarks/bench_kernels.py
times the two side by side.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

ENV_VAR = "KSGKS_KERNEL"
MAX_SCAN_BITS = 25

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False


def _scan_numpy(masks: np.ndarray, n_bits: int, chunk: int = 1 << 20) -> tuple[int, int]:
    total = 1 << n_bits
    count = 0
    first = -1
    for lo in range(0, total, chunk):
        s = np.arange(lo, min(lo + chunk, total), dtype=np.uint64)
        ok = np.ones(s.shape, dtype=bool)
        for m in masks:
            ok &= np.bitwise_count(s & m) == 1
        hits = np.nonzero(ok)[0]
        if hits.size:
            if first < 0:
                first = lo + int(hits[0])
            count += int(hits.size)
    return count, first


if _HAVE_NUMBA:

    @njit(cache=True)
    def _scan_numba(masks, n_assignments):  # pragma: no cover - compiled
        count = 0
        first = -1
        for s in range(n_assignments):
            sv = np.uint64(s)
            ok = True
            for i in range(masks.shape[0]):
                x = sv & masks[i]
                if x == np.uint64(0):
                    ok = False
                    break
                if x & (x - np.uint64(1)) != np.uint64(0):
                    ok = False
                    break
            if ok:
                count += 1
                if first < 0:
                    first = s
        return count, first


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)


def active_backend() -> str:
    """The backend scan_exactly_one uses when none is forced."""
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not _HAVE_NUMBA:
            raise RuntimeError(f"{ENV_VAR}=numba requested but numba is not importable")
        return choice
    if choice:
        raise RuntimeError(f"{ENV_VAR}={choice!r}: expected 'numba' or 'numpy'")
    return "numba" if _HAVE_NUMBA else "numpy"


def scan_exactly_one(
    masks: Sequence[int], n_bits: int, backend: str | None = None
) -> tuple[int, int]:
    """Scan all 2^n_bits assignments against the context bitmasks.

    Returns (number of satisfying assignments, lowest satisfying
    assignment as a bitmask, or -1 if none).  An empty mask list means
    every assignment satisfies vacuously.
    """
    if n_bits < 0 or n_bits > MAX_SCAN_BITS:
        raise ValueError(f"exhaustive scan supports 0..{MAX_SCAN_BITS} bits, got {n_bits}")
    if any(m < 0 or m >> n_bits for m in masks):
        raise ValueError("context mask has bits outside the element range")
    backend = backend or active_backend()
    arr = np.asarray(list(masks), dtype=np.uint64)
    if not masks:
        return 1 << n_bits, 0
    if backend == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        count, first = _scan_numba(arr, 1 << n_bits)
        return int(count), int(first)
    if backend == "numpy":
        return _scan_numpy(arr, n_bits)
    raise ValueError(f"unknown kernel backend {backend!r}")
