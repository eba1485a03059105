"""Truncated single-factor operators.

Every leg word over ``{S, Sd, Cq, Dq, P, Cqinv}`` is a weighted shift
``e_m -> w[m] e_{m+k}`` and is stored that way; the truncated shift sends
``e_{N-1}`` to zero.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .expr import CIRCLE_ATOMS, FOCK_ATOMS, Word


def _diag(a: str, q: float, m: np.ndarray) -> np.ndarray:
    m = m.astype(float)
    if a == "Cq":
        return np.sqrt(1.0 - q ** (2 * m))
    if a == "Dq":
        return q ** m
    if a == "P":
        return (m == 0).astype(float)
    if a == "Cqinv":
        out = np.zeros_like(m)
        nz = m > 0
        out[nz] = 1.0 / np.sqrt(1.0 - q ** (2 * m[nz]))
        return out
    raise ValueError(a)


@lru_cache(maxsize=4096)
def compile_word(word: Word, q: float, N: int) -> tuple[int, np.ndarray]:
    """Return ``(shift, weights)`` with ``word e_m = weights[m] e_{m+shift}``.

    Weights vanish wherever the path leaves ``0..N-1``, so callers never need
    bounds checks.
    """
    w = np.ones(N, dtype=complex)
    start = np.arange(N)
    shift = 0
    for a in reversed(word):
        pos = start + shift
        if a == "S":
            w[pos + 1 > N - 1] = 0.0
            shift += 1
        elif a == "Sd":
            w[pos - 1 < 0] = 0.0
            shift -= 1
        elif a in FOCK_ATOMS:
            valid = (pos >= 0) & (pos < N)
            vals = np.zeros(N)
            vals[valid] = _diag(a, q, pos[valid])
            w = w * vals
        else:
            raise ValueError(f"atom {a!r} is not a Fock atom")
    w.setflags(write=False)
    return shift, w


def circle_weights(word: Word, phis: np.ndarray) -> np.ndarray:
    wind = 0
    for a in word:
        if a not in CIRCLE_ATOMS:
            raise ValueError(f"atom {a!r} is not a circle atom")
        wind += 1 if a == "Z" else -1
    return np.exp(1j * wind * np.asarray(phis))


def atom_matrix(a: str, q: float, N: int) -> np.ndarray:
    """Dense ``N x N`` matrix of a Fock atom (test oracle and small-N use)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if a in CIRCLE_ATOMS:
        raise ValueError(f"{a!r} is a circle atom")
    if a == "I":
        return np.eye(N)
    if a == "S":
        return np.eye(N, k=-1)
    if a == "Sd":
        return np.eye(N, k=1)
    if a not in FOCK_ATOMS:
        raise ValueError(f"unknown atom {a!r}")
    return np.diag(_diag(a, q, np.arange(N)))


def word_matrix(word: Word, q: float, N: int) -> np.ndarray:
    out = np.eye(N)
    for a in word:
        out = out @ atom_matrix(a, q, N)
    return out
