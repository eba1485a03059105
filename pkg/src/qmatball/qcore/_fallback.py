"""Pure numpy implementation of the term-application kernel."""
from __future__ import annotations

import numpy as np


def apply_terms(v: np.ndarray, dims: np.ndarray, shifts: np.ndarray,
                weights: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Sum over terms ``t`` of ``coeffs[t] * (W_t1 (x) ... (x) W_tF) v``.

    ``W_tf`` is the weighted shift ``e_m -> weights[t, f, m] e_{m + shifts[t, f]}``
    on axis ``f``.  ``v`` is flat, C-ordered over ``dims``.
    """
    dims = tuple(int(d) for d in dims)
    x = v.reshape(dims)
    out = np.zeros(dims, dtype=complex)
    F = len(dims)
    for t in range(len(coeffs)):
        y = x
        for f in range(F):
            n = dims[f]
            w = weights[t, f, :n]
            s = int(shifts[t, f])
            if s == 0 and np.all(w == 1):
                continue
            shape = [1] * F
            shape[f] = n
            y = y * w.reshape(shape)
            if s != 0:
                z = np.zeros_like(y)
                dst = [slice(None)] * F
                src = [slice(None)] * F
                if s > 0:
                    dst[f], src[f] = slice(s, None), slice(0, n - s)
                else:
                    dst[f], src[f] = slice(0, n + s), slice(-s, None)
                z[tuple(dst)] = y[tuple(src)]
                y = z
        out += coeffs[t] * y
    return out.reshape(-1)
