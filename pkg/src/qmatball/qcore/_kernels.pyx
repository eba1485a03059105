# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled term-application kernel; same contract as ``_fallback.apply_terms``.

Per term, an odometer runs over all factors but the last, carrying prefix
products of weights and prefix offsets so only the changed levels are
recomputed.  A zero prefix weight skips the whole block below it.  The last
factor is a contiguous inner loop.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def apply_terms(double complex[::1] v, long[::1] dims, long[:, ::1] shifts,
                double complex[:, :, ::1] weights, double complex[::1] coeffs):
    cdef Py_ssize_t F = dims.shape[0]
    cdef Py_ssize_t T = coeffs.shape[0]
    cdef Py_ssize_t D = v.shape[0]
    cdef Py_ssize_t t, f, g, m, n, level, skip
    cdef long s, sl, ib, ob
    cdef double complex wb, wm
    out_arr = np.zeros(D, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef long[::1] idx = np.zeros(F, dtype=np.int64)
    cdef long[::1] strides = np.zeros(F, dtype=np.int64)
    # prefix data for levels 0..F-2; slot F-1 unused
    cdef double complex[::1] pw = np.zeros(F, dtype=np.complex128)
    cdef long[::1] po = np.zeros(F, dtype=np.int64)
    cdef long[::1] pi = np.zeros(F, dtype=np.int64)
    s = 1
    for f in range(F - 1, -1, -1):
        strides[f] = s
        s *= dims[f]
    n = dims[F - 1]
    with nogil:
        for t in range(T):
            if coeffs[t] == 0:
                continue
            sl = shifts[t, F - 1]
            for f in range(F):
                idx[f] = 0
            level = 0
            while True:
                skip = -1
                for f in range(level, F - 1):
                    if f == 0:
                        wb = coeffs[t]
                        ob = 0
                        ib = 0
                    else:
                        wb = pw[f - 1]
                        ob = po[f - 1]
                        ib = pi[f - 1]
                    pw[f] = wb * weights[t, f, idx[f]]
                    po[f] = ob + (idx[f] + shifts[t, f]) * strides[f]
                    pi[f] = ib + idx[f] * strides[f]
                    if pw[f] == 0:
                        skip = f
                        break
                if skip < 0:
                    if F == 1:
                        wb = coeffs[t]
                        ob = 0
                        ib = 0
                    else:
                        wb = pw[F - 2]
                        ob = po[F - 2]
                        ib = pi[F - 2]
                    ob += sl
                    for m in range(n):
                        wm = weights[t, F - 1, m]
                        if wm != 0:
                            out[ob + m] += wb * wm * v[ib + m]
                    f = F - 2
                else:
                    f = skip
                    for g in range(skip + 1, F - 1):
                        idx[g] = 0
                while f >= 0:
                    idx[f] += 1
                    if idx[f] < dims[f]:
                        break
                    idx[f] = 0
                    f -= 1
                if f < 0:
                    break
                level = f
    return out_arr
