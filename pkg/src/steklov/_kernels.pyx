# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bound kernel: candidate evaluation plus two-way merge.

Twin of steklov._kernels_py with identical operation order; both call the
platform libm, so values agree bit for bit.
"""

from libc.math cimport NAN, exp, expm1, log1p
from libc.stdlib cimport free, malloc

import numpy as np


cdef double _bound_at(int n, unsigned long long k, Py_ssize_t l0,
                      const long long* mult, double* nvals, double* dvals,
                      double L) noexcept nogil:
    cdef double lnr = log1p(0.5 * L)
    cdef Py_ssize_t j, i, d
    cdef long long jn
    cdef double x, t, em1, v
    cdef unsigned long long cum
    for j in range(l0 + 1):
        x = (2 * j + n - 2) * lnr
        t = exp(-x)
        em1 = -expm1(-x)
        dvals[j] = ((j + n - 2) + j * t) / em1
        jn = j + 1
        x = (2 * jn + n - 2) * lnr
        t = exp(-x)
        em1 = -expm1(-x)
        nvals[j] = jn * (jn + n - 2) * em1 / (jn + (jn + n - 2) * t)

    i = 0
    d = 0
    cum = 0
    v = NAN  # unreachable fallback: the merged multiplicities always reach k
    while i <= l0 or d <= l0:
        if i <= l0 and (d > l0 or nvals[i] <= dvals[d]):
            v = nvals[i]
            cum += <unsigned long long> mult[i + 1]
            i += 1
        else:
            v = dvals[d]
            cum += <unsigned long long> mult[d]
            d += 1
        if cum >= k:
            return v
    return v


def bound_at(int n, unsigned long long k, Py_ssize_t l0, long long[::1] mult,
             double L):
    cdef double* nvals = <double*> malloc(sizeof(double) * (l0 + 1))
    cdef double* dvals = <double*> malloc(sizeof(double) * (l0 + 1))
    if nvals == NULL or dvals == NULL:
        free(nvals)
        free(dvals)
        raise MemoryError
    try:
        return _bound_at(n, k, l0, &mult[0], nvals, dvals, L)
    finally:
        free(nvals)
        free(dvals)


def bound_batch(int n, unsigned long long k, Py_ssize_t l0, long long[::1] mult,
                lengths):
    arr = np.ascontiguousarray(lengths, dtype=np.float64)
    out = np.empty(arr.shape[0], dtype=np.float64)
    cdef double[::1] ls = arr
    cdef double[::1] res = out
    cdef Py_ssize_t m = ls.shape[0]
    cdef Py_ssize_t idx
    cdef double* nvals = <double*> malloc(sizeof(double) * (l0 + 1))
    cdef double* dvals = <double*> malloc(sizeof(double) * (l0 + 1))
    if nvals == NULL or dvals == NULL:
        free(nvals)
        free(dvals)
        raise MemoryError
    try:
        with nogil:
            for idx in range(m):
                res[idx] = _bound_at(n, k, l0, &mult[0], nvals, dvals, ls[idx])
    finally:
        free(nvals)
        free(dvals)
    return out
