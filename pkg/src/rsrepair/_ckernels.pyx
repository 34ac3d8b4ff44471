# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled column-basis kernels; same contract as rsrepair._pykernels."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

IMPLEMENTATION = "cython"

DEF MAXR = 63


cdef inline int top_bit(uint64_t v) nogil:
    cdef int b = -1
    while v:
        v >>= 1
        b += 1
    return b


def gf2_column_bases(values):
    cdef cnp.ndarray[int64_t, ndim=2] vals = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = vals.shape[0]
    cdef Py_ssize_t R = vals.shape[1]
    if R > MAXR:
        raise ValueError("at most 63 entries per row")
    cdef cnp.ndarray[int64_t, ndim=1] rank = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] basis_idx = np.full((n, R), -1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] coefmask = np.zeros((n, R), dtype=np.int64)
    cdef uint64_t rows_vec[MAXR]
    cdef uint64_t rows_combo[MAXR]
    cdef int rows_piv[MAXR]
    cdef Py_ssize_t j, i, k
    cdef int r
    cdef uint64_t v, combo
    with nogil:
        for j in range(n):
            r = 0
            for i in range(R):
                v = <uint64_t>vals[j, i]
                combo = 0
                for k in range(r):
                    if (v >> rows_piv[k]) & 1:
                        v ^= rows_vec[k]
                        combo ^= rows_combo[k]
                if v:
                    rows_vec[r] = v
                    rows_combo[r] = combo ^ (<uint64_t>1 << r)
                    rows_piv[r] = top_bit(v)
                    basis_idx[j, r] = i
                    coefmask[j, i] = <int64_t>(<uint64_t>1 << r)
                    r += 1
                else:
                    coefmask[j, i] = <int64_t>combo
            rank[j] = r
    return rank, basis_idx, coefmask


def fq_column_bases(coords, add_t, mul_t, inv_t, neg_t):
    cdef cnp.ndarray[int64_t, ndim=3] c3 = np.ascontiguousarray(coords, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] A = np.ascontiguousarray(add_t, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] M = np.ascontiguousarray(mul_t, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] I = np.ascontiguousarray(inv_t, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] N = np.ascontiguousarray(neg_t, dtype=np.int64)
    cdef Py_ssize_t n = c3.shape[0]
    cdef Py_ssize_t R = c3.shape[1]
    cdef Py_ssize_t L = c3.shape[2]
    cdef cnp.ndarray[int64_t, ndim=1] rank = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] basis_idx = np.full((n, R), -1, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=3] coef = np.zeros((n, R, R), dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] rows = np.zeros((R, L), dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] rcs = np.zeros((R, R), dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] piv = np.zeros(R, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] v = np.zeros(L, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] combo = np.zeros(R, dtype=np.int64)
    cdef Py_ssize_t j, i, k, x
    cdef int r, p
    cdef int64_t c, nc, inv
    with nogil:
        for j in range(n):
            r = 0
            for i in range(R):
                for x in range(L):
                    v[x] = c3[j, i, x]
                for x in range(R):
                    combo[x] = 0
                for k in range(r):
                    c = v[piv[k]]
                    if c:
                        nc = N[c]
                        for x in range(L):
                            v[x] = A[v[x], M[nc, rows[k, x]]]
                        for x in range(R):
                            combo[x] = A[combo[x], M[nc, rcs[k, x]]]
                p = -1
                for x in range(L):
                    if v[x]:
                        p = x
                        break
                if p < 0:
                    for x in range(R):
                        coef[j, i, x] = N[combo[x]]
                    continue
                basis_idx[j, r] = i
                inv = I[v[p]]
                combo[r] = A[combo[r], 1]
                for x in range(L):
                    rows[r, x] = M[inv, v[x]]
                for x in range(R):
                    rcs[r, x] = M[inv, combo[x]]
                piv[r] = p
                coef[j, i, r] = 1
                r += 1
            rank[j] = r
    return rank, basis_idx, coef
