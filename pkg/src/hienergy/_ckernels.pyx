# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exact int64 correlations, pinned convolution tensors
and intersection-cardinality histograms.

Contracts mirror _pykernels; callers are responsible for overflow bounds.
"""

import numpy as np

cimport numpy as cnp

IMPLEMENTATION = "cython"


def correlate_int(group, f, g):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fv = np.ascontiguousarray(f, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] gv = np.ascontiguousarray(g, dtype=np.int64)
    cdef Py_ssize_t n = fv.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm
    cdef Py_ssize_t t, x
    cdef cnp.int64_t acc
    for t in range(n):
        perm = group.translation(t)
        acc = 0
        for x in range(n):
            acc += fv[x] * gv[perm[x]]
        out[t] = acc
    return out


def correlate_float(group, f, g):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef Py_ssize_t n = fv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm
    cdef Py_ssize_t t, x
    cdef double acc
    for t in range(n):
        perm = group.translation(t)
        acc = 0.0
        for x in range(n):
            acc += fv[x] * gv[perm[x]]
        out[t] = acc
    return out


def cprime_tensor_int(group, f, int arity):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fv = np.ascontiguousarray(f, dtype=np.int64)
    cdef Py_ssize_t n = fv.shape[0]
    if arity == 1:
        return np.array([fv.sum()], dtype=np.int64)
    if arity == 2:
        return correlate_int(group, fv, fv)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] trans = _translate_matrix_int(group, fv)
    cdef Py_ssize_t m = arity - 1
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t j
    for j in range(m):
        total *= n
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(total, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ys = np.zeros(m, dtype=np.int64)
    cdef Py_ssize_t pos, z
    cdef cnp.int64_t acc, prod
    for pos in range(total):
        acc = 0
        for z in range(n):
            prod = fv[z]
            for j in range(m):
                prod *= trans[ys[j], z]
                if prod == 0:
                    break
            acc += prod
        out[pos] = acc
        # odometer increment over (y_1..y_m), last coordinate fastest
        j = m - 1
        while j >= 0:
            ys[j] += 1
            if ys[j] < n:
                break
            ys[j] = 0
            j -= 1
    return out


def cprime_tensor_float(group, f, int arity):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef Py_ssize_t n = fv.shape[0]
    if arity == 1:
        return np.array([fv.sum()], dtype=np.float64)
    if arity == 2:
        return correlate_float(group, fv, fv)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] trans = _translate_matrix_float(group, fv)
    cdef Py_ssize_t m = arity - 1
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t j
    for j in range(m):
        total *= n
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(total, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ys = np.zeros(m, dtype=np.int64)
    cdef Py_ssize_t pos, z
    cdef double acc, prod
    for pos in range(total):
        acc = 0.0
        for z in range(n):
            prod = fv[z]
            for j in range(m):
                prod *= trans[ys[j], z]
            acc += prod
        out[pos] = acc
        j = m - 1
        while j >= 0:
            ys[j] += 1
            if ys[j] < n:
                break
            ys[j] = 0
            j -= 1
    return out


cdef cnp.ndarray[cnp.int64_t, ndim=2] _translate_matrix_int(group, cnp.ndarray[cnp.int64_t, ndim=1] fv):
    cdef Py_ssize_t n = fv.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((n, n), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm
    cdef Py_ssize_t s, x
    for s in range(n):
        perm = group.translation(s)
        for x in range(n):
            out[s, x] = fv[perm[x]]
    return out


cdef cnp.ndarray[cnp.float64_t, ndim=2] _translate_matrix_float(group, cnp.ndarray[cnp.float64_t, ndim=1] fv):
    cdef Py_ssize_t n = fv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, n), dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm
    cdef Py_ssize_t s, x
    for s in range(n):
        perm = group.translation(s)
        for x in range(n):
            out[s, x] = fv[perm[x]]
    return out


def az_card_hist(group, bits, int depth):
    """Histogram of |A ∩ (A-w_1) ∩ ... ∩ (A-w_depth)| over all w tuples."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] b = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t n = b.shape[0]
    cdef Py_ssize_t words = (n + 63) // 64
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] shifted = np.zeros((n, words), dtype=np.uint64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hist = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm
    cdef Py_ssize_t s, x, w
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] base = np.zeros(words, dtype=np.uint64)
    for x in range(n):
        if b[x]:
            base[x >> 6] |= (<cnp.uint64_t>1) << (x & 63)
    if depth == 0:
        s = 0
        for w in range(words):
            s += _popcount(base[w])
        hist[s] = 1
        return hist
    for s in range(n):
        perm = group.translation(s)
        for x in range(n):
            if b[perm[x]]:
                shifted[s, x >> 6] |= (<cnp.uint64_t>1) << (x & 63)
    # stack of intermediate intersections, one row per level
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] stack = np.zeros((depth + 1, words), dtype=np.uint64)
    for w in range(words):
        stack[0, w] = base[w]
    _az_rec(&shifted[0, 0], &stack[0, 0], &hist[0], n, words, depth, 0)
    return hist


cdef int _popcount(cnp.uint64_t v) noexcept:
    cdef int c = 0
    while v:
        v &= v - 1
        c += 1
    return c


cdef void _az_rec(cnp.uint64_t* shifted, cnp.uint64_t* stack, cnp.int64_t* hist,
                  Py_ssize_t n, Py_ssize_t words, int depth, int level) noexcept:
    cdef Py_ssize_t s, w
    cdef cnp.uint64_t acc
    cdef bint empty
    cdef int c
    cdef cnp.int64_t skip
    if level == depth:
        c = 0
        for w in range(words):
            c += _popcount(stack[level * words + w])
        hist[c] += 1
        return
    for s in range(n):
        empty = True
        for w in range(words):
            acc = stack[level * words + w] & shifted[s * words + w]
            stack[(level + 1) * words + w] = acc
            if acc:
                empty = False
        if empty:
            skip = 1
            for w in range(depth - level - 1):
                skip *= n
            hist[0] += skip
        else:
            _az_rec(shifted, stack, hist, n, words, depth, level + 1)
