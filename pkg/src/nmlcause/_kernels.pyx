# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Same surface as ``nmlcause._fallback``. The normalizing sum is evaluated
in linear domain with a tracked power-of-two offset, rescaled whenever the
running value passes 2**512.
"""
import math

import numpy as np
cimport numpy as cnp
from libc.math cimport log, log2, exp, pow, sqrt
from libc.stdlib cimport qsort

cnp.import_array()

cdef double RESCALE = 2.0 ** 512
cdef double INV_RESCALE = 2.0 ** -512


cdef int _cmp_long(const void *a, const void *b) noexcept nogil:
    cdef long x = (<long *> a)[0]
    cdef long y = (<long *> b)[0]
    return (x > y) - (x < y)


cdef double _log_binary_normalizer(long n, int digits) noexcept nogil:
    # R(2, n) = 1 + Q(n); t_{k+1} = t_k (1 - k/n) and the tail after t_k is
    # bounded by t_{k+1} * n / (k + 1).
    cdef double eps = 0.0 if digits >= 17 else pow(10.0, -(digits + 1))
    cdef double t = 1.0
    cdef double s = 0.0
    cdef double nf = <double> n
    cdef long k
    if n <= 0:
        return 0.0
    for k in range(1, n + 1):
        s += t
        t *= 1.0 - k / nf
        if t * nf / (k + 1) <= eps * (1.0 + s):
            break
    return log(1.0 + s)


cdef double _log2_normalizer(long m, long n, int digits) noexcept nogil:
    cdef double r1, r2, r3, nf
    cdef double offset = 0.0
    cdef long k
    if m <= 1 or n <= 0:
        return 0.0
    if m == 2:
        return _log_binary_normalizer(n, digits) / log(2.0)
    nf = <double> n
    r1 = 1.0
    r2 = exp(_log_binary_normalizer(n, digits))
    for k in range(1, m - 1):
        r3 = r2 + (nf / k) * r1
        r1 = r2
        r2 = r3
        if r2 > RESCALE:
            r1 *= INV_RESCALE
            r2 *= INV_RESCALE
            offset += 512.0
    return log2(r2) + offset


def log_binary_normalizer(long n, int digits=10):
    """Natural log of R(2, n)."""
    return _log_binary_normalizer(n, digits)


def log2_normalizer(long m, long n, int digits=10):
    return _log2_normalizer(m, n, digits)


def log2_normalizers(long m, ns, int digits=10):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] flat = np.ascontiguousarray(ns, dtype=np.int64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(flat.shape[0], dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        out[i] = _log2_normalizer(m, flat[i], digits)
    return out.reshape(np.shape(ns))


def ml_bits(counts):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] h = np.sort(
        np.ascontiguousarray(counts, dtype=np.int64).ravel())
    cdef Py_ssize_t i
    cdef long n = 0
    cdef int nonzero = 0
    cdef double acc = 0.0
    for i in range(h.shape[0]):
        if h[i] > 0:
            n += h[i]
            nonzero += 1
            acc += h[i] * log2(<double> h[i])
    if nonzero <= 1:
        return 0.0
    return max(0.0, n * log2(<double> n) - acc)


def histogram(values, long m):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(m, dtype=np.int64)
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        out[v[i]] += 1
    return out


def slice_codelengths(target, condition, long m_target, long m_condition, int digits=10):
    """Per-slice stochastic complexities of ``target`` grouped by ``condition``."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tv = np.ascontiguousarray(target, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cv = np.ascontiguousarray(condition, dtype=np.int64)
    cdef Py_ssize_t n = tv.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] starts = np.zeros(m_condition + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fill = np.zeros(m_condition, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] grouped = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] scratch = np.zeros(m_target, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] touched = np.empty(min(n, m_target) + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] memo = np.full(n + 1, -1.0)
    cdef long[:] tbuf = touched
    cdef Py_ssize_t i, c, pos, ntouched, size, g
    cdef long sym
    cdef double acc, ml
    out = []

    # counting sort of target values by condition symbol
    for i in range(n):
        starts[cv[i] + 1] += 1
    for c in range(m_condition):
        starts[c + 1] += starts[c]
    for i in range(n):
        c = cv[i]
        grouped[starts[c] + fill[c]] = tv[i]
        fill[c] += 1

    for c in range(m_condition):
        size = starts[c + 1] - starts[c]
        if size == 0:
            continue
        ntouched = 0
        for pos in range(starts[c], starts[c + 1]):
            sym = grouped[pos]
            if scratch[sym] == 0:
                touched[ntouched] = sym
                ntouched += 1
            scratch[sym] += 1
        for g in range(ntouched):
            sym = touched[g]
            touched[g] = scratch[sym]
            scratch[sym] = 0
        qsort(&tbuf[0], ntouched, sizeof(long), _cmp_long)
        ml = 0.0
        if ntouched > 1:
            acc = 0.0
            for g in range(ntouched):
                acc += touched[g] * log2(<double> touched[g])
            ml = max(0.0, size * log2(<double> size) - acc)
        if memo[size] < 0.0:
            memo[size] = _log2_normalizer(m_target, size, digits)
        out.append(ml + memo[size])
    return np.asarray(out, dtype=np.float64)
