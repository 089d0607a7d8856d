# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled row-wise weighted median kernel.

Same contract as ``_npkernels.rowwise_weighted_median``; works row by row
with two scratch buffers instead of matrix-sized temporaries.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy
from libc.math cimport fabs

import numpy as np

HALF_WEIGHT_RTOL = 1e-12

cdef double _HALF_RTOL = 1e-12


cdef inline void _insertion_sort(double* z, double* w, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double zv, wv
    for i in range(lo + 1, hi + 1):
        zv = z[i]
        wv = w[i]
        j = i - 1
        while j >= lo and z[j] > zv:
            z[j + 1] = z[j]
            w[j + 1] = w[j]
            j -= 1
        z[j + 1] = zv
        w[j + 1] = wv


cdef inline void _swap(double* z, double* w, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef double t
    t = z[a]; z[a] = z[b]; z[b] = t
    t = w[a]; w[a] = w[b]; w[b] = t


cdef void _sort_pairs(double* z, double* w, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    """Quicksort (value, weight) pairs by value; recurses on the smaller side."""
    cdef Py_ssize_t i, j, mid
    cdef double pivot
    while hi - lo > 16:
        mid = lo + (hi - lo) // 2
        if z[mid] < z[lo]:
            _swap(z, w, lo, mid)
        if z[hi] < z[lo]:
            _swap(z, w, lo, hi)
        if z[hi] < z[mid]:
            _swap(z, w, mid, hi)
        pivot = z[mid]
        i = lo
        j = hi
        while i <= j:
            while z[i] < pivot:
                i += 1
            while z[j] > pivot:
                j -= 1
            if i <= j:
                _swap(z, w, i, j)
                i += 1
                j -= 1
        if j - lo < hi - i:
            _sort_pairs(z, w, lo, j)
            lo = i
        else:
            _sort_pairs(z, w, i, hi)
            hi = j
    _insertion_sort(z, w, lo, hi)


cdef double _row_median(const double* row, const double* w, double* zbuf,
                        double* wbuf, Py_ssize_t n, double half, double tol,
                        double* dispersion_out) noexcept nogil:
    cdef Py_ssize_t j, first
    cdef double cumulative, at_half, run_weight, median, d

    memcpy(zbuf, row, n * sizeof(double))
    memcpy(wbuf, w, n * sizeof(double))
    _sort_pairs(zbuf, wbuf, 0, n - 1)

    cumulative = 0.0
    first = n - 1
    for j in range(n):
        cumulative += wbuf[j]
        if cumulative >= half - tol:
            first = j
            break
    at_half = zbuf[first]

    run_weight = cumulative
    j = first + 1
    while j < n and zbuf[j] == at_half:
        run_weight += wbuf[j]
        j += 1

    if run_weight > half + tol:
        median = at_half
    else:
        # Half the mass sits at or below at_half: midpoint to the next
        # strictly larger value that carries positive weight.
        while j < n and wbuf[j] <= 0.0:
            j += 1
        if j < n:
            median = 0.5 * (at_half + zbuf[j])
        else:
            median = at_half  # unreachable for valid positive-total weights

    d = 0.0
    for j in range(n):
        d += wbuf[j] * fabs(zbuf[j] - median)
    dispersion_out[0] = d
    return median


def rowwise_weighted_median(const double[:, ::1] values, const double[::1] weights):
    """Weighted median and dispersion of every row of ``values``.

    See ``_npkernels.rowwise_weighted_median`` for the contract.
    """
    cdef Py_ssize_t m = values.shape[0]
    cdef Py_ssize_t n = values.shape[1]
    if weights.shape[0] != n:
        raise ValueError("weights length must match the number of columns")

    median = np.empty(m, dtype=np.float64)
    dispersion = np.empty(m, dtype=np.float64)
    cdef double[::1] median_v = median
    cdef double[::1] dispersion_v = dispersion

    cdef double total = 0.0
    cdef Py_ssize_t j
    for j in range(n):
        total += weights[j]
    cdef double half = 0.5 * total
    cdef double tol = _HALF_RTOL * total

    if m == 0:
        return median, dispersion
    if n == 0:
        raise ValueError("cannot take the median of zero columns")

    cdef double* zbuf = <double*> malloc(n * sizeof(double))
    cdef double* wbuf = <double*> malloc(n * sizeof(double))
    if zbuf == NULL or wbuf == NULL:
        free(zbuf)
        free(wbuf)
        raise MemoryError()

    cdef Py_ssize_t r
    try:
        with nogil:
            for r in range(m):
                median_v[r] = _row_median(
                    &values[r, 0], &weights[0], zbuf, wbuf,
                    n, half, tol, &dispersion_v[r],
                )
    finally:
        free(zbuf)
        free(wbuf)
    return median, dispersion
