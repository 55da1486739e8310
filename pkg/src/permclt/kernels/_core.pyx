# cython: language_level=3
"""Compiled twin of the reference kernels.

Same contracts as _ref; selected at import when the extension built.
Loops are written per row so no O(B * n * k) boolean temporaries are
materialized.
"""

import numpy as np

cimport cython
from libc.stdint cimport int64_t


ctypedef fused num_t:
    int64_t
    double


def batch_descents(rows):
    """Descent count of each row: positions with row[q+1] < row[q]."""
    a = np.asarray(rows)
    if a.ndim != 2:
        raise ValueError("rows must be 2-D")
    if a.shape[1] < 2:
        return np.zeros(a.shape[0], dtype=np.int64)
    if np.issubdtype(a.dtype, np.floating):
        return _batch_descents_impl(np.ascontiguousarray(a, dtype=np.float64))
    return _batch_descents_impl(np.ascontiguousarray(a, dtype=np.int64))


@cython.boundscheck(False)
@cython.wraparound(False)
def _batch_descents_impl(num_t[:, ::1] a):
    cdef Py_ssize_t b = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t i, q
    cdef int64_t acc
    out_arr = np.empty(b, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    for i in range(b):
        acc = 0
        for q in range(n - 1):
            if a[i, q + 1] < a[i, q]:
                acc += 1
        out[i] = acc
    return out_arr


def batch_pattern_stat(rows, k, table, per_window=None):
    """Sum of component values over all k-windows of each row."""
    a = np.asarray(rows)
    if a.ndim != 2:
        raise ValueError("rows must be 2-D")
    n = a.shape[1]
    if k > n:
        raise ValueError(f"degree {k} exceeds row length {n}")
    if per_window is not None:
        pw = np.ascontiguousarray(per_window, dtype=np.float64)
        if pw.shape[0] != n - k + 1:
            raise ValueError(
                f"need {n - k + 1} window tables, got {pw.shape[0]}"
            )
    else:
        pw = np.ascontiguousarray(table, dtype=np.float64)[None, :]
    if np.issubdtype(a.dtype, np.floating):
        return _pattern_stat_impl(
            np.ascontiguousarray(a, dtype=np.float64), k, pw, per_window is not None
        )
    return _pattern_stat_impl(
        np.ascontiguousarray(a, dtype=np.int64), k, pw, per_window is not None
    )


@cython.boundscheck(False)
@cython.wraparound(False)
def _pattern_stat_impl(num_t[:, ::1] a, Py_ssize_t k, double[:, ::1] pw, bint windowed):
    cdef Py_ssize_t b = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t i, w, j, l, pid, row
    cdef int64_t cj
    cdef double acc
    radix_arr = np.ones(k, dtype=np.int64)
    for j in range(k - 2, -1, -1):
        radix_arr[j] = radix_arr[j + 1] * (k - 1 - j)
    cdef int64_t[::1] radix = radix_arr
    out_arr = np.empty(b, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(b):
        acc = 0.0
        for w in range(n - k + 1):
            pid = 0
            for j in range(k - 1):
                cj = 0
                for l in range(j + 1, k):
                    if a[i, w + l] < a[i, w + j]:
                        cj += 1
                pid += cj * radix[j]
            row = w if windowed else 0
            acc += pw[row, pid]
        out[i] = acc
    return out_arr


def descent_pair_deltas(sv, su, xpos, ypos, v_new, u_new, px, py):
    """Replacement deltas of the descent-pair statistic, all points at
    once; same contract as the reference kernel."""
    svc = np.asarray(sv)
    if np.issubdtype(svc.dtype, np.floating):
        cast = np.float64
    else:
        cast = np.int64
    return _pair_deltas_impl(
        np.ascontiguousarray(sv, dtype=cast),
        np.ascontiguousarray(su, dtype=cast),
        np.ascontiguousarray(xpos, dtype=np.int64),
        np.ascontiguousarray(ypos, dtype=np.int64),
        np.ascontiguousarray(v_new, dtype=cast),
        np.ascontiguousarray(u_new, dtype=cast),
        np.ascontiguousarray(px, dtype=np.int64),
        np.ascontiguousarray(py, dtype=np.int64),
    )


@cython.boundscheck(False)
@cython.wraparound(False)
cdef inline int64_t _one_side(
    num_t[:, ::1] seq,
    Py_ssize_t i,
    Py_ssize_t n,
    Py_ssize_t t,
    Py_ssize_t p,
    num_t vnew,
) noexcept nogil:
    cdef int64_t ch = 0
    cdef num_t la = 0, rc = 0
    cdef bint hl, hr
    # removal of the element at position t
    if 1 <= t <= n - 2:
        if seq[i, t - 1] > seq[i, t + 1]:
            ch += 1
    if t >= 1:
        if seq[i, t - 1] > seq[i, t]:
            ch -= 1
    if t <= n - 2:
        if seq[i, t] > seq[i, t + 1]:
            ch -= 1
    # insertion at slot p of the reduced sequence; reduced index q maps
    # back to q + (q >= t) in the original
    hl = p >= 1
    hr = p <= n - 2
    if hl:
        la = seq[i, p - 1 + (1 if p - 1 >= t else 0)]
        if la > vnew:
            ch += 1
    if hr:
        rc = seq[i, p + (1 if p >= t else 0)]
        if vnew > rc:
            ch += 1
    if hl and hr:
        if la > rc:
            ch -= 1
    return ch


@cython.boundscheck(False)
@cython.wraparound(False)
def _pair_deltas_impl(
    num_t[:, ::1] sv,
    num_t[:, ::1] su,
    int64_t[:, ::1] xpos,
    int64_t[:, ::1] ypos,
    num_t[:, ::1] v_new,
    num_t[:, ::1] u_new,
    int64_t[:, ::1] px,
    int64_t[:, ::1] py,
):
    cdef Py_ssize_t b = sv.shape[0], n = sv.shape[1]
    cdef Py_ssize_t i, j
    cdef int64_t ch
    out_arr = np.zeros((b, n), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    if n < 2:
        return out_arr
    for i in range(b):
        for j in range(n):
            ch = _one_side(sv, i, n, xpos[i, j], px[i, j], v_new[i, j])
            ch += _one_side(su, i, n, ypos[i, j], py[i, j], u_new[i, j])
            out[i, j] = -ch
    return out_arr
