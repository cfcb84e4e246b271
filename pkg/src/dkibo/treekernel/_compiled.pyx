# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tree kernels: split search and batched leaf lookup.

Arithmetic mirrors ``_python.py`` operation-for-operation (same running
sums, same tie-breaks) so both backends build bitwise-identical trees.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


def best_split(double[:, ::1] X, double[::1] y, idx_arr, dims_arr, long min_leaf):
    cdef cnp.int64_t[::1] idx = np.ascontiguousarray(idx_arr, dtype=np.int64)
    cdef cnp.int64_t[::1] dims = np.ascontiguousarray(dims_arr, dtype=np.int64)
    cdef Py_ssize_t n = idx.shape[0]
    cdef Py_ssize_t ndims = dims.shape[0]
    cdef long best_dim = -1
    cdef double best_thr = 0.0
    cdef double best_sse = np.inf
    if n < 2 * min_leaf:
        return -1, 0.0, best_sse

    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vs = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.empty(n, dtype=np.float64)
    cdef double[::1] vv = v
    cdef double[::1] vsv = vs
    cdef double[::1] ysv = ys
    cdef cnp.int64_t[::1] order
    cdef Py_ssize_t di, i, k
    cdef long dim
    cdef double cy, cy2, tot_y, tot_y2, left_sse, right_sse, sse, yi

    for di in range(ndims):
        dim = dims[di]
        for i in range(n):
            vv[i] = X[idx[i], dim]
        order = np.argsort(v, kind="stable")
        tot_y = 0.0
        tot_y2 = 0.0
        for i in range(n):
            vsv[i] = vv[order[i]]
            yi = y[idx[order[i]]]
            ysv[i] = yi
            tot_y += yi
            tot_y2 += yi * yi
        cy = 0.0
        cy2 = 0.0
        for k in range(1, n):
            yi = ysv[k - 1]
            cy += yi
            cy2 += yi * yi
            if vsv[k] <= vsv[k - 1]:
                continue
            if k < min_leaf or n - k < min_leaf:
                continue
            left_sse = cy2 - cy * cy / (<double> k)
            right_sse = (tot_y2 - cy2) - (tot_y - cy) * (tot_y - cy) / (<double> (n - k))
            sse = left_sse + right_sse
            if sse < best_sse:
                best_sse = sse
                best_dim = dim
                best_thr = (vsv[k - 1] + vsv[k]) / 2.0
    return best_dim, best_thr, best_sse


def predict_nodes(feature_arr, threshold_arr, left_arr, right_arr, value_arr, X_arr):
    cdef cnp.int64_t[::1] feature = np.ascontiguousarray(feature_arr, dtype=np.int64)
    cdef double[::1] threshold = np.ascontiguousarray(threshold_arr, dtype=np.float64)
    cdef cnp.int64_t[::1] left = np.ascontiguousarray(left_arr, dtype=np.int64)
    cdef cnp.int64_t[::1] right = np.ascontiguousarray(right_arr, dtype=np.int64)
    cdef double[::1] value = np.ascontiguousarray(value_arr, dtype=np.float64)
    cdef double[:, ::1] X = np.ascontiguousarray(X_arr, dtype=np.float64)
    cdef Py_ssize_t m = X.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double[::1] outv = out
    cdef Py_ssize_t i
    cdef long node

    for i in range(m):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        outv[i] = value[node]
    return out
