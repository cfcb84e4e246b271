"""Pure-numpy tree kernels: split search and batched leaf lookup.

This is the fallback used when the compiled extension is unavailable.
Both implementations evaluate the identical arithmetic in the identical
order, so trees built by either backend are bitwise-equal (a property
checked by the test suite).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def best_split(X, y, idx, dims, min_leaf):
    """Exhaustive CART split search over the rows ``idx`` of ``X``.

    Candidate thresholds are midpoints between consecutive distinct
    sorted values of each feature in ``dims``. Returns
    ``(dim, threshold, total_sse)`` for the split minimizing the summed
    squared error of the two children; ties break toward the lower dim
    index, then the lower threshold. Returns ``(-1, 0.0, inf)`` when no
    valid split exists.
    """
    idx = np.asarray(idx)
    n = idx.size
    y_node = y[idx]
    best_dim = -1
    best_thr = 0.0
    best_sse = np.inf
    if n < 2 * min_leaf:
        return best_dim, best_thr, best_sse
    p = np.arange(1, n, dtype=float)
    for dim in dims:
        v = X[idx, dim]
        order = np.argsort(v, kind="stable")
        vs = v[order]
        ys = y_node[order]
        cy = np.cumsum(ys)
        cy2 = np.cumsum(ys * ys)
        tot_y = cy[-1]
        tot_y2 = cy2[-1]
        valid = vs[1:] > vs[:-1]
        if min_leaf > 1:
            k = np.arange(1, n)
            valid = valid & (k >= min_leaf) & ((n - k) >= min_leaf)
        if not valid.any():
            continue
        left_sse = cy2[:-1] - cy[:-1] * cy[:-1] / p
        right_sse = (tot_y2 - cy2[:-1]) - (tot_y - cy[:-1]) * (tot_y - cy[:-1]) / (
            n - p
        )
        sse = np.where(valid, left_sse + right_sse, np.inf)
        pos = int(np.argmin(sse))
        if sse[pos] < best_sse:
            best_sse = float(sse[pos])
            best_dim = int(dim)
            best_thr = (vs[pos] + vs[pos + 1]) / 2.0
    return best_dim, best_thr, best_sse


def predict_nodes(feature, threshold, left, right, value, X):
    """Route each row of ``X`` down the flat tree, returning leaf values."""
    m = X.shape[0]
    node = np.zeros(m, dtype=np.int64)
    out = np.empty(m, dtype=float)
    active = feature[node] >= 0
    while active.any():
        rows = np.nonzero(active)[0]
        cur = node[rows]
        go_left = X[rows, feature[cur]] <= threshold[cur]
        node[rows] = np.where(go_left, left[cur], right[cur])
        active = feature[node] >= 0
    out[:] = value[node]
    return out
