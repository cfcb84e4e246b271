#!/usr/bin/env python3
"""Timing comparison of the compiled tree kernels against the pure-numpy
fallback, over the workload sizes the optimizer actually sees (forest
refits on <=105 rows, batched prediction of ~10k acquisition candidates).

Usage: python benchmarks/backend_bench.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dkibo import treekernel
from dkibo.models import RegressorSpec


def _fit_forest_with(backend, X, y, spec, seed):
    # mirror models.fit_forest but against an explicit backend
    import dkibo.models as models

    saved = (models.treekernel.best_split, models.treekernel.predict_nodes)
    models.treekernel.best_split = backend.best_split
    models.treekernel.predict_nodes = backend.predict_nodes
    try:
        return models.fit_forest(X, y, spec, np.random.default_rng(seed))
    finally:
        models.treekernel.best_split, models.treekernel.predict_nodes = saved


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    try:
        compiled = treekernel.get_backend("compiled")
    except ImportError:
        print("compiled extension not built; reinstall without DKIBO_SKIP_EXT")
        return 1
    python = treekernel.get_backend("python")

    rng = np.random.default_rng(0)
    spec = RegressorSpec.random_forest()
    print(f"{'workload':<42}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for n, d in ((40, 2), (105, 2), (105, 6), (105, 10)):
        X = np.ascontiguousarray(rng.random((n, d)))
        y = np.sin(5 * X[:, 0]) + rng.normal(scale=0.1, size=n)
        tp = _time(lambda: _fit_forest_with(python, X, y, spec, 7), args.repeats)
        tc = _time(lambda: _fit_forest_with(compiled, X, y, spec, 7), args.repeats)
        label = f"forest fit (20 trees, n={n}, d={d})"
        print(f"{label:<42}{tp * 1e3:>10.2f}ms{tc * 1e3:>10.2f}ms{tp / tc:>9.1f}x")

        forest = _fit_forest_with(compiled, X, y, spec, 7)
        probes = np.ascontiguousarray(rng.random((10_000, d)))

        def predict_with(backend):
            acc = np.zeros(probes.shape[0])
            for tree in forest.trees:
                acc += np.asarray(
                    backend.predict_nodes(
                        tree.feature, tree.threshold, tree.left, tree.right,
                        tree.value, probes,
                    )
                )
            return acc / len(forest.trees)

        tp = _time(lambda: predict_with(python), args.repeats)
        tc = _time(lambda: predict_with(compiled), args.repeats)
        label = f"forest predict (10k points, n={n}, d={d})"
        print(f"{label:<42}{tp * 1e3:>10.2f}ms{tc * 1e3:>10.2f}ms{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
