"""Deterministic corrective models: CART trees, random forest, gradient
boosting, and damped linear least squares, behind one fit/predict contract.

Every model is a pure function after fitting. Refitting with the same
(X, y, spec, seed) reproduces identical predictions, which the campaign
replay machinery relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import treekernel

REGRESSOR_KINDS = ("random_forest", "gradient_boosting", "linear", "none")

# A node whose SSE falls below this relative floor is declared pure.
_SSE_EPS = 1e-12


@dataclass(frozen=True)
class RegressorSpec:
    """Configuration of the corrective model.

    Use the per-kind constructors for the conventional defaults
    (forest: 20 estimators of depth 5; boosting: 20 estimators of
    depth 3, learning rate 0.1).
    """

    kind: str = "random_forest"
    n_estimators: int = 20
    max_depth: int = 5
    learning_rate: float = 0.1
    bootstrap: bool = True
    min_samples_leaf: int = 1
    max_features: int | None = None

    def __post_init__(self):
        if self.kind not in REGRESSOR_KINDS:
            raise ValueError(f"unknown regressor kind {self.kind!r}")
        if self.n_estimators < 0:
            raise ValueError("n_estimators must be >= 0")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")

    @classmethod
    def random_forest(cls, n_estimators: int = 20, max_depth: int = 5, **kw):
        return cls(kind="random_forest", n_estimators=n_estimators, max_depth=max_depth, **kw)

    @classmethod
    def gradient_boosting(cls, n_estimators: int = 20, max_depth: int = 3, **kw):
        return cls(kind="gradient_boosting", n_estimators=n_estimators, max_depth=max_depth, **kw)

    @classmethod
    def linear(cls):
        return cls(kind="linear")

    @classmethod
    def none(cls):
        return cls(kind="none")


@dataclass
class Tree:
    """Flat-array binary regression tree (feature == -1 marks a leaf)."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def predict(self, X) -> np.ndarray:
        X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
        return np.asarray(
            treekernel.predict_nodes(
                self.feature, self.threshold, self.left, self.right, self.value, X
            )
        )

    @property
    def n_nodes(self) -> int:
        return self.feature.size


def fit_tree(
    X,
    y,
    max_depth: int,
    min_samples_leaf: int = 1,
    rng: np.random.Generator | None = None,
    max_features: int | None = None,
) -> Tree:
    """Greedy CART: each node takes the (dim, threshold) minimizing the
    children's summed squared error; midpoint thresholds; stops on depth,
    leaf size, or zero SSE. With ``max_features`` set, each node searches
    a random subset of dimensions drawn from ``rng``.
    """
    X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    n, d = X.shape
    if n < 1:
        raise ValueError("need at least one training row")
    if max_features is not None and rng is None:
        raise ValueError("feature subsampling requires an rng")

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[float] = []
    all_dims = np.arange(d, dtype=np.int64)

    def new_node() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(0.0)
        return len(feature) - 1

    def build(idx: np.ndarray, depth: int) -> int:
        nid = new_node()
        ys = y[idx]
        sy = float(ys.sum())
        sy2 = float((ys * ys).sum())
        m = idx.size
        value[nid] = sy / m
        node_sse = sy2 - sy * sy / m
        if (
            depth >= max_depth
            or m < 2 * min_samples_leaf
            or node_sse <= _SSE_EPS * max(1.0, abs(sy2))
        ):
            return nid
        if max_features is not None and max_features < d:
            dims = np.sort(rng.choice(d, size=max_features, replace=False)).astype(np.int64)
        else:
            dims = all_dims
        dim, thr, _ = treekernel.best_split(X, y, idx, dims, min_samples_leaf)
        if dim < 0:
            return nid
        mask = X[idx, dim] <= thr
        feature[nid] = int(dim)
        threshold[nid] = float(thr)
        left[nid] = build(idx[mask], depth + 1)
        right[nid] = build(idx[~mask], depth + 1)
        return nid

    build(np.arange(n, dtype=np.int64), 0)
    return Tree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=float),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        value=np.array(value, dtype=float),
    )


class ZeroRegressor:
    """The kind='none' model: predicts 0 everywhere."""

    spec = RegressorSpec.none()

    def predict(self, X) -> np.ndarray:
        X = np.atleast_2d(X)
        return np.zeros(X.shape[0])


class ForestRegressor:
    """Bagged CART trees; prediction is the arithmetic mean over trees."""

    def __init__(self, spec: RegressorSpec, trees: list[Tree], y_range: tuple[float, float]):
        self.spec = spec
        self.trees = trees
        self.y_range = y_range

    def predict(self, X) -> np.ndarray:
        X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
        acc = np.zeros(X.shape[0])
        for tree in self.trees:
            acc += tree.predict(X)
        return acc / len(self.trees)


class GradientBoostingRegressor:
    """Stagewise least-squares boosting: mean(y) + lr * sum of residual trees."""

    def __init__(self, spec: RegressorSpec, base: float, trees: list[Tree]):
        self.spec = spec
        self.base = base
        self.trees = trees

    def predict(self, X) -> np.ndarray:
        X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
        acc = np.full(X.shape[0], self.base)
        for tree in self.trees:
            acc += self.spec.learning_rate * tree.predict(X)
        return acc


class LinearRegressor:
    """Least squares with ridge damping 1e-8 on the slope for rank safety."""

    def __init__(self, beta: np.ndarray, intercept: float):
        self.spec = RegressorSpec.linear()
        self.beta = beta
        self.intercept = intercept

    def predict(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return X @ self.beta + self.intercept


def fit_forest(X, y, spec: RegressorSpec, rng: np.random.Generator) -> ForestRegressor:
    """Fit ``spec.n_estimators`` trees, each on a size-n bootstrap resample
    (or on the full data when ``spec.bootstrap`` is off). Deterministic
    given the rng seed; per-tree draws happen in tree order.
    """
    X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    n = X.shape[0]
    if spec.n_estimators < 1:
        raise ValueError("a forest needs at least one tree")
    trees = []
    for _ in range(spec.n_estimators):
        if spec.bootstrap:
            rows = rng.integers(0, n, size=n)
            Xb = np.ascontiguousarray(X[rows])
            yb = y[rows]
        else:
            Xb, yb = X, y
        trees.append(
            fit_tree(
                Xb,
                yb,
                max_depth=spec.max_depth,
                min_samples_leaf=spec.min_samples_leaf,
                rng=rng,
                max_features=spec.max_features,
            )
        )
    return ForestRegressor(spec, trees, (float(y.min()), float(y.max())))


def fit_gbm(X, y, spec: RegressorSpec) -> GradientBoostingRegressor:
    """Stagewise boosting on least-squares residuals; no randomness."""
    X = np.ascontiguousarray(np.atleast_2d(X), dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    base = float(y.mean())
    pred = np.full(y.shape, base)
    trees = []
    for _ in range(spec.n_estimators):
        resid = y - pred
        tree = fit_tree(
            X, resid, max_depth=spec.max_depth, min_samples_leaf=spec.min_samples_leaf
        )
        trees.append(tree)
        pred = pred + spec.learning_rate * tree.predict(X)
    return GradientBoostingRegressor(spec, base, trees)


def fit_linear(X, y, damping: float = 1e-8) -> LinearRegressor:
    """Solve the centered normal equations with ridge damping on the slope."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    xm = X.mean(axis=0)
    ym = float(y.mean())
    Xc = X - xm
    yc = y - ym
    A = Xc.T @ Xc + damping * np.eye(X.shape[1])
    beta = np.linalg.solve(A, Xc.T @ yc)
    return LinearRegressor(beta, ym - float(xm @ beta))


def fit_regressor(spec: RegressorSpec, X, y, rng: np.random.Generator):
    """Fit the corrective model named by ``spec.kind``."""
    if spec.kind == "none":
        return ZeroRegressor()
    if spec.kind == "random_forest":
        return fit_forest(X, y, spec, rng)
    if spec.kind == "gradient_boosting":
        return fit_gbm(X, y, spec)
    if spec.kind == "linear":
        return fit_linear(X, y)
    raise ValueError(f"unknown regressor kind {spec.kind!r}")
