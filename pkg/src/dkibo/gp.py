"""Gaussian-process surrogate: Matern-5/2 kernel with white noise, exact
inference via Cholesky, and marginal-likelihood hyperparameter fitting.

Inputs are expected in normalized [0, 1]^d coordinates. The fitting
pipeline standardizes the target internally (subtract the prior mean,
divide by the residual standard deviation) and de-standardizes at
prediction time; ``log_marginal_likelihood`` operates on the raw target
so its closed-form identities hold as written.

Two prior-mean modes exist:

* ``zero`` -- constant prior mean equal to the sample mean of y.
* ``linear`` -- an ordinary-least-squares plane fitted to (X, y) first;
  the GP then models the residuals. The plane is fixed during
  hyperparameter optimization, which is exactly what lets the mean
  dominate far-from-data predictions (the failure mode exercised by the
  linear-mean ablation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, solve_triangular
from scipy.optimize import minimize
from scipy.spatial.distance import cdist

from .errors import GpFitError

_SQRT5 = math.sqrt(5.0)
_LOG_2PI = math.log(2.0 * math.pi)

# Log-space optimization bounds: length scale, signal variance, noise variance.
LOG_BOUNDS = (
    (math.log(1e-5), math.log(1e5)),
    (math.log(1e-6), math.log(1e6)),
    (math.log(1e-10), math.log(1e1)),
)

# Jitter ladder: start at 1e-10 and escalate tenfold up to 1e-4 before
# giving up. Duplicated points are routine in late-stage campaigns.
_JITTER_LADDER = tuple(10.0 ** -e for e in range(10, 3, -1))
_LML_JITTER = 1e-10

# Number of optimizer starts: one warm start plus seeded log-uniform draws.
N_RESTARTS = 5

MEAN_MODES = ("zero", "linear")


@dataclass(frozen=True)
class KernelParams:
    """Matern-5/2 hyperparameters (normalized-coordinate units)."""

    length_scale: float = 0.5
    signal_variance: float = 1.0
    noise_variance: float = 1e-6

    def __post_init__(self):
        if self.length_scale <= 0 or self.signal_variance <= 0:
            raise ValueError("length scale and signal variance must be positive")
        if self.noise_variance < 0:
            raise ValueError("noise variance must be non-negative")

    def log_theta(self) -> np.ndarray:
        return np.log(
            [self.length_scale, self.signal_variance, max(self.noise_variance, 1e-300)]
        )

    @classmethod
    def from_log_theta(cls, theta) -> "KernelParams":
        ell, sf2, sn2 = np.exp(np.asarray(theta, dtype=float))
        return cls(float(ell), float(sf2), float(sn2))


DEFAULT_START = KernelParams(length_scale=0.5, signal_variance=1.0, noise_variance=1e-6)


def matern52(r, length_scale: float = 1.0, signal_variance: float = 1.0):
    """Matern-5/2 covariance of a distance (scalar or array).

    k(r) = sf2 * (1 + sqrt(5) r / l + 5 r^2 / (3 l^2)) * exp(-sqrt(5) r / l)
    """
    t = _SQRT5 * np.asarray(r, dtype=float) / length_scale
    return signal_variance * (1.0 + t + t * t / 3.0) * np.exp(-t)


def _matern52_dlog_ell(r, length_scale: float, signal_variance: float):
    """d k / d log(length_scale) at distance r."""
    t = _SQRT5 * np.asarray(r, dtype=float) / length_scale
    return signal_variance * (t * t / 3.0) * (1.0 + t) * np.exp(-t)


def _ols_plane(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, float]:
    """Least-squares plane y ~ X beta + b via lstsq (exact OLS, no damping)."""
    A = np.column_stack([X, np.ones(X.shape[0])])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return coef[:-1], float(coef[-1])


def _lml_core(R: np.ndarray, target: np.ndarray, theta: np.ndarray):
    """Log marginal likelihood of ``target`` and its gradient w.r.t.
    (log l, log sf2, log sn2), using precomputed pairwise distances R.

    A fixed jitter of 1e-10 is folded into the noise term so the
    objective stays defined arbitrarily close to the noise floor.
    Raises ``np.linalg.LinAlgError`` if the Cholesky fails.
    """
    ell, sf2, sn2 = np.exp(theta)
    n = target.size
    K = matern52(R, ell, sf2)
    Kn = K + (sn2 + _LML_JITTER) * np.eye(n)
    L = np.linalg.cholesky(Kn)
    alpha = cho_solve((L, True), target, check_finite=False)
    lml = (
        -0.5 * float(target @ alpha)
        - float(np.log(np.diag(L)).sum())
        - 0.5 * n * _LOG_2PI
    )
    Kinv = cho_solve((L, True), np.eye(n), check_finite=False)
    W = np.outer(alpha, alpha) - Kinv
    grad = np.array(
        [
            0.5 * float(np.sum(W * _matern52_dlog_ell(R, ell, sf2))),
            0.5 * float(np.sum(W * K)),
            0.5 * float(np.trace(W)) * sn2,
        ]
    )
    return lml, grad


def log_marginal_likelihood(X, y, params: KernelParams, mean_mode: str = "zero"):
    """LML of the data under ``params`` plus its gradient in log-parameter
    space. With ``mean_mode='linear'`` the OLS plane is subtracted first
    and treated as fixed (no mean contribution to the gradient).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    if mean_mode not in MEAN_MODES:
        raise ValueError(f"unknown mean mode {mean_mode!r}")
    if mean_mode == "linear":
        beta, b = _ols_plane(X, y)
        target = y - (X @ beta + b)
    else:
        target = y
    R = cdist(X, X)
    return _lml_core(R, target, params.log_theta())


@dataclass
class GpModel:
    """Fitted GP state. ``mean_beta``/``mean_intercept`` give the prior
    mean in objective units (beta is all-zero in zero-mean mode);
    ``scale`` is the residual standardization constant."""

    params: KernelParams
    mean_mode: str
    mean_beta: np.ndarray
    mean_intercept: float
    scale: float
    x_train: np.ndarray
    chol: np.ndarray
    alpha: np.ndarray
    jitter: float
    lml: float

    def mean_fn(self, Z: np.ndarray) -> np.ndarray:
        return Z @ self.mean_beta + self.mean_intercept

    def predict(self, Z):
        """Posterior mean and standard deviation at query points.

        Accepts a single vector or an (m, d) batch; returns de-standardized
        values in objective units. The predictive variance is the latent
        one (no observation noise added), clamped at zero.
        """
        Z = np.asarray(Z, dtype=float)
        single = Z.ndim == 1
        Z = np.atleast_2d(Z)
        Kstar = matern52(
            cdist(self.x_train, Z), self.params.length_scale, self.params.signal_variance
        )
        mu = self.mean_fn(Z) + self.scale * (Kstar.T @ self.alpha)
        v = solve_triangular(self.chol, Kstar, lower=True, check_finite=False)
        var = self.params.signal_variance - np.einsum("ij,ij->j", v, v)
        sigma = self.scale * np.sqrt(np.maximum(var, 0.0))
        if single:
            return float(mu[0]), float(sigma[0])
        return mu, sigma


def _build_state(R: np.ndarray, target: np.ndarray, params: KernelParams):
    """Cholesky state with the jitter ladder; raises GpFitError on exhaustion."""
    n = target.size
    K = matern52(R, params.length_scale, params.signal_variance)
    Kn = K + params.noise_variance * np.eye(n)
    last_err = None
    for jitter in _JITTER_LADDER:
        try:
            L = np.linalg.cholesky(Kn + jitter * np.eye(n))
        except np.linalg.LinAlgError as err:
            last_err = err
            continue
        alpha = cho_solve((L, True), target, check_finite=False)
        return L, alpha, jitter
    raise GpFitError(
        f"Cholesky failed up to jitter {_JITTER_LADDER[-1]:g} "
        f"(n={n}, params={params}): {last_err}"
    )


def fit(
    X,
    y,
    mean_mode: str = "zero",
    rng: np.random.Generator | None = None,
    warm_start: KernelParams | None = None,
    optimize: bool = True,
    params: KernelParams | None = None,
) -> GpModel:
    """Fit the GP to normalized inputs and raw objective values.

    Hyperparameters maximize the LML of the standardized target via
    L-BFGS-B in log-parameter space from ``N_RESTARTS`` starts: the warm
    start (or the package default) plus seeded log-uniform draws within
    the bounds. Pass ``optimize=False`` with explicit ``params`` to skip
    the search. Deterministic given (X, y, rng seed, warm_start).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    n = X.shape[0]
    if n < 2:
        raise ValueError("GP fitting needs at least two observations")
    if mean_mode not in MEAN_MODES:
        raise ValueError(f"unknown mean mode {mean_mode!r}")

    if mean_mode == "linear":
        beta, intercept = _ols_plane(X, y)
    else:
        beta = np.zeros(X.shape[1])
        intercept = float(y.mean())
    resid = y - (X @ beta + intercept)
    scale = float(resid.std())
    if scale < 1e-12:
        scale = 1.0
    target = resid / scale

    R = cdist(X, X)

    if not optimize:
        if params is None:
            raise ValueError("optimize=False requires explicit params")
        best_params = params
        best_lml = None
    else:
        if rng is None:
            rng = np.random.default_rng(0)
        lo = np.array([b[0] for b in LOG_BOUNDS])
        hi = np.array([b[1] for b in LOG_BOUNDS])
        start0 = (warm_start or DEFAULT_START).log_theta()
        starts = [np.clip(start0, lo, hi)]
        for _ in range(N_RESTARTS - 1):
            starts.append(rng.uniform(lo, hi))

        def objective(theta):
            try:
                lml, grad = _lml_core(R, target, theta)
            except np.linalg.LinAlgError:
                return 1e25, np.zeros(3)
            return -lml, -grad

        best_theta = None
        best_neg = np.inf
        for theta0 in starts:
            res = minimize(
                objective,
                theta0,
                method="L-BFGS-B",
                jac=True,
                bounds=LOG_BOUNDS,
                options={"maxiter": 100},
            )
            if res.fun < best_neg:
                best_neg = res.fun
                best_theta = res.x
        if best_theta is None:
            raise GpFitError("all hyperparameter starts failed")
        best_params = KernelParams.from_log_theta(best_theta)
        best_lml = -best_neg

    L, alpha, jitter = _build_state(R, target, best_params)
    if best_lml is None:
        try:
            best_lml, _ = _lml_core(R, target, best_params.log_theta())
        except np.linalg.LinAlgError:
            # conditioning needed more jitter than the LML's fixed 1e-10
            best_lml = float("nan")
    return GpModel(
        params=best_params,
        mean_mode=mean_mode,
        mean_beta=beta,
        mean_intercept=intercept,
        scale=scale,
        x_train=X.copy(),
        chol=L,
        alpha=alpha,
        jitter=jitter,
        lml=best_lml,
    )
