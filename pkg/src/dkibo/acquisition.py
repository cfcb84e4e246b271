"""Acquisition functions, the model-injected augmentation, and the maximizer.

The augmented criterion is

    base(x) + gamma * h(i) * model(x)

where ``base`` is UCB, EI, or POI evaluated through the GP posterior,
``model`` is the corrective regressor's prediction, ``gamma`` brings the
two terms to scale (1 for UCB, a ratio of sums over the initial design
otherwise), and ``h`` is a quadratic ramp saturating at the midpoint of
the iteration budget. A movement-based early-stop monitor can zero the
corrective term permanently mid-campaign.

Because tree models make the augmented criterion piecewise constant,
maximization uses seeded uniform candidates refined by a derivative-free
pattern search instead of gradients.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

logger = logging.getLogger(__name__)

ACQUISITION_KINDS = ("ucb", "ei", "poi")

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Acquisition-maximizer budget: seeded uniform candidates, then a pattern
# search from the top starts, each capped at a fixed evaluation budget.
N_CANDIDATES = 10_000
N_REFINE_STARTS = 10
REFINE_BUDGET = 200
REFINE_INIT_STEP = 0.1
REFINE_MIN_STEP = 1e-4


@dataclass(frozen=True)
class AcquisitionConfig:
    """Base-acquisition choice plus the augmentation knobs."""

    kind: str = "ucb"
    kappa: float = 2.6
    xi_offset: float = 0.0
    epsilon: float = 0.05
    schedule_enabled: bool = True

    def __post_init__(self):
        if self.kind not in ACQUISITION_KINDS:
            raise ValueError(f"unknown acquisition kind {self.kind!r}")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass
class AugmentState:
    """Mutable per-campaign augmentation state."""

    gamma: float | None = None
    dropped: bool = False
    drop_iteration: int | None = None

    def effective_gamma(self) -> float:
        if self.dropped or self.gamma is None:
            return 0.0
        return self.gamma


def ucb(mu, sigma, kappa: float):
    """Upper confidence bound: mu + kappa * sigma."""
    return np.asarray(mu, dtype=float) + kappa * np.asarray(sigma, dtype=float)


def _phi(z):
    return _INV_SQRT_2PI * np.exp(-0.5 * z * z)


def expected_improvement(mu, sigma, y_best: float, xi_offset: float = 0.0):
    """EI over the incumbent, with the exact sigma -> 0 limit max(imp, 0)."""
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    imp = mu - y_best - xi_offset
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z = imp / sigma
        ei = np.where(
            sigma > 0.0,
            imp * ndtr(z) + sigma * _phi(z),
            np.maximum(imp, 0.0),
        )
    return ei


def probability_of_improvement(mu, sigma, y_best: float, xi_offset: float = 0.0):
    """POI over the incumbent; sigma -> 0 degenerates to an indicator."""
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    imp = mu - y_best - xi_offset
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z = imp / sigma
        poi = np.where(sigma > 0.0, ndtr(z), (imp > 0.0).astype(float))
    return poi


def base_acquisition(mu, sigma, config: AcquisitionConfig, y_best: float):
    if config.kind == "ucb":
        return ucb(mu, sigma, config.kappa)
    if config.kind == "ei":
        return expected_improvement(mu, sigma, y_best, config.xi_offset)
    return probability_of_improvement(mu, sigma, y_best, config.xi_offset)


def compute_gamma(kind: str, acq_at_init, xi_at_init) -> float:
    """Scale factor bringing the corrective term to the acquisition's scale.

    UCB keeps gamma = 1 (the model output already corrects the posterior
    mean on its own scale); EI/POI use the ratio of sums over the initial
    design. A near-zero denominator disables the term with a warning.
    """
    if kind == "ucb":
        return 1.0
    denominator = float(np.sum(xi_at_init))
    if abs(denominator) < 1e-12:
        logger.warning(
            "corrective-model values at the initial design sum to ~0; "
            "disabling the corrective term (gamma = 0)"
        )
        return 0.0
    return float(np.sum(acq_at_init)) / denominator


def schedule_weight(i: int, i_max: int) -> float:
    """Quadratic ramp min(1, 4 i^2 / i_max^2); saturates from i_max/2 on."""
    if i < 0:
        raise ValueError("iteration must be non-negative")
    return min(1.0, 4.0 * i * i / (i_max * i_max))


def early_stop_triggered(x_prev, x_new, prior_points, epsilon: float) -> bool:
    """Consecutive-suggestion movement test, in normalized coordinates.

    True when the step between the last two suggestions is small relative
    to the new point's distance from the running mean of all previously
    probed points. A collapsed denominator counts as triggered.
    """
    x_prev = np.asarray(x_prev, dtype=float)
    x_new = np.asarray(x_new, dtype=float)
    prior = np.atleast_2d(np.asarray(prior_points, dtype=float))
    numerator = float(np.linalg.norm(x_prev - x_new))
    denominator = float(np.linalg.norm(x_new - prior.mean(axis=0)))
    if denominator < 1e-12:
        return True
    return numerator / denominator < epsilon


class AugmentedAcquisition:
    """Per-iteration acquisition: base(x) + gamma * h(i) * model(x).

    ``gp`` predictions and the corrective model both operate in
    normalized coordinates and objective units, so the two terms are
    directly comparable.
    """

    def __init__(
        self,
        gp_model,
        xi_model,
        config: AcquisitionConfig,
        state: AugmentState,
        iteration: int,
        i_max: int,
        y_best: float,
    ):
        self.gp_model = gp_model
        self.xi_model = xi_model
        self.config = config
        self.state = state
        self.iteration = iteration
        self.i_max = i_max
        self.y_best = y_best

    def schedule(self) -> float:
        if not self.config.schedule_enabled:
            return 1.0
        return schedule_weight(self.iteration, self.i_max)

    def base_values(self, Z) -> np.ndarray:
        Z = np.atleast_2d(np.asarray(Z, dtype=float))
        mu, sigma = self.gp_model.predict(Z)
        return base_acquisition(mu, sigma, self.config, self.y_best)

    def corrective_values(self, Z) -> np.ndarray:
        Z = np.atleast_2d(np.asarray(Z, dtype=float))
        return np.asarray(self.xi_model.predict(Z), dtype=float)

    def values(self, Z) -> np.ndarray:
        base = self.base_values(Z)
        g = self.state.effective_gamma()
        return base + g * self.schedule() * self.corrective_values(Z)


def maximize_acquisition(
    fn,
    dim: int,
    rng: np.random.Generator,
    n_candidates: int = N_CANDIDATES,
    refine_starts: int = N_REFINE_STARTS,
    refine_budget: int = REFINE_BUDGET,
    init_step: float = REFINE_INIT_STEP,
):
    """Maximize a batch-evaluable scalar field over [0, 1]^dim.

    Seeded uniform candidates are scored in one batch; the top
    ``refine_starts`` (stable order, lowest index on ties) are refined by
    a synchronized Hooke-Jeeves pattern search: coordinates are probed
    cyclically at +/- the current step (accepted per coordinate, so one
    cycle can move every coordinate), and a start's step halves after a
    cycle with no accepted move. Each start is limited to
    ``refine_budget`` extra evaluations; every probe is clipped to the
    box. Returns ``(x, value)``; deterministic given the rng.
    """
    cands = rng.random((n_candidates, dim))
    vals = np.asarray(fn(cands), dtype=float)
    order = np.argsort(-vals, kind="stable")
    top = order[: min(refine_starts, n_candidates)]
    pts = cands[top].copy()
    best = vals[top].copy()
    k = pts.shape[0]
    steps = np.full(k, init_step)
    cycles = max(1, refine_budget // (2 * dim))
    rows = np.arange(k)
    for _ in range(cycles):
        if np.all(steps < REFINE_MIN_STEP):
            break
        moved = np.zeros(k, dtype=bool)
        for j in range(dim):
            probes = np.repeat(pts[:, None, :], 2, axis=1)  # (k, 2, dim)
            probes[:, 0, j] += steps
            probes[:, 1, j] -= steps
            np.clip(probes, 0.0, 1.0, out=probes)
            pvals = np.asarray(fn(probes.reshape(-1, dim)), dtype=float).reshape(k, 2)
            side = np.argmax(pvals, axis=1)
            cand_best = pvals[rows, side]
            improved = cand_best > best
            pts[improved] = probes[improved, side[improved]]
            best[improved] = cand_best[improved]
            moved |= improved
        steps[~moved] *= 0.5
    winner = int(np.argmax(best))
    return pts[winner].copy(), float(best[winner])
