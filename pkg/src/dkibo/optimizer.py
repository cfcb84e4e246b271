"""Campaign drivers: the model-injected loop, the standard-BO and
random-search baselines, and the linear-mean ablation.

All drivers maximize the objective. Minimization benchmarks are wrapped
as their negation by the harness; regrets are computed in ``bench``.

A campaign is a pure function of (config, objective): every random
draw comes from a stream keyed by (seed, purpose, iteration), so two
runs of the same config agree bitwise, and the ask/tell driver in
``state`` replays the same trajectory.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import gp
from .acquisition import (
    AcquisitionConfig,
    AugmentedAcquisition,
    AugmentState,
    compute_gamma,
    early_stop_triggered,
    maximize_acquisition,
)
from .errors import ObjectiveError
from .models import RegressorSpec, ZeroRegressor, fit_regressor
from .space import (
    STREAM_ACQ,
    STREAM_GP,
    STREAM_INIT,
    STREAM_RANDOM_SEARCH,
    STREAM_REGRESSOR,
    SearchSpace,
    stream,
)

VARIANTS = ("dkibo", "sbo", "rs", "linear_mean", "linear_mean_es")


@dataclass(frozen=True)
class CampaignConfig:
    """Everything a trial needs; the seed fixes the whole trajectory."""

    space: SearchSpace
    acquisition: AcquisitionConfig = field(default_factory=AcquisitionConfig)
    regressor: RegressorSpec = field(default_factory=RegressorSpec)
    mean_mode: str = "zero"
    n_init: int = 5
    i_max: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.n_init < 2:
            raise ValueError("n_init must be >= 2 (GP fitting precondition)")
        if self.i_max < 0:
            raise ValueError("i_max must be >= 0")
        if self.mean_mode not in gp.MEAN_MODES:
            raise ValueError(f"unknown mean mode {self.mean_mode!r}")


@dataclass
class CampaignResult:
    """Full trajectory of one trial, in acquisition order.

    ``ys`` are in the maximization convention; ``best_ys`` is the running
    maximum. ``gamma_history`` holds, per post-initialization iteration,
    the corrective scale in effect after that iteration's bookkeeping
    (exactly 0.0 from the drop iteration on; None for variants without a
    corrective term).
    """

    variant: str
    seed: int
    xs: np.ndarray
    ys: np.ndarray
    iterations: np.ndarray
    was_initial: np.ndarray
    best_ys: np.ndarray
    gamma_history: list[float | None]
    drop_iteration: int | None
    init_seconds: float
    iter_seconds: list[float]

    @property
    def n_evaluations(self) -> int:
        return self.ys.size

    @property
    def best_y(self) -> float:
        return float(self.best_ys[-1])


def _probe(objective, x: np.ndarray) -> float:
    y = float(objective(x))
    if not np.isfinite(y):
        raise ObjectiveError(
            f"objective returned non-finite value {y!r} at x={x.tolist()}"
        )
    return y


def _assemble(
    variant, config, xs, ys, iterations, was_initial, gamma_history, drop_iteration,
    init_seconds, iter_seconds,
) -> CampaignResult:
    ys_arr = np.array(ys, dtype=float)
    return CampaignResult(
        variant=variant,
        seed=config.seed,
        xs=np.array(xs, dtype=float),
        ys=ys_arr,
        iterations=np.array(iterations, dtype=int),
        was_initial=np.array(was_initial, dtype=bool),
        best_ys=np.maximum.accumulate(ys_arr),
        gamma_history=gamma_history,
        drop_iteration=drop_iteration,
        init_seconds=init_seconds,
        iter_seconds=iter_seconds,
    )


def _run_loop(
    config: CampaignConfig,
    objective,
    *,
    variant: str,
    corrective: bool,
    monitor: str | None,
    mean_mode: str,
) -> CampaignResult:
    """Shared engine: initialize, then fit-maximize-probe with optional
    corrective term and early-stop action ('drop' zeroes the corrective
    scale; 'swap' switches a linear prior mean to zero-mean)."""
    space = config.space
    acq_config = config.acquisition
    t0 = time.perf_counter()

    x_init = space.sample_uniform(config.n_init, stream(config.seed, STREAM_INIT))
    xs = [x for x in x_init]
    ys = [_probe(objective, x) for x in xs]
    iterations = [0] * config.n_init
    was_initial = [True] * config.n_init
    init_seconds = time.perf_counter() - t0

    state = AugmentState()
    gamma_history: list[float | None] = []
    iter_seconds: list[float] = []
    drop_iteration: int | None = None
    warm = None
    current_mean = mean_mode

    for i in range(1, config.i_max + 1):
        t_iter = time.perf_counter()
        X = np.array(xs)
        Xn = space.normalize(X)
        yv = np.array(ys, dtype=float)

        if corrective:
            xi_model = fit_regressor(
                config.regressor, Xn, yv, stream(config.seed, STREAM_REGRESSOR, i)
            )
        else:
            xi_model = ZeroRegressor()
        gpm = gp.fit(
            Xn,
            yv,
            mean_mode=current_mean,
            rng=stream(config.seed, STREAM_GP, i),
            warm_start=warm,
        )
        warm = gpm.params

        acq = AugmentedAcquisition(
            gpm,
            xi_model,
            acq_config,
            state,
            iteration=i,
            i_max=config.i_max,
            y_best=float(yv.max()),
        )
        if corrective and i == 1:
            xn_init = Xn[: config.n_init]
            state.gamma = compute_gamma(
                acq_config.kind,
                acq.base_values(xn_init),
                xi_model.predict(xn_init),
            )

        field_fn = acq.values if corrective else acq.base_values
        z_star, _ = maximize_acquisition(
            field_fn, space.dim, stream(config.seed, STREAM_ACQ, i)
        )
        x_star = space.denormalize(z_star)
        y_star = _probe(objective, x_star)
        xs.append(x_star)
        ys.append(y_star)
        iterations.append(i)
        was_initial.append(False)

        if monitor is not None and i >= 2 and not state.dropped:
            Xn_all = space.normalize(np.array(xs))
            if early_stop_triggered(
                Xn_all[-2], Xn_all[-1], Xn_all[:-1], acq_config.epsilon
            ):
                state.dropped = True
                state.drop_iteration = i
                drop_iteration = i
                if monitor == "swap":
                    current_mean = "zero"

        if corrective:
            gamma_history.append(0.0 if state.dropped else state.gamma)
        else:
            gamma_history.append(None)
        iter_seconds.append(time.perf_counter() - t_iter)

    return _assemble(
        variant, config, xs, ys, iterations, was_initial, gamma_history,
        drop_iteration, init_seconds, iter_seconds,
    )


def run_campaign(config: CampaignConfig, objective) -> CampaignResult:
    """The model-injected loop: fit corrective model and GP each iteration,
    maximize the augmented acquisition, probe, and run the drop monitor.
    With ``regressor.kind='none'`` the corrective term is identically
    zero and the trajectory coincides with the standard-BO baseline.
    """
    return _run_loop(
        config,
        objective,
        variant="dkibo",
        corrective=True,
        monitor="drop",
        mean_mode=config.mean_mode,
    )


def run_sbo(config: CampaignConfig, objective) -> CampaignResult:
    """Standard BO baseline: the same loop with no corrective term and no
    early-stop monitor; ``config.regressor`` is ignored."""
    return _run_loop(
        config,
        objective,
        variant="sbo",
        corrective=False,
        monitor=None,
        mean_mode=config.mean_mode,
    )


def run_random_search(config: CampaignConfig, objective) -> CampaignResult:
    """Uniform sampling baseline with the same initial design and result
    schema: n_init + i_max evaluations in total."""
    space = config.space
    t0 = time.perf_counter()
    x_init = space.sample_uniform(config.n_init, stream(config.seed, STREAM_INIT))
    xs = [x for x in x_init]
    ys = [_probe(objective, x) for x in xs]
    init_seconds = time.perf_counter() - t0

    iterations = [0] * config.n_init
    was_initial = [True] * config.n_init
    iter_seconds: list[float] = []
    if config.i_max > 0:
        draws = space.sample_uniform(
            config.i_max, stream(config.seed, STREAM_RANDOM_SEARCH)
        )
        for i in range(1, config.i_max + 1):
            t_iter = time.perf_counter()
            x = draws[i - 1]
            ys.append(_probe(objective, x))
            xs.append(x)
            iterations.append(i)
            was_initial.append(False)
            iter_seconds.append(time.perf_counter() - t_iter)

    return _assemble(
        "rs", config, xs, ys, iterations, was_initial,
        [None] * config.i_max, None, init_seconds, iter_seconds,
    )


def run_variant(variant: str, config: CampaignConfig, objective) -> CampaignResult:
    """Dispatch a single named variant (the CLI runner's entry point)."""
    if variant == "dkibo":
        return run_campaign(config, objective)
    if variant == "sbo":
        return run_sbo(config, objective)
    if variant == "rs":
        return run_random_search(config, objective)
    if variant == "linear_mean":
        return _run_loop(
            replace(config, mean_mode="linear"), objective, variant="linear_mean",
            corrective=False, monitor=None, mean_mode="linear",
        )
    if variant == "linear_mean_es":
        return _run_loop(
            replace(config, mean_mode="linear"), objective, variant="linear_mean_es",
            corrective=False, monitor="swap", mean_mode="linear",
        )
    raise ValueError(f"unknown variant {variant!r}; choices: {VARIANTS}")


def run_linear_mean_ablation(config: CampaignConfig, objective) -> dict[str, CampaignResult]:
    """Three shared-seed campaigns probing the linear prior mean:

    * ``linear_mean``    -- plain BO with a linear-mean GP throughout;
    * ``linear_mean_es`` -- same, but the movement monitor swaps the mean
      to zero when it fires (the swap iteration lands in
      ``drop_iteration``);
    * ``dkibo``          -- zero-mean GP with a linear corrective term.
    """
    linear_cfg = replace(config, mean_mode="linear")
    dkibo_cfg = replace(
        config, mean_mode="zero", regressor=RegressorSpec.linear()
    )
    return {
        "linear_mean": _run_loop(
            linear_cfg, objective, variant="linear_mean",
            corrective=False, monitor=None, mean_mode="linear",
        ),
        "linear_mean_es": _run_loop(
            linear_cfg, objective, variant="linear_mean_es",
            corrective=False, monitor="swap", mean_mode="linear",
        ),
        "dkibo": run_campaign(dkibo_cfg, objective),
    }
