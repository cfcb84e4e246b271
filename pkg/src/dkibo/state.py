"""Ask/tell driver over a self-describing JSON state file.

The file carries everything needed to continue a campaign from another
process: schema version, the campaign configuration, the full
observation list (original units), the corrective scale, the drop flag,
the last fitted kernel parameters (the warm start of the next fit), and
the derived-stream bookkeeping. Fields:

``schema``            file format tag, currently ``dkibo-state-v1``
``config``            space bounds, acquisition, regressor, mean mode,
                      n_init, i_max, seed
``observations``      list of ``{"x": [...], "y": ...}`` in append order
``gamma``             corrective scale (null until the initial design
                      is complete)
``dropped``           whether the movement monitor has fired
``drop_iteration``    iteration at which it fired (null otherwise)
``gp_params``         kernel parameters fitted at the latest answered
                      iteration (null before the first one)
``rng``               ``{"algorithm": "philox-seedseq", "seed": ...}``;
                      streams are re-derived from (seed, purpose,
                      iteration), so no raw generator state is stored

``suggest`` is pure: it never writes, so re-invoking it without an
intervening ``observe`` returns the same point. ``observe`` validates,
refits the just-answered iteration's GP to advance the warm-start chain,
appends, runs the early-stop bookkeeping, and persists atomically
(write-temp-then-rename). Driving ``suggest``/``observe`` with the same
seed replays ``run_campaign`` exactly.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass

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
from .errors import (
    DimensionMismatchError,
    NonFiniteValueError,
    OutOfBoundsError,
    StateError,
)
from .models import RegressorSpec, fit_regressor
from .optimizer import CampaignConfig
from .space import (
    STREAM_ACQ,
    STREAM_GP,
    STREAM_INIT,
    STREAM_REGRESSOR,
    SearchSpace,
    stream,
)

STATE_SCHEMA = "dkibo-state-v1"


def config_to_dict(config: CampaignConfig) -> dict:
    return {
        "space": {
            "lower": config.space.lower.tolist(),
            "upper": config.space.upper.tolist(),
        },
        "acquisition": asdict(config.acquisition),
        "regressor": asdict(config.regressor),
        "mean_mode": config.mean_mode,
        "n_init": config.n_init,
        "i_max": config.i_max,
        "seed": config.seed,
    }


def config_from_dict(data: dict) -> CampaignConfig:
    try:
        space = SearchSpace(data["space"]["lower"], data["space"]["upper"])
        return CampaignConfig(
            space=space,
            acquisition=AcquisitionConfig(**data["acquisition"]),
            regressor=RegressorSpec(**data["regressor"]),
            mean_mode=data["mean_mode"],
            n_init=int(data["n_init"]),
            i_max=int(data["i_max"]),
            seed=int(data["seed"]),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise StateError(f"malformed campaign config: {err}") from err


@dataclass
class CampaignState:
    config: CampaignConfig
    observations: list[tuple[list[float], float]]
    gamma: float | None
    dropped: bool
    drop_iteration: int | None
    gp_params: gp.KernelParams | None

    @property
    def n_observed(self) -> int:
        return len(self.observations)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        X = np.array([x for x, _ in self.observations], dtype=float)
        y = np.array([y for _, y in self.observations], dtype=float)
        return X, y


def _atomic_write(path: str, payload: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)


def _dump(path: str, state: CampaignState) -> None:
    _atomic_write(
        path,
        {
            "schema": STATE_SCHEMA,
            "config": config_to_dict(state.config),
            "observations": [
                {"x": x, "y": y} for x, y in state.observations
            ],
            "gamma": state.gamma,
            "dropped": state.dropped,
            "drop_iteration": state.drop_iteration,
            "gp_params": None
            if state.gp_params is None
            else asdict(state.gp_params),
            "rng": {"algorithm": "philox-seedseq", "seed": state.config.seed},
        },
    )


def init_state(path: str, config: CampaignConfig) -> None:
    """Create a fresh state file for the given configuration."""
    _dump(path, CampaignState(config, [], None, False, None, None))


def load_state(path: str) -> CampaignState:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as err:
        raise StateError(f"state file not found: {path}") from err
    except json.JSONDecodeError as err:
        raise StateError(f"state file is not valid JSON: {err}") from err
    schema = data.get("schema")
    if schema != STATE_SCHEMA:
        raise StateError(
            f"state schema mismatch: expected {STATE_SCHEMA!r}, found {schema!r}"
        )
    config = config_from_dict(data["config"])
    observations = [
        ([float(v) for v in entry["x"]], float(entry["y"]))
        for entry in data.get("observations", [])
    ]
    gp_params = None
    if data.get("gp_params") is not None:
        gp_params = gp.KernelParams(**data["gp_params"])
    return CampaignState(
        config=config,
        observations=observations,
        gamma=data.get("gamma"),
        dropped=bool(data.get("dropped", False)),
        drop_iteration=data.get("drop_iteration"),
        gp_params=gp_params,
    )


def fit_iteration_models(state: CampaignState, iteration: int, X, y):
    """Corrective model and GP exactly as the campaign fits them at
    ``iteration`` (same derived streams, same warm start)."""
    config = state.config
    Xn = config.space.normalize(X)
    xi_model = fit_regressor(
        config.regressor, Xn, y, stream(config.seed, STREAM_REGRESSOR, iteration)
    )
    gpm = gp.fit(
        Xn,
        y,
        mean_mode=config.mean_mode,
        rng=stream(config.seed, STREAM_GP, iteration),
        warm_start=state.gp_params,
    )
    return Xn, xi_model, gpm


def suggest(path: str) -> np.ndarray:
    """Next point to evaluate, in original units. Pure: rereads the file
    and recomputes, so repeated calls agree bit-for-bit."""
    state = load_state(path)
    config = state.config
    k = state.n_observed
    if k < config.n_init:
        design = config.space.sample_uniform(
            config.n_init, stream(config.seed, STREAM_INIT)
        )
        return design[k]

    iteration = k - config.n_init + 1
    X, y = state.arrays()
    Xn, xi_model, gpm = fit_iteration_models(state, iteration, X, y)
    augment = AugmentState(
        gamma=state.gamma,
        dropped=state.dropped,
        drop_iteration=state.drop_iteration,
    )
    acq = AugmentedAcquisition(
        gpm,
        xi_model,
        config.acquisition,
        augment,
        iteration=iteration,
        i_max=config.i_max,
        y_best=float(y.max()),
    )
    z_star, _ = maximize_acquisition(
        acq.values, config.space.dim, stream(config.seed, STREAM_ACQ, iteration)
    )
    return config.space.denormalize(z_star)


def observe(path: str, x, y: float) -> CampaignState:
    """Validate and append one observation, keeping the replay bookkeeping
    (warm-start chain, corrective scale, drop flag) in lockstep with
    ``run_campaign``. The file is replaced atomically; any validation
    error leaves it untouched."""
    state = load_state(path)
    config = state.config
    x = np.asarray(x, dtype=float)
    if x.shape != (config.space.dim,):
        raise DimensionMismatchError(
            f"expected {config.space.dim} coordinates, got shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise NonFiniteValueError(f"non-finite coordinate in x={x.tolist()}")
    if not config.space.contains(x):
        raise OutOfBoundsError(
            f"point {x.tolist()} outside {config.space.describe()}"
        )
    y = float(y)
    if not np.isfinite(y):
        raise NonFiniteValueError(f"non-finite objective value {y!r}")

    k = state.n_observed
    if k >= config.n_init:
        # This observation answers iteration k - n_init + 1; refit that
        # iteration's GP (identical streams reproduce what suggest used)
        # so the next fit warm-starts from its optimum.
        iteration = k - config.n_init + 1
        X_prev, y_prev = state.arrays()
        _, _, gpm = fit_iteration_models(state, iteration, X_prev, y_prev)
        state.gp_params = gpm.params

    state.observations.append((x.tolist(), y))

    if state.n_observed == config.n_init:
        # Initial design complete: fix the corrective scale from the
        # first fitted models, exactly as the campaign does at iteration 1.
        X0, y0 = state.arrays()
        Xn0, xi_model, gpm = fit_iteration_models(state, 1, X0, y0)
        acq = AugmentedAcquisition(
            gpm,
            xi_model,
            config.acquisition,
            AugmentState(),
            iteration=1,
            i_max=config.i_max,
            y_best=float(y0.max()),
        )
        state.gamma = compute_gamma(
            config.acquisition.kind,
            acq.base_values(Xn0),
            xi_model.predict(Xn0),
        )

    appended_iteration = state.n_observed - config.n_init
    if appended_iteration >= 2 and not state.dropped:
        X_all, _ = state.arrays()
        Xn_all = config.space.normalize(X_all)
        if early_stop_triggered(
            Xn_all[-2], Xn_all[-1], Xn_all[:-1], config.acquisition.epsilon
        ):
            state.dropped = True
            state.drop_iteration = appended_iteration

    _dump(path, state)
    return state
