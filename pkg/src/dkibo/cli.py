"""Command-line front end: experiment runner with trial fan-out and CSV
emission, ask/tell commands, surface dumps, and report tables.

Subcommands
-----------
run      execute an experiment config, writing rows.csv + summary.csv
init     create an ask/tell state file
suggest  print the next point (12 significant digits per coordinate)
observe  append an observation to a state file
surface  dump a model grid (gp mean/sigma, corrective value, acquisition)
report   recompute the summary table from a rows.csv

Every CSV starts with a schema-version header line (``# schema=...``).
``run`` output is a pure function of the config file: reruns are
byte-identical. Environment overrides: ``DKIBO_OUTPUT_DIR`` (output
directory) and ``DKIBO_PARALLEL`` (worker count); nothing else.

Exit codes: 0 success; 2 config/argument error; 3 objective failure;
4 state-file/schema error; 5 dimension mismatch; 6 out-of-bounds point;
7 non-finite value; 8 surrogate fitting failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import bench, gp, state as state_mod
from .acquisition import ACQUISITION_KINDS, AcquisitionConfig, AugmentedAcquisition, AugmentState
from .errors import (
    ConfigError,
    DimensionMismatchError,
    DkiboError,
    GpFitError,
    NonFiniteValueError,
    ObjectiveError,
    OutOfBoundsError,
    StateError,
)
from .models import REGRESSOR_KINDS, RegressorSpec
from .optimizer import VARIANTS, CampaignConfig, CampaignResult, run_variant
from .space import SearchSpace

logger = logging.getLogger(__name__)

ROWS_SCHEMA = "dkibo.results.v1"
SUMMARY_SCHEMA = "dkibo.summary.v1"
SURFACE_SCHEMA = "dkibo.surface.v1"

ROW_COLUMNS = (
    "variant", "benchmark", "acquisition", "kappa", "trial", "iteration",
    "x", "y", "best_y", "simple_regret", "cmr", "gamma", "dropped",
)
SUMMARY_COLUMNS = (
    "variant", "benchmark", "acquisition", "kappa", "n_trials", "evaluations",
    "simple_regret_median", "simple_regret_std", "cmr_median", "cmr_std",
    "drop_count", "drop_median", "drop_q25", "drop_q75",
)

_EXIT_CODES = (
    (ConfigError, 2),
    (ObjectiveError, 3),
    (StateError, 4),
    (DimensionMismatchError, 5),
    (OutOfBoundsError, 6),
    (NonFiniteValueError, 7),
    (GpFitError, 8),
)


def _fmt(value) -> str:
    """Deterministic CSV cell formatting (shortest round-trip floats)."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _fmt_x(x: np.ndarray) -> str:
    return ";".join(repr(float(v)) for v in x)


@dataclasses.dataclass(frozen=True)
class ExperimentSpec:
    """One row-block of the experiment matrix."""

    name: str
    variant: str
    benchmark: str
    acquisition: AcquisitionConfig
    regressor: RegressorSpec
    mean_mode: str
    trials: int
    n_init: int
    i_max: int
    base_seed: int

    def campaign_config(self, trial: int) -> CampaignConfig:
        benchmark = bench.get_benchmark(self.benchmark)
        return CampaignConfig(
            space=benchmark.space,
            acquisition=self.acquisition,
            regressor=self.regressor,
            mean_mode=self.mean_mode,
            n_init=self.n_init,
            i_max=self.i_max,
            seed=self.base_seed + trial,
        )


def _require(mapping: dict, key: str, where: str):
    if key not in mapping:
        raise ConfigError(f"{where}: missing required field {key!r}")
    return mapping[key]


def _as_positive_int(value, where: str, minimum: int = 0) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(f"{where}: expected an integer >= {minimum}, got {value!r}")
    return value


def _parse_regressor(data, where: str) -> RegressorSpec:
    if data is None:
        return RegressorSpec.none()
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
    kind = data.get("kind", "random_forest")
    if kind not in REGRESSOR_KINDS:
        raise ConfigError(
            f"{where}.kind: unknown regressor {kind!r}; choices: {REGRESSOR_KINDS}"
        )
    base = {
        "random_forest": RegressorSpec.random_forest(),
        "gradient_boosting": RegressorSpec.gradient_boosting(),
        "linear": RegressorSpec.linear(),
        "none": RegressorSpec.none(),
    }[kind]
    allowed = {f.name for f in dataclasses.fields(RegressorSpec)}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown fields {sorted(unknown)}")
    try:
        return dataclasses.replace(base, **{k: v for k, v in data.items() if k != "kind"})
    except (TypeError, ValueError) as err:
        raise ConfigError(f"{where}: {err}") from err


def parse_experiment_config(data: dict, where: str = "config") -> tuple[list[ExperimentSpec], str]:
    """Validate the run-config document; returns (experiments, output_dir)."""
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: top level must be an object")
    output_dir = data.get("output_dir", "results")
    experiments_raw = _require(data, "experiments", where)
    if not isinstance(experiments_raw, list) or not experiments_raw:
        raise ConfigError(f"{where}.experiments: expected a non-empty list")

    defaults = {
        "trials": data.get("trials", 50),
        "n_init": data.get("n_init", 5),
        "i_max": data.get("i_max", 100),
        "base_seed": data.get("base_seed", 0),
    }
    specs = []
    seen_names = set()
    for idx, entry in enumerate(experiments_raw):
        loc = f"{where}.experiments[{idx}]"
        if not isinstance(entry, dict):
            raise ConfigError(f"{loc}: expected an object")
        variant = _require(entry, "variant", loc)
        if variant not in VARIANTS:
            raise ConfigError(f"{loc}.variant: unknown variant {variant!r}; choices: {VARIANTS}")
        benchmark = _require(entry, "benchmark", loc)
        if benchmark not in bench.BENCHMARKS:
            raise ConfigError(
                f"{loc}.benchmark: unknown benchmark {benchmark!r}; "
                f"choices: {sorted(bench.BENCHMARKS)}"
            )
        kind = entry.get("acquisition", "ucb")
        if kind not in ACQUISITION_KINDS:
            raise ConfigError(
                f"{loc}.acquisition: unknown kind {kind!r}; choices: {ACQUISITION_KINDS}"
            )
        kappa = entry.get("kappa", 2.6)
        if not isinstance(kappa, (int, float)) or isinstance(kappa, bool) or kappa <= 0:
            raise ConfigError(f"{loc}.kappa: expected a positive number, got {kappa!r}")
        epsilon = entry.get("epsilon", 0.05)
        if not isinstance(epsilon, (int, float)) or epsilon <= 0:
            raise ConfigError(f"{loc}.epsilon: expected a positive number, got {epsilon!r}")
        try:
            acquisition = AcquisitionConfig(
                kind=kind,
                kappa=float(kappa),
                xi_offset=float(entry.get("xi_offset", 0.0)),
                epsilon=float(epsilon),
                schedule_enabled=bool(entry.get("schedule_enabled", True)),
            )
        except ValueError as err:
            raise ConfigError(f"{loc}: {err}") from err
        regressor = _parse_regressor(entry.get("regressor"), f"{loc}.regressor")
        mean_mode = entry.get("mean_mode", "zero")
        if mean_mode not in gp.MEAN_MODES:
            raise ConfigError(f"{loc}.mean_mode: unknown mode {mean_mode!r}")
        trials = _as_positive_int(entry.get("trials", defaults["trials"]), f"{loc}.trials", 1)
        n_init = _as_positive_int(entry.get("n_init", defaults["n_init"]), f"{loc}.n_init", 2)
        i_max = _as_positive_int(entry.get("i_max", defaults["i_max"]), f"{loc}.i_max", 0)
        base_seed = entry.get("base_seed", defaults["base_seed"])
        if not isinstance(base_seed, int) or isinstance(base_seed, bool) or base_seed < 0:
            raise ConfigError(f"{loc}.base_seed: expected an integer >= 0")
        name = entry.get("name", f"{variant}-{benchmark}-{kind}-k{kappa:g}")
        if name in seen_names:
            raise ConfigError(f"{loc}.name: duplicate experiment name {name!r}")
        seen_names.add(name)
        specs.append(
            ExperimentSpec(
                name=name,
                variant=variant,
                benchmark=benchmark,
                acquisition=acquisition,
                regressor=regressor,
                mean_mode=mean_mode,
                trials=trials,
                n_init=n_init,
                i_max=i_max,
                base_seed=base_seed,
            )
        )
    return specs, output_dir


def _run_trial(spec: ExperimentSpec, trial: int) -> CampaignResult:
    benchmark = bench.get_benchmark(spec.benchmark)
    config = spec.campaign_config(trial)
    return run_variant(spec.variant, config, benchmark.as_maximization())


def result_rows(spec: ExperimentSpec, trial: int, result: CampaignResult) -> list[list[str]]:
    """Flatten one trial into rows.csv cells (regrets over the full
    evaluation sequence, initial design included)."""
    benchmark = bench.get_benchmark(spec.benchmark)
    regrets = bench.result_regrets(result, benchmark)
    rows = []
    for pos in range(result.n_evaluations):
        iteration = int(result.iterations[pos])
        if result.was_initial[pos]:
            gamma = None
            dropped = False
        else:
            gamma = result.gamma_history[iteration - 1]
            dropped = (
                result.drop_iteration is not None and iteration >= result.drop_iteration
            )
        rows.append(
            [
                spec.variant,
                spec.benchmark,
                spec.acquisition.kind,
                _fmt(float(spec.acquisition.kappa)),
                str(trial),
                str(iteration),
                _fmt_x(result.xs[pos]),
                _fmt(float(result.ys[pos])),
                _fmt(float(result.best_ys[pos])),
                _fmt(float(regrets.simple[pos])),
                _fmt(float(regrets.cumulative_mean[pos])),
                _fmt(gamma),
                _fmt(bool(dropped)),
            ]
        )
    return rows


def _write_csv(path: Path, schema: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# schema={schema}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def summarize_results(
    specs_results: list[tuple[ExperimentSpec, list[CampaignResult]]],
) -> list[list[str]]:
    rows = []
    for spec, results in specs_results:
        benchmark = bench.get_benchmark(spec.benchmark)
        series = [bench.result_regrets(r, benchmark) for r in results]
        summary = bench.aggregate(series, [r.drop_iteration for r in results])
        rows.append(
            [
                spec.variant,
                spec.benchmark,
                spec.acquisition.kind,
                _fmt(float(spec.acquisition.kappa)),
                str(summary.n_trials),
                str(results[0].n_evaluations),
                _fmt(summary.final_simple_median),
                _fmt(summary.final_simple_std),
                _fmt(summary.final_cmr_median),
                _fmt(summary.final_cmr_std),
                str(summary.drop_count),
                _fmt(summary.drop_median),
                _fmt(summary.drop_q25),
                _fmt(summary.drop_q75),
            ]
        )
    return rows


def run_experiments(
    specs: list[ExperimentSpec], output_dir: Path, parallelism: int
) -> list[tuple[ExperimentSpec, list[CampaignResult]]]:
    """Execute all trials (worker pool, results written in trial order)
    and emit rows.csv, summary.csv, and a completion manifest."""
    output_dir.mkdir(parents=True, exist_ok=True)
    rows_path = output_dir / "rows.csv"
    summary_path = output_dir / "summary.csv"
    manifest_path = output_dir / "manifest.json"
    manifest_path.write_text(json.dumps({"status": "running"}) + "\n")

    specs_results = []
    try:
        if parallelism > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=parallelism) as pool:
                for spec in specs:
                    futures = [
                        pool.submit(_run_trial, spec, trial) for trial in range(spec.trials)
                    ]
                    specs_results.append((spec, [f.result() for f in futures]))
        else:
            for spec in specs:
                specs_results.append(
                    (spec, [_run_trial(spec, trial) for trial in range(spec.trials)])
                )
    except Exception as err:
        manifest_path.write_text(
            json.dumps({"status": "failed", "error": str(err)}) + "\n"
        )
        raise

    all_rows = []
    for spec, results in specs_results:
        for trial, result in enumerate(results):
            all_rows.extend(result_rows(spec, trial, result))
    _write_csv(rows_path, ROWS_SCHEMA, ROW_COLUMNS, all_rows)
    _write_csv(summary_path, SUMMARY_SCHEMA, SUMMARY_COLUMNS, summarize_results(specs_results))
    manifest_path.write_text(
        json.dumps(
            {
                "status": "complete",
                "experiments": [spec.name for spec in specs],
                "files": [rows_path.name, summary_path.name],
            },
            indent=1,
        )
        + "\n"
    )
    return specs_results


def _cmd_run(args) -> int:
    config_path = Path(args.config)
    try:
        data = json.loads(config_path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {config_path}")
    except json.JSONDecodeError as err:
        raise ConfigError(f"config is not valid JSON: {err}")
    specs, output_dir = parse_experiment_config(data)
    if args.output_dir:
        output_dir = args.output_dir
    output_dir = Path(os.environ.get("DKIBO_OUTPUT_DIR", output_dir))
    parallelism = args.parallel
    if parallelism is None:
        parallelism = int(os.environ.get("DKIBO_PARALLEL", os.cpu_count() or 1))
    run_experiments(specs, output_dir, parallelism)
    print(f"wrote {output_dir / 'rows.csv'} and {output_dir / 'summary.csv'}")
    return 0


def _cmd_init(args) -> int:
    lower = [float(v) for v in args.lower.split(",")]
    upper = [float(v) for v in args.upper.split(",")]
    try:
        space = SearchSpace(lower, upper)
        config = CampaignConfig(
            space=space,
            acquisition=AcquisitionConfig(
                kind=args.acquisition, kappa=args.kappa, epsilon=args.epsilon
            ),
            regressor=_parse_regressor(
                json.loads(args.regressor) if args.regressor else None, "--regressor"
            ),
            mean_mode=args.mean_mode,
            n_init=args.n_init,
            i_max=args.i_max,
            seed=args.seed,
        )
    except ValueError as err:
        raise ConfigError(str(err)) from err
    state_mod.init_state(args.state, config)
    print(f"initialized {args.state}")
    return 0


def _cmd_suggest(args) -> int:
    x = state_mod.suggest(args.state)
    if args.full_precision:
        print(" ".join(repr(float(v)) for v in x))
    else:
        print(" ".join(f"{v:.12g}" for v in x))
    return 0


def _cmd_observe(args) -> int:
    x = np.array([float(v) for v in args.x.split(",")])
    state_mod.observe(args.state, x, args.y)
    print(f"recorded y={args.y!r}; observations now "
          f"{state_mod.load_state(args.state).n_observed}")
    return 0


def _surface_rows(st, resolution: int, dims, fixed) -> tuple[list[str], list[list[str]]]:
    config = st.config
    d = config.space.dim
    if st.n_observed < max(2, config.n_init):
        raise ConfigError(
            "surface needs a fitted model: complete the initial design first "
            f"({st.n_observed}/{config.n_init} observations)"
        )
    X, y = st.arrays()
    iteration = max(1, st.n_observed - config.n_init + 1)
    Xn, xi_model, gpm = state_mod.fit_iteration_models(st, iteration, X, y)
    augment = AugmentState(
        gamma=st.gamma, dropped=st.dropped, drop_iteration=st.drop_iteration
    )
    acq = AugmentedAcquisition(
        gpm, xi_model, config.acquisition, augment,
        iteration=iteration, i_max=config.i_max, y_best=float(y.max()),
    )

    axes = [np.linspace(0.0, 1.0, resolution) for _ in dims]
    if len(dims) == 1:
        grid = axes[0][:, None]
    else:
        a, b = np.meshgrid(axes[0], axes[1], indexing="ij")
        grid = np.column_stack([a.ravel(), b.ravel()])
    Z = np.tile(config.space.normalize(fixed), (grid.shape[0], 1))
    for j, dim in enumerate(dims):
        Z[:, dim] = grid[:, j]
    points = config.space.denormalize(Z)

    mu, sigma = gpm.predict(Z)
    xi_vals = np.asarray(xi_model.predict(Z), dtype=float)
    acq_vals = acq.values(Z)
    header = [f"x{j + 1}" for j in range(d)] + [
        "gp_mean", "gp_sigma", "xi_value", "augmented_acq",
    ]
    rows = []
    for r in range(points.shape[0]):
        rows.append(
            [repr(float(v)) for v in points[r]]
            + [_fmt(float(mu[r])), _fmt(float(sigma[r])),
               _fmt(float(xi_vals[r])), _fmt(float(acq_vals[r]))]
        )
    return header, rows


def _cmd_surface(args) -> int:
    st = state_mod.load_state(args.state)
    d = st.config.space.dim
    if args.resolution < 2:
        raise ConfigError("--resolution must be >= 2")
    if args.dims is not None:
        dims = [int(v) for v in args.dims.split(",")]
        if len(dims) not in (1, 2) or len(set(dims)) != len(dims):
            raise ConfigError("--dims takes one or two distinct dimension indices")
        for dim in dims:
            if not 0 <= dim < d:
                raise ConfigError(f"--dims: index {dim} out of range for dim={d}")
    elif d <= 2:
        dims = list(range(d))
    else:
        raise ConfigError(
            f"space has {d} dimensions: a full grid is only supported for "
            "dim <= 2; pass --dims i,j (and --at) to name a 2-d slice"
        )
    if args.at is not None:
        fixed = np.array([float(v) for v in args.at.split(",")])
        if fixed.shape != (d,):
            raise ConfigError(f"--at must give all {d} coordinates")
        if not st.config.space.contains(fixed):
            raise ConfigError("--at point is outside the search space")
    else:
        if d > len(dims):
            raise ConfigError("--at is required when fixing dimensions")
        fixed = st.config.space.lower.copy()
    header, rows = _surface_rows(st, args.resolution, dims, fixed)
    _write_csv(Path(args.output), SURFACE_SCHEMA, header, rows)
    print(f"wrote {args.output} ({len(rows)} grid points)")
    return 0


def _read_rows_csv(path: Path) -> list[dict]:
    try:
        lines = path.read_text().splitlines()
    except FileNotFoundError:
        raise ConfigError(f"rows file not found: {path}")
    if not lines or not lines[0].startswith("# schema="):
        raise ConfigError(f"{path}: missing schema header line")
    schema = lines[0].split("=", 1)[1]
    if schema != ROWS_SCHEMA:
        raise ConfigError(f"{path}: expected schema {ROWS_SCHEMA}, found {schema}")
    header = lines[1].split(",")
    if header != list(ROW_COLUMNS):
        raise ConfigError(f"{path}: unexpected columns {header}")
    records = []
    for line in lines[2:]:
        if not line:
            continue
        parts = line.split(",")
        records.append(dict(zip(header, parts)))
    return records


def report_from_rows(path: Path) -> list[list[str]]:
    """Rebuild the summary table from a rows.csv (used by ``report`` and
    the hand-written-fixture tests)."""
    records = _read_rows_csv(path)
    groups: dict[tuple, dict[str, list[dict]]] = {}
    for rec in records:
        key = (rec["variant"], rec["benchmark"], rec["acquisition"], rec["kappa"])
        groups.setdefault(key, {}).setdefault(rec["trial"], []).append(rec)
    out = []
    for key in groups:
        trials = groups[key]
        finals_simple, finals_cmr, drops = [], [], []
        evaluations = None
        for trial_rows in trials.values():
            evaluations = len(trial_rows)
            finals_simple.append(float(trial_rows[-1]["simple_regret"]))
            finals_cmr.append(float(trial_rows[-1]["cmr"]))
            dropped_iters = [
                int(r["iteration"]) for r in trial_rows if r["dropped"] == "true"
            ]
            drops.append(min(dropped_iters) if dropped_iters else None)
        fs = np.array(finals_simple)
        fc = np.array(finals_cmr)
        real_drops = [d for d in drops if d is not None]
        if real_drops:
            arr = np.array(real_drops, dtype=float)
            drop_median, drop_q25, drop_q75 = (
                float(np.median(arr)),
                float(np.percentile(arr, 25.0)),
                float(np.percentile(arr, 75.0)),
            )
        else:
            drop_median = drop_q25 = drop_q75 = None
        out.append(
            [
                key[0], key[1], key[2], key[3],
                str(len(trials)), str(evaluations),
                _fmt(float(np.median(fs))), _fmt(float(np.std(fs))),
                _fmt(float(np.median(fc))), _fmt(float(np.std(fc))),
                str(len(real_drops)),
                _fmt(drop_median), _fmt(drop_q25), _fmt(drop_q75),
            ]
        )
    return out


def _cmd_report(args) -> int:
    rows = report_from_rows(Path(args.rows))
    _write_csv(Path(args.output), SUMMARY_SCHEMA, SUMMARY_COLUMNS, rows)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dkibo",
        description="Bayesian optimization with model-injected acquisitions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config, emit CSVs")
    p_run.add_argument("config", help="JSON experiment configuration")
    p_run.add_argument("--output-dir", default=None, help="override output directory")
    p_run.add_argument("--parallel", type=int, default=None,
                       help="worker processes (default: cpu count)")
    p_run.set_defaults(fn=_cmd_run)

    p_init = sub.add_parser("init", help="create an ask/tell state file")
    p_init.add_argument("state")
    p_init.add_argument("--lower", required=True, help="comma-separated lower bounds")
    p_init.add_argument("--upper", required=True, help="comma-separated upper bounds")
    p_init.add_argument("--acquisition", default="ucb", choices=ACQUISITION_KINDS)
    p_init.add_argument("--kappa", type=float, default=2.6)
    p_init.add_argument("--epsilon", type=float, default=0.05)
    p_init.add_argument("--regressor", default=None,
                        help='JSON regressor spec, e.g. {"kind": "random_forest"}')
    p_init.add_argument("--mean-mode", default="zero", choices=gp.MEAN_MODES)
    p_init.add_argument("--n-init", type=int, default=5)
    p_init.add_argument("--i-max", type=int, default=100)
    p_init.add_argument("--seed", type=int, default=0)
    p_init.set_defaults(fn=_cmd_init)

    p_suggest = sub.add_parser("suggest", help="print the next point to evaluate")
    p_suggest.add_argument("state")
    p_suggest.add_argument("--full-precision", action="store_true",
                           help="print shortest-round-trip floats instead of "
                                "12 significant digits (exact replay)")
    p_suggest.set_defaults(fn=_cmd_suggest)

    p_observe = sub.add_parser("observe", help="record an observation")
    p_observe.add_argument("state")
    p_observe.add_argument("--x", required=True, help="comma-separated coordinates")
    p_observe.add_argument("--y", required=True, type=float)
    p_observe.set_defaults(fn=_cmd_observe)

    p_surface = sub.add_parser("surface", help="dump a model grid as CSV")
    p_surface.add_argument("state")
    p_surface.add_argument("--resolution", type=int, default=50)
    p_surface.add_argument("--output", default="surface.csv")
    p_surface.add_argument("--dims", default=None,
                           help="comma-separated dimension indices of the slice")
    p_surface.add_argument("--at", default=None,
                           help="comma-separated coordinates fixing the other dims")
    p_surface.set_defaults(fn=_cmd_surface)

    p_report = sub.add_parser("report", help="summary table from a rows.csv")
    p_report.add_argument("rows")
    p_report.add_argument("--output", default="summary.csv")
    p_report.set_defaults(fn=_cmd_report)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DkiboError as err:
        for cls, code in _EXIT_CODES:
            if isinstance(err, cls):
                print(f"error: {err}", file=sys.stderr)
                return code
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
