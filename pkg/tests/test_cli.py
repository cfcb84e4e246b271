"""CLI: runner determinism, CSV schemas, ask/tell commands, surface, report."""

import json
import subprocess
import sys

import numpy as np
import pytest

from dkibo import bench, cli
from dkibo.cli import main


def run_cli(*argv):
    return main([str(a) for a in argv])


def minimal_config(**overrides):
    config = {
        "trials": 1,
        "i_max": 0,
        "n_init": 5,
        "base_seed": 0,
        "experiments": [
            {"variant": "sbo", "benchmark": "branin"},
        ],
    }
    config.update(overrides)
    return config


def write_config(tmp_path, config):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return path


class TestRun:
    def test_zero_iterations_emits_exactly_n_init_rows(self, tmp_path):
        cfg = write_config(tmp_path, minimal_config())
        out = tmp_path / "out"
        assert run_cli("run", cfg, "--output-dir", out, "--parallel", 1) == 0
        lines = (out / "rows.csv").read_text().splitlines()
        assert lines[0] == f"# schema={cli.ROWS_SCHEMA}"
        assert lines[1].split(",") == list(cli.ROW_COLUMNS)
        assert len(lines) == 2 + 5  # header lines + n_init rows
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["status"] == "complete"

    def test_rerun_is_byte_identical(self, tmp_path):
        config = minimal_config(i_max=3)
        config["experiments"][0] = {
            "variant": "dkibo",
            "benchmark": "six_hump_camel",
            "regressor": {"kind": "random_forest"},
        }
        cfg = write_config(tmp_path, config)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        run_cli("run", cfg, "--output-dir", out1, "--parallel", 1)
        run_cli("run", cfg, "--output-dir", out2, "--parallel", 2)
        assert (out1 / "rows.csv").read_bytes() == (out2 / "rows.csv").read_bytes()
        assert (out1 / "summary.csv").read_bytes() == (out2 / "summary.csv").read_bytes()

    def test_invalid_config_gives_field_diagnostic(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, minimal_config(experiments=[{"variant": "dkibo"}])
        )
        code = run_cli("run", cfg)
        assert code == 2
        assert "experiments[0]" in capsys.readouterr().err

    def test_unknown_benchmark_rejected(self, tmp_path):
        cfg = write_config(
            tmp_path,
            minimal_config(experiments=[{"variant": "sbo", "benchmark": "nope"}]),
        )
        assert run_cli("run", cfg) == 2

    def test_env_override_for_output_dir(self, tmp_path, monkeypatch):
        cfg = write_config(tmp_path, minimal_config())
        env_dir = tmp_path / "env-out"
        monkeypatch.setenv("DKIBO_OUTPUT_DIR", str(env_dir))
        monkeypatch.setenv("DKIBO_PARALLEL", "1")
        assert run_cli("run", cfg) == 0
        assert (env_dir / "rows.csv").exists()


class TestAskTellCommands:
    def _init(self, tmp_path, **kw):
        path = tmp_path / "state.json"
        args = [
            "init", path,
            "--lower=-5,0", "--upper", "10,15",
            "--seed", "3", "--n-init", "5", "--i-max", "20",
        ]
        for key, value in kw.items():
            args += [key, value]
        assert run_cli(*args) == 0
        return path

    def test_init_then_suggest_prints_in_bounds_vector(self, tmp_path, capsys):
        path = self._init(tmp_path)
        assert run_cli("suggest", path) == 0
        fields = capsys.readouterr().out.strip().splitlines()[-1].split()
        x = np.array([float(v) for v in fields])
        assert x.shape == (2,)
        assert -5 <= x[0] <= 10 and 0 <= x[1] <= 15

    def test_observe_out_of_bounds_exits_nonzero_state_untouched(self, tmp_path):
        path = self._init(tmp_path)
        before = path.read_bytes()
        assert run_cli("observe", path, "--x", "99,0", "--y", "1.0") == 6
        assert path.read_bytes() == before

    def test_observe_nan_rejected(self, tmp_path):
        path = self._init(tmp_path)
        assert run_cli("observe", path, "--x", "1,1", "--y", "nan") == 7

    def test_state_schema_mismatch_exit_code(self, tmp_path):
        path = tmp_path / "state.json"
        path.write_text('{"schema": "other"}')
        assert run_cli("suggest", path) == 4

    @pytest.mark.slow
    def test_scripted_loop_reproduces_runner_trajectory(self, tmp_path, capsys):
        # Drive branin through suggest/observe for 105 steps and compare
        # against the runner's single-trial rows.
        benchmark = bench.get_benchmark("branin")
        config = {
            "trials": 1,
            "i_max": 100,
            "base_seed": 3,
            "experiments": [
                {
                    "variant": "dkibo",
                    "benchmark": "branin",
                    "regressor": {"kind": "random_forest"},
                }
            ],
        }
        out = tmp_path / "runner"
        run_cli("run", write_config(tmp_path, config), "--output-dir", out, "--parallel", 1)
        rows = (out / "rows.csv").read_text().splitlines()[2:]
        runner_xs = [
            [float(v) for v in line.split(",")[6].split(";")] for line in rows
        ]

        path = tmp_path / "state.json"
        run_cli(
            "init", path, "--lower=-5,0", "--upper", "10,15", "--seed", "3",
            "--i-max", "100", "--regressor", '{"kind": "random_forest"}',
        )
        capsys.readouterr()
        scripted_xs = []
        for _ in range(105):
            assert run_cli("suggest", path, "--full-precision") == 0
            fields = capsys.readouterr().out.strip().splitlines()[-1].split()
            x = np.array([float(v) for v in fields])
            scripted_xs.append(list(x))
            # campaign drivers maximize: feed the negated benchmark value
            assert run_cli("observe", path,
                           "--x=" + ",".join(repr(float(v)) for v in x),
                           "--y=" + repr(-benchmark.evaluate(x))) == 0
            capsys.readouterr()
        assert np.array_equal(np.array(scripted_xs), np.array(runner_xs))


class TestSurface:
    def _state_with_data(self, tmp_path, kind="none"):
        path = tmp_path / "state.json"
        run_cli(
            "init", path, "--lower", "0", "--upper", "1", "--seed", "1",
            "--n-init", "4", "--i-max", "10",
            "--regressor", json.dumps({"kind": kind}),
        )
        from dkibo.state import observe, suggest

        for _ in range(6):
            x = suggest(str(path))
            observe(str(path), x, float(-((x[0] - 0.4) ** 2)))
        return path

    def test_resolution_rows_on_1d(self, tmp_path):
        path = self._state_with_data(tmp_path)
        out = tmp_path / "surface.csv"
        assert run_cli("surface", path, "--resolution", 3, "--output", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == f"# schema={cli.SURFACE_SCHEMA}"
        assert lines[1] == "x1,gp_mean,gp_sigma,xi_value,augmented_acq"
        assert len(lines) == 2 + 3

    def test_zero_model_column_is_zero(self, tmp_path):
        path = self._state_with_data(tmp_path, kind="none")
        out = tmp_path / "surface.csv"
        run_cli("surface", path, "--resolution", 5, "--output", out)
        rows = [line.split(",") for line in out.read_text().splitlines()[2:]]
        assert all(float(r[3]) == 0.0 for r in rows)

    def test_gp_mean_interpolates_training_point(self, tmp_path):
        path = self._state_with_data(tmp_path)
        from dkibo.state import load_state

        st = load_state(str(path))
        X, y = st.arrays()
        out = tmp_path / "surface.csv"
        run_cli("surface", path, "--resolution", 101, "--output", out)
        rows = np.array(
            [[float(v) for v in line.split(",")]
             for line in out.read_text().splitlines()[2:]]
        )
        # nearest grid point to each training input predicts close to its y
        for xi, yi in zip(X[:, 0], y):
            j = int(np.argmin(np.abs(rows[:, 0] - xi)))
            assert abs(rows[j, 1] - yi) < 5e-2 * max(1.0, np.ptp(y))

    def test_high_dim_requires_slice(self, tmp_path):
        path = tmp_path / "state.json"
        run_cli("init", path, "--lower", "0,0,0", "--upper", "1,1,1", "--n-init", "2")
        from dkibo.state import observe, suggest

        for _ in range(2):
            x = suggest(str(path))
            observe(str(path), x, 0.5)
        assert run_cli("surface", path, "--output", tmp_path / "s.csv") == 2
        assert (
            run_cli(
                "surface", path, "--dims", "0,1", "--at", "0.5,0.5,0.5",
                "--output", tmp_path / "s.csv", "--resolution", 3,
            )
            == 0
        )


class TestReport:
    def test_summary_matches_hand_computation(self, tmp_path):
        # five hand-written single-row trials with known medians
        finals = [1.0, 2.0, 3.0, 4.0, 10.0]
        lines = [f"# schema={cli.ROWS_SCHEMA}", ",".join(cli.ROW_COLUMNS)]
        for trial, value in enumerate(finals):
            lines.append(
                f"sbo,branin,ucb,2.6,{trial},0,0.0;0.0,{-value!r},{-value!r},"
                f"{value!r},{value!r},,false"
            )
        rows_path = tmp_path / "rows.csv"
        rows_path.write_text("\n".join(lines) + "\n")
        out = tmp_path / "summary.csv"
        assert run_cli("report", rows_path, "--output", out) == 0
        record = out.read_text().splitlines()[2].split(",")
        by_col = dict(zip(cli.SUMMARY_COLUMNS, record))
        assert float(by_col["simple_regret_median"]) == 3.0
        assert float(by_col["cmr_median"]) == 3.0
        assert int(by_col["n_trials"]) == 5
        assert float(by_col["simple_regret_std"]) == pytest.approx(
            float(np.std(finals))
        )

    def test_report_agrees_with_runner_summary(self, tmp_path):
        config = minimal_config(i_max=2)
        cfg = write_config(tmp_path, config)
        out = tmp_path / "out"
        run_cli("run", cfg, "--output-dir", out, "--parallel", 1)
        regenerated = tmp_path / "summary2.csv"
        run_cli("report", out / "rows.csv", "--output", regenerated)
        assert regenerated.read_bytes() == (out / "summary.csv").read_bytes()


def test_console_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "dkibo.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "suggest" in proc.stdout
