"""Benchmark runner: report artifacts, determinism, and CLI exit codes."""

import json

import pytest

from fractalmc import bench
from fractalmc.bench import CSV_COLUMNS, RunConfig, main, run_benchmark


def small_config(tmp_path, **kwargs):
    defaults = dict(env="grid", n_walkers=8, ticks=3, dt=1.0, episodes=2,
                    max_steps=5, seed=0, out_dir=str(tmp_path))
    defaults.update(kwargs)
    return RunConfig(**defaults)


class TestRunBenchmark:
    def test_report_files_written(self, tmp_path):
        report = run_benchmark(small_config(tmp_path))
        assert (tmp_path / "report.csv").exists()
        assert (tmp_path / "report.json").exists()
        assert len(report["rows"]) == 3 * 2  # policies x episodes

    def test_csv_reruns_are_byte_identical(self, tmp_path):
        run_benchmark(small_config(tmp_path / "a"))
        run_benchmark(small_config(tmp_path / "b"))
        assert (tmp_path / "a" / "report.csv").read_bytes() == \
               (tmp_path / "b" / "report.csv").read_bytes()

    def test_csv_column_order_is_fixed(self, tmp_path):
        run_benchmark(small_config(tmp_path))
        header = (tmp_path / "report.csv").read_text().splitlines()[0]
        assert header.split(",") == CSV_COLUMNS
        assert "wall_clock_ms" not in header

    def test_json_report_carries_wall_clock(self, tmp_path):
        run_benchmark(small_config(tmp_path))
        report = json.loads((tmp_path / "report.json").read_text())
        assert all(row["wall_clock_ms"] > 0 for row in report["rows"])

    def test_random_rows_are_the_unit(self, tmp_path):
        report = run_benchmark(small_config(tmp_path))
        random_rows = [r for r in report["rows"] if r["policy"] == "random"]
        for row in random_rows:
            assert row["samples_per_action"] == 0
            assert row["scan_suboptimality"] == 1.0
            assert row["decision_suboptimality"] == 1.0
            assert row["iq"] == 1.0

    def test_fmc_rows_have_oracle_metrics_on_grid(self, tmp_path):
        report = run_benchmark(small_config(tmp_path))
        fmc_rows = [r for r in report["rows"] if r["policy"] == "fmc"]
        for row in fmc_rows:
            assert row["scan_suboptimality"] is not None
            assert row["samples_per_action"] == 8 * 3

    def test_non_enumerable_env_skips_metrics(self, tmp_path):
        config = small_config(tmp_path, env="cartpole", dt=0.02,
                              policies=("random",), episodes=1)
        report = run_benchmark(config)
        assert report["rows"][0]["scan_suboptimality"] is None

    def test_slices_dump(self, tmp_path):
        run_benchmark(small_config(tmp_path, dump_slices=True))
        slices = json.loads((tmp_path / "slices.json").read_text())
        assert {r["tick"] for r in slices} == {0, 1, 2, 3}

    def test_unknown_policy_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="unknown policies"):
            small_config(tmp_path, policies=("fmc", "mcts")).validate()


class TestCli:
    def test_happy_path(self, tmp_path, capsys):
        code = main(["--env", "grid", "--walkers", "8", "--ticks", "3",
                     "--dt", "1.0", "--episodes", "1", "--max-steps", "5",
                     "--seed", "0", "--out", str(tmp_path),
                     "--policies", "random"])
        assert code == 0
        assert "wrote 1 rows" in capsys.readouterr().out
        assert (tmp_path / "report.csv").exists()

    def test_config_file_merged_with_flags(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"env": "grid", "episodes": 1,
                                   "max_steps": 3, "policies": ["random"]}))
        code = main(["--config", str(cfg), "--out", str(tmp_path),
                     "--dt", "1.0"])
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["config"]["dt"] == 1.0
        assert report["config"]["episodes"] == 1

    def test_bad_config_exits_two(self, tmp_path, capsys):
        assert main(["--env", "atari", "--out", str(tmp_path)]) == 2
        assert "bad config" in capsys.readouterr().err
        assert main(["--env", "grid", "--episodes", "0"]) == 2

    def test_run_failure_exits_three(self, tmp_path, capsys, monkeypatch):
        def boom(config):
            raise RuntimeError("exploded mid-run")

        monkeypatch.setattr(bench, "run_benchmark", boom)
        assert main(["--env", "grid", "--out", str(tmp_path)]) == 3
        assert "run failed" in capsys.readouterr().err


class TestVanillaBaseline:
    def test_single_walker_plan_is_that_walk(self):
        import numpy as np

        from fractalmc.envs import GridEnv
        from fractalmc.planner import VanillaMcPlanner

        env = GridEnv()
        p = VanillaMcPlanner(env=env, n_walkers=1, ticks=2, dt=1.0, seed=0)
        d = p.plan(env.initial_state())
        assert d.distribution.weights[int(d.chosen)] == 1.0

    def test_argmax_tie_breaks_to_lowest_walker(self):
        import numpy as np

        from fractalmc.envs import GridEnv
        from fractalmc.planner import VanillaMcPlanner

        class FlatGrid(GridEnv):
            def reward_components(self, states, root=None):
                return [(np.ones(len(states)), 1.0)]

        env = FlatGrid(cliffs=())
        p = VanillaMcPlanner(env=env, n_walkers=6, ticks=2, dt=1.0, seed=4)
        rng = np.random.default_rng(4)
        first = env.action_spec.sample_uniform(rng, 6)[0]
        d = p.plan(env.initial_state(), rng=np.random.default_rng(4))
        assert d.chosen == first

    def test_threaded_run_matches_serial(self, tmp_path, monkeypatch):
        run_benchmark(small_config(tmp_path / "serial"))
        monkeypatch.setenv("FMC_THREADS", "4")
        run_benchmark(small_config(tmp_path / "threaded"))
        assert (tmp_path / "serial" / "report.csv").read_bytes() == \
               (tmp_path / "threaded" / "report.csv").read_bytes()
