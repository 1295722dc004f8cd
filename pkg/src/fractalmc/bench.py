"""Benchmark runner and CLI.

Runs the swarm planner against random and vanilla Monte Carlo baselines
at matched sample budgets, and writes CSV/JSON reports.  On enumerable
environments the exact oracle metrics (scan and decision sub-optimality,
IQ) are attached to each episode's first decision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .envs import make_env
from .oracle import (decision_suboptimality, empirical_scan_suboptimality,
                     enumerate_cone, global_suboptimality, intelligent_decision,
                     iq, uniform_policy)
from .planner import FmcPlanner, RandomPlanner, VanillaMcPlanner

CSV_COLUMNS = [
    "run_id", "policy", "episode", "survival_steps", "total_score",
    "samples_per_action", "scan_suboptimality", "decision_suboptimality", "iq",
]

DEFAULT_POLICIES = ("fmc", "random", "vanilla_mc")


@dataclass
class RunConfig:
    env: str = "grid"
    env_kwargs: dict = field(default_factory=dict)
    n_walkers: int = 50
    ticks: int = 20
    dt: float = 0.02
    alpha: float = 1.0
    episodes: int = 1
    max_steps: int = 100
    policies: tuple = DEFAULT_POLICIES
    seed: int = 0
    out_dir: str = "."
    dump_slices: bool = False

    def validate(self):
        env = make_env(self.env, **self.env_kwargs)
        if self.episodes < 1 or self.max_steps < 1:
            raise ValueError("episodes and max_steps must be >= 1")
        unknown = set(self.policies) - set(DEFAULT_POLICIES)
        if unknown:
            raise ValueError(f"unknown policies: {sorted(unknown)}")
        return env


@dataclass
class ReportRow:
    run_id: str
    policy: str
    episode: int
    survival_steps: int
    total_score: float
    samples_per_action: int
    wall_clock_ms: float
    scan_suboptimality: float | None = None
    decision_suboptimality: float | None = None
    iq: float | None = None


def _metrics_context(env, config):
    """Oracle artifacts shared by all episodes (enumerable envs only)."""
    table = enumerate_cone(env, env.initial_state(), config.ticks,
                           uniform_policy(env.action_spec.discrete_count))
    return {"id_dist": intelligent_decision(table), "table": table}


def _run_fmc_episode(env, config, episode_seed, ctx):
    planner = FmcPlanner(env=env, n_walkers=config.n_walkers,
                         ticks=config.ticks, dt=config.dt,
                         alpha=config.alpha, seed=episode_seed)
    rng = np.random.default_rng(episode_seed)
    metrics = {}
    if ctx is not None:
        # first decision instrumented: empirical slice densities + pi_D
        slices = [dict() for _ in range(config.ticks)]

        def on_tick(tick, swarm):
            freqs = slices[tick - 1]
            for row in swarm.states:
                key = env.canonical_key(row)
                freqs[key] = freqs.get(key, 0.0) + 1.0 / len(swarm.states)

        state = env.initial_state()
        decision = planner.plan(state, rng=np.random.default_rng(episode_seed),
                                on_tick=on_tick)
        scan = empirical_scan_suboptimality(env, state, config.ticks, slices)
        dec = decision_suboptimality(ctx["id_dist"], decision.distribution)
        metrics = {
            "scan_suboptimality": scan,
            "decision_suboptimality": dec,
            "iq": iq(global_suboptimality(scan, dec)),
        }
    traj = planner.run_episode(config.max_steps, rng=rng)
    return traj, config.n_walkers * config.ticks, metrics


def _run_policy_episode(policy, env, config, episode):
    episode_seed = config.seed + episode
    start = time.perf_counter()
    metrics = {}
    enumerable = env.enumerable
    ctx = config._ctx if enumerable else None
    if policy == "fmc":
        traj, samples, metrics = _run_fmc_episode(env, config, episode_seed, ctx)
    elif policy == "vanilla_mc":
        planner = VanillaMcPlanner(env=env, n_walkers=config.n_walkers,
                                   ticks=config.ticks, dt=config.dt,
                                   seed=episode_seed)
        traj = planner.run_episode(config.max_steps)
        samples = config.n_walkers * config.ticks
        if ctx is not None:
            rng = np.random.default_rng(episode_seed)
            decision = planner.plan(env.initial_state(), rng=rng)
            dec = decision_suboptimality(ctx["id_dist"], decision.distribution)
            metrics = {"scan_suboptimality": 1.0,
                       "decision_suboptimality": dec,
                       "iq": iq(global_suboptimality(1.0, dec))}
    elif policy == "random":
        planner = RandomPlanner(env=env, dt=config.dt, seed=episode_seed)
        traj = planner.run_episode(config.max_steps)
        samples = 0
        if ctx is not None:
            # random scanning and deciding are the sub-optimality unit
            metrics = {"scan_suboptimality": 1.0,
                       "decision_suboptimality": 1.0, "iq": 1.0}
    else:
        raise ValueError(f"unknown policy {policy!r}")
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return ReportRow(
        run_id=f"{config.env}-s{config.seed}",
        policy=policy,
        episode=episode,
        survival_steps=traj.survival,
        total_score=round(traj.total_score, 9),
        samples_per_action=samples,
        wall_clock_ms=elapsed_ms,
        **metrics,
    )


def run_benchmark(config: RunConfig) -> dict:
    """Run all configured policies/episodes; write report.csv/report.json.

    Episodes run concurrently up to FMC_THREADS workers; per-episode seeds
    are derived as seed + episode index, so results do not depend on
    scheduling.
    """
    env_proto = config.validate()
    config._ctx = _metrics_context(env_proto, config) if env_proto.enumerable else None

    jobs = [(policy, episode)
            for policy in config.policies
            for episode in range(config.episodes)]
    workers = max(1, int(os.environ.get("FMC_THREADS", "1")))

    def run(job):
        policy, episode = job
        env = make_env(config.env, **config.env_kwargs)
        return _run_policy_episode(policy, env, config, episode)

    if workers == 1:
        rows = [run(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))

    os.makedirs(config.out_dir, exist_ok=True)
    csv_path = os.path.join(config.out_dir, "report.csv")
    json_path = os.path.join(config.out_dir, "report.json")
    _write_csv(csv_path, rows)
    report = {
        "config": {k: v for k, v in asdict(config).items()},
        "rows": [asdict(r) for r in rows],
    }
    with open(json_path, "w") as fh:
        json.dump(report, fh, indent=1, default=str)
    if config.dump_slices and config._ctx is not None:
        config._ctx["table"].dump_json(os.path.join(config.out_dir, "slices.json"))
    return report


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, rows):
    # wall-clock lives in the JSON report only: CSV reruns must be
    # byte-identical for a fixed seed
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        d = asdict(r)
        lines.append(",".join(_fmt(d[c]) for c in CSV_COLUMNS))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _build_config(args) -> RunConfig:
    values = {}
    if args.config:
        with open(args.config) as fh:
            values.update(json.load(fh))
    for key, attr in [("env", "env"), ("n_walkers", "walkers"),
                      ("ticks", "ticks"), ("dt", "dt"), ("alpha", "alpha"),
                      ("episodes", "episodes"), ("seed", "seed"),
                      ("out_dir", "out"), ("max_steps", "max_steps")]:
        flag = getattr(args, attr, None)
        if flag is not None:
            values[key] = flag
    if args.policies:
        values["policies"] = tuple(args.policies.split(","))
    if args.slices:
        values["dump_slices"] = True
    if "policies" in values:
        values["policies"] = tuple(values["policies"])
    return RunConfig(**values)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fmc-bench",
        description="Benchmark the FMC planner against baselines.")
    parser.add_argument("--config", help="flat JSON config file")
    parser.add_argument("--env", help="environment id (grid|cartpole|rocket)")
    parser.add_argument("--walkers", type=int)
    parser.add_argument("--ticks", type=int)
    parser.add_argument("--dt", type=float)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--episodes", type=int)
    parser.add_argument("--max-steps", dest="max_steps", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--policies", help="comma list: fmc,random,vanilla_mc")
    parser.add_argument("--slices", action="store_true",
                        help="dump the oracle slice table as slices.json")
    args = parser.parse_args(argv)
    try:
        config = _build_config(args)
        config.validate()
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"bad config: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_benchmark(config)
    except Exception as exc:  # env failure
        print(f"run failed: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(report['rows'])} rows to {config.out_dir}/report.csv")
    return 0


if __name__ == "__main__":
    sys.exit(main())
