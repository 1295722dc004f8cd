"""Planner front-ends with a scikit-learn flavoured parameter surface.

``FmcPlanner.plan(state)`` builds a fresh swarm at the given state, runs
the configured number of ticks and extracts a decision; ``run_episode``
drives a live environment one decision at a time (the step-by-step
flavour: a new cone per agent step).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .distributions import Distribution
from .envs.base import Environment
from .priors import PriorProvider, blend_prior, credibility, sampler_from_prior
from .swarm import Decision, FmcParams, decide, init_swarm, swarm_tick


@dataclass
class Trajectory:
    """Recorded episode: one entry per agent step."""

    states: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    rewards: list = field(default_factory=list)
    samples_per_step: list = field(default_factory=list)

    @property
    def survival(self) -> int:
        return len(self.actions)

    @property
    def total_score(self) -> float:
        return float(sum(self.rewards))


class FmcPlanner(BaseEstimator):
    """Fractal Monte Carlo decision maker over a pluggable environment.

    Follows the estimator convention: constructor stores parameters
    verbatim (``get_params``/``set_params`` work), ``predict`` maps a
    state to an action.
    """

    def __init__(self, env=None, n_walkers=50, ticks=20, dt=0.02, alpha=1.0,
                 beta=1.0, clamp_clone_prob=True, decision_mode="argmax",
                 seed=0, enable_cloning=True, prior=None):
        self.env = env
        self.n_walkers = n_walkers
        self.ticks = ticks
        self.dt = dt
        self.alpha = alpha
        self.beta = beta
        self.clamp_clone_prob = clamp_clone_prob
        self.decision_mode = decision_mode
        self.seed = seed
        self.enable_cloning = enable_cloning
        self.prior = prior

    # ---- internals -----------------------------------------------------

    def _params(self, seed=None) -> FmcParams:
        return FmcParams(
            n_walkers=self.n_walkers, ticks=self.ticks, dt=self.dt,
            alpha=self.alpha, beta=self.beta,
            clamp_clone_prob=self.clamp_clone_prob,
            decision_mode=self.decision_mode,
            seed=self.seed if seed is None else seed,
            enable_cloning=self.enable_cloning,
        )

    def _require_env(self) -> Environment:
        if self.env is None:
            raise ValueError("planner needs an environment")
        return self.env

    # ---- planning ------------------------------------------------------

    def plan(self, state, rng=None, initial_sampler=None, tick_sampler=None,
             on_tick=None) -> Decision:
        """One decision from ``state``.

        ``on_tick(tick_index, swarm)`` is called after every tick (used to
        record empirical slice densities for the oracle metrics).
        """
        env = self._require_env()
        params = self._params()
        if rng is None:
            rng = np.random.default_rng(params.seed)
        swarm = init_swarm(env, state, params, rng, action_sampler=initial_sampler)
        for _ in range(params.ticks):
            swarm_tick(swarm, env, action_sampler=tick_sampler)
            if on_tick is not None:
                on_tick(swarm.tick_index, swarm)
        return decide(swarm, env.action_spec)

    def predict(self, state):
        """Action for a single state."""
        return self.plan(state).chosen

    def run_episode(self, max_steps: int, state=None, rng=None,
                    prior: PriorProvider | None = None,
                    tick_sampler=None) -> Trajectory:
        """Drive the live environment for up to ``max_steps`` decisions.

        With a prior source, walker initial actions are drawn from the
        prior blended with uniform at the current credibility estimate,
        which is refreshed from each decision.
        """
        env = self._require_env()
        params = self._params()
        if rng is None:
            rng = np.random.default_rng(params.seed)
        if max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        prior = prior if prior is not None else self.prior

        state = np.asarray(
            env.initial_state() if state is None else state, dtype=float
        )
        traj = Trajectory()
        cred = 0.0
        for _ in range(max_steps):
            if bool(env.is_dead(state[None, :])[0]):
                break
            initial_sampler = None
            prior_dist = None
            if prior is not None:
                prior_dist = prior.prior(state)
                initial_sampler = sampler_from_prior(prior, cred)
            decision = self.plan(state, rng=rng,
                                 initial_sampler=initial_sampler,
                                 tick_sampler=tick_sampler)
            if prior_dist is not None and isinstance(decision.distribution,
                                                     Distribution):
                cred = credibility(decision.distribution, prior_dist)
            traj.states.append(state.copy())
            traj.actions.append(decision.chosen)
            traj.samples_per_step.append(decision.samples_used)
            state = env.step(state[None, :],
                             np.asarray([decision.chosen]), params.dt)[0]
            traj.rewards.append(float(env.reward(state[None, :])[0]))
        return traj


class RandomPlanner(BaseEstimator):
    """Uniform random baseline; consumes zero simulator samples."""

    def __init__(self, env=None, dt=0.02, seed=0):
        self.env = env
        self.dt = dt
        self.seed = seed

    def run_episode(self, max_steps: int, state=None, rng=None) -> Trajectory:
        env = self.env
        if rng is None:
            rng = np.random.default_rng(self.seed)
        state = np.asarray(
            env.initial_state() if state is None else state, dtype=float
        )
        traj = Trajectory()
        for _ in range(max_steps):
            if bool(env.is_dead(state[None, :])[0]):
                break
            action = env.action_spec.sample_uniform(rng, 1)[0]
            traj.states.append(state.copy())
            traj.actions.append(action)
            traj.samples_per_step.append(0)
            state = env.step(state[None, :], np.asarray([action]), self.dt)[0]
            traj.rewards.append(float(env.reward(state[None, :])[0]))
        return traj


class VanillaMcPlanner(BaseEstimator):
    """Plain Monte Carlo baseline: N independent random walks, pick the
    initial action of the walk with the best final reward (ties go to the
    lowest walker index).  Same N * M sample budget as the swarm planner.
    """

    def __init__(self, env=None, n_walkers=50, ticks=20, dt=0.02, seed=0):
        self.env = env
        self.n_walkers = n_walkers
        self.ticks = ticks
        self.dt = dt
        self.seed = seed

    def plan(self, state, rng=None) -> Decision:
        env = self.env
        if rng is None:
            rng = np.random.default_rng(self.seed)
        state = np.asarray(state, dtype=float)
        states = np.repeat(state[None, :], self.n_walkers, axis=0)
        initial = env.action_spec.sample_uniform(rng, self.n_walkers)
        for t in range(self.ticks):
            actions = initial if t == 0 else env.action_spec.sample_uniform(
                rng, self.n_walkers)
            states = env.step(states, actions, self.dt)
        rewards = env.reward(states, root=state)
        best = int(np.argmax(rewards))
        samples = self.n_walkers * self.ticks
        if env.action_spec.is_discrete:
            counts = np.bincount(initial.astype(int),
                                 minlength=env.action_spec.discrete_count)
            dist = Distribution.from_counts(counts)
        else:
            dist = initial.mean(axis=0)
        return Decision(dist, chosen=initial[best], samples_used=samples)

    def run_episode(self, max_steps: int, state=None, rng=None) -> Trajectory:
        env = self.env
        if rng is None:
            rng = np.random.default_rng(self.seed)
        state = np.asarray(
            env.initial_state() if state is None else state, dtype=float
        )
        traj = Trajectory()
        for _ in range(max_steps):
            if bool(env.is_dead(state[None, :])[0]):
                break
            decision = self.plan(state, rng=rng)
            traj.states.append(state.copy())
            traj.actions.append(decision.chosen)
            traj.samples_per_step.append(decision.samples_used)
            state = env.step(state[None, :],
                             np.asarray([decision.chosen]), self.dt)[0]
            traj.rewards.append(float(env.reward(state[None, :])[0]))
        return traj
