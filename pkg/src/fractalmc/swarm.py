"""Walker swarm: the population that scans the causal cone.

A swarm holds N walkers, each a path head with the first action of its
path stored.  One tick runs three barrier-separated phases against a
snapshot of the pre-tick population:

1. MEASURE  - rewards and peer distances, relativized, combined into a
   virtual reward per walker.
2. CLONE    - each walker compares its virtual reward against a random
   companion and copies its state (and stored first action) with the
   resulting probability; dead walkers always clone to a living peer.
3. PERTURB  - walkers that did not clone take a random action (the stored
   first action on tick 1) and advance through the simulation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .actions import ActionSpec
from .core import clone_probability, relativize, virtual_reward
from .distributions import Distribution
from .envs.base import Environment


@dataclass
class FmcParams:
    """Planner parameters.  Samples per decision = n_walkers * ticks."""

    n_walkers: int = 50
    ticks: int = 20
    dt: float = 0.02
    alpha: float = 1.0
    beta: float = 1.0
    clamp_clone_prob: bool = True
    decision_mode: str = "argmax"  # "argmax" | "sample", discrete only
    seed: int = 0
    enable_cloning: bool = True

    def __post_init__(self):
        if self.n_walkers < 2:
            raise ValueError("n_walkers must be >= 2")
        if self.ticks < 1:
            raise ValueError("ticks must be >= 1")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.decision_mode not in ("argmax", "sample"):
            raise ValueError("decision_mode must be 'argmax' or 'sample'")

    @property
    def horizon(self) -> float:
        return self.ticks * self.dt

    @property
    def samples_per_decision(self) -> int:
        return self.n_walkers * self.ticks


@dataclass
class Walker:
    """Read-only view of one walker, for inspection and tests."""

    state: np.ndarray
    initial_action: object
    dead: bool
    raw_reward: float
    scratch_distance: float
    virtual_reward: float


@dataclass
class Decision:
    """Outcome of a planning pass."""

    distribution: object      # Distribution (discrete) or mean vector (continuous)
    chosen: object            # action index or action vector
    samples_used: int
    degenerate: bool = False  # all walkers dead; uniform fallback


@dataclass
class Swarm:
    """N walker path heads plus the planner parameters and RNG."""

    states: np.ndarray          # (N, state_dim)
    initial_actions: np.ndarray  # (N,) ints or (N, dims) floats
    params: FmcParams
    rng: np.random.Generator
    root_state: np.ndarray
    tick_index: int = 0
    terminal: bool = False
    raw_rewards: np.ndarray = field(default=None)
    scratch_distances: np.ndarray = field(default=None)
    virtual_rewards: np.ndarray = field(default=None)

    @property
    def n_walkers(self) -> int:
        return len(self.states)

    def walker(self, i: int, env: Environment) -> Walker:
        dead = bool(env.is_dead(self.states[i:i + 1])[0])
        return Walker(
            state=self.states[i].copy(),
            initial_action=self.initial_actions[i].copy()
            if isinstance(self.initial_actions[i], np.ndarray)
            else self.initial_actions[i],
            dead=dead,
            raw_reward=float(self.raw_rewards[i]) if self.raw_rewards is not None else 0.0,
            scratch_distance=float(self.scratch_distances[i])
            if self.scratch_distances is not None else 0.0,
            virtual_reward=float(self.virtual_rewards[i])
            if self.virtual_rewards is not None else 0.0,
        )


def init_swarm(env: Environment, state, params: FmcParams,
               rng: np.random.Generator | None = None,
               action_sampler=None) -> Swarm:
    """Create a swarm of N copies of ``state`` with fresh initial actions.

    ``action_sampler(states, rng, n)`` overrides the uniform action draw
    (used for blended priors and steering).
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    state = np.asarray(state, dtype=float)
    states = np.repeat(state[None, :], params.n_walkers, axis=0)
    if action_sampler is None:
        initial = env.action_spec.sample_uniform(rng, params.n_walkers)
    else:
        initial = action_sampler(states, rng, params.n_walkers)
    return Swarm(states=states, initial_actions=initial, params=params,
                 rng=rng, root_state=state)


_ARANGE_CACHE: dict = {}


def _companions(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform draw of a peer j != i for every i."""
    idx = _ARANGE_CACHE.get(n)
    if idx is None:
        idx = _ARANGE_CACHE[n] = np.arange(n)
    j = rng.integers(0, n - 1, size=n)
    j += j >= idx
    return j


def swarm_tick(swarm: Swarm, env: Environment, action_sampler=None) -> Swarm:
    """Run one measure/clone/perturb iteration in place; returns the swarm."""
    params = swarm.params
    n = swarm.n_walkers
    if n < 2:
        raise ValueError("swarm_tick needs at least 2 walkers")
    if swarm.terminal:
        return swarm

    dead = env.is_dead(swarm.states)
    any_dead = bool(dead.any())
    if any_dead and dead.all():
        swarm.terminal = True
        return swarm

    snapshot = swarm.states.copy()
    snapshot_actions = np.asarray(swarm.initial_actions).copy()

    # MEASURE: rewards and distances to a random peer, then relativize
    rewards = np.asarray(env.reward(snapshot, root=swarm.root_state), dtype=float)
    if any_dead:
        rewards[dead] = 0.0
    j = _companions(swarm.rng, n)
    distances = env.distance(snapshot, snapshot[j])
    r_rel = relativize(rewards)
    d_rel = relativize(distances)
    vr = virtual_reward(r_rel, d_rel, params.alpha, params.beta)
    swarm.raw_rewards = rewards
    swarm.scratch_distances = distances
    swarm.virtual_rewards = vr

    # CLONE: fresh companion, probability from the virtual-reward gap.
    # Dead walkers always clone, and only to living peers.
    k = _companions(swarm.rng, n)
    if params.enable_cloning:
        probs = clone_probability(vr, vr[k], clamp=params.clamp_clone_prob)
        if any_dead:
            probs[dead] = 1.0
            dead_idx = np.flatnonzero(dead)
            alive_idx = np.flatnonzero(~dead)
            k[dead_idx] = swarm.rng.choice(alive_idx, size=dead_idx.size)
        clones = swarm.rng.random(n) < probs
    else:
        clones = np.zeros(n, dtype=bool)
    if clones.any():
        swarm.states[clones] = snapshot[k[clones]]
        swarm.initial_actions[clones] = snapshot_actions[k[clones]]

    # PERTURB: non-cloners act and advance; tick 1 replays the stored
    # initial action so the first decision stays attached to its path.
    movers = ~clones
    if movers.any():
        if swarm.tick_index == 0:
            actions = swarm.initial_actions[movers]
        elif action_sampler is not None:
            actions = action_sampler(swarm.states[movers], swarm.rng,
                                     int(movers.sum()))
        else:
            actions = env.action_spec.sample_uniform(swarm.rng, int(movers.sum()))
        swarm.states[movers] = env.step(swarm.states[movers], actions, params.dt)

    swarm.tick_index += 1
    return swarm


def decide(swarm: Swarm, spec: ActionSpec | None = None,
           mode: str | None = None) -> Decision:
    """Extract the decision from the walkers' stored first actions."""
    if swarm.tick_index < 1:
        raise ValueError("decide requires at least one completed tick")
    params = swarm.params
    mode = mode or params.decision_mode
    samples = params.n_walkers * params.ticks

    if spec is None:
        # infer from the stored actions
        discrete_actions = swarm.initial_actions.ndim == 1
    else:
        discrete_actions = spec.is_discrete

    if discrete_actions:
        n_actions = spec.discrete_count if spec is not None else (
            int(swarm.initial_actions.max()) + 1
        )
        if swarm.terminal:
            return Decision(Distribution.uniform(n_actions),
                            chosen=0, samples_used=samples, degenerate=True)
        counts = np.bincount(swarm.initial_actions.astype(int),
                             minlength=n_actions)
        dist = Distribution.from_counts(counts)
        if mode == "sample":
            chosen = int(swarm.rng.choice(n_actions, p=dist.weights))
        else:
            chosen = int(np.argmax(dist.weights))  # ties: lowest index
        return Decision(dist, chosen=chosen, samples_used=samples)

    mean = swarm.initial_actions.mean(axis=0)
    if spec is not None:
        mean = spec.clip(mean)
    if swarm.terminal:
        return Decision(mean, chosen=mean, samples_used=samples, degenerate=True)
    return Decision(mean, chosen=mean, samples_used=samples)
