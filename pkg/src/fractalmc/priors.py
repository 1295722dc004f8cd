"""External action priors and the credibility machinery that blends them
with the uniform exploration distribution.
"""

from __future__ import annotations

import json
import warnings
from abc import ABC, abstractmethod

import numpy as np

from .distributions import Distribution, dh_divergence


class PriorProvider(ABC):
    """Source of an a-priori action distribution per state."""

    @abstractmethod
    def prior(self, state) -> Distribution:
        ...


class UniformPrior(PriorProvider):
    def __init__(self, n_actions: int):
        self._dist = Distribution.uniform(n_actions)

    def prior(self, state) -> Distribution:
        return self._dist


class FixedPrior(PriorProvider):
    """One distribution regardless of state (steering messages use this)."""

    def __init__(self, dist: Distribution):
        self._dist = dist

    def prior(self, state) -> Distribution:
        return self._dist


class TabularPrior(PriorProvider):
    """State-key -> distribution table, with a uniform fallback.

    File format: JSON object mapping hex-encoded canonical state keys to
    weight lists.
    """

    def __init__(self, table: dict, n_actions: int, key_fn):
        self.table = {k: Distribution(v) for k, v in table.items()}
        self.fallback = Distribution.uniform(n_actions)
        self.key_fn = key_fn

    @classmethod
    def from_file(cls, path, n_actions: int, key_fn) -> "TabularPrior":
        with open(path) as fh:
            return cls(json.load(fh), n_actions, key_fn)

    def prior(self, state) -> Distribution:
        key = self.key_fn(state).hex()
        return self.table.get(key, self.fallback)


def blend_prior(prior: Distribution, credibility: float) -> Distribution:
    """Convex mixture of the prior with the uniform distribution."""
    if not 0.0 <= credibility <= 1.0:
        warnings.warn(f"credibility {credibility} outside [0, 1]; clamping")
        credibility = min(max(credibility, 0.0), 1.0)
    uniform = np.full(len(prior), 1.0 / len(prior))
    return Distribution(prior.weights * credibility + uniform * (1.0 - credibility))


def credibility(decision: Distribution, prior: Distribution) -> float:
    """Trust weight in [0, 1] for a prior, from its agreement with the
    planner's decision distribution.

    1 - D_H(decision, prior) / D_H(decision, uniform), clamped to [0, 1];
    a prior matching the decision earns full trust, the uniform prior
    earns none.  (The literal ratio would score a perfect prior at zero,
    the opposite of its intended use, hence the inversion.)
    """
    if len(decision) != len(prior):
        raise ValueError("decision and prior must have equal length")
    uniform = Distribution.uniform(len(decision))
    denom = dh_divergence(decision, uniform)
    if denom == 0.0:
        return 0.0
    num = dh_divergence(decision, prior)
    if np.isinf(num):
        return 0.0
    return float(min(max(1.0 - num / denom, 0.0), 1.0))


def walker_budget(max_walkers: int, cred: float) -> int:
    """Walker count scaled down by prior trust, never below the 2-walker
    minimum a swarm needs."""
    if max_walkers < 2:
        raise ValueError("max_walkers must be >= 2")
    return max(2, int(round(max_walkers * (1.0 - cred))))


def sampler_from_prior(provider: PriorProvider, cred: float, action_values=None):
    """Build a per-tick action sampler for the swarm from a prior.

    Discrete actions by default; ``action_values`` maps sampled indices to
    continuous action vectors (the steering discretization).
    """
    def sample(states, rng, n):
        dist = blend_prior(provider.prior(states[0]), cred)
        idx = rng.choice(len(dist), size=n, p=dist.weights)
        if action_values is not None:
            return np.asarray(action_values)[idx]
        return idx

    return sample
