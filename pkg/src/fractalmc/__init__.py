"""Fractal Monte Carlo planning: a swarm of cloning walkers that scans a
system's causal cone to make decisions, with an exact theory oracle for
validation on tiny discrete systems."""

from .actions import ActionSpec, continuous, discrete
from .core import clone_probability, compose_reward, relativize, virtual_reward
from .distributions import Distribution, dh_divergence, shannon_entropy
from .planner import FmcPlanner, RandomPlanner, Trajectory, VanillaMcPlanner
from .priors import (FixedPrior, PriorProvider, TabularPrior, UniformPrior,
                     blend_prior, credibility, walker_budget)
from .swarm import Decision, FmcParams, Swarm, Walker, decide, init_swarm, swarm_tick
from .wave import RolloutDataset, WaveNode, WaveResult, swarm_wave

__all__ = [
    "ActionSpec", "continuous", "discrete",
    "relativize", "virtual_reward", "clone_probability", "compose_reward",
    "Distribution", "dh_divergence", "shannon_entropy",
    "FmcParams", "Swarm", "Walker", "Decision", "init_swarm", "swarm_tick",
    "decide",
    "FmcPlanner", "RandomPlanner", "VanillaMcPlanner", "Trajectory",
    "PriorProvider", "UniformPrior", "FixedPrior", "TabularPrior",
    "blend_prior", "credibility", "walker_budget",
    "swarm_wave", "WaveNode", "WaveResult", "RolloutDataset",
]

__version__ = "0.1.0"
