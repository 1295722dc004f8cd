"""Action space descriptions shared by planners and environments."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ActionSpec:
    """Describes the set of actions an agent can push on the system.

    Either a finite list of ``discrete_count`` actions, or a box in
    ``dims`` continuous dimensions with per-dimension bounds.
    """

    kind: str  # "discrete" | "continuous"
    discrete_count: int = 0
    dims: int = 0
    bounds: tuple = field(default_factory=tuple)  # ((lo, hi), ...) per dim

    def __post_init__(self):
        if self.kind == "discrete":
            if self.discrete_count < 2:
                raise ValueError("discrete action spec needs at least 2 actions")
        elif self.kind == "continuous":
            if self.dims < 1:
                raise ValueError("continuous action spec needs dims >= 1")
            if len(self.bounds) != self.dims:
                raise ValueError("one (lo, hi) pair per dimension required")
            for lo, hi in self.bounds:
                if not lo < hi:
                    raise ValueError(f"invalid bound ({lo}, {hi})")
        else:
            raise ValueError(f"unknown action spec kind: {self.kind!r}")

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"

    def sample_uniform(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw ``n`` uniform random actions."""
        if self.is_discrete:
            return rng.integers(0, self.discrete_count, size=n)
        lo = np.array([b[0] for b in self.bounds])
        hi = np.array([b[1] for b in self.bounds])
        return rng.uniform(lo, hi, size=(n, self.dims))

    def clip(self, action: np.ndarray) -> np.ndarray:
        """Clip a continuous action vector to the box bounds."""
        if self.is_discrete:
            return action
        lo = np.array([b[0] for b in self.bounds])
        hi = np.array([b[1] for b in self.bounds])
        return np.clip(action, lo, hi)


def discrete(n: int) -> ActionSpec:
    return ActionSpec(kind="discrete", discrete_count=n)


def continuous(bounds) -> ActionSpec:
    bounds = tuple(tuple(b) for b in bounds)
    return ActionSpec(kind="continuous", dims=len(bounds), bounds=bounds)
