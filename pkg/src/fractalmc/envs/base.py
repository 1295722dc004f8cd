"""Environment contract consumed by the planners and the cone oracle.

States are numpy float arrays; every operation is batched so a whole
walker population advances in one call.  Dead states absorb: stepping a
dead state returns it unchanged and its composed reward is zero.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from ..actions import ActionSpec
from ..core import compose_reward


class Environment(ABC):
    """Pluggable simulated system.

    Subclasses implement batched dynamics (``step``), weighted reward
    components, a dead test and a state distance.  Discrete enumerable
    environments additionally provide ``canonical_key`` so states can be
    aggregated into causal slices.
    """

    action_spec: ActionSpec

    @abstractmethod
    def initial_state(self) -> np.ndarray:
        """The root state, shape (state_dim,)."""

    @abstractmethod
    def step(self, states: np.ndarray, actions: np.ndarray, dt: float) -> np.ndarray:
        """Advance a batch of states one tick.  Dead rows pass through."""

    @abstractmethod
    def reward_components(self, states: np.ndarray, root=None) -> list:
        """List of (values array, weight) pairs for a batch of states.

        ``root`` is the agent's root state for rewards defined relative
        to the position the decision is being taken from.
        """

    @abstractmethod
    def is_dead(self, states: np.ndarray) -> np.ndarray:
        """Boolean mask over the batch."""

    @abstractmethod
    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Rowwise distance between two batches of states."""

    def reward(self, states: np.ndarray, root=None) -> np.ndarray:
        """Composed reward for a batch of states."""
        composed = compose_reward(self.reward_components(states, root=root))
        return np.asarray(composed, dtype=float)

    def canonical_key(self, state: np.ndarray) -> bytes:
        """Canonical byte encoding of one state (discrete envs only)."""
        raise NotImplementedError(f"{type(self).__name__} is not enumerable")

    @property
    def enumerable(self) -> bool:
        return False

    def _single(self, state) -> np.ndarray:
        """Lift a single state to a batch of one."""
        return np.asarray(state, dtype=float)[None, :]
