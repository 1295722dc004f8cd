"""Simulated systems and the environment contract."""

from __future__ import annotations

from .base import Environment
from .cartpole import CartPoleEnv
from .grid import GridEnv
from .rocket import RocketConfig, RocketEnv, hook_reward, rocket_distance

_REGISTRY = {
    "grid": GridEnv,
    "cartpole": CartPoleEnv,
    "rocket": RocketEnv,
}


def make_env(env_id: str, **kwargs) -> Environment:
    """Build an environment from its string id."""
    try:
        cls = _REGISTRY[env_id]
    except KeyError:
        raise ValueError(
            f"unknown environment {env_id!r}; known: {sorted(_REGISTRY)}"
        ) from None
    if env_id == "rocket" and kwargs:
        return cls(RocketConfig(**kwargs))
    return cls(**kwargs)


__all__ = [
    "Environment", "CartPoleEnv", "GridEnv", "RocketEnv", "RocketConfig",
    "hook_reward", "rocket_distance", "make_env",
]
