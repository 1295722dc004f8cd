"""Cart-pole balancing environment (inverted pendulum on a cart).

Two discrete actions push the cart left or right with a fixed force.
The episode is dead once the pole leans or the cart drifts too far.
Constants are the standard literature values.
"""

from __future__ import annotations

import numpy as np

from ..actions import discrete
from .base import Environment

# state layout: [x, x_dot, theta, theta_dot]


class CartPoleEnv(Environment):
    """Frictionless pendulum-on-cart, semi-implicit Euler integration."""

    def __init__(self, gravity=9.8, cart_mass=1.0, pole_mass=0.1,
                 pole_half_length=0.5, force=10.0,
                 theta_max=np.deg2rad(12.0), x_max=2.4):
        self.gravity = gravity
        self.cart_mass = cart_mass
        self.pole_mass = pole_mass
        self.length = pole_half_length
        self.force = force
        self.theta_max = theta_max
        self.x_max = x_max
        self.action_spec = discrete(2)

    def initial_state(self) -> np.ndarray:
        return np.zeros(4)

    def dynamics(self, states, forces, dt):
        """One semi-implicit Euler step under per-row horizontal forces."""
        states = np.asarray(states, dtype=float)
        x, v, theta, omega = states.T
        total_mass = self.cart_mass + self.pole_mass
        pole_ml = self.pole_mass * self.length
        sin, cos = np.sin(theta), np.cos(theta)
        temp = (forces + pole_ml * omega**2 * sin) / total_mass
        theta_acc = (self.gravity * sin - cos * temp) / (
            self.length * (4.0 / 3.0 - self.pole_mass * cos**2 / total_mass)
        )
        x_acc = temp - pole_ml * theta_acc * cos / total_mass
        v2 = v + x_acc * dt
        omega2 = omega + theta_acc * dt
        out = np.empty_like(states)
        out[:, 0] = x + v2 * dt
        out[:, 1] = v2
        out[:, 2] = theta + omega2 * dt
        out[:, 3] = omega2
        return out

    def step(self, states, actions, dt):
        states = np.asarray(states, dtype=float)
        forces = np.where(np.asarray(actions) == 0, -self.force, self.force)
        nxt = self.dynamics(states, forces, dt)
        dead = self.is_dead(states)
        nxt[dead] = states[dead]
        return nxt

    def is_dead(self, states):
        states = np.asarray(states)
        return (np.abs(states[:, 2]) >= self.theta_max) | (
            np.abs(states[:, 0]) >= self.x_max
        )

    def reward_components(self, states, root=None):
        states = np.asarray(states, dtype=float)
        alive = (~self.is_dead(states)).astype(float)
        # soft preferences inside the alive region: stay centered (quartic,
        # so the penalty only bites near the track ends) and keep the pole
        # near vertical (quadratic).  Both vanish exactly at the death
        # boundary, so the alive/dead contract is preserved.
        xr = states[:, 0] / self.x_max
        tr = states[:, 2] / self.theta_max
        xr2 = xr * xr
        centering = np.maximum(1.0 - xr2 * xr2, 0.0)
        upright = np.maximum(1.0 - tr * tr, 0.0)
        return [(alive, 1.0), (centering, 1.0), (upright, 1.0)]

    def distance(self, a, b):
        d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
        return np.sqrt((d * d).sum(axis=1))

    def mechanical_energy(self, states):
        """Kinetic plus potential energy; used for integrator sanity checks."""
        states = np.asarray(states, dtype=float)
        _, v, theta, omega = states.T
        m, length = self.pole_mass, self.length
        kinetic = (
            0.5 * self.cart_mass * v**2
            + 0.5 * m * (v**2 + 2 * length * v * omega * np.cos(theta)
                         + length**2 * omega**2)
            + 0.5 * (m * length**2 / 3.0) * omega**2
        )
        potential = m * self.gravity * length * np.cos(theta)
        return kinetic + potential
