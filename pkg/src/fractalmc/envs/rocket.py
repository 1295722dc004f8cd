"""2D rocket in a closed arena with a hook on a rubber band.

The rocket has two continuous degrees of freedom (main thrust, side
thrust).  A point-mass hook hangs from an elastic band, forming a chaotic
oscillator.  Task: pick falling rocks with the hook and release them over
the deploy zone.  Wall and ground collisions drain health in proportion
to the impact energy; health zero is death.

All tunable physics constants live in :class:`RocketConfig` so the
simulation is versioned in one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..actions import continuous
from .base import Environment

# state layout:
#   0:x 1:y 2:vx 3:vy 4:heading 5:omega 6:health
#   7:hook_x 8:hook_y 9:hook_vx 10:hook_vy
#   then per rock: rx, ry, rvx, rvy, carried
#   last: goal tally
_ROCK_STRIDE = 5
_ROCK0 = 11

HOOK_REWARD_AT_ZERO = 100.0
HOOK_REWARD_AT_80PCT = 0.2
HOOK_REWARD_FAR = 1e-9


@dataclass(frozen=True)
class RocketConfig:
    """Physics and arena constants, fixed for reproducibility."""

    arena_width: float = 40.0
    arena_height: float = 30.0
    gravity: float = 9.8
    rocket_mass: float = 1.0
    main_thrust_accel: float = 19.6      # full throttle, m/s^2 along heading;
                                         # half throttle hovers when upright
    side_torque_accel: float = 8.0       # full stick, rad/s^2
    heading_stiffness: float = 10.0      # restoring torque toward upright
    angular_damping: float = 4.0         # 1/s
    linear_damping: float = 0.05         # 1/s, mild air drag
    band_rest_length: float = 2.0
    band_stiffness: float = 12.0         # N/m once stretched
    band_damping: float = 1.5
    hook_mass: float = 0.2
    pickup_radius: float = 1.0
    restitution: float = 0.4
    collision_damage: float = 0.2        # health per unit impact energy
    rocket_radius: float = 0.8
    hook_radius: float = 0.2
    n_rocks: int = 2
    rock_spawn: tuple = ((10.0, 20.0), (30.0, 22.0))
    deploy_center: tuple = (34.0, 6.0)
    deploy_radius: float = 3.0
    start_position: tuple = (12.0, 14.0)


def hook_reward(d_now: float, d_initial: float):
    """Reward for pulling the hook toward its target.

    Log-linear in the distance ratio rho = d_now / d_initial through the
    anchors f(0) = 100, f(0.8) = 0.2, f(rho >= 1) = 1e-9; monotone
    non-increasing on [0, 1].
    """
    d_initial = np.asarray(d_initial, dtype=float)
    if np.any(d_initial <= 0):
        raise ValueError("d_initial must be positive")
    rho = np.asarray(d_now, dtype=float) / d_initial
    ln_lo = np.log(HOOK_REWARD_AT_ZERO) + (rho / 0.8) * (
        np.log(HOOK_REWARD_AT_80PCT) - np.log(HOOK_REWARD_AT_ZERO)
    )
    ln_hi = np.log(HOOK_REWARD_AT_80PCT) + ((rho - 0.8) / 0.2) * (
        np.log(HOOK_REWARD_FAR) - np.log(HOOK_REWARD_AT_80PCT)
    )
    out = np.where(rho <= 0.8, np.exp(ln_lo), np.exp(ln_hi))
    out = np.where(rho >= 1.0, HOOK_REWARD_FAR, out)
    if out.ndim == 0:
        return float(out)
    return out


def rocket_distance(a, b):
    """Distance between rocket states: position and velocity only.

    Heading, hook and rocks are deliberately excluded; they add noise
    rather than signal to the walker-spread measure.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = a[:, 0:4] - b[:, 0:4]
    return np.sqrt(np.sum(d * d, axis=1))


class RocketEnv(Environment):
    """The rocket/hook/rocks arena as a batched environment."""

    def __init__(self, config: RocketConfig | None = None):
        self.cfg = config or RocketConfig()
        self.action_spec = continuous([(0.0, 1.0), (-1.0, 1.0)])
        self.state_dim = _ROCK0 + _ROCK_STRIDE * self.cfg.n_rocks + 1

    # ---- state helpers -------------------------------------------------

    def initial_state(self) -> np.ndarray:
        cfg = self.cfg
        s = np.zeros(self.state_dim)
        s[0], s[1] = cfg.start_position
        s[4] = np.pi / 2  # pointing up
        s[6] = 1.0
        s[7], s[8] = cfg.start_position[0], cfg.start_position[1] - cfg.band_rest_length
        for i in range(cfg.n_rocks):
            base = _ROCK0 + _ROCK_STRIDE * i
            s[base], s[base + 1] = cfg.rock_spawn[i % len(cfg.rock_spawn)]
        return s

    def _rock(self, states, i):
        base = _ROCK0 + _ROCK_STRIDE * i
        return states[:, base:base + _ROCK_STRIDE]

    def carried_index(self, states):
        """Index of the carried rock per row, -1 when the hook is empty."""
        states = np.asarray(states)
        out = np.full(len(states), -1, dtype=int)
        for i in range(self.cfg.n_rocks):
            mask = self._rock(states, i)[:, 4] > 0.5
            out[mask] = i
        return out

    def goal_tally(self, states):
        return np.asarray(states)[:, -1]

    # ---- contract ------------------------------------------------------

    def is_dead(self, states):
        return np.asarray(states)[:, 6] <= 0.0

    def distance(self, a, b):
        return rocket_distance(a, b)

    def hook_target_distance(self, states):
        """Distance from the hook to its current target.

        Target is the nearest free rock when the hook is empty, the
        deploy-zone center when a rock is carried.
        """
        states = np.asarray(states, dtype=float)
        cfg = self.cfg
        hook = states[:, 7:9]
        carrying = self.carried_index(states) >= 0
        # nearest free rock
        best = np.full(len(states), np.inf)
        for i in range(cfg.n_rocks):
            rock = self._rock(states, i)
            free = rock[:, 4] <= 0.5
            d = np.linalg.norm(hook - rock[:, 0:2], axis=1)
            best = np.where(free, np.minimum(best, d), best)
        d_deploy = np.linalg.norm(hook - np.asarray(cfg.deploy_center), axis=1)
        out = np.where(carrying, d_deploy, best)
        # no free rock and not carrying: fall back to deploy distance
        return np.where(np.isfinite(out), out, d_deploy)

    def reward_components(self, states, root=None):
        states = np.asarray(states, dtype=float)
        health = np.clip(states[:, 6], 0.0, 1.0)
        components = [(health, 1.0)]
        if root is not None:
            root_b = self._single(root)
            d_init = max(float(self.hook_target_distance(root_b)[0]), 1e-9)
            d_now = self.hook_target_distance(states)
            components.append((hook_reward(d_now, d_init), 1.0))
        return components

    # ---- dynamics ------------------------------------------------------

    def step(self, states, actions, dt):
        cfg = self.cfg
        states = np.asarray(states, dtype=float)
        s = states.copy()
        actions = np.asarray(actions, dtype=float)
        if actions.ndim == 1:
            actions = actions[None, :]
        main = np.clip(actions[:, 0], 0.0, 1.0)
        side = np.clip(actions[:, 1], -1.0, 1.0)

        x, y, vx, vy = s[:, 0], s[:, 1], s[:, 2], s[:, 3]
        heading, omega, health = s[:, 4], s[:, 5], s[:, 6]
        hx, hy, hvx, hvy = s[:, 7], s[:, 8], s[:, 9], s[:, 10]

        # rocket rigid body
        ax = main * cfg.main_thrust_accel * np.cos(heading) - cfg.linear_damping * vx
        ay = (main * cfg.main_thrust_accel * np.sin(heading)
              - cfg.gravity - cfg.linear_damping * vy)
        vx = vx + ax * dt
        vy = vy + ay * dt
        x = x + vx * dt
        y = y + vy * dt
        # pendulum-stable attitude: a restoring torque pulls the heading
        # back toward upright, so the side stick tilts rather than tumbles
        torque = (side * cfg.side_torque_accel
                  - cfg.heading_stiffness * np.sin(heading - np.pi / 2)
                  - cfg.angular_damping * omega)
        omega = omega + torque * dt
        heading = heading + omega * dt

        # hook on the rubber band (force only when stretched)
        dx, dy = hx - x, hy - y
        dist = np.sqrt(dx * dx + dy * dy) + 1e-12
        stretch = np.maximum(dist - cfg.band_rest_length, 0.0)
        fmag = cfg.band_stiffness * stretch / cfg.hook_mass
        hax = -fmag * dx / dist - cfg.band_damping * (hvx - vx) / cfg.hook_mass
        hay = (-fmag * dy / dist - cfg.gravity
               - cfg.band_damping * (hvy - vy) / cfg.hook_mass)
        hvx = hvx + hax * dt
        hvy = hvy + hay * dt
        hx = hx + hvx * dt
        hy = hy + hvy * dt

        # rocket wall/ground collisions: reflect, drain health by impact energy
        damage = np.zeros(len(s))
        for pos, vel, lo, hi in (
            (x, vx, cfg.rocket_radius, cfg.arena_width - cfg.rocket_radius),
            (y, vy, cfg.rocket_radius, cfg.arena_height - cfg.rocket_radius),
        ):
            low_hit = pos < lo
            high_hit = pos > hi
            hit = low_hit | high_hit
            impact = np.where(hit, np.abs(vel), 0.0)
            damage += 0.5 * cfg.rocket_mass * impact**2
            vel[low_hit & (vel < 0)] *= -cfg.restitution
            vel[high_hit & (vel > 0)] *= -cfg.restitution
            np.clip(pos, lo, hi, out=pos)
        health = np.clip(health - cfg.collision_damage * damage, 0.0, 1.0)

        # hook collisions: bounce without damage
        for pos, vel, lo, hi in (
            (hx, hvx, cfg.hook_radius, cfg.arena_width - cfg.hook_radius),
            (hy, hvy, cfg.hook_radius, cfg.arena_height - cfg.hook_radius),
        ):
            low_hit = pos < lo
            high_hit = pos > hi
            vel[low_hit & (vel < 0)] *= -cfg.restitution
            vel[high_hit & (vel > 0)] *= -cfg.restitution
            np.clip(pos, lo, hi, out=pos)

        out = s
        out[:, 0], out[:, 1], out[:, 2], out[:, 3] = x, y, vx, vy
        out[:, 4], out[:, 5], out[:, 6] = heading, omega, health
        out[:, 7], out[:, 8], out[:, 9], out[:, 10] = hx, hy, hvx, hvy

        self._step_rocks(out, dt)
        self._update_hook_task(out)

        dead = self.is_dead(states)
        out[dead] = states[dead]
        return out

    def _step_rocks(self, s, dt):
        cfg = self.cfg
        ground = 0.3
        for i in range(cfg.n_rocks):
            rock = self._rock(s, i)
            carried = rock[:, 4] > 0.5
            # carried rocks ride the hook
            rock[carried, 0:2] = s[carried, 7:9]
            rock[carried, 2:4] = s[carried, 9:11]
            free = ~carried
            rock[free, 3] -= cfg.gravity * dt
            rock[free, 0] += rock[free, 2] * dt
            rock[free, 1] += rock[free, 3] * dt
            landed = free & (rock[:, 1] < ground)
            rock[landed, 1] = ground
            rock[landed, 2] = 0.0
            rock[landed, 3] = 0.0
            rock[:, 0] = np.clip(rock[:, 0], 0.0, cfg.arena_width)

    def _update_hook_task(self, s):
        cfg = self.cfg
        hook = s[:, 7:9]
        carried = self.carried_index(s)
        # pickup: empty hook touching a free rock
        for i in range(cfg.n_rocks):
            rock = self._rock(s, i)
            d = np.linalg.norm(hook - rock[:, 0:2], axis=1)
            grab = (carried < 0) & (rock[:, 4] <= 0.5) & (d < cfg.pickup_radius)
            rock[grab, 4] = 1.0
            carried = np.where(grab, i, carried)
        # release: carried rock over the deploy zone scores and respawns
        in_zone = (
            np.linalg.norm(hook - np.asarray(cfg.deploy_center), axis=1)
            < cfg.deploy_radius
        )
        for i in range(cfg.n_rocks):
            rock = self._rock(s, i)
            release = (carried == i) & in_zone
            if np.any(release):
                rock[release, 4] = 0.0
                spawn = cfg.rock_spawn[i % len(cfg.rock_spawn)]
                rock[release, 0] = spawn[0]
                rock[release, 1] = spawn[1]
                rock[release, 2:4] = 0.0
                s[release, -1] += 1.0

    # ---- telemetry -----------------------------------------------------

    def state_to_dict(self, state) -> dict:
        """JSON-friendly view of one state for the telemetry stream."""
        state = np.asarray(state, dtype=float)
        cfg = self.cfg
        rocks = []
        for i in range(cfg.n_rocks):
            base = _ROCK0 + _ROCK_STRIDE * i
            rocks.append({
                "x": state[base], "y": state[base + 1],
                "vx": state[base + 2], "vy": state[base + 3],
                "carried": bool(state[base + 4] > 0.5),
            })
        return {
            "x": state[0], "y": state[1], "vx": state[2], "vy": state[3],
            "heading": state[4], "omega": state[5], "health": state[6],
            "hook": {"x": state[7], "y": state[8],
                     "vx": state[9], "vy": state[10]},
            "rocks": rocks,
            "deploy_zone": {"x": cfg.deploy_center[0], "y": cfg.deploy_center[1],
                            "radius": cfg.deploy_radius},
            "arena": {"width": cfg.arena_width, "height": cfg.arena_height},
            "goal_tally": int(state[-1]),
        }
