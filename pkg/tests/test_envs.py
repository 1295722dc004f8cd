"""Environment contract invariants and physics sanity checks."""

import numpy as np
import pytest

from fractalmc.envs import CartPoleEnv, GridEnv, RocketEnv, make_env
from fractalmc.envs.rocket import (HOOK_REWARD_AT_80PCT, HOOK_REWARD_AT_ZERO,
                                   HOOK_REWARD_FAR, RocketConfig, hook_reward,
                                   rocket_distance)

ALL_ENVS = [GridEnv, CartPoleEnv, RocketEnv]


def sample_states(env, n=32, seed=0):
    """A spread of reachable states obtained by random rollouts."""
    rng = np.random.default_rng(seed)
    states = np.repeat(env.initial_state()[None, :], n, axis=0)
    for _ in range(10):
        actions = env.action_spec.sample_uniform(rng, n)
        states = env.step(states, actions, 0.05)
    return states


@pytest.mark.parametrize("env_cls", ALL_ENVS)
class TestContract:
    def test_dead_states_absorb(self, env_cls):
        env = env_cls()
        states = sample_states(env)
        rng = np.random.default_rng(1)
        if env_cls is GridEnv:
            states[0] = np.array(next(iter(env.cliffs)), dtype=float)
        elif env_cls is CartPoleEnv:
            states[0] = np.array([3.0, 0.0, 0.0, 0.0])
        else:
            states[0, 6] = 0.0
        dead = env.is_dead(states)
        assert dead[0]
        for _ in range(3):
            actions = env.action_spec.sample_uniform(rng, len(states))
            nxt = env.step(states, actions, 0.05)
            assert np.array_equal(nxt[dead], states[dead])
            states = nxt

    def test_reward_zero_iff_dead(self, env_cls):
        env = env_cls()
        states = sample_states(env)
        if env_cls is GridEnv:
            states[0] = np.array(next(iter(env.cliffs)), dtype=float)
        elif env_cls is CartPoleEnv:
            states[0] = np.array([3.0, 0.0, 0.0, 0.0])
        else:
            states[0, 6] = 0.0
        rewards = env.reward(states, root=env.initial_state())
        dead = env.is_dead(states)
        assert np.array_equal(rewards == 0.0, dead)

    def test_distance_axioms(self, env_cls):
        env = env_cls()
        a = sample_states(env, seed=2)
        b = sample_states(env, seed=3)
        d_ab = env.distance(a, b)
        assert np.all(d_ab >= 0)
        assert np.allclose(d_ab, env.distance(b, a))
        assert np.allclose(env.distance(a, a), 0.0)

    def test_initial_state_is_alive(self, env_cls):
        env = env_cls()
        assert not env.is_dead(env.initial_state()[None, :])[0]


class TestGrid:
    def test_wall_clamp(self):
        env = GridEnv()
        corner = np.array([[0.0, 0.0]])
        up = env.step(corner, np.array([0]), 1.0)
        left = env.step(corner, np.array([2]), 1.0)
        assert np.array_equal(up[0], [0.0, 0.0])
        assert np.array_equal(left[0], [0.0, 0.0])

    def test_cliff_kills_and_zeroes_reward(self):
        env = GridEnv(cliffs=((1, 2),))
        state = np.array([[1.0, 1.0]])
        nxt = env.step(state, np.array([3]), 1.0)  # move right into cliff
        assert env.is_dead(nxt)[0]
        assert env.reward(nxt)[0] == 0.0

    def test_goal_cell_pays_bonus(self):
        env = GridEnv(goal=(0, 2), goal_bonus=4.0)
        goal_state = np.array([[0.0, 2.0]])
        assert env.reward(goal_state)[0] == pytest.approx(5.0)

    def test_cone_fits_small_budget(self):
        from fractalmc.oracle import enumerate_cone
        env = GridEnv()
        # root expands 4 ways, surviving children expand again: <= 20 total
        table = enumerate_cone(env, env.initial_state(), 2, budget=20)
        _, masses = table.scan_distribution(2)
        assert masses.sum() == pytest.approx(1.0)

    def test_start_on_cliff_rejected(self):
        with pytest.raises(ValueError, match="cliff"):
            GridEnv(cliffs=((1, 1),), start=(1, 1))

    def test_canonical_key(self):
        env = GridEnv()
        assert env.canonical_key(np.array([2.0, 1.0])) == bytes([2, 1])
        assert env.enumerable


class TestCartPole:
    def test_parity_of_dynamics(self):
        env = CartPoleEnv()
        s = np.array([[0.1, 0.2, 0.05, -0.1]])
        mirrored = -s
        right = env.step(s, np.array([1]), 0.02)
        left_of_mirror = env.step(mirrored, np.array([0]), 0.02)
        assert np.allclose(right, -left_of_mirror)

    def test_pushing_away_from_lean_grows_the_lean(self):
        # independent integration shows theta rises monotonically when the
        # cart is pushed away from the lean side (pushing toward the lean
        # rights the pole first, so |theta| is not monotone there)
        env = CartPoleEnv()
        s = np.array([[0.0, 0.0, 0.05, 0.0]])
        thetas = [0.05]
        for _ in range(10):
            # constant leftward force while the pole leans right; raw
            # integrator so the trajectory runs past the death bound
            s = env.dynamics(s, np.full(1, -env.force), 0.02)
            thetas.append(float(s[0, 2]))
        assert all(b > a for a, b in zip(thetas, thetas[1:]))
        assert thetas[-1] == pytest.approx(0.4053, abs=1e-3)

    def test_death_bounds(self):
        env = CartPoleEnv()
        states = np.array([[0.0, 0.0, np.deg2rad(12.5), 0.0],
                           [2.5, 0.0, 0.0, 0.0],
                           [0.0, 0.0, 0.0, 0.0]])
        assert env.is_dead(states).tolist() == [True, True, False]

    def test_energy_drift_under_one_percent(self):
        env = CartPoleEnv()
        s = np.array([[0.0, 0.0, 0.1, 0.0]])
        e0 = env.mechanical_energy(s)[0]
        for _ in range(1000):
            s = env.dynamics(s, np.zeros(1), 0.01)
        drift = abs(env.mechanical_energy(s)[0] - e0) / abs(e0)
        assert drift < 0.01

    def test_shaping_preserves_alive_dead_contract(self):
        env = CartPoleEnv()
        interior = np.array([[1.0, 0.5, 0.1, 0.2]])
        assert env.reward(interior)[0] > 0.0


class TestHookReward:
    def test_anchor_values(self):
        assert hook_reward(0.0, 1.0) == pytest.approx(HOOK_REWARD_AT_ZERO)
        assert hook_reward(0.8, 1.0) == pytest.approx(HOOK_REWARD_AT_80PCT)
        assert hook_reward(1.3, 1.0) == pytest.approx(HOOK_REWARD_FAR)
        assert hook_reward(1.0, 1.0) == pytest.approx(HOOK_REWARD_FAR)

    def test_monotone_nonincreasing(self):
        rhos = np.linspace(0.0, 1.2, 200)
        values = hook_reward(rhos, 1.0)
        assert np.all(np.diff(values) <= 1e-12)

    def test_continuous_at_interior_knot(self):
        below = hook_reward(0.8 - 1e-9, 1.0)
        above = hook_reward(0.8 + 1e-9, 1.0)
        assert below == pytest.approx(above, rel=1e-6)

    def test_scale_invariance_in_ratio(self):
        assert hook_reward(4.0, 10.0) == pytest.approx(hook_reward(0.4, 1.0))

    def test_nonpositive_initial_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            hook_reward(1.0, 0.0)


class TestRocketDistance:
    def test_identical_states_zero(self):
        s = sample_states(RocketEnv(), n=4)
        assert np.allclose(rocket_distance(s, s), 0.0)

    def test_position_offset_only(self):
        env = RocketEnv()
        a = env.initial_state()[None, :].copy()
        b = a.copy()
        b[0, 0] += 1.0       # x differs by 1
        b[0, 4] += 2.0       # heading ignored
        b[0, 8] += 5.0       # hook ignored
        assert rocket_distance(a, b)[0] == pytest.approx(1.0)

    def test_symmetry(self):
        a = sample_states(RocketEnv(), n=8, seed=4)
        b = sample_states(RocketEnv(), n=8, seed=5)
        assert np.allclose(rocket_distance(a, b), rocket_distance(b, a))


class TestRocket:
    def test_free_fall_gains_g_dt(self):
        env = RocketEnv()
        s = env.initial_state()[None, :]
        nxt = env.step(s, np.array([[0.0, 0.0]]), 0.1)
        assert nxt[0, 3] == pytest.approx(-env.cfg.gravity * 0.1)

    def test_reward_is_health_times_hook_reward(self):
        env = RocketEnv()
        root = env.initial_state()
        states = sample_states(env, n=8, seed=6)
        d_init = env.hook_target_distance(root[None, :])[0]
        expected = (np.clip(states[:, 6], 0, 1)
                    * hook_reward(env.hook_target_distance(states), d_init))
        assert np.allclose(env.reward(states, root=root), expected)

    def test_collisions_drain_health(self):
        env = RocketEnv()
        s = env.initial_state()[None, :].copy()
        s[0, 1] = env.cfg.rocket_radius + 0.01
        s[0, 3] = -8.0  # slamming into the ground
        nxt = env.step(s, np.array([[0.0, 0.0]]), 0.1)
        assert nxt[0, 6] < s[0, 6]

    def test_hook_oscillation_dissipates_energy(self):
        # stationary rocket (gravity off), hook displaced beyond the band's
        # rest length: spring energy must decay under damping
        cfg = RocketConfig(gravity=0.0)
        env = RocketEnv(cfg)
        s = env.initial_state()[None, :].copy()
        s[0, 7:9] = [s[0, 0] + 3.0, s[0, 1]]  # stretch 1 m beyond rest
        s[0, 9:11] = 0.0

        def hook_energy(row):
            d = np.hypot(row[7] - row[0], row[8] - row[1])
            stretch = max(d - cfg.band_rest_length, 0.0)
            kinetic = 0.5 * cfg.hook_mass * (row[9] ** 2 + row[10] ** 2)
            return kinetic + 0.5 * cfg.band_stiffness * stretch**2

        energies = [hook_energy(s[0])]
        for _ in range(500):
            s = env.step(s, np.array([[0.0, 0.0]]), 0.01)
            energies.append(hook_energy(s[0]))
        assert energies[-1] < 0.05 * energies[0]
        assert max(energies) <= energies[0] * 1.02

    def test_pickup_and_deploy_cycle(self):
        env = RocketEnv()
        s = env.initial_state()[None, :].copy()
        rock_xy = s[0, 11:13].copy()
        s[0, 7:9] = rock_xy  # hook on the first rock
        nxt = env.step(s, np.array([[0.0, 0.0]]), 0.01)
        assert env.carried_index(nxt)[0] == 0
        # teleport the hook over the deploy zone: rock scores and respawns
        nxt[0, 7:9] = env.cfg.deploy_center
        fin = env.step(nxt, np.array([[0.0, 0.0]]), 0.01)
        assert env.goal_tally(fin)[0] == 1.0
        assert env.carried_index(fin)[0] == -1

    def test_state_to_dict_schema(self):
        env = RocketEnv()
        d = env.state_to_dict(env.initial_state())
        assert {"x", "y", "vx", "vy", "heading", "health", "hook",
                "rocks", "deploy_zone", "goal_tally"} <= set(d)
        assert len(d["rocks"]) == env.cfg.n_rocks


class TestRegistry:
    def test_make_env_ids(self):
        assert isinstance(make_env("grid"), GridEnv)
        assert isinstance(make_env("cartpole"), CartPoleEnv)
        assert isinstance(make_env("rocket"), RocketEnv)

    def test_unknown_id_rejected(self):
        with pytest.raises(ValueError):
            make_env("atari")

    def test_rocket_kwargs_build_config(self):
        env = make_env("rocket", gravity=5.0)
        assert env.cfg.gravity == 5.0
