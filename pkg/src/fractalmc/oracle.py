"""Brute-force theory oracle for tiny discrete systems.

Enumerates causal slices exactly by propagating a scanning policy as a
Markov transition, yielding per-slice scanning and reward densities, the
entropy-proportional intelligent decision, and the divergence-based
sub-optimality coefficients that normalize the random policy to 1.

Everything here is exact and independent of the swarm planner; it is the
yardstick the planner is validated against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution, dh_divergence, shannon_entropy
from .envs.base import Environment

ENUMERATION_BUDGET = 1_000_000


@dataclass
class TabularPolicy:
    """Scanning table (state key -> action distribution) plus a deciding
    distribution over initial actions.  Missing states fall back to
    uniform scanning."""

    n_actions: int
    scanning: dict = field(default_factory=dict)
    deciding: Distribution | None = None

    def __post_init__(self):
        if self.deciding is None:
            self.deciding = Distribution.uniform(self.n_actions)

    def pi_s(self, key: bytes) -> Distribution:
        return self.scanning.get(key, Distribution.uniform(self.n_actions))


def uniform_policy(n_actions: int) -> TabularPolicy:
    return TabularPolicy(n_actions=n_actions)


@dataclass
class SliceTable:
    """Exact causal slices: per tick, state key -> masses and rewards.

    ``slices[t]`` maps key -> (scan_mass, reward, reward_mass);
    ``conditionals[t][a]`` maps key -> scan mass restricted to paths whose
    first action was ``a`` (the conditional sub-cones partition the cone,
    so these masses sum to the unconditional slice).
    """

    ticks: int
    n_actions: int
    slices: list = field(default_factory=list)
    conditionals: list = field(default_factory=list)

    def scan_distribution(self, t: int):
        keys = sorted(self.slices[t])
        return keys, np.array([self.slices[t][k][0] for k in keys])

    def reward_distribution(self, t: int):
        keys = sorted(self.slices[t])
        return keys, np.array([self.slices[t][k][2] for k in keys])

    def conditional_distribution(self, t: int, action: int, normalized=True):
        keys = sorted(self.slices[t])
        masses = np.array([self.conditionals[t][action].get(k, 0.0) for k in keys])
        total = masses.sum()
        if normalized and total > 0:
            masses = masses / total
        return keys, masses

    def to_json_rows(self) -> list:
        rows = []
        for t, entries in enumerate(self.slices):
            for key in sorted(entries):
                scan, reward, reward_mass = entries[key]
                rows.append({
                    "tick": t, "state_key": key.hex(),
                    "scan_mass": scan, "reward": reward,
                    "reward_mass": reward_mass,
                })
        return rows

    def dump_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_rows(), fh, indent=1)


def enumerate_cone(env: Environment, x0, ticks: int,
                   policy: TabularPolicy | None = None,
                   budget: int = ENUMERATION_BUDGET) -> SliceTable:
    """Exact forward propagation of the scanning policy from ``x0``.

    Raises if the expansion count exceeds the enumeration budget.
    """
    if not env.enumerable:
        raise ValueError("environment does not expose canonical state keys")
    n_actions = env.action_spec.discrete_count
    if policy is None:
        policy = uniform_policy(n_actions)

    x0 = np.asarray(x0, dtype=float)
    root_key = env.canonical_key(x0)
    table = SliceTable(ticks=ticks, n_actions=n_actions)

    # per initial action: key -> (state, mass); tick 0 is the root point mass
    cond = {a: {root_key: (x0, policy.pi_s(root_key)[a])} for a in range(n_actions)}
    table.slices.append(_merge_slice(env, {root_key: (x0, 1.0)}))
    table.conditionals.append({a: {root_key: policy.pi_s(root_key)[a]}
                               for a in range(n_actions)})

    expansions = 0
    for t in range(1, ticks + 1):
        new_cond = {}
        for a in range(n_actions):
            frontier = cond[a]
            nxt: dict = {}
            for key, (state, mass) in frontier.items():
                if mass == 0.0:
                    continue
                if t == 1:
                    # tick 1 realizes the conditioning action itself
                    branches = [(a, 1.0)]
                else:
                    branches = list(enumerate(policy.pi_s(key).weights))
                for action, p in branches:
                    if p == 0.0:
                        continue
                    expansions += 1
                    if expansions > budget:
                        raise ValueError(
                            f"enumeration budget exceeded ({expansions} expansions)"
                        )
                    nstate = env.step(state[None, :],
                                      np.asarray([action]), 1.0)[0]
                    nkey = env.canonical_key(nstate)
                    if nkey in nxt:
                        nxt[nkey] = (nxt[nkey][0], nxt[nkey][1] + mass * p)
                    else:
                        nxt[nkey] = (nstate, mass * p)
            new_cond[a] = nxt
        cond = new_cond
        merged: dict = {}
        for a in range(n_actions):
            for key, (state, mass) in cond[a].items():
                if key in merged:
                    merged[key] = (merged[key][0], merged[key][1] + mass)
                else:
                    merged[key] = (state, mass)
        table.slices.append(_merge_slice(env, merged))
        table.conditionals.append(
            {a: {k: m for k, (_, m) in cond[a].items()} for a in range(n_actions)}
        )
    return table


def _merge_slice(env: Environment, frontier: dict) -> dict:
    """Attach rewards and the reward density to a propagated frontier."""
    keys = sorted(frontier)
    states = np.stack([frontier[k][0] for k in keys])
    rewards = env.reward(states)
    total = rewards.sum()
    out = {}
    for i, key in enumerate(keys):
        reward_mass = rewards[i] / total if total > 0 else 0.0
        out[key] = (frontier[key][1], float(rewards[i]), float(reward_mass))
    return out


def intelligent_decision(table: SliceTable) -> Distribution:
    """Action distribution proportional to the entropies of the final
    slice's conditional scanning densities; uniform when every action is
    fully deterministic (all entropies zero)."""
    t = table.ticks
    entropies = []
    for a in range(table.n_actions):
        _, masses = table.conditional_distribution(t, a, normalized=True)
        entropies.append(shannon_entropy(masses) if masses.sum() > 0 else 0.0)
    entropies = np.array(entropies)
    total = entropies.sum()
    if total == 0.0:
        return Distribution.uniform(table.n_actions)
    return Distribution(entropies / total)


def _slice_divergence(table: SliceTable, scan_masses=None) -> float:
    """Sum over ticks 1..M of D_H(reward density, scanning density).

    ``scan_masses`` substitutes empirical densities (key -> mass per tick,
    index 0 = tick 1) for the table's own scanning masses.
    """
    total = 0.0
    for t in range(1, table.ticks + 1):
        keys, reward_mass = table.reward_distribution(t)
        if scan_masses is None:
            _, scan = table.scan_distribution(t)
        else:
            emp = scan_masses[t - 1]
            scan = np.array([emp.get(k, 0.0) for k in keys])
            s = scan.sum()
            if s > 0:
                scan = scan / s
        total += dh_divergence(reward_mass, scan)
        if np.isinf(total):
            return float("inf")
    return total


def scan_suboptimality(env: Environment, x0, ticks: int,
                       policy: TabularPolicy, dt: float = 1.0) -> float:
    """Integrated slice divergence of the policy's cone, in units of the
    random policy's (left-Riemann over ticks 1..M; tick 0 is the shared
    root point mass and contributes nothing)."""
    table = enumerate_cone(env, x0, ticks, policy)
    random_table = enumerate_cone(env, x0, ticks, uniform_policy(table.n_actions))
    raw = _slice_divergence(table) * dt
    unit = _slice_divergence(random_table) * dt
    if unit == 0.0:
        return 1.0 if raw == 0.0 else float("inf")
    return raw / unit


def empirical_scan_suboptimality(env: Environment, x0, ticks: int,
                                 empirical_slices, dt: float = 1.0) -> float:
    """Scan sub-optimality of observed walker densities.

    ``empirical_slices`` is a list (ticks 1..M) of key -> frequency maps,
    e.g. recorded from a swarm run; the reward densities and the random
    unit come from the exact cone.
    """
    random_table = enumerate_cone(
        env, x0, ticks, uniform_policy(env.action_spec.discrete_count))
    raw = _slice_divergence(random_table, scan_masses=empirical_slices) * dt
    unit = _slice_divergence(random_table) * dt
    if unit == 0.0:
        return 1.0 if raw == 0.0 else float("inf")
    return raw / unit


def decision_suboptimality(id_dist: Distribution, pi_d: Distribution) -> float:
    """Divergence of the deciding distribution from the intelligent
    decision, in units of the uniform decider's divergence."""
    if len(id_dist) != len(pi_d):
        raise ValueError("distributions must cover the same action set")
    num = dh_divergence(id_dist, pi_d)
    if num == 0.0:
        return 0.0
    unit = dh_divergence(id_dist, Distribution.uniform(len(id_dist)))
    if unit == 0.0:
        return float("inf")
    return num / unit


def global_suboptimality(scan: float, dec: float) -> float:
    return (scan + dec) / 2.0


def iq(subopt: float) -> float:
    """Reciprocal sub-optimality; the random policy scores exactly 1."""
    if subopt < 0:
        raise ValueError("sub-optimality must be >= 0")
    if subopt == 0.0:
        return float("inf")
    return 1.0 / subopt


def entropy_decomposition(table: SliceTable, t: int):
    """Chain-rule split of the final-slice scanning entropy.

    Returns (H(joint over state and first action),
             H(action mixture) + sum_a w_a * H(conditional_a)).
    The two sides agree by construction; the *unweighted* sum of
    conditional entropies generally does not reproduce H(P_s), which is
    why the weighted form is the one tested.
    """
    n = table.n_actions
    joint = []
    weights = []
    cond_entropies = []
    for a in range(n):
        masses = np.array(sorted(table.conditionals[t][a].values()))
        w = masses.sum()
        weights.append(w)
        joint.extend(masses.tolist())
        cond_entropies.append(
            shannon_entropy(masses / w) if w > 0 else 0.0
        )
    joint = np.array(joint)
    weights = np.array(weights)
    lhs = shannon_entropy(joint / joint.sum())
    rhs = shannon_entropy(weights / weights.sum()) + float(
        np.sum(weights * np.array(cond_entropies))
    )
    return lhs, rhs
