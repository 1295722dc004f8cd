"""Swarm-wave planning: one ever-growing cone from a fixed root.

Instead of rebuilding a cone per agent step, the swarm keeps expanding
from the root until some walker's cumulative score reaches a target.
Walker lineage is tracked in an append-only node log so the winning path
can be replayed and good episodes exported as a rollout dataset.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .core import clone_probability, relativize, virtual_reward
from .envs.base import Environment
from .swarm import FmcParams, _companions

PRUNE_INTERVAL = 64


@dataclass
class WaveNode:
    """One visited state in the wave's ancestry log."""

    id: int
    parent: int | None
    action: object
    state: np.ndarray
    score: float
    depth: int


@dataclass
class RolloutDataset:
    """Flat (observation, action, reward, done, episode) records."""

    rows: list = field(default_factory=list)

    def append(self, observation, action, reward, done, episode):
        self.rows.append({
            "observation": observation,
            "action": action,
            "reward": reward,
            "done": done,
            "episode": episode,
        })

    def to_ndjson(self, path) -> None:
        with open(path, "w") as fh:
            for row in self.rows:
                fh.write(json.dumps(row) + "\n")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["episode", "observation", "action",
                               "reward", "done"])
            writer.writeheader()
            for row in self.rows:
                writer.writerow(row)


@dataclass
class WaveResult:
    best_path: list            # WaveNodes from the first action to the leaf
    dataset: RolloutDataset
    samples_used: int
    ticks_run: int
    best_score: float
    complete: bool             # target score reached


def _observation(env: Environment, state) -> object:
    if env.enumerable:
        return env.canonical_key(state).hex()
    return np.asarray(state, dtype=float).tolist()


def swarm_wave(env: Environment, x0, target_score: float,
               n_walkers: int = 32, max_ticks: int = 200,
               params: FmcParams | None = None,
               rng: np.random.Generator | None = None) -> WaveResult:
    """Grow one cone from ``x0`` until a walker's cumulative score reaches
    ``target_score`` (or ``max_ticks`` elapses; the result is then flagged
    incomplete).

    Cumulative score is the sum of composed rewards along a path,
    including the root.  The tick skeleton mirrors the per-step planner
    (measure / clone / perturb) with cumulative scores taking the role of
    the instantaneous reward, so high-scoring lineages attract clones.
    """
    if n_walkers < 2:
        raise ValueError("n_walkers must be >= 2")
    if params is None:
        params = FmcParams(n_walkers=n_walkers, ticks=max(1, max_ticks), dt=1.0)
    if rng is None:
        rng = np.random.default_rng(params.seed)

    x0 = np.asarray(x0, dtype=float)
    root_score = float(env.reward(x0[None, :], root=x0)[0])
    nodes = {0: WaveNode(0, None, None, x0.copy(), root_score, 0)}
    next_id = 1

    if root_score >= target_score:
        dataset = RolloutDataset()
        return WaveResult([], dataset, 0, 0, root_score, True)

    states = np.repeat(x0[None, :], n_walkers, axis=0)
    node_ids = np.zeros(n_walkers, dtype=int)
    scores = np.full(n_walkers, root_score)
    initial_actions = env.action_spec.sample_uniform(rng, n_walkers)
    first_tick = True

    ticks_run = 0
    complete = False
    for tick in range(max_ticks):
        dead = env.is_dead(states)
        if np.all(dead):
            break

        snapshot = states.copy()
        snapshot_ids = node_ids.copy()
        snapshot_scores = scores.copy()
        snapshot_actions = np.array(initial_actions, copy=True)

        j = _companions(rng, n_walkers)
        distances = env.distance(snapshot, snapshot[j])
        r_rel = relativize(np.where(dead, 0.0, snapshot_scores))
        d_rel = relativize(distances)
        vr = virtual_reward(r_rel, d_rel, params.alpha, params.beta)

        k = _companions(rng, n_walkers)
        probs = clone_probability(vr, vr[k], clamp=params.clamp_clone_prob)
        probs = np.where(dead, 1.0, probs)
        dead_idx = np.flatnonzero(dead)
        if dead_idx.size:
            alive_idx = np.flatnonzero(~dead)
            k[dead_idx] = rng.choice(alive_idx, size=dead_idx.size)
        clones = rng.random(n_walkers) < probs
        if np.any(clones):
            states[clones] = snapshot[k[clones]]
            node_ids[clones] = snapshot_ids[k[clones]]
            scores[clones] = snapshot_scores[k[clones]]
            initial_actions[clones] = snapshot_actions[k[clones]]

        movers = np.flatnonzero(~clones)
        if movers.size:
            if first_tick:
                actions = initial_actions[movers]
            else:
                actions = env.action_spec.sample_uniform(rng, movers.size)
            new_states = env.step(states[movers], actions, params.dt)
            rewards = env.reward(new_states, root=x0)
            for m, idx in enumerate(movers):
                parent = nodes[node_ids[idx]]
                score = parent.score + float(rewards[m])
                node = WaveNode(next_id, parent.id,
                                actions[m] if np.ndim(actions[m]) == 0
                                else np.asarray(actions[m]).copy(),
                                new_states[m].copy(), score, parent.depth + 1)
                nodes[next_id] = node
                node_ids[idx] = next_id
                next_id += 1
                scores[idx] = score
            states[movers] = new_states
        first_tick = False
        ticks_run = tick + 1

        if (tick + 1) % PRUNE_INTERVAL == 0:
            nodes = _prune(nodes, node_ids)

        if scores.max() >= target_score:
            complete = True
            break

    best_idx = int(np.argmax(scores))
    best_path = _path(nodes, int(node_ids[best_idx]))
    dataset = _rollouts(env, nodes, node_ids, scores)
    return WaveResult(best_path, dataset, n_walkers * ticks_run, ticks_run,
                      float(scores[best_idx]), complete)


def _prune(nodes: dict, node_ids) -> dict:
    """Drop lineages no walker descends from; ancestry of the living stays."""
    keep = set()
    for nid in set(int(i) for i in node_ids):
        while nid is not None and nid not in keep:
            keep.add(nid)
            nid = nodes[nid].parent
    return {nid: nodes[nid] for nid in keep}


def _path(nodes: dict, leaf_id: int) -> list:
    path = []
    nid = leaf_id
    while nid is not None and nodes[nid].parent is not None:
        path.append(nodes[nid])
        nid = nodes[nid].parent
    path.reverse()
    return path


def _rollouts(env: Environment, nodes: dict, node_ids, scores) -> RolloutDataset:
    """Export the distinct surviving walker paths as episodes, best first."""
    dataset = RolloutDataset()
    order = np.argsort(-np.asarray(scores))
    seen = set()
    episode = 0
    for idx in order:
        leaf = int(node_ids[idx])
        if leaf in seen:
            continue
        seen.add(leaf)
        path = _path(nodes, leaf)
        if not path:
            continue
        prev_state = nodes[path[0].parent].state
        for i, node in enumerate(path):
            action = node.action
            if isinstance(action, np.ndarray):
                action = action.tolist()
            elif action is not None:
                action = int(action) if np.ndim(action) == 0 else action
            dataset.append(
                observation=_observation(env, prev_state),
                action=action,
                reward=node.score - nodes[node.parent].score,
                done=i == len(path) - 1,
                episode=episode,
            )
            prev_state = node.state
        episode += 1
    return dataset
