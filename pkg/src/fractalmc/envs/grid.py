"""Small deterministic grid world with cliff cells and a bonus goal cell.

Enumerable on purpose: the board is tiny so the brute-force cone oracle
can compute exact scanning and reward densities to validate the planner
against.
"""

from __future__ import annotations

import numpy as np

from ..actions import discrete
from .base import Environment

# up, down, left, right
_MOVES = np.array([[-1, 0], [1, 0], [0, -1], [0, 1]])


class GridEnv(Environment):
    """Agent on a rows x cols board; cliff cells kill, one cell pays a bonus.

    Moves into walls clamp in place.  Alive cells pay reward 1 so the
    keep-alive rule (reward zero iff dead) holds; the goal cell pays
    ``1 + goal_bonus``.
    """

    def __init__(self, rows=3, cols=3, cliffs=((2, 1),), goal=(0, 2),
                 goal_bonus=4.0, start=None):
        self.rows = rows
        self.cols = cols
        self.cliffs = {tuple(c) for c in cliffs}
        self.goal = tuple(goal)
        self.goal_bonus = float(goal_bonus)
        self.start = tuple(start) if start is not None else (rows // 2, cols // 2)
        if self.start in self.cliffs:
            raise ValueError("start cell is a cliff")
        self.action_spec = discrete(4)
        self._cliff_mask = np.zeros((rows, cols), dtype=bool)
        for r, c in self.cliffs:
            self._cliff_mask[r, c] = True

    def initial_state(self) -> np.ndarray:
        return np.array(self.start, dtype=float)

    def step(self, states, actions, dt):
        states = np.asarray(states, dtype=float)
        actions = np.asarray(actions, dtype=int)
        nxt = states + _MOVES[actions]
        # clamp into the board
        nxt[:, 0] = np.clip(nxt[:, 0], 0, self.rows - 1)
        nxt[:, 1] = np.clip(nxt[:, 1], 0, self.cols - 1)
        dead = self.is_dead(states)
        nxt[dead] = states[dead]
        return nxt

    def is_dead(self, states):
        cells = np.asarray(states).astype(int)
        return self._cliff_mask[cells[:, 0], cells[:, 1]]

    def reward_components(self, states, root=None):
        states = np.asarray(states)
        alive = (~self.is_dead(states)).astype(float)
        cells = states.astype(int)
        on_goal = (cells[:, 0] == self.goal[0]) & (cells[:, 1] == self.goal[1])
        goal = np.where(on_goal, 1.0 + self.goal_bonus, 1.0)
        return [(alive, 1.0), (goal, 1.0)]

    def distance(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return np.linalg.norm(a - b, axis=1)

    def canonical_key(self, state) -> bytes:
        cell = np.asarray(state).astype(int)
        return bytes([int(cell[0]), int(cell[1])])

    @property
    def enumerable(self) -> bool:
        return True
