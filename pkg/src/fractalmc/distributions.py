"""Probability distributions over finite sets, plus the divergence and
entropy measures used throughout the metrics and prior machinery.
"""

from __future__ import annotations

import numpy as np

_SUM_TOL = 1e-9


class Distribution:
    """A validated probability vector over a finite set."""

    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty 1-d vector")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > _SUM_TOL:
            raise ValueError(f"weights must sum to 1 (got {w.sum()})")
        self.weights = w

    def __len__(self):
        return self.weights.size

    def __getitem__(self, i):
        return self.weights[i]

    def __eq__(self, other):
        return isinstance(other, Distribution) and np.array_equal(
            self.weights, other.weights
        )

    def __repr__(self):
        return f"Distribution({self.weights.tolist()})"

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def from_counts(cls, counts) -> "Distribution":
        counts = np.asarray(counts, dtype=float)
        total = counts.sum()
        if total <= 0:
            raise ValueError("counts must have positive total")
        return cls(counts / total)

    @classmethod
    def point(cls, index: int, n: int) -> "Distribution":
        w = np.zeros(n)
        w[index] = 1.0
        return cls(w)


def _weights(p) -> np.ndarray:
    if isinstance(p, Distribution):
        return p.weights
    return np.asarray(p, dtype=float)


def dh_divergence(p, q) -> float:
    """Gibbs-inequality divergence ``sum p_i (ln p_i - ln q_i)`` over the
    support of p; returns +inf when p puts mass where q has none.

    Well defined for any pair of distributions, nonnegative, and zero
    exactly when p equals q.
    """
    p = _weights(p)
    q = _weights(q)
    if p.shape != q.shape:
        raise ValueError("distributions must have equal length")
    mask = p > 0
    if np.any(q[mask] == 0):
        return float("inf")
    return float(np.sum(p[mask] * (np.log(p[mask]) - np.log(q[mask]))))


def shannon_entropy(p) -> float:
    """``-sum p_i ln p_i`` with the 0 ln 0 = 0 convention."""
    p = _weights(p)
    mask = p > 0
    return float(-np.sum(p[mask] * np.log(p[mask])))
