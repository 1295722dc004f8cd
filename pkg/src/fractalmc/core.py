"""Scalar building blocks of the walker swarm: reward reshaping,
virtual reward, cloning probability and multiplicative reward composition.
"""

from __future__ import annotations

import numpy as np


def relativize(values) -> np.ndarray:
    """Reshape a batch of values into positive, comparable scores.

    Values are z-scored against the batch (population std), then squashed:
    non-positive z through exp, positive z through ``1 + ln(1 + z)``.
    A zero-variance batch maps to all ones (the z = 0 limit).  The output
    is strictly positive, monotone in the input and invariant to positive
    affine rescaling.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("relativize: empty input")
    if not np.isfinite(values).all():
        raise ValueError("relativize: non-finite value")
    mean = values.mean()
    centered = values - mean
    std = np.sqrt((centered * centered).mean())
    if std == 0.0:
        return np.ones_like(values)
    z = centered / std
    neg = z <= 0.0
    out = np.empty_like(z)
    np.exp(np.minimum(z, 0.0), out=out)
    pos = ~neg
    if pos.any():
        out[pos] = 1.0 + np.log1p(z[pos])
    return out


def virtual_reward(r, d, alpha: float = 1.0, beta: float = 1.0):
    """Exploitation/exploration score ``r**alpha * d**beta``.

    ``r`` and ``d`` are expected to be relativized (strictly positive);
    alpha = beta = 1 recovers the plain reward-times-distance form.
    """
    r = np.asarray(r, dtype=float)
    d = np.asarray(d, dtype=float)
    ra = r if alpha == 1.0 else r**alpha
    db = d if beta == 1.0 else d**beta
    return ra * db


def clone_probability(vr_i, vr_j, clamp: bool = True):
    """Probability that a walker with score ``vr_i`` copies a peer at ``vr_j``.

    Zero own score forces a clone; a higher own score forbids it; in
    between the probability is the relative score gap, optionally clipped
    to 1 (it can exceed 1 otherwise).
    """
    vr_i = np.asarray(vr_i, dtype=float)
    vr_j = np.asarray(vr_j, dtype=float)
    gap = np.divide(vr_j - vr_i, vr_i, out=np.ones(np.broadcast(vr_i, vr_j).shape),
                    where=vr_i != 0.0)
    prob = np.where(vr_i == 0.0, 1.0, np.where(vr_i > vr_j, 0.0, gap))
    if clamp:
        prob = np.minimum(prob, 1.0)
    if prob.ndim == 0:
        return float(prob)
    return prob


def compose_reward(components) -> float:
    """Multiplicative reward over weighted goals: ``prod(value**weight)``.

    A zero-valued component with positive weight annihilates the product
    (dead dominates); ``0**0`` counts as 1.  Values must be nonnegative.
    """
    out = 1.0
    for value, weight in components:
        value = np.asarray(value, dtype=float)
        if (value < 0).any():
            raise ValueError(
                "reward components must be nonnegative - apply relativize upstream"
            )
        out = out * (value if weight == 1.0 else value**weight)
    return out
