"""
Spreading activation over a SemanticNetwork.

Each node keeps its seed strength and receives a damped, weighted share of
its predecessors' activity every step::

    a[0](n)   = clip(seed(n))
    a[t+1](n) = clip(seed(n) + damping * sum_{m -> n} weight(m, n) * a[t](m))

with ``clip`` to [0, 1].  Several seed vectors can be propagated at once;
every column is computed independently of the others, so a batched run
gives bit-identical columns to one-at-a-time runs.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_STEPS = 10
DEFAULT_DAMPING = 0.8


class EmptySeedError(ValueError):
    """No seed with positive strength was supplied."""


class UnknownWordError(KeyError):
    """A query or seed word is not a node of the network."""


@dataclass(frozen=True)
class ActivationPattern:
    activity: np.ndarray
    steps: int
    words: tuple = ()

    def __getitem__(self, word):
        """Activity of ``word``; 0 for words outside the network."""
        try:
            return float(self.activity[self.words.index(word)])
        except ValueError:
            return 0.0


def check_params(steps, damping):
    if int(steps) != steps or steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping must lie in (0, 1), got {damping!r}")


def propagate(net, seeds, steps=DEFAULT_STEPS, damping=DEFAULT_DAMPING):
    """Run the activation recurrence on a batch of seed columns.

    Args:
        net: SemanticNetwork.
        seeds: array of shape (node_count, batch) with non-negative strengths.
        steps: number of update steps.
        damping: factor in (0, 1) applied to in-flowing activity.

    Returns:
        array of shape (node_count, batch) with the final activities.
    """
    check_params(steps, damping)
    seeds = np.ascontiguousarray(seeds, dtype=float)
    if seeds.ndim != 2 or seeds.shape[0] != net.node_count:
        raise ValueError(f"seed matrix must have shape ({net.node_count}, batch)")
    if (seeds < 0).any():
        raise ValueError("seed strengths must be non-negative")
    inflow = net.inflow
    act = np.minimum(seeds, 1.0)
    for _ in range(int(steps)):
        # sparse @ dense goes through scipy's per-row kernel: no BLAS
        # reduction whose rounding could depend on the batch width
        act = np.minimum(seeds + damping * (inflow @ act), 1.0)
    return act


def seed_vector(net, seeds):
    """Dense seed column from ``(word, strength)`` pairs; repeats add up."""
    vec = np.zeros(net.node_count)
    index = net.index
    for word, strength in seeds:
        if word not in index:
            raise UnknownWordError(word)
        if strength < 0:
            raise ValueError(f"negative seed strength {strength!r} for {word!r}")
        vec[index[word]] += strength
    if not (vec > 0).any():
        raise EmptySeedError("seed set has no positive strength")
    return vec


def activate(net, seeds, steps=DEFAULT_STEPS, damping=DEFAULT_DAMPING):
    """Activated pattern for ``seeds``, an iterable of ``(word, strength)``.

    A mapping ``word -> strength`` is accepted as well.
    """
    if hasattr(seeds, "items"):
        seeds = seeds.items()
    vec = seed_vector(net, seeds)
    act = propagate(net, vec[:, None], steps, damping)[:, 0]
    return ActivationPattern(act, int(steps), net.words)


def similarity(net, w, w2, steps=DEFAULT_STEPS, damping=DEFAULT_DAMPING):
    """Activity of ``w2`` after activating ``w`` alone at strength 1."""
    if w not in net:
        raise UnknownWordError(w)
    if w2 not in net:
        return 0.0
    vec = np.zeros((net.node_count, 1))
    vec[net.node(w), 0] = 1.0
    return float(propagate(net, vec, steps, damping)[net.node(w2), 0])
