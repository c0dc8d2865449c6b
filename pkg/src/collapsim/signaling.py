"""Quantifies (no-)signaling through one side's marginals.

Under Born collapse, nothing Alice does moves Bob's outcome statistics
(max_tv = 0, zero channel capacity). A deviating policy on an entangled
state turns Alice's choice of setting into a classical channel to Bob;
its capacity in bits is the natural size of the opened side channel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, DimensionMismatch
from .policies import Born, CollapsePolicy, effective_distribution, sample_from_born
from .quantum import (
    ZERO_PROB,
    ProbabilityDistribution,
    ProjectiveMeasurement,
    StateVector,
    born_distribution,
    collapse,
)
from .rng import trial_rng


@dataclass(frozen=True)
class SignalingReport:
    """Bob-side marginals per Alice setting, and how far apart they are."""

    bob_marginals: dict[str, tuple[float, ...]]
    max_tv: float
    channel_bits: float
    trials_per_setting: int
    mode: str
    seed: int | None = None


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p, float) - np.asarray(q, float)).sum())


def bob_marginal_analytic(
    shared: StateVector,
    dims: tuple[int, int],
    alice_measurement: ProjectiveMeasurement,
    alice_policy: CollapsePolicy,
    bob_measurement: ProjectiveMeasurement,
) -> ProbabilityDistribution:
    """Bob's exact outcome distribution given Alice's measurement and policy.

    Sums, over Alice's outcomes j with nonzero policy probability, the Born
    distribution of Bob's observable on the post-collapse joint state,
    weighted by the policy probability of j. No sampling is involved.
    """
    d_a, d_b = dims
    if shared.dim != d_a * d_b:
        raise DimensionMismatch(f"shared dim {shared.dim} != {d_a}*{d_b}")
    alice_embedded = alice_measurement.embed(dims, "A")
    bob_embedded = bob_measurement.embed(dims, "B")
    policy_dist = effective_distribution(alice_policy, shared, alice_embedded)
    marginal = np.zeros(bob_measurement.n_outcomes)
    for j in range(alice_embedded.n_outcomes):
        if policy_dist[j] <= ZERO_PROB:
            continue
        after = collapse(shared, alice_embedded, j)
        marginal += policy_dist[j] * born_distribution(after, bob_embedded).probs
    return ProbabilityDistribution(np.clip(marginal, 0.0, 1.0))


def channel_capacity(
    transition: np.ndarray, tol: float = 1e-9, max_iter: int = 100_000
) -> float:
    """Capacity in bits of a discrete channel given row-stochastic `transition`.

    Alternating maximization over the input distribution, stopped when the
    standard upper and lower capacity bounds agree to within `tol`.
    """
    w = np.asarray(transition, dtype=float)
    if w.ndim != 2 or w.shape[0] < 1:
        raise BadParameter("transition must be a 2-d row-stochastic matrix")
    if np.any(w < -ZERO_PROB) or not np.allclose(w.sum(axis=1), 1.0, atol=1e-9):
        raise BadParameter("transition rows must be probability distributions")
    w = np.clip(w, 0.0, 1.0)
    n_in = w.shape[0]
    r = np.full(n_in, 1.0 / n_in)
    log_w = np.where(w > 0, np.log2(np.where(w > 0, w, 1.0)), 0.0)
    for _ in range(max_iter):
        q = r @ w  # output marginal
        # D(W(.|x) || q) per input, in bits
        with np.errstate(divide="ignore"):
            log_q = np.where(q > 0, np.log2(np.where(q > 0, q, 1.0)), 0.0)
        divergences = (w * (log_w - log_q)).sum(axis=1)
        lower = float(r @ divergences)
        upper = float(divergences.max())
        if upper - lower <= tol:
            return max(lower, 0.0)
        r = r * np.exp2(divergences)
        r /= r.sum()
    raise BadParameter(f"capacity iteration failed to converge in {max_iter} steps")


def signaling_experiment(
    shared: StateVector,
    dims: tuple[int, int],
    bob_measurement: ProjectiveMeasurement,
    settings: dict[str, tuple[ProjectiveMeasurement, CollapsePolicy]],
    trials: int | None = None,
    seed: int = 0,
) -> SignalingReport:
    """Compare Bob's marginals across Alice settings.

    trials=None runs in analytic mode (exact marginals); an integer runs
    sampled trials per setting with per-trial derived random streams.
    """
    if len(settings) < 2:
        raise BadParameter("at least two Alice settings are required")
    labels = list(settings)
    marginals: dict[str, np.ndarray] = {}
    if trials is None:
        for label in labels:
            alice_meas, policy = settings[label]
            marginals[label] = bob_marginal_analytic(
                shared, dims, alice_meas, policy, bob_measurement
            ).probs
        mode, per_setting = "analytic", 0
    else:
        if trials < 1:
            raise BadParameter("trials must be positive")
        bob_embedded = bob_measurement.embed(dims, "B")
        for s, label in enumerate(labels):
            alice_meas, policy = settings[label]
            alice_embedded = alice_meas.embed(dims, "A")
            alice_born = born_distribution(shared, alice_embedded)
            # Bob's conditional distribution per Alice outcome is a pure
            # function of the fixed shared state; hoist it out of the loop
            conditional = {
                j: born_distribution(collapse(shared, alice_embedded, j), bob_embedded)
                for j in alice_born.support()
            }
            counts = np.zeros(bob_measurement.n_outcomes)
            for t in range(trials):
                rng = trial_rng(seed, s, t)
                alice_sample = sample_from_born(policy, alice_born, rng)
                bob_sample = sample_from_born(
                    Born(), conditional[alice_sample.outcome], rng
                )
                counts[bob_sample.outcome] += 1
            marginals[label] = counts / trials
        mode, per_setting = "empirical", trials

    max_tv = max(
        total_variation(marginals[a], marginals[b])
        for i, a in enumerate(labels)
        for b in labels[i + 1 :]
    )
    transition = np.stack([marginals[label] for label in labels])
    bits = channel_capacity(transition / transition.sum(axis=1, keepdims=True))
    return SignalingReport(
        bob_marginals={label: tuple(map(float, marginals[label])) for label in labels},
        max_tv=float(max_tv),
        channel_bits=float(bits),
        trials_per_setting=per_setting,
        mode=mode,
        seed=seed if trials is not None else None,
    )
