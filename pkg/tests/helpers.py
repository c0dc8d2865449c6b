"""Shared random-instance generators for the test suite."""

from __future__ import annotations

import numpy as np

from collapsim.quantum import (
    DensityOperator,
    ProjectiveMeasurement,
    StateVector,
    make_state,
)


def random_state(rng: np.random.Generator, dim: int) -> StateVector:
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return make_state(amps)


def random_measurement(rng: np.random.Generator, dim: int) -> ProjectiveMeasurement:
    """Rank-1 measurement in a Haar-ish random orthonormal basis."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(a)
    return ProjectiveMeasurement.from_basis(q.T)


def random_density(
    rng: np.random.Generator, dim: int, rank: int | None = None
) -> DensityOperator:
    rank = rank or dim
    weights = rng.random(rank) + 0.05
    weights /= weights.sum()
    rho = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        psi = random_state(rng, dim).amplitudes
        rho += w * np.outer(psi, psi.conj())
    return DensityOperator(rho)
