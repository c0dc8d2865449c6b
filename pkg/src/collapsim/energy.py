"""Mean-energy bookkeeping across non-selective measurement updates.

A measurement whose operator commutes with the Hamiltonian conserves mean
energy under Born weights; feeding the update deviating weights breaks
conservation in general, and the audit records by how much.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, LengthMismatch
from .quantum import (
    ATOL,
    DensityOperator,
    ProbabilityDistribution,
    ProjectiveMeasurement,
    nonselective_update,
)


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Hermitian energy observable (units arbitrary but fixed per experiment)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.ascontiguousarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("hamiltonian must be a square matrix")
        if not np.allclose(mat, mat.conj().T, atol=ATOL, rtol=0.0):
            raise ValueError("hamiltonian must be Hermitian")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def diagonal(cls, energies: Sequence[float]) -> "Hamiltonian":
        return cls(np.diag(np.asarray(energies, dtype=float)))


@dataclass(frozen=True)
class EnergyAudit:
    e_before: float
    e_after: float
    delta: float
    commutes: bool
    weights_were_born: bool


def energy_expectation(rho: DensityOperator, hamiltonian: Hamiltonian) -> float:
    """Tr(H rho), checked to be real."""
    if rho.dim != hamiltonian.dim:
        raise DimensionMismatch(f"rho dim {rho.dim} != H dim {hamiltonian.dim}")
    value = np.trace(hamiltonian.matrix @ rho.matrix)
    if abs(value.imag) > 1e-12:
        raise ValueError(f"energy expectation has imaginary part {value.imag!r}")
    return float(value.real)


def commutation_check(
    measurement: ProjectiveMeasurement,
    eigenvalues: Sequence[float],
    hamiltonian: Hamiltonian,
) -> bool:
    """Whether sum_j m_j M_j commutes with H (the non-demolition condition)."""
    if measurement.dim != hamiltonian.dim:
        raise DimensionMismatch(
            f"measurement dim {measurement.dim} != H dim {hamiltonian.dim}"
        )
    values = np.asarray(eigenvalues, dtype=float)
    if values.size != measurement.n_outcomes:
        raise LengthMismatch(
            f"{values.size} eigenvalues for {measurement.n_outcomes} projectors"
        )
    observable = sum(
        m_j * proj for m_j, proj in zip(values, measurement.projectors)
    )
    commutator = observable @ hamiltonian.matrix - hamiltonian.matrix @ observable
    return bool(np.max(np.abs(commutator)) < ATOL)


def audit_measurement(
    rho: DensityOperator,
    measurement: ProjectiveMeasurement,
    eigenvalues: Sequence[float],
    hamiltonian: Hamiltonian,
    weights: ProbabilityDistribution | None = None,
) -> EnergyAudit:
    """Mean energy before and after a (possibly weight-deviating) update."""
    e_before = energy_expectation(rho, hamiltonian)
    e_after = energy_expectation(
        nonselective_update(rho, measurement, weights), hamiltonian
    )
    return EnergyAudit(
        e_before=e_before,
        e_after=e_after,
        delta=e_after - e_before,
        commutes=commutation_check(measurement, eigenvalues, hamiltonian),
        weights_were_born=weights is None,
    )
