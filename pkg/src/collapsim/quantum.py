"""Exact finite-dimensional states, projective measurements and updates.

Everything is dense complex linear algebra. States and measurements are
immutable after construction and all operations are pure functions, so
values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ForbiddenOutcome, TooLarge, ZeroVector

#: tolerance for structural invariants (normalization, hermiticity, ...)
ATOL = 1e-10
#: Born probabilities at or below this are treated as exact zeros; an outcome
#: below the threshold is forbidden to every collapse policy.
ZERO_PROB = 1e-12
#: dense-simulation cap (2**13 covers the SAT harness at n = 12)
MAX_DIM = 8192


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector over a finite outcome space."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a non-empty 1-d vector")
        if amps.size > MAX_DIM:
            raise TooLarge(f"dimension {amps.size} exceeds the dense cap {MAX_DIM}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state vector is not normalized (norm={norm!r})")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.ascontiguousarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise ValueError("density operator must be a square matrix")
        if not np.allclose(mat, mat.conj().T, atol=ATOL, rtol=0.0):
            raise ValueError("density operator must be Hermitian")
        if abs(np.trace(mat).real - 1.0) > ATOL or abs(np.trace(mat).imag) > ATOL:
            raise ValueError("density operator must have unit trace")
        if np.min(np.linalg.eigvalsh(mat)) < -ATOL:
            raise ValueError("density operator must be positive semidefinite")
        object.__setattr__(self, "matrix", _frozen(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityOperator":
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Ordered complete family of orthogonal projectors."""

    projectors: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if not self.projectors:
            raise ValueError("a measurement needs at least one projector")
        mats = tuple(
            _frozen(np.ascontiguousarray(p, dtype=complex)) for p in self.projectors
        )
        dim = mats[0].shape[0]
        for p in mats:
            if p.ndim != 2 or p.shape != (dim, dim):
                raise ValueError("projectors must be square and equally sized")
            if not np.allclose(p, p.conj().T, atol=ATOL, rtol=0.0):
                raise ValueError("projectors must be Hermitian")
            if not np.allclose(p @ p, p, atol=ATOL, rtol=0.0):
                raise ValueError("projectors must be idempotent")
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if not np.allclose(mats[i] @ mats[j], 0.0, atol=ATOL, rtol=0.0):
                    raise ValueError(f"projectors {i} and {j} are not orthogonal")
        if not np.allclose(sum(mats), np.eye(dim), atol=ATOL, rtol=0.0):
            raise ValueError("projectors must sum to the identity")
        object.__setattr__(self, "projectors", mats)
        object.__setattr__(self, "_stack", _frozen(np.stack(mats)))

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.projectors)

    @classmethod
    def from_basis(cls, vectors: np.ndarray) -> "ProjectiveMeasurement":
        """Rank-1 measurement from the rows of an orthonormal basis."""
        rows = np.ascontiguousarray(vectors, dtype=complex)
        return cls(tuple(np.outer(v, v.conj()) for v in rows))

    @classmethod
    def computational(cls, dim: int) -> "ProjectiveMeasurement":
        return cls.from_basis(np.eye(dim))

    @classmethod
    def detection(cls, ket: np.ndarray) -> "ProjectiveMeasurement":
        """Two-outcome observable {|k><k|, 1 - |k><k|}: detect / miss."""
        v = np.ascontiguousarray(ket, dtype=complex)
        proj = np.outer(v, v.conj())
        return cls((proj, np.eye(v.size) - proj))

    def embed(self, dims: tuple[int, int], side: str) -> "ProjectiveMeasurement":
        """Lift onto one factor of a bipartite space (P ⊗ 1 or 1 ⊗ P)."""
        d_a, d_b = dims
        if side == "A":
            if self.dim != d_a:
                raise DimensionMismatch("measurement does not act on subsystem A")
            return ProjectiveMeasurement(
                tuple(np.kron(p, np.eye(d_b)) for p in self.projectors)
            )
        if side == "B":
            if self.dim != d_b:
                raise DimensionMismatch("measurement does not act on subsystem B")
            return ProjectiveMeasurement(
                tuple(np.kron(np.eye(d_a), p) for p in self.projectors)
            )
        raise DimensionMismatch("side must be 'A' or 'B'")


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    """Vector of non-negative reals summing to one."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.ascontiguousarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("probabilities must form a non-empty vector")
        if np.min(p) < -ZERO_PROB:
            raise ValueError("probabilities must be non-negative")
        if abs(p.sum() - 1.0) > ATOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probs", _frozen(np.clip(p, 0.0, 1.0)))

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, idx: int) -> float:
        return float(self.probs[idx])

    def support(self, threshold: float = ZERO_PROB) -> frozenset[int]:
        return frozenset(int(j) for j in np.flatnonzero(self.probs > threshold))


def make_state(amplitudes) -> StateVector:
    """Normalize raw amplitudes into a state; rejects the zero vector."""
    amps = np.ascontiguousarray(amplitudes, dtype=complex)
    if amps.ndim != 1:
        raise DimensionMismatch("amplitudes must be a 1-d sequence")
    norm = np.linalg.norm(amps)
    if norm < 1e-12 or not np.any(np.abs(amps) >= 1e-12):
        raise ZeroVector("all amplitudes are numerically zero")
    return StateVector(amps / norm)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Product state; amplitude at index j*b.dim + k is a[j] * b[k]."""
    if a.dim * b.dim > MAX_DIM:
        raise TooLarge(f"tensor dimension {a.dim * b.dim} exceeds {MAX_DIM}")
    return StateVector(np.kron(a.amplitudes, b.amplitudes))


def born_distribution(
    state: StateVector, measurement: ProjectiveMeasurement
) -> ProbabilityDistribution:
    """Outcome probabilities <s|M_j|s>, clipped to [0, 1]."""
    if state.dim != measurement.dim:
        raise DimensionMismatch(
            f"state dim {state.dim} != measurement dim {measurement.dim}"
        )
    amps = state.amplitudes
    probs = np.einsum(
        "i,mij,j->m", amps.conj(), measurement._stack, amps, optimize=False
    ).real
    return ProbabilityDistribution(np.clip(probs, 0.0, 1.0))


def born_distribution_rho(
    rho: DensityOperator, measurement: ProjectiveMeasurement
) -> ProbabilityDistribution:
    """Outcome probabilities Tr(M_j rho) for a mixed state."""
    if rho.dim != measurement.dim:
        raise DimensionMismatch(f"rho dim {rho.dim} != measurement dim {measurement.dim}")
    probs = np.einsum("mij,ji->m", measurement._stack, rho.matrix).real
    return ProbabilityDistribution(np.clip(probs, 0.0, 1.0))


def collapse(
    state: StateVector, measurement: ProjectiveMeasurement, outcome: int
) -> StateVector:
    """Project onto an outcome and renormalize.

    Raises ForbiddenOutcome when the outcome's Born probability is zero:
    collapse can redistribute probability, never create it.
    """
    if state.dim != measurement.dim:
        raise DimensionMismatch(
            f"state dim {state.dim} != measurement dim {measurement.dim}"
        )
    if not 0 <= outcome < measurement.n_outcomes:
        raise ForbiddenOutcome(f"outcome index {outcome} out of range")
    projected = measurement.projectors[outcome] @ state.amplitudes
    weight = np.vdot(projected, projected).real
    if weight <= ZERO_PROB:
        raise ForbiddenOutcome(
            f"outcome {outcome} has zero Born probability and cannot be realized"
        )
    return StateVector(projected / np.sqrt(weight))


def nonselective_update(
    rho: DensityOperator,
    measurement: ProjectiveMeasurement,
    weights: ProbabilityDistribution | None = None,
) -> DensityOperator:
    """Measure without recording the outcome, mixing branches by `weights`.

    With `weights` absent this is the standard update rho -> sum_j M_j rho M_j.
    Explicit weights model a deviating (non-Born) outcome distribution; their
    support must lie inside the Born support of rho under the measurement.
    """
    born = born_distribution_rho(rho, measurement)
    if weights is None:
        weights = born
    elif len(weights) != measurement.n_outcomes:
        raise DimensionMismatch("one weight per measurement outcome is required")
    out = np.zeros((rho.dim, rho.dim), dtype=complex)
    for j, proj in enumerate(measurement.projectors):
        if weights[j] <= ZERO_PROB:
            continue
        if born[j] <= ZERO_PROB:
            raise ForbiddenOutcome(
                f"weights place mass {weights[j]!r} on zero-Born outcome {j}"
            )
        branch = proj @ rho.matrix @ proj
        out += weights[j] * branch / np.trace(branch).real
    return DensityOperator(out)


def reduced_state(
    state: StateVector, dims: tuple[int, int], keep: str
) -> DensityOperator:
    """Partial trace of a bipartite pure state; keep subsystem 'A' or 'B'."""
    d_a, d_b = dims
    if state.dim != d_a * d_b:
        raise DimensionMismatch(f"state dim {state.dim} != {d_a}*{d_b}")
    psi = state.amplitudes.reshape(d_a, d_b)
    if keep == "A":
        return DensityOperator(psi @ psi.conj().T)
    if keep == "B":
        return DensityOperator(np.einsum("ai,aj->ij", psi, psi.conj()))
    raise DimensionMismatch("keep must be 'A' or 'B'")


def register_born(
    state: StateVector, dims: tuple[int, int], which: str
) -> ProbabilityDistribution:
    """Born distribution of a computational measurement on one register.

    Structurally equivalent to embedding the computational basis of that
    register and calling born_distribution, without building dim^2 matrices.
    """
    d_a, d_b = dims
    if state.dim != d_a * d_b:
        raise DimensionMismatch(f"state dim {state.dim} != {d_a}*{d_b}")
    weights = np.abs(state.amplitudes.reshape(d_a, d_b)) ** 2
    if which == "A":
        return ProbabilityDistribution(weights.sum(axis=1))
    if which == "B":
        return ProbabilityDistribution(weights.sum(axis=0))
    raise DimensionMismatch("which must be 'A' or 'B'")


def collapse_register(
    state: StateVector, dims: tuple[int, int], which: str, outcome: int
) -> StateVector:
    """Collapse one register onto a computational outcome, keeping the other.

    The structural counterpart of collapse() with an embedded computational
    measurement; subject to the same zero-Born-probability gate.
    """
    d_a, d_b = dims
    if state.dim != d_a * d_b:
        raise DimensionMismatch(f"state dim {state.dim} != {d_a}*{d_b}")
    psi = state.amplitudes.reshape(d_a, d_b).copy()
    if which == "A":
        mask = np.zeros(d_a, dtype=bool)
        mask[outcome] = True
        psi[~mask, :] = 0.0
    elif which == "B":
        mask = np.zeros(d_b, dtype=bool)
        mask[outcome] = True
        psi[:, ~mask] = 0.0
    else:
        raise DimensionMismatch("which must be 'A' or 'B'")
    flat = psi.reshape(-1)
    weight = np.vdot(flat, flat).real
    if weight <= ZERO_PROB:
        raise ForbiddenOutcome(
            f"register outcome {outcome} has zero Born probability"
        )
    return StateVector(flat / np.sqrt(weight))


def same_state(a: StateVector, b: StateVector, atol: float = ATOL) -> bool:
    """State equality up to global phase: |<a|b>| = 1 within tolerance."""
    if a.dim != b.dim:
        return False
    return bool(abs(np.vdot(a.amplitudes, b.amplitudes)) >= 1.0 - atol)
