"""Three-stage agent model: attention, selection, collapse.

An agent facing alternatives builds a superposition whose Born weights are
the normalized priorities (attention), picks the norm-optimal admissible
alternative (selection), then forces the collapse onto the choice. The
outcome is deterministic given the norm, yet constrained to the Born
support: an alternative with zero priority can never be chosen. The
contrast case is a robot that simply computes the argmax over all
alternatives, with no superposition and no admissibility filter; the two
produce identical outcomes but structurally different traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import (
    AllZeroPriorities,
    BadParameter,
    LengthMismatch,
    NoAdmissibleAlternative,
)
from .policies import Forced, sample_from_born
from .quantum import (
    ZERO_PROB,
    ProbabilityDistribution,
    StateVector,
    make_state,
)
from .rng import sample_index, trial_rng


@dataclass(frozen=True)
class AlternativeSet:
    """Labelled alternatives with non-negative priorities (not all zero)."""

    labels: tuple[str, ...]
    priorities: tuple[float, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(lab) for lab in self.labels)
        priorities = tuple(float(p) for p in self.priorities)
        if len(labels) != len(priorities):
            raise LengthMismatch(
                f"{len(labels)} labels for {len(priorities)} priorities"
            )
        if len(set(labels)) != len(labels):
            raise BadParameter("labels must be distinct")
        if any(p < 0 for p in priorities):
            raise BadParameter("priorities must be non-negative")
        if not any(p > 0 for p in priorities):
            raise AllZeroPriorities("at least one priority must be positive")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "priorities", priorities)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class NormFunction:
    """Value assigned to each alternative label; higher is better.

    The binary moral case uses {0, 1} for {bad, good}.
    """

    values: Mapping[str, float]

    def value(self, label: str) -> float:
        if label not in self.values:
            raise BadParameter(f"norm is undefined on label {label!r}")
        return float(self.values[label])


@dataclass(frozen=True)
class AttentionStage:
    tick: int
    state: StateVector


@dataclass(frozen=True)
class SelectionStage:
    tick: int
    chosen: int
    tie_broken: bool


@dataclass(frozen=True)
class CollapseStage:
    tick: int
    outcome: int


@dataclass(frozen=True)
class ComputeStage:
    tick: int
    chosen: int


StageRecord = Union[AttentionStage, SelectionStage, CollapseStage, ComputeStage]


@dataclass(frozen=True)
class AgentTrace:
    """Ordered stage records of one decision episode.

    kind "collapse" traces have attention -> selection -> collapse at ticks
    t1 < t2 < t3; kind "compute" traces have a single compute record.
    """

    kind: str
    labels: tuple[str, ...]
    stages: tuple[StageRecord, ...]

    @property
    def final_outcome(self) -> int:
        last = self.stages[-1]
        if isinstance(last, CollapseStage):
            return last.outcome
        if isinstance(last, ComputeStage):
            return last.chosen
        raise BadParameter("trace is incomplete")

    @property
    def final_label(self) -> str:
        return self.labels[self.final_outcome]

    @property
    def stage_shape(self) -> tuple[str, ...]:
        return tuple(type(stage).__name__ for stage in self.stages)


def attention(alternatives: AlternativeSet) -> StateVector:
    """Superpose the alternatives with amplitudes sqrt(priority / total)."""
    priorities = np.asarray(alternatives.priorities, dtype=float)
    return make_state(np.sqrt(priorities / priorities.sum()))


def _admissible(state: StateVector) -> list[int]:
    return [int(j) for j in np.flatnonzero(np.abs(state.amplitudes) ** 2 > ZERO_PROB)]


def selection(
    state: StateVector,
    alternatives: AlternativeSet,
    norm: NormFunction,
    rng: np.random.Generator,
) -> tuple[int, bool]:
    """Pick the norm-optimal admissible alternative.

    Ties are broken by Born-renormalized sampling over the tied set (a
    random subroutine), and flagged as such.
    """
    admissible = _admissible(state)
    if not admissible:
        raise NoAdmissibleAlternative("no alternative has nonzero amplitude")
    scores = {j: norm.value(alternatives.labels[j]) for j in admissible}
    best = max(scores.values())
    tied = [j for j in admissible if scores[j] == best]
    if len(tied) == 1:
        return tied[0], False
    weights = np.abs(state.amplitudes[tied]) ** 2
    return tied[int(sample_index(rng, weights))], True


def act(
    alternatives: AlternativeSet,
    norm: NormFunction,
    rng: np.random.Generator,
    mixing: float = 1.0,
) -> AgentTrace:
    """Run the full attention -> selection -> collapse pipeline.

    `mixing` blends selection modes: 1.0 (default) always follows the norm
    argmax; 0.0 ignores the norm and samples the admissible set with Born
    weights; intermediate values choose between the two at random. This
    knob is an extension beyond the basic model.
    """
    if not 0.0 <= mixing <= 1.0:
        raise BadParameter("mixing must lie in [0, 1]")
    state = attention(alternatives)
    if mixing >= 1.0 or rng.random() < mixing:
        chosen, tie_broken = selection(state, alternatives, norm, rng)
    else:
        admissible = _admissible(state)
        weights = np.abs(state.amplitudes[admissible]) ** 2
        chosen, tie_broken = admissible[int(sample_index(rng, weights))], False
    born = ProbabilityDistribution(np.abs(state.amplitudes) ** 2)
    outcome_sample = sample_from_born(Forced(chosen), born, rng)
    assert outcome_sample.outcome == chosen  # selection only returns admissible
    return AgentTrace(
        kind="collapse",
        labels=alternatives.labels,
        stages=(
            AttentionStage(tick=1, state=state),
            SelectionStage(tick=2, chosen=chosen, tie_broken=tie_broken),
            CollapseStage(tick=3, outcome=outcome_sample.outcome),
        ),
    )


def robot_act(alternatives: AlternativeSet, norm: NormFunction) -> AgentTrace:
    """Deterministic argmax over all alternatives; lowest index wins ties."""
    scores = [norm.value(label) for label in alternatives.labels]
    chosen = int(np.argmax(scores))
    return AgentTrace(
        kind="compute",
        labels=alternatives.labels,
        stages=(ComputeStage(tick=1, chosen=chosen),),
    )


@dataclass(frozen=True)
class TraceComparison:
    objectively_identical: bool
    structurally_distinct: bool


def distinguish_traces(a: AgentTrace, b: AgentTrace) -> TraceComparison:
    """Compare final outcomes (objective) and stage shapes (structural)."""
    return TraceComparison(
        objectively_identical=a.final_label == b.final_label,
        structurally_distinct=a.stage_shape != b.stage_shape,
    )


def born_reference(alternatives: AlternativeSet) -> ProbabilityDistribution:
    """The zero-control baseline: normalized priorities as probabilities."""
    state = attention(alternatives)
    return ProbabilityDistribution(np.abs(state.amplitudes) ** 2)


def run_trials(
    alternatives: AlternativeSet,
    norm: NormFunction,
    trials: int,
    seed: int,
    mixing: float = 1.0,
) -> list[AgentTrace]:
    """Independent decision episodes with per-trial derived streams."""
    if trials < 1:
        raise BadParameter("trials must be positive")
    return [
        act(alternatives, norm, trial_rng(seed, t), mixing) for t in range(trials)
    ]
