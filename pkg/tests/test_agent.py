import numpy as np
import pytest
from scipy import stats as scipy_stats

from collapsim.agent import (
    AlternativeSet,
    AttentionStage,
    CollapseStage,
    ComputeStage,
    NormFunction,
    SelectionStage,
    act,
    attention,
    born_reference,
    distinguish_traces,
    robot_act,
    run_trials,
    selection,
)
from collapsim.errors import AllZeroPriorities, BadParameter, LengthMismatch
from collapsim.policies import deviation_statistic
from collapsim.rng import trial_rng

GOOD_BAD = AlternativeSet(("bad", "good"), (0.5, 0.5))
MORAL_NORM = NormFunction({"bad": 0.0, "good": 1.0})


class TestAlternativeSet:
    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            AlternativeSet(("a", "b"), (1.0,))

    def test_duplicate_labels(self):
        with pytest.raises(BadParameter):
            AlternativeSet(("a", "a"), (1.0, 1.0))

    def test_all_zero_priorities(self):
        with pytest.raises(AllZeroPriorities):
            AlternativeSet(("a", "b"), (0.0, 0.0))

    def test_negative_priority(self):
        with pytest.raises(BadParameter):
            AlternativeSet(("a", "b"), (-0.5, 1.0))


class TestAttention:
    def test_timeline_amplitudes(self):
        # priorities (alpha^2, 1 - alpha^2) with alpha = 0.6
        alts = AlternativeSet(("tap", "rest"), (0.36, 0.64))
        state = attention(alts)
        np.testing.assert_allclose(state.amplitudes, [0.6, 0.8], atol=1e-12)

    def test_uniform_priorities(self):
        alts = AlternativeSet(tuple("abcd"), (1.0,) * 4)
        np.testing.assert_allclose(attention(alts).amplitudes, [0.5] * 4, atol=1e-12)

    def test_zero_priority_gives_zero_amplitude(self):
        alts = AlternativeSet(("a", "b", "c"), (0.5, 0.5, 0.0))
        state = attention(alts)
        assert state.amplitudes[2] == 0.0
        probs = np.abs(state.amplitudes) ** 2
        assert set(np.flatnonzero(probs > 1e-12)) == {0, 1}


class TestSelection:
    def test_norm_argmax(self):
        state = attention(GOOD_BAD)
        chosen, tie_broken = selection(state, GOOD_BAD, MORAL_NORM, trial_rng(1))
        assert GOOD_BAD.labels[chosen] == "good"
        assert tie_broken is False

    def test_single_admissible(self):
        alts = AlternativeSet(("a", "b"), (0.0, 1.0))
        chosen, tie_broken = selection(
            attention(alts), alts, NormFunction({"a": 5.0, "b": 0.0}), trial_rng(2)
        )
        assert alts.labels[chosen] == "b" and not tie_broken

    def test_tie_break_uniform_chi_square(self):
        alts = AlternativeSet(tuple("abcd"), (1.0,) * 4)
        flat_norm = NormFunction({lab: 1.0 for lab in alts.labels})
        counts = np.zeros(4)
        for t in range(10_000):
            chosen, tie_broken = selection(
                attention(alts), alts, flat_norm, trial_rng(3, t)
            )
            assert tie_broken
            counts[chosen] += 1
        chi2 = ((counts - 2500.0) ** 2 / 2500.0).sum()
        assert chi2 < scipy_stats.chi2.ppf(0.999, 3)

    def test_undefined_norm_label(self):
        with pytest.raises(BadParameter):
            selection(attention(GOOD_BAD), GOOD_BAD, NormFunction({"bad": 0.0}), trial_rng(4))


class TestAct:
    def test_norm_overrides_amplitudes(self):
        # deviation regardless of the attention weights
        for alpha_sq in (0.1, 0.36, 0.9):
            alts = AlternativeSet(("tap", "rest"), (alpha_sq, 1 - alpha_sq))
            norm = NormFunction({"tap": 0.0, "rest": 1.0})
            for t in range(50):
                trace = act(alts, norm, trial_rng(5, t))
                assert trace.final_label == "rest"

    def test_inadmissible_argmax_filtered(self):
        # norm favors an alternative with zero priority; the admissible
        # argmax applies instead
        alts = AlternativeSet(("0", "1", "2"), (0.75, 0.25, 0.0))
        norm = NormFunction({"0": 0.1, "1": 0.5, "2": 9.0})
        for t in range(50):
            trace = act(alts, norm, trial_rng(6, t))
            assert trace.final_label == "1"

    def test_deviation_statistics_at_ten_k(self):
        # state (sqrt(3)/2, 1/2, 0); norm favors index 1; Born predicts 1/4
        alts = AlternativeSet(("0", "1", "2"), (0.75, 0.25, 0.0))
        norm = NormFunction({"0": 0.0, "1": 1.0, "2": 0.0})
        traces = run_trials(alts, norm, 10_000, seed=7)
        counts = np.bincount([t.final_outcome for t in traces], minlength=3)
        assert counts[1] == 10_000
        stats = deviation_statistic(counts, born_reference(alts))
        assert stats.tv == pytest.approx(0.75, abs=1e-12)

    def test_trace_shape_and_ticks(self):
        trace = act(GOOD_BAD, MORAL_NORM, trial_rng(8))
        assert trace.kind == "collapse"
        kinds = [type(s) for s in trace.stages]
        assert kinds == [AttentionStage, SelectionStage, CollapseStage]
        ticks = [s.tick for s in trace.stages]
        assert ticks[0] < ticks[1] < ticks[2]

    def test_constant_norm_degrades_to_born(self):
        alts = AlternativeSet(("a", "b", "c"), (0.5, 0.3, 0.2))
        flat = NormFunction({lab: 2.0 for lab in alts.labels})
        counts = np.zeros(3)
        trials = 10_000
        for t in range(trials):
            counts[act(alts, flat, trial_rng(9, t)).final_outcome] += 1
        reference = born_reference(alts)
        stats = deviation_statistic(counts, reference)
        assert stats.chi2 < scipy_stats.chi2.ppf(0.999, 2)

    def test_mixing_zero_is_born_sampling(self):
        alts = AlternativeSet(("a", "b"), (0.75, 0.25))
        norm = NormFunction({"a": 0.0, "b": 1.0})  # argmax would always give b
        counts = np.zeros(2)
        trials = 10_000
        for t in range(trials):
            counts[act(alts, norm, trial_rng(10, t), mixing=0.0).final_outcome] += 1
        stats = deviation_statistic(counts, born_reference(alts))
        assert stats.chi2 < scipy_stats.chi2.ppf(0.999, 1)

    def test_mixing_range_checked(self):
        with pytest.raises(BadParameter):
            act(GOOD_BAD, MORAL_NORM, trial_rng(11), mixing=1.5)

    def test_never_realizes_zero_amplitude_outcome(self):
        rng_master = np.random.default_rng(71)
        for case in range(1000):
            n = int(rng_master.integers(2, 5))
            priorities = rng_master.random(n)
            priorities[rng_master.integers(n)] = 0.0
            if not priorities.any():
                priorities[0] = 1.0
            labels = tuple(f"alt{i}" for i in range(n))
            alts = AlternativeSet(labels, tuple(priorities))
            norm = NormFunction({lab: float(v) for lab, v in zip(labels, rng_master.random(n))})
            trace = act(alts, norm, trial_rng(72, case))
            assert priorities[trace.final_outcome] > 0


class TestRobotAct:
    def test_argmax(self):
        trace = robot_act(GOOD_BAD, MORAL_NORM)
        assert trace.final_label == "good"
        assert trace.kind == "compute"
        assert [type(s) for s in trace.stages] == [ComputeStage]

    def test_deterministic_tie_lowest_index(self):
        flat = NormFunction({"bad": 1.0, "good": 1.0})
        assert robot_act(GOOD_BAD, flat).final_outcome == 0

    def test_no_admissibility_filter(self):
        alts = AlternativeSet(("a", "b"), (1.0, 0.0))
        norm = NormFunction({"a": 0.0, "b": 1.0})
        assert robot_act(alts, norm).final_label == "b"


class TestDistinguishTraces:
    def test_same_outcome_different_structure(self):
        staged = act(GOOD_BAD, MORAL_NORM, trial_rng(12))
        computed = robot_act(GOOD_BAD, MORAL_NORM)
        comparison = distinguish_traces(staged, computed)
        assert comparison.objectively_identical is True
        assert comparison.structurally_distinct is True

    def test_identical_runs(self):
        a = act(GOOD_BAD, MORAL_NORM, trial_rng(13))
        b = act(GOOD_BAD, MORAL_NORM, trial_rng(13))
        comparison = distinguish_traces(a, b)
        assert comparison.objectively_identical is True
        assert comparison.structurally_distinct is False

    def test_admissibility_divergence(self):
        # norm's global argmax has zero amplitude: staged and computed split
        alts = AlternativeSet(("x", "y"), (1.0, 0.0))
        norm = NormFunction({"x": 0.0, "y": 1.0})
        comparison = distinguish_traces(
            act(alts, norm, trial_rng(14)), robot_act(alts, norm)
        )
        assert comparison.objectively_identical is False
        assert comparison.structurally_distinct is True


def test_run_trials_reproducible():
    first = run_trials(GOOD_BAD, MORAL_NORM, 20, seed=15)
    second = run_trials(GOOD_BAD, MORAL_NORM, 20, seed=15)
    assert [t.final_outcome for t in first] == [t.final_outcome for t in second]
