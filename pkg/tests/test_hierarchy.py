"""Hierarchical optimization tests on synthetic objectives."""

from __future__ import annotations

import math

import numpy as np
import pytest

from layoutforge import (
    OptimizationError,
    TerminationCriteria,
    ThresholdFn,
    hierarchical_optimize,
    threshold_value,
    violation_cost,
)


def criteria(budget: int = 4000) -> TerminationCriteria:
    return TerminationCriteria(max_evaluations=budget, improvement_floor=-1.0)


BOX = (np.full(1, -5.0), np.full(1, 5.0))


class TestThresholdFunction:
    def test_zero_inside_interval(self):
        t = ThresholdFn(0, lower=0.0)
        assert threshold_value(t, 3.0) == 0.0
        assert threshold_value(t, 0.0) == 0.0

    def test_quadratic_below_lower(self):
        t = ThresholdFn(0, lower=0.0)
        assert threshold_value(t, -2.0) == 4.0

    def test_quadratic_above_upper(self):
        t = ThresholdFn(0, upper=1.0)
        assert threshold_value(t, 3.0) == 4.0

    def test_two_sided_window(self):
        t = ThresholdFn(0, lower=-1.0, upper=1.0)
        assert threshold_value(t, -1.5) == pytest.approx(0.25)
        assert threshold_value(t, 0.0) == 0.0
        assert threshold_value(t, 1.5) == pytest.approx(0.25)


class TestViolationCost:
    def test_empty_threshold_set(self):
        assert violation_cost([1.0, 2.0], []) == 0.0

    def test_sums_per_objective_violations(self):
        ts = [ThresholdFn(0, lower=0.0), ThresholdFn(1, lower=10.0)]
        got = violation_cost([-1.0, 7.0], ts)
        assert got == pytest.approx(1.0 + 9.0)

    def test_indexes_into_value_vector(self):
        ts = [ThresholdFn(1, lower=5.0)]
        assert violation_cost([0.0, 5.0], ts) == 0.0
        assert violation_cost([0.0, 3.0], ts) == pytest.approx(4.0)


class TestSingleObjective:
    def test_plain_maximization(self):
        # default handover keeps 70% of the gain, so the member is only
        # guaranteed to sit inside the threshold band, not at the optimum
        fn = lambda p: np.array([-((float(p[0]) - 2.0) ** 2)])
        result = hierarchical_optimize(
            fn, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
            sigma0=1.0, rng=np.random.default_rng(4),
        )
        member = result.members[0]
        assert violation_cost(fn(member), result.thresholds) < 1e-6
        assert fn(member)[0] >= fn(np.zeros(1))[0]
        assert len(result.stages) == 1
        assert len(result.thresholds) == 1

    def test_full_handover_pins_the_optimum(self):
        fn = lambda p: np.array([-((float(p[0]) - 2.0) ** 2)])
        result = hierarchical_optimize(
            fn, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
            handover=1.0, sigma0=1.0, rng=np.random.default_rng(4),
        )
        assert result.members[0][0] == pytest.approx(2.0, abs=1e-2)

    def test_stage_log_contents(self):
        fn = lambda p: np.array([-(float(p[0]) ** 2)])
        result = hierarchical_optimize(
            fn, np.full(1, 3.0), *BOX, n_members=1, criteria=criteria(),
            sigma0=1.0, rng=np.random.default_rng(8), labels=["closeness"],
        )
        stage = result.stages[0]
        assert stage.label == "closeness"
        assert stage.evaluations > 0
        assert stage.optimum_value >= stage.start_value
        assert stage.lower_bound == pytest.approx(
            stage.start_value + 0.7 * (stage.optimum_value - stage.start_value)
        )


def two_stage(p: np.ndarray) -> np.ndarray:
    x = float(p[0])
    return np.array([-((x + 1.0) ** 2), -((x - 1.0) ** 4)])


class TestTwoStageHandover:
    def test_full_handover_pins_first_optimum(self):
        result = hierarchical_optimize(
            two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(8000),
            handover=1.0, sigma0=1.0, rng=np.random.default_rng(15),
        )
        assert result.members[0][0] == pytest.approx(-1.0, abs=1e-3)

    def test_zero_handover_frees_second_stage(self):
        # stage 1 threshold collapses to the starting value: f1(x) >= f1(0)
        # leaves x in [-2, 0]; the best feasible point for f2 is x = 0
        result = hierarchical_optimize(
            two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(8000),
            handover=0.0, sigma0=1.0, rng=np.random.default_rng(16),
        )
        assert result.members[0][0] == pytest.approx(0.0, abs=1e-2)

    def test_members_satisfy_thresholds(self):
        # aligned objectives keep the stacked thresholds consistent; with
        # opposed objectives a partial handover can demand more of a later
        # stage than the earlier thresholds allow, leaving no feasible set
        def aligned(p: np.ndarray) -> np.ndarray:
            x = float(p[0])
            return np.array([-((x + 1.0) ** 2), -((x + 1.0) ** 4)])

        result = hierarchical_optimize(
            aligned, np.zeros(1), *BOX, n_members=3, criteria=criteria(6000),
            handover=0.5, sigma0=1.0, rng=np.random.default_rng(21),
        )
        for member in result.members:
            values = aligned(member)
            assert violation_cost(values, result.thresholds) < 1e-6

    def test_threshold_recorded_per_stage(self):
        result = hierarchical_optimize(
            two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
            sigma0=1.0, rng=np.random.default_rng(2),
        )
        assert [t.objective_index for t in result.thresholds] == [0, 1]
        assert all(math.isinf(t.upper) for t in result.thresholds)


class TestValidation:
    def test_handover_length_mismatch(self):
        with pytest.raises(ValueError):
            hierarchical_optimize(
                two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
                handover=[0.5], rng=np.random.default_rng(0),
            )

    def test_handover_range_checked(self):
        with pytest.raises(ValueError):
            hierarchical_optimize(
                two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
                handover=1.5, rng=np.random.default_rng(0),
            )

    def test_non_finite_objective_names_stage(self):
        def broken(p: np.ndarray) -> np.ndarray:
            return np.array([float("nan")])

        with pytest.raises(OptimizationError, match="stage 0"):
            hierarchical_optimize(
                broken, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
                rng=np.random.default_rng(0),
            )


class TestProgressCallback:
    def test_callback_receives_stage_labels(self):
        seen: list[str] = []

        def on_generation(label: str, evaluations: int) -> None:
            seen.append(label)

        hierarchical_optimize(
            two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(600),
            rng=np.random.default_rng(1), labels=["first", "second"],
            on_generation=on_generation,
        )
        assert "first" in seen and "second" in seen and "diversity" in seen

    def test_callback_can_abort(self):
        class Stop(Exception):
            pass

        def bail(label: str, evaluations: int) -> None:
            raise Stop()

        with pytest.raises(Stop):
            hierarchical_optimize(
                two_stage, np.zeros(1), *BOX, n_members=1, criteria=criteria(),
                rng=np.random.default_rng(1), on_generation=bail,
            )
