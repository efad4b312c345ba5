import math

import numpy as np
import pytest

from common.exceptions import NotApplicableError, InvalidInputError
from modules.geometry.paths import rotation_about_z
from modules.metrics import (
    effective_length,
    measure,
    profile_roughness,
    straightness_deviation,
)
from tests.helpers import NOMINAL_WIDTH, make_outcome, make_placement, straight_centerline


def bumped_centerline(height: float = 1e-3) -> np.ndarray:
    centerline = straight_centerline(0.15)
    centerline[75, 1] = height
    return centerline


class TestEffectiveLength:
    def test_perfect_line(self):
        assert effective_length(make_placement()) == pytest.approx(0.15, abs=1e-12)

    @pytest.mark.parametrize("length, error", [(0.151, 1e-3), (0.149, -1e-3), (0.15, 0.0)])
    def test_length_error(self, length, error):
        placement = make_placement(straight_centerline(length), planned_length=0.15)
        metrics = measure(placement)
        assert metrics.effective_length == pytest.approx(length)
        assert metrics.length_error == pytest.approx(error, abs=1e-12)
        assert metrics.relative_length_error == pytest.approx(error / 0.15, abs=1e-12)

    def test_spurs_trimmed(self):
        centerline = straight_centerline(0.152)
        width = np.full(len(centerline), NOMINAL_WIDTH)
        width[0] = width[-1] = 0.3 * NOMINAL_WIDTH
        placement = make_placement(centerline, width=width, planned_length=0.15)
        assert effective_length(placement) == pytest.approx(0.15)

    def test_outcome_feature(self):
        second = make_placement(straight_centerline(0.1), feature=1)
        outcome = make_outcome(make_placement(), second)
        assert effective_length(outcome, 1) == pytest.approx(0.1)
        with pytest.raises(InvalidInputError):
            effective_length(outcome, 2)

    def test_no_full_width_tape__fail(self):
        width = np.full(151, 0.2 * NOMINAL_WIDTH)
        with pytest.raises(InvalidInputError):
            effective_length(make_placement(width=width))


class TestStraightness:
    def test_perfect_line__zero(self):
        assert straightness_deviation(make_placement()) == 0.0

    @pytest.mark.parametrize("height", [1e-3, -1e-3])
    def test_midpoint_bump(self, height):
        placement = make_placement(bumped_centerline(height))
        assert straightness_deviation(placement) == pytest.approx(1e-3, rel=1e-9)

    def test_wider_tape__edge_excursion(self):
        width = np.full(151, NOMINAL_WIDTH)
        width[40] = NOMINAL_WIDTH + 4e-4
        placement = make_placement(width=width)
        assert straightness_deviation(placement) == pytest.approx(2e-4)

    def test_rigid_transform__invariant(self):
        placement = make_placement(bumped_centerline())
        rotation = rotation_about_z(0.7)
        moved = make_placement(bumped_centerline() @ rotation.T + np.array([0.3, -0.2, 0.05]))
        assert straightness_deviation(moved) == pytest.approx(
            straightness_deviation(placement), rel=1e-9
        )
        assert effective_length(moved) == pytest.approx(effective_length(placement), rel=1e-12)

    def test_not_straight__not_applicable(self):
        with pytest.raises(NotApplicableError) as exc_info:
            straightness_deviation(make_placement(straight=False))
        assert exc_info.value.exit_code == 2

    def test_measure__ratio(self):
        metrics = measure(make_placement(bumped_centerline()))
        assert metrics.straightness_ratio == pytest.approx(1e-3 / metrics.effective_length)

    def test_measure__curved_feature(self):
        metrics = measure(make_placement(straight=False))
        assert metrics.straightness_deviation is None
        assert metrics.straightness_ratio is None


class TestProfileRoughness:
    def test_perfect_line__zero(self):
        assert profile_roughness(make_placement()) == 0.0

    def test_sinusoid__mean_absolute_amplitude(self):
        amplitude, period = 2e-4, 0.015
        centerline = straight_centerline(0.15, step=1e-4)
        # whole periods, symmetric about the middle: the fitted line is flat
        lateral = amplitude * np.cos(2 * math.pi * centerline[:, 0] / period)
        placement = make_placement(centerline, lateral=lateral)
        assert profile_roughness(placement) == pytest.approx(2 * amplitude / math.pi, rel=5e-3)

    def test_linear_drift__ignored(self):
        centerline = straight_centerline(0.15)
        lateral = 1e-3 * centerline[:, 0]
        assert profile_roughness(make_placement(centerline, lateral=lateral)) == 0.0

    def test_scales_with_deviation(self):
        rng = np.random.default_rng(5)
        lateral = np.cumsum(rng.standard_normal(151)) * 1e-5
        single = profile_roughness(make_placement(lateral=lateral))
        double = profile_roughness(make_placement(lateral=2 * lateral))
        assert double == pytest.approx(2 * single, rel=1e-9)


class TestMeasure:
    def test_perfect_line__all_zero(self):
        metrics = measure(make_placement())
        assert metrics.length_error == 0.0
        assert metrics.straightness_deviation == 0.0
        assert metrics.width_deviation == 0.0
        assert metrics.profile_roughness == 0.0
        assert metrics.width_mean == pytest.approx(NOMINAL_WIDTH)
        assert metrics.width_std == pytest.approx(0.0, abs=1e-15)

    def test_width_deviation(self):
        metrics = measure(make_placement(width=np.full(151, 1.1 * NOMINAL_WIDTH)))
        assert metrics.width_deviation == pytest.approx(0.1)
