import math

import numpy as np
import pytest

from common.enums import AnchorFailure, StepEvent
from common.exceptions import InfeasibleAnchorError
from modules.geometry.models import Design, OverhangFeature, Point3
from modules.mechanics.catalog import get_substrate
from modules.planner import PlanParams, plan, plan_overhang
from modules.planner.anchors import span_tension

GAP = (0.02, 0.02)


@pytest.fixture
def wood():
    return get_substrate("wood")


class TestPlanOverhang:
    def test_long_anchor__feasible(self, tape, substrate, wood):
        program, report = plan_overhang(
            substrate, wood, GAP, tape, PlanParams(anchor_length=0.04)
        )
        assert report.feasible
        assert report.shear_margin > 0
        assert report.peel_margin > 0
        assert report.alpha == pytest.approx(math.pi / 4)
        assert report.F_t == pytest.approx(span_tension(0.025, 0.02, tape))
        assert report.end_substrate == "wood"

        meta = program.features[0]
        assert meta.overhang.span_length == pytest.approx(math.hypot(*GAP))
        assert meta.planned_length == pytest.approx(0.04 + math.hypot(*GAP) + 0.02)
        assert len(program.events(StepEvent.CUT)) == 1

    def test_anchor_mark__at_anchor_end(self, tape, substrate, wood):
        program, _ = plan_overhang(substrate, wood, GAP, tape, PlanParams(anchor_length=0.04))
        marks = program.events(StepEvent.ANCHOR_MARK)
        assert len(marks) == 1
        assert np.allclose(marks[0].position, [0.04, 0.0, 0.0])

    def test_span_rises_to_landing(self, tape, substrate, wood):
        program, _ = plan_overhang(substrate, wood, GAP, tape, PlanParams(anchor_length=0.04))
        positions = program.laying_frames(0)[0]
        assert np.allclose(positions[-1], [0.04 + 0.02 + 0.02, 0.0, 0.02])

    def test_zero_anchor__infeasible(self, tape, substrate, wood):
        with pytest.raises(InfeasibleAnchorError) as exc_info:
            plan_overhang(substrate, wood, GAP, tape, PlanParams(anchor_length=0.0))
        assert exc_info.value.exit_code == 4

    def test_short_anchor__infeasible(self, tape, substrate, wood):
        with pytest.raises(InfeasibleAnchorError) as exc_info:
            plan_overhang(substrate, wood, GAP, tape, PlanParams(anchor_length=0.005))

        details = exc_info.value.details
        assert details["failure"] == str(AnchorFailure.SHEAR)
        assert details["required_anchor_length"] > 0.005

    def test_not_strict__reports(self, tape, substrate, wood):
        program, report = plan_overhang(
            substrate, wood, GAP, tape, PlanParams(anchor_length=0.005), strict=False
        )
        assert not report.feasible
        assert program.features[0].overhang.anchor_length == 0.005

    def test_required_length__matches_scan(self, tape, substrate, wood):
        _, reference = plan_overhang(substrate, wood, GAP, tape, PlanParams(anchor_length=0.04))
        required = reference.required_anchor_length
        for anchor_length in np.arange(0.001, 0.05, 0.001):
            _, report = plan_overhang(
                substrate, wood, GAP, tape, PlanParams(anchor_length=anchor_length), strict=False
            )
            assert report.feasible == (anchor_length >= required)

    def test_vertical_span__pure_peel(self, tape, substrate, wood):
        _, report = plan_overhang(
            substrate, wood, (0.02, 0.0), tape, PlanParams(anchor_length=0.04)
        )
        assert report.alpha == pytest.approx(math.pi / 2)
        assert report.required_anchor_length == pytest.approx(report.F_t * 0.05 / (200.0 * 6.35e-3))

    def test_metal_holds_shorter_anchor(self, tape, wood):
        _, on_metal = plan_overhang(
            get_substrate("metal"), wood, GAP, tape, PlanParams(anchor_length=0.04)
        )
        _, on_wood = plan_overhang(wood, wood, GAP, tape, PlanParams(anchor_length=0.04))
        assert on_metal.required_anchor_length < on_wood.required_anchor_length


class TestDesignOverhang:
    def test_feasible(self, tape, substrate):
        feature = OverhangFeature(start=Point3(0.0, 0.0, 0.0), height=0.02, span=0.02)
        program = plan(Design(features=(feature,)), tape, substrate)
        assert program.features[0].overhang.alpha == pytest.approx(math.pi / 4)
        assert len(program.events(StepEvent.ANCHOR_MARK)) == 1

    def test_short_anchor__infeasible(self, tape, substrate):
        feature = OverhangFeature(
            start=Point3(0.0, 0.0, 0.0), height=0.02, span=0.02, anchor_length=0.001
        )
        with pytest.raises(InfeasibleAnchorError) as exc_info:
            plan(Design(features=(feature,)), tape, substrate)
        assert exc_info.value.details["feature"] == 0
